#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "vnesim/graph.hpp"

namespace vnesim {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct IntInterval {
  int lo = 0;
  int hi = 0;
};

struct ServerProfile {
  std::string name;
  double cpu_capacity = 0.0;
};

struct WorkloadConfig {
  std::uint64_t seed = 1;

  int sn_nodes = 200;
  int sn_links = 1000;
  Interval sn_bw_range{50.0, 100.0};
  // Each substrate node draws one profile uniformly.  Defaults are two
  // small rack servers, cores times clock: 2 x 1860 and 2 x 2660 MIPS.
  std::vector<ServerProfile> server_profiles{{"ml110g4", 3720.0}, {"ml110g5", 5320.0}};

  int vn_count = 3000;
  IntInterval vn_size_range{2, 20};
  double vn_connectivity = 0.5;  // target edge density of request graphs
  std::vector<double> vn_cpu_choices{2500.0, 2000.0, 1000.0, 500.0};
  Interval vn_bw_range{1.0, 50.0};

  double arrival_rate = 0.1;  // requests per time unit (Poisson process)
  Interval lifetime_range{300.0, 700.0};

  double waxman_alpha = 0.5;
  double waxman_beta = 0.2;
  double plane_size = 1000.0;
};

using Rng = std::mt19937_64;

struct GeneratedSubstrate {
  SubstrateNetwork network;
  std::vector<std::pair<double, double>> positions;
};

struct GeneratedRequest {
  VNRequest request;
  std::vector<std::pair<double, double>> positions;
};

struct GeneratedWorkload {
  GeneratedSubstrate substrate;
  std::vector<GeneratedRequest> requests;  // ascending arrival
};

// Waxman topology on uniformly placed nodes, repaired to a single
// component by adding minimum-distance bridging edges, then trimmed or
// grown to exactly cfg.sn_links.  Throws on configurations that cannot
// yield a simple connected graph of that size.  Draws come only from rng,
// in a fixed order, so (seed, cfg) determines the result.
GeneratedSubstrate generate_substrate(const WorkloadConfig& cfg, Rng& rng);

// Poisson arrivals with exponential inter-arrival times at
// cfg.arrival_rate; each request is a connected Waxman graph with the
// acceptance probability rescaled so the expected edge density matches
// cfg.vn_connectivity.
std::vector<GeneratedRequest> generate_vnr_stream(const WorkloadConfig& cfg, Rng& rng);

// Substrate first, then the stream, from one generator seeded with cfg.seed.
GeneratedWorkload generate_workload(const WorkloadConfig& cfg);

struct Workload {
  SubstrateNetwork substrate;
  std::vector<VNRequest> requests;  // ascending arrival; id = manifest order
};

// Directory layout: substrate.brite, one vnr_NNNNN.brite per request, and
// manifest.txt with one "<relative-path> <arrival> <lifetime>" line per
// request, sorted by arrival.
void write_workload(const GeneratedWorkload& w, const std::filesystem::path& dir);
Workload load_workload(const std::filesystem::path& dir);

}  // namespace vnesim
