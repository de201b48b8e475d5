// Micro-benchmarks for the embedding hot paths.  Each fixture is generated
// once from a fixed seed, so numbers are comparable across runs and hosts.

#include <benchmark/benchmark.h>

#include <cstddef>
#include <map>
#include <vector>

#include "vnesim/bfsn.hpp"
#include "vnesim/hem.hpp"
#include "vnesim/pathing.hpp"
#include "vnesim/reference.hpp"
#include "vnesim/sim.hpp"
#include "vnesim/subgraph.hpp"
#include "vnesim/workload.hpp"

namespace {

using namespace vnesim;

struct Fixture {
  SubstrateNetwork substrate;
  std::vector<VirtualNetwork> requests;
};

// One substrate of the given size plus a 64-request sample of the default
// request mix.  Benchmarks cycle through the sample so a single atypical
// request cannot dominate the timing.
const Fixture& fixture(int sn_nodes) {
  static std::map<int, Fixture> cache;
  auto it = cache.find(sn_nodes);
  if (it == cache.end()) {
    WorkloadConfig cfg;
    cfg.seed = 4242;
    cfg.sn_nodes = sn_nodes;
    cfg.sn_links = sn_nodes * 5;
    cfg.vn_count = 64;
    cfg.vn_size_range = {2, 10};
    GeneratedWorkload w = generate_workload(cfg);
    Fixture f;
    f.substrate = std::move(w.substrate.network);
    for (GeneratedRequest& r : w.requests) f.requests.push_back(std::move(r.request.network));
    it = cache.emplace(sn_nodes, std::move(f)).first;
  }
  return it->second;
}

void BM_BfsnEmbed(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<int>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    const VirtualNetwork& vn = f.requests[i++ % f.requests.size()];
    EmbedOutcome out = bfsn_embed(vn, f.substrate, 2, 3 * vn.node_count());
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_BfsnEmbed)->Arg(30)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_BfsnHemEmbed(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<int>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    const VirtualNetwork& vn = f.requests[i++ % f.requests.size()];
    EmbedOutcome out = bfsn_hem_embed(vn, f.substrate, 2, 3 * vn.node_count());
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_BfsnHemEmbed)->Arg(30)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_GreedyEmbed(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<int>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    const VirtualNetwork& vn = f.requests[i++ % f.requests.size()];
    EmbedOutcome out = greedy_embed(vn, f.substrate, 2);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_GreedyEmbed)->Arg(30)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_CandidateSubnetworks(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<int>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    const VirtualNetwork& vn = f.requests[i++ % f.requests.size()];
    auto subs = candidate_subnetworks(f.substrate, vn, 2);
    benchmark::DoNotOptimize(subs);
  }
}
BENCHMARK(BM_CandidateSubnetworks)->Arg(30)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_Coarsen(benchmark::State& state) {
  const Fixture& f = fixture(100);
  std::size_t i = 0;
  for (auto _ : state) {
    const VirtualNetwork& vn = f.requests[i++ % f.requests.size()];
    CoarsenedVN cvn = coarsen(vn, 5320.0);
    benchmark::DoNotOptimize(cvn);
  }
}
BENCHMARK(BM_Coarsen)->Unit(benchmark::kMicrosecond);

void BM_CheapestPath(benchmark::State& state) {
  const Fixture& f = fixture(100);
  int n = f.substrate.node_count();
  int from = 0;
  for (auto _ : state) {
    int to = (from + n / 2) % n;
    auto p = cheapest_feasible_path(f.substrate, from, to, 2, 25.0);
    benchmark::DoNotOptimize(p);
    from = (from + 1) % n;
  }
}
BENCHMARK(BM_CheapestPath)->Unit(benchmark::kMicrosecond);

void BM_SimulateSmallDay(benchmark::State& state) {
  WorkloadConfig cfg;
  cfg.seed = 7;
  cfg.sn_nodes = 30;
  cfg.sn_links = 60;
  cfg.vn_count = 100;
  cfg.vn_size_range = {2, 6};
  GeneratedWorkload w = generate_workload(cfg);
  std::vector<VNRequest> requests;
  for (const GeneratedRequest& r : w.requests) requests.push_back(r.request);
  SimConfig sim;
  sim.horizon = 2000;
  sim.sample_every = 200;
  for (auto _ : state) {
    SimResult result = run_simulation(w.substrate.network, requests, sim);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_SimulateSmallDay)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
