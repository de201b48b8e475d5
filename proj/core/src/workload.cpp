#include "vnesim/workload.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "vnesim/brite.hpp"
#include "vnesim/textio.hpp"

namespace vnesim {

namespace {

using Point = std::pair<double, double>;
using EdgeList = std::vector<std::pair<int, int>>;

double euclid(const Point& p, const Point& q) {
  double dx = p.first - q.first;
  double dy = p.second - q.second;
  return std::sqrt(dx * dx + dy * dy);
}

double max_pairwise_distance(const std::vector<Point>& pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      best = std::max(best, euclid(pts[i], pts[j]));
  }
  return best > 0.0 ? best : 1.0;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx == ry) return false;
    parent[static_cast<std::size_t>(rx)] = ry;
    return true;
  }
};

// Joins components with the shortest available cross edge until the graph
// is connected.  Ties break on the smaller node pair, so no randomness.
void repair_connectivity(int n, const std::vector<Point>& pts, EdgeList& edges) {
  UnionFind uf(n);
  int components = n;
  for (const auto& [u, v] : edges) {
    if (uf.unite(u, v)) --components;
  }
  while (components > 1) {
    int bu = -1, bv = -1;
    double bd = 0.0;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (uf.find(u) == uf.find(v)) continue;
        double d = euclid(pts[static_cast<std::size_t>(u)], pts[static_cast<std::size_t>(v)]);
        if (bu == -1 || d < bd) {
          bu = u;
          bv = v;
          bd = d;
        }
      }
    }
    edges.emplace_back(bu, bv);
    uf.unite(bu, bv);
    --components;
  }
}

// Bridge flags per edge index (an edge is a bridge when removing it
// disconnects the graph), via one depth-first low-link pass.
std::vector<char> find_bridges(int n, const EdgeList& edges) {
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[static_cast<std::size_t>(edges[i].first)].emplace_back(edges[i].second,
                                                               static_cast<int>(i));
    adj[static_cast<std::size_t>(edges[i].second)].emplace_back(edges[i].first,
                                                                static_cast<int>(i));
  }
  std::vector<char> bridge(edges.size(), 0);
  std::vector<int> tin(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  int timer = 0;
  std::function<void(int, int)> dfs = [&](int u, int via_edge) {
    tin[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
    for (auto [v, eid] : adj[static_cast<std::size_t>(u)]) {
      if (eid == via_edge) continue;
      if (tin[static_cast<std::size_t>(v)] != -1) {
        low[static_cast<std::size_t>(u)] =
            std::min(low[static_cast<std::size_t>(u)], tin[static_cast<std::size_t>(v)]);
      } else {
        dfs(v, eid);
        low[static_cast<std::size_t>(u)] =
            std::min(low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(v)]);
        if (low[static_cast<std::size_t>(v)] > tin[static_cast<std::size_t>(u)])
          bridge[static_cast<std::size_t>(eid)] = 1;
      }
    }
  };
  for (int u = 0; u < n; ++u) {
    if (tin[static_cast<std::size_t>(u)] == -1) dfs(u, -1);
  }
  return bridge;
}

std::vector<Point> draw_positions(int n, double plane, Rng& rng) {
  std::uniform_real_distribution<double> coord(0.0, plane);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = coord(rng);
    double y = coord(rng);
    pts.emplace_back(x, y);
  }
  return pts;
}

}  // namespace

GeneratedSubstrate generate_substrate(const WorkloadConfig& cfg, Rng& rng) {
  int n = cfg.sn_nodes;
  long long max_links = static_cast<long long>(n) * (n - 1) / 2;
  if (n < 1) throw std::invalid_argument("sn_nodes must be at least 1");
  if (cfg.sn_links < n - 1)
    throw std::invalid_argument("sn_links cannot connect sn_nodes nodes");
  if (cfg.sn_links > max_links)
    throw std::invalid_argument("sn_links exceeds the simple-graph maximum");
  if (cfg.server_profiles.empty()) throw std::invalid_argument("no server profiles");
  if (cfg.waxman_alpha <= 0.0 || cfg.waxman_beta <= 0.0 || cfg.plane_size <= 0.0)
    throw std::invalid_argument("waxman parameters must be positive");
  if (cfg.sn_bw_range.lo > cfg.sn_bw_range.hi)
    throw std::invalid_argument("sn_bw_range is inverted");

  // Draw order: positions; one acceptance draw per node pair; grow draws
  // (two endpoints plus one acceptance each attempt) or one index per
  // trimmed edge; node cpus; link bandwidths.
  std::vector<Point> pts = draw_positions(n, cfg.plane_size, rng);
  double scale = max_pairwise_distance(pts);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  EdgeList edges;
  std::set<std::pair<int, int>> present;
  auto add_edge = [&edges, &present](int u, int v) {
    edges.emplace_back(u, v);
    present.insert(u < v ? std::pair{u, v} : std::pair{v, u});
  };
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      double d = euclid(pts[static_cast<std::size_t>(u)], pts[static_cast<std::size_t>(v)]);
      double p = cfg.waxman_alpha * std::exp(-d / (cfg.waxman_beta * scale));
      if (unit(rng) < p) add_edge(u, v);
    }
  }

  {
    EdgeList repaired = edges;
    repair_connectivity(n, pts, repaired);
    for (std::size_t i = edges.size(); i < repaired.size(); ++i)
      add_edge(repaired[i].first, repaired[i].second);
  }

  std::uniform_int_distribution<int> any_node(0, n - 1);
  while (static_cast<long long>(edges.size()) < cfg.sn_links) {
    int u = any_node(rng);
    int v = any_node(rng);
    if (u == v) continue;
    if (present.count(u < v ? std::pair{u, v} : std::pair{v, u})) continue;
    double d = euclid(pts[static_cast<std::size_t>(u)], pts[static_cast<std::size_t>(v)]);
    double p = cfg.waxman_alpha * std::exp(-d / (cfg.waxman_beta * scale));
    if (unit(rng) < p) add_edge(u, v);
  }
  while (static_cast<long long>(edges.size()) > cfg.sn_links) {
    std::vector<char> bridge = find_bridges(n, edges);
    std::vector<std::size_t> removable;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!bridge[i]) removable.push_back(i);
    }
    // A connected graph with more than n-1 edges always has a cycle edge.
    std::uniform_int_distribution<std::size_t> pick(0, removable.size() - 1);
    edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(removable[pick(rng)]));
  }

  GeneratedSubstrate out;
  out.positions = pts;
  std::uniform_int_distribution<std::size_t> profile(0, cfg.server_profiles.size() - 1);
  for (int i = 0; i < n; ++i)
    out.network.add_node(cfg.server_profiles[profile(rng)].cpu_capacity);
  std::uniform_real_distribution<double> bw(cfg.sn_bw_range.lo, cfg.sn_bw_range.hi);
  for (const auto& [u, v] : edges) out.network.add_link(u, v, bw(rng));
  return out;
}

namespace {

// Acceptance scale a such that the expected edge count sum(min(1, a*q))
// hits the target, found by bisection (the sum is monotone in a).
double density_scale(const std::vector<double>& q, double target_edges) {
  if (q.empty()) return 0.0;
  double q_min = *std::min_element(q.begin(), q.end());
  double hi = q_min > 0.0 ? 1.0 / q_min : 1.0;
  double f_hi = 0.0;
  for (double x : q) f_hi += std::min(1.0, hi * x);
  while (f_hi < target_edges && hi < 1e18) {
    hi *= 2.0;
    f_hi = 0.0;
    for (double x : q) f_hi += std::min(1.0, hi * x);
  }
  double lo = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    double mid = (lo + hi) / 2.0;
    double f = 0.0;
    for (double x : q) f += std::min(1.0, mid * x);
    if (f < target_edges)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

VirtualNetwork build_request_topology(int size, const WorkloadConfig& cfg, Rng& rng,
                                      std::vector<Point>& pts_out) {
  std::vector<Point> pts = draw_positions(size, cfg.plane_size, rng);
  double scale = max_pairwise_distance(pts);
  std::vector<double> q;
  for (int u = 0; u < size; ++u) {
    for (int v = u + 1; v < size; ++v) {
      double d = euclid(pts[static_cast<std::size_t>(u)], pts[static_cast<std::size_t>(v)]);
      q.push_back(std::exp(-d / (cfg.waxman_beta * scale)));
    }
  }
  double pairs = static_cast<double>(q.size());
  double a = density_scale(q, cfg.vn_connectivity * pairs);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  EdgeList edges;
  std::size_t qi = 0;
  for (int u = 0; u < size; ++u) {
    for (int v = u + 1; v < size; ++v, ++qi) {
      double p = std::min(1.0, a * q[qi]);
      if (unit(rng) < p) edges.emplace_back(u, v);
    }
  }
  repair_connectivity(size, pts, edges);

  VirtualNetwork vn;
  std::uniform_int_distribution<std::size_t> cpu_pick(0, cfg.vn_cpu_choices.size() - 1);
  for (int i = 0; i < size; ++i) vn.add_node(cfg.vn_cpu_choices[cpu_pick(rng)]);
  std::uniform_real_distribution<double> bw(cfg.vn_bw_range.lo, cfg.vn_bw_range.hi);
  for (const auto& [u, v] : edges) vn.add_link(u, v, bw(rng));
  pts_out = std::move(pts);
  return vn;
}

}  // namespace

std::vector<GeneratedRequest> generate_vnr_stream(const WorkloadConfig& cfg, Rng& rng) {
  if (cfg.vn_count < 0) throw std::invalid_argument("vn_count must be non-negative");
  if (cfg.vn_size_range.lo < 1 || cfg.vn_size_range.lo > cfg.vn_size_range.hi)
    throw std::invalid_argument("vn_size_range is invalid");
  if (cfg.vn_connectivity <= 0.0 || cfg.vn_connectivity > 1.0)
    throw std::invalid_argument("vn_connectivity must be in (0, 1]");
  if (cfg.vn_cpu_choices.empty()) throw std::invalid_argument("no cpu choices");
  if (cfg.vn_bw_range.lo > cfg.vn_bw_range.hi)
    throw std::invalid_argument("vn_bw_range is inverted");
  if (cfg.arrival_rate <= 0.0) throw std::invalid_argument("arrival_rate must be positive");
  if (cfg.lifetime_range.lo > cfg.lifetime_range.hi)
    throw std::invalid_argument("lifetime_range is inverted");

  // Draw order per request: inter-arrival gap, lifetime, size, then the
  // topology (positions, pair acceptances, cpus, bandwidths).
  std::exponential_distribution<double> gap(cfg.arrival_rate);
  std::uniform_real_distribution<double> lifetime(cfg.lifetime_range.lo, cfg.lifetime_range.hi);
  std::uniform_int_distribution<int> size_pick(cfg.vn_size_range.lo, cfg.vn_size_range.hi);

  std::vector<GeneratedRequest> out;
  double t = 0.0;
  for (int i = 0; i < cfg.vn_count; ++i) {
    GeneratedRequest r;
    t += gap(rng);
    r.request.id = i;
    r.request.arrival = t;
    r.request.lifetime = lifetime(rng);
    int size = size_pick(rng);
    r.request.network = build_request_topology(size, cfg, rng, r.positions);
    out.push_back(std::move(r));
  }
  return out;
}

GeneratedWorkload generate_workload(const WorkloadConfig& cfg) {
  Rng rng(cfg.seed);
  GeneratedWorkload w;
  w.substrate = generate_substrate(cfg, rng);
  w.requests = generate_vnr_stream(cfg, rng);
  return w;
}

namespace {

std::string request_filename(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "vnr_%05d.brite", index);
  return buf;
}

}  // namespace

void write_workload(const GeneratedWorkload& w, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_brite_file(to_brite(w.substrate.network, w.substrate.positions), dir / "substrate.brite");
  std::ofstream manifest(dir / "manifest.txt");
  if (!manifest) throw std::runtime_error("cannot write manifest in " + dir.string());
  for (std::size_t i = 0; i < w.requests.size(); ++i) {
    const GeneratedRequest& r = w.requests[i];
    std::string name = request_filename(static_cast<int>(i));
    write_brite_file(
        to_brite(r.request.network, r.positions, r.request.arrival, r.request.lifetime),
        dir / name);
    manifest << name << " " << format_real(r.request.arrival) << " "
             << format_real(r.request.lifetime) << "\n";
  }
  if (!manifest.flush()) throw std::runtime_error("manifest write failed in " + dir.string());
}

Workload load_workload(const std::filesystem::path& dir) {
  Workload w;
  w.substrate = substrate_from_brite(read_brite_file(dir / "substrate.brite"));

  std::ifstream manifest(dir / "manifest.txt");
  if (!manifest) throw std::runtime_error("cannot open manifest in " + dir.string());
  std::string line;
  int line_no = 0;
  int id = 0;
  double prev_arrival = 0.0;
  while (std::getline(manifest, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream is(line);
    std::string name, arrival_text, lifetime_text;
    if (!(is >> name >> arrival_text >> lifetime_text))
      throw std::runtime_error(dir.string() + "/manifest.txt:" + std::to_string(line_no) +
                               ": expected '<path> <arrival> <lifetime>'");
    std::string extra;
    if (is >> extra)
      throw std::runtime_error(dir.string() + "/manifest.txt:" + std::to_string(line_no) +
                               ": trailing fields");
    BriteDocument doc = read_brite_file(dir / name);
    if (!doc.arrival || !doc.lifetime)
      throw std::runtime_error(dir.string() + "/" + name + ": missing arrival or lifetime");
    double arrival = parse_real(arrival_text);
    double lifetime = parse_real(lifetime_text);
    if (arrival != *doc.arrival || lifetime != *doc.lifetime)
      throw std::runtime_error(dir.string() + "/manifest.txt:" + std::to_string(line_no) +
                               ": manifest disagrees with " + name);
    if (id > 0 && arrival < prev_arrival)
      throw std::runtime_error(dir.string() + "/manifest.txt:" + std::to_string(line_no) +
                               ": not sorted by arrival");
    prev_arrival = arrival;
    VNRequest req;
    req.id = id++;
    req.network = virtual_from_brite(doc);
    req.arrival = arrival;
    req.lifetime = lifetime;
    w.requests.push_back(std::move(req));
  }
  return w;
}

}  // namespace vnesim
