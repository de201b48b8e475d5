#include "vnesim/pathing.hpp"

#include <algorithm>
#include <stdexcept>

namespace vnesim {

namespace {

// Node sequences per visited node, grown level by level.  Every minimum-hop
// path to a node at level d extends a minimum-hop path to some neighbour at
// level d-1, so taking the lexicographically smallest parent sequence at
// each level yields the lexicographically smallest sequence overall.
struct Sweep {
  std::vector<std::vector<int>> seq;  // empty = unvisited
  std::vector<int> order;             // visited nodes in discovery order
};

Sweep sweep(const SubstrateNetwork& sn, int root, int max_hops, double min_bw) {
  if (!sn.has_node(root)) throw std::out_of_range("unknown root node");
  Sweep s;
  s.seq.resize(static_cast<std::size_t>(sn.node_count()));
  s.seq[static_cast<std::size_t>(root)] = {root};
  s.order.push_back(root);
  std::vector<int> frontier{root};
  for (int depth = 1; depth <= max_hops && !frontier.empty(); ++depth) {
    std::vector<int> next;
    for (int u : frontier) {
      for (int lid : sn.incident_links(u)) {
        const SubstrateLink& l = sn.link(lid);
        if (l.bw_residual() < min_bw) continue;
        int v = l.other(u);
        auto& sv = s.seq[static_cast<std::size_t>(v)];
        if (!sv.empty()) {
          // Already visited: keep only a same-level improvement.
          if (sv.size() != s.seq[static_cast<std::size_t>(u)].size() + 1) continue;
          const auto& su = s.seq[static_cast<std::size_t>(u)];
          bool better = std::lexicographical_compare(su.begin(), su.end(), sv.begin(),
                                                     sv.end() - 1);
          if (!better) continue;
          sv.assign(su.begin(), su.end());
          sv.push_back(v);
        } else {
          sv = s.seq[static_cast<std::size_t>(u)];
          sv.push_back(v);
          next.push_back(v);
          s.order.push_back(v);
        }
      }
    }
    frontier = std::move(next);
  }
  return s;
}

Path path_from_sequence(const SubstrateNetwork& sn, const std::vector<int>& seq) {
  Path p;
  p.from = seq.front();
  p.to = seq.back();
  for (std::size_t i = 1; i < seq.size(); ++i) {
    int lid = sn.find_link(seq[i - 1], seq[i]);
    p.links.push_back(lid);
  }
  return p;
}

}  // namespace

std::vector<ReachabilityEntry> bfs_reachable(const SubstrateNetwork& sn, int root,
                                             int max_hops, double min_bw) {
  Sweep s = sweep(sn, root, max_hops, min_bw);
  std::vector<ReachabilityEntry> out;
  out.reserve(s.order.size());
  std::sort(s.order.begin(), s.order.end());
  for (int v : s.order) {
    out.push_back({v, path_from_sequence(sn, s.seq[static_cast<std::size_t>(v)])});
  }
  return out;
}

std::optional<Path> cheapest_feasible_path(const SubstrateNetwork& sn, int src, int dst,
                                           int max_hops, double bw) {
  if (!sn.has_node(src) || !sn.has_node(dst)) throw std::out_of_range("unknown endpoint");
  if (src == dst) return Path{src, dst, {}};
  Sweep s = sweep(sn, src, max_hops, bw);
  const auto& seq = s.seq[static_cast<std::size_t>(dst)];
  if (seq.empty()) return std::nullopt;
  return path_from_sequence(sn, seq);
}

bool path_exists(const SubstrateNetwork& sn, int src, int dst, int max_hops, double bw) {
  return cheapest_feasible_path(sn, src, dst, max_hops, bw).has_value();
}

}  // namespace vnesim
