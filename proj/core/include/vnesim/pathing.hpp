#pragma once

#include <optional>
#include <vector>

#include "vnesim/graph.hpp"

namespace vnesim {

struct ReachabilityEntry {
  int node = -1;
  Path best_path;
  bool operator==(const ReachabilityEntry&) const = default;
};

// Breadth-first sweep from root over links whose residual bandwidth is at
// least min_bw.  Returns one entry per reachable node (root included, with
// an empty path), sorted by node id.  best_path is a minimum-hop path; hop
// ties are broken by the lexicographically smallest node-id sequence, which
// makes the choice unique.
std::vector<ReachabilityEntry> bfs_reachable(const SubstrateNetwork& sn, int root,
                                             int max_hops, double min_bw);

// Minimum-hop path from src to dst whose links all carry at least bw of
// residual bandwidth, within max_hops; ties broken as above.  src == dst
// yields the empty path regardless of bw.  nullopt when unreachable.
std::optional<Path> cheapest_feasible_path(const SubstrateNetwork& sn, int src, int dst,
                                           int max_hops, double bw);

bool path_exists(const SubstrateNetwork& sn, int src, int dst, int max_hops, double bw);

}  // namespace vnesim
