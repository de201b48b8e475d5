#pragma once

#include <vector>

#include "vnesim/bfsn.hpp"
#include "vnesim/graph.hpp"

namespace vnesim {

// A group of original virtual nodes acting as one placement unit.  The id
// is the smallest member id; cpu_demand is the members' summed demand.
struct SuperNode {
  int id = -1;
  std::vector<int> members;  // ascending original node ids
  double cpu_demand = 0.0;
  bool operator==(const SuperNode&) const = default;
};

// A bundle of original links joining two super-nodes.  The id is the
// smallest constituent id; bw_demand is the constituents' summed demand.
// Each constituent keeps its own bandwidth and is routed individually.
struct SuperLink {
  int id = -1;
  int a = -1;  // endpoint super-node ids, a < b
  int b = -1;
  std::vector<int> constituents;  // ascending original link ids
  double bw_demand = 0.0;
  bool operator==(const SuperLink&) const = default;
};

struct CoarsenedVN {
  std::vector<SuperNode> super_nodes;   // ascending id
  std::vector<SuperLink> super_links;   // ascending id
  std::vector<int> internal_links;      // original links absorbed into a super-node
  bool operator==(const CoarsenedVN&) const = default;
};

// After a merge, either re-scan the re-sorted link list from the top
// (default) or finish the current pass before re-sorting.
enum class CoarsenScan { RestartAfterMerge, ContinueDownList };

// Heavy-edge matching under a cpu cap: repeatedly scan the links in
// descending bw order (ties by smaller link id) and merge the endpoints of
// the first link whose combined cpu demand stays within cpu_max, collapsing
// any parallel links that result.  Stops when no link is mergeable.
CoarsenedVN coarsen(const VirtualNetwork& vn, double cpu_max,
                    CoarsenScan scan = CoarsenScan::RestartAfterMerge);

// The coarse topology as a plain network: nodes are super-nodes in
// ascending id order re-indexed densely, links carry the aggregate bw.
VirtualNetwork coarse_as_network(const CoarsenedVN& cvn);

// Expands a coarse mapping (node_map keyed by super-node id, link_map
// already keyed by constituent original link id) onto the original
// request: members inherit their super-node's host and internal links
// become empty co-location paths.
Mapping expand_mapping(const Mapping& coarse, const CoarsenedVN& cvn,
                       const VirtualNetwork& vn);

// Online embedding of a request after coarsening.  Candidate
// sub-substrates come from the original demands; each is coarsened under
// its own cpu cap (the largest cpu residual among its hosts) and searched
// with the same recursion as the uncoarsened algorithm, every super-link
// constituent getting its own substrate path.
EmbedOutcome bfsn_hem_embed(const VirtualNetwork& vn, const SubstrateNetwork& sn, int max_hops,
                            long long max_backtrack,
                            BacktrackCounting counting = BacktrackCounting::ExhaustionsOnly,
                            CoarsenScan scan = CoarsenScan::RestartAfterMerge);

}  // namespace vnesim
