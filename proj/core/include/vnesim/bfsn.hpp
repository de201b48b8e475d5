#pragma once

#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "vnesim/graph.hpp"
#include "vnesim/subgraph.hpp"

namespace vnesim {

inline constexpr long long kUnboundedBacktrack = std::numeric_limits<long long>::max();

// Node placement order: breadth-first from the node with the largest
// node_resources (cpu demand plus incident bw demands, ties by smallest
// id), each level sorted descending by node_resources with the same tie
// rule.  tree_parent records the BFS tree edge of every non-root node.
struct EmbedOrder {
  std::vector<int> sequence;
  std::map<int, int> tree_parent;
  bool operator==(const EmbedOrder&) const = default;
};

EmbedOrder build_embed_order(const VirtualNetwork& vn);

// Search state for one sub-substrate attempt.  working_sn carries the
// tentative reservations of the partial mapping on top of the real
// residuals; backtrack_count increases as the search unwinds.
struct EmbedAttempt {
  Mapping partial_mapping;
  SubstrateNetwork working_sn;
  long long backtrack_count = 0;
};

// One feasible host for the node being placed.  link_plan holds the chosen
// path for every demand link towards an already-placed neighbour, keyed by
// virtual link id; link_cost is the sum of bw times path length over the
// plan, the sort key of the candidate list.
struct HostCandidate {
  int host = -1;
  std::map<int, Path> link_plan;
  double link_cost = 0.0;
};

// How the backtrack budget is consumed: counting one unit per exhausted
// candidate list (default), or one per undone placement.
enum class BacktrackCounting { ExhaustionsOnly, EveryDelete };

// The demand graph the recursion walks.  For a plain request each graph
// link stands for itself; a coarsened request aggregates several original
// links into one graph link, each keeping its own bandwidth.  Node and
// link ids of `graph` are dense; constituency is keyed by original link id.
struct LinkDemand {
  int link_id = -1;  // original virtual link id
  double bw = 0.0;
  bool operator==(const LinkDemand&) const = default;
};

struct EmbedProblem {
  VirtualNetwork graph;
  // Indexed by graph link id; entries sorted descending by bw, ties by
  // smaller original link id.
  std::vector<std::vector<LinkDemand>> constituents;
  // Indexed by original virtual link id.
  std::vector<double> original_bw;

  static EmbedProblem from(const VirtualNetwork& vn);
};

// Feasible hosts for order.sequence[idx] within sub, against the tentative
// residuals of attempt.working_sn.  The root's list is every host with
// enough cpu, sorted descending by substrate node_resources (ties by
// smallest id).  Later nodes additionally need, for every already-placed
// neighbour, a feasible path per demand constituent; constituents of one
// placement are reserved sequentially while planning, so a plan never
// overcommits a shared substrate link.  Lists are sorted ascending by
// link_cost, ties by smallest host id.  Placing a node on its neighbour's
// host is allowed and yields an empty path at zero cost.
std::vector<HostCandidate> candidate_hosts(const EmbedProblem& problem, const EmbedOrder& order,
                                           int idx, const SubSubstrate& sub,
                                           const EmbedAttempt& attempt, int max_hops);
std::vector<HostCandidate> candidate_hosts(const VirtualNetwork& vn, const EmbedOrder& order,
                                           int idx, const SubSubstrate& sub,
                                           const EmbedAttempt& attempt, int max_hops);

// Depth-first placement of order.sequence[idx:] with bounded backtracking.
// Each candidate is reserved, the next node recursed on, and on failure
// undone; when a candidate list is exhausted the backtrack counter
// increases, and once it passes max_backtrack the whole attempt unwinds.
// Returns true with attempt holding a complete mapping, or false with
// attempt restored to its entry state bit-for-bit.
bool embed_recursive(const EmbedProblem& problem, const EmbedOrder& order, int idx,
                     const SubSubstrate& sub, EmbedAttempt& attempt, int max_hops,
                     long long max_backtrack,
                     BacktrackCounting counting = BacktrackCounting::ExhaustionsOnly);
bool embed_recursive(const VirtualNetwork& vn, const EmbedOrder& order, int idx,
                     const SubSubstrate& sub, EmbedAttempt& attempt, int max_hops,
                     long long max_backtrack,
                     BacktrackCounting counting = BacktrackCounting::ExhaustionsOnly);

struct EmbedOutcome {
  std::optional<Mapping> mapping;
  int subnets_tried = 0;
  long long backtracks = 0;  // summed over all attempted sub-substrates

  bool accepted() const { return mapping.has_value(); }
};

// Full online embedding of one request: candidate sub-substrates are tried
// from the tightest sufficient one upwards, each with a fresh working copy
// and backtrack budget, and the first successful attempt wins.
EmbedOutcome bfsn_embed(const VirtualNetwork& vn, const SubstrateNetwork& sn, int max_hops,
                        long long max_backtrack,
                        BacktrackCounting counting = BacktrackCounting::ExhaustionsOnly);

}  // namespace vnesim
