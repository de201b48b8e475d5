#pragma once

#include <optional>
#include <vector>

#include "vnesim/bfsn.hpp"
#include "vnesim/graph.hpp"

namespace vnesim {

enum class OracleObjective { Feasibility, MinCost };

// Exhaustive search over every node assignment (co-location allowed) and
// every per-link loop-free path choice within max_hops, under joint
// residual constraints.  Feasibility returns the first complete embedding
// in lexicographic assignment order; MinCost visits everything and keeps
// the cheapest (ties resolved by the same lexicographic order).  hosts, if
// given, restricts node placement (relay nodes on paths stay unrestricted).
// Guarded to at most 6 virtual and 10 substrate nodes; larger instances
// throw.
std::optional<Mapping> oracle_embed(const VirtualNetwork& vn, const SubstrateNetwork& sn,
                                    int max_hops, OracleObjective objective,
                                    const std::vector<int>* hosts = nullptr);

// Every feasible embedding, in the oracle's enumeration order, up to limit
// entries.  Same guard as oracle_embed.
std::vector<Mapping> oracle_feasible_set(const VirtualNetwork& vn, const SubstrateNetwork& sn,
                                         int max_hops, std::size_t limit,
                                         const std::vector<int>* hosts = nullptr);

// Two-stage baseline: nodes in descending cpu demand order each take the
// substrate node with the highest node_resources that still has the cpu
// (hosts are never shared within one request); afterwards every virtual
// link takes the cheapest feasible path between the chosen hosts,
// reserving as it goes.  Any failure rejects the whole request.
EmbedOutcome greedy_embed(const VirtualNetwork& vn, const SubstrateNetwork& sn, int max_hops);

}  // namespace vnesim
