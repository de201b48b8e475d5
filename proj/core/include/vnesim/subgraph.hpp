#pragma once

#include <vector>

#include "vnesim/graph.hpp"

namespace vnesim {

struct SubSubstrate {
  std::vector<int> host_nodes;  // ascending substrate node ids
  double total_resources = 0.0;
  bool operator==(const SubSubstrate&) const = default;
};

// Connected components of the demand-filtered substrate: member nodes need
// cpu_residual >= min_cpu, and two members are adjacent when some loop-free
// path of at most max_hops links, each with bw_residual >= min_bw, joins
// them.  Relay nodes on such paths do not need to pass the cpu filter.
// Components are discovered by scanning qualifying nodes in ascending id
// order and growing each unassigned one breadth-first.
std::vector<SubSubstrate> filtered_components(const SubstrateNetwork& sn, double min_cpu,
                                              double min_bw, int max_hops);

// Candidate sub-substrates for a request: filtered_components with
// min_cpu / min_bw taken as the smallest cpu and bw demand of vn, culled by
// has_enough_resources and sorted ascending by total_resources (ties by
// smallest member id) so the tightest sufficient component comes first.
std::vector<SubSubstrate> candidate_subnetworks(const SubstrateNetwork& sn,
                                                const VirtualNetwork& vn, int max_hops);

// Aggregate feasibility cull: the hosts' summed cpu residual covers the
// summed cpu demand, and the summed bw residual of substrate links with
// both endpoints among the hosts covers the summed bw demand.
bool has_enough_resources(const SubSubstrate& sub, const SubstrateNetwork& sn,
                          const VirtualNetwork& vn);

// Sum over hosts of cpu residual plus incident internal bandwidth, where
// internal means both link endpoints are hosts (each internal link is seen
// from both ends and therefore counted twice).
double total_available_resources(const SubSubstrate& sub, const SubstrateNetwork& sn);

}  // namespace vnesim
