#include "vnesim/subgraph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "vnesim/pathing.hpp"

namespace vnesim {

std::vector<SubSubstrate> filtered_components(const SubstrateNetwork& sn, double min_cpu,
                                              double min_bw, int max_hops) {
  int n = sn.node_count();
  std::vector<char> qualifies(static_cast<std::size_t>(n), 0);
  for (const SubstrateNode& node : sn.nodes()) {
    if (node.cpu_residual() >= min_cpu) qualifies[static_cast<std::size_t>(node.id)] = 1;
  }
  std::vector<char> assigned(static_cast<std::size_t>(n), 0);
  std::vector<SubSubstrate> out;
  for (int start = 0; start < n; ++start) {
    if (!qualifies[static_cast<std::size_t>(start)] ||
        assigned[static_cast<std::size_t>(start)])
      continue;
    SubSubstrate comp;
    std::deque<int> queue{start};
    assigned[static_cast<std::size_t>(start)] = 1;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      comp.host_nodes.push_back(u);
      for (const ReachabilityEntry& e : bfs_reachable(sn, u, max_hops, min_bw)) {
        int v = e.node;
        if (!qualifies[static_cast<std::size_t>(v)] || assigned[static_cast<std::size_t>(v)])
          continue;
        assigned[static_cast<std::size_t>(v)] = 1;
        queue.push_back(v);
      }
    }
    std::sort(comp.host_nodes.begin(), comp.host_nodes.end());
    comp.total_resources = total_available_resources(comp, sn);
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<SubSubstrate> candidate_subnetworks(const SubstrateNetwork& sn,
                                                const VirtualNetwork& vn, int max_hops) {
  if (vn.node_count() == 0) throw std::invalid_argument("request has no nodes");
  double min_cpu = vn.node(0).cpu_demand;
  for (const VirtualNode& n : vn.nodes()) min_cpu = std::min(min_cpu, n.cpu_demand);
  double min_bw = 0.0;
  if (vn.link_count() > 0) {
    min_bw = vn.link(0).bw_demand;
    for (const VirtualLink& l : vn.links()) min_bw = std::min(min_bw, l.bw_demand);
  }
  std::vector<SubSubstrate> comps = filtered_components(sn, min_cpu, min_bw, max_hops);
  std::erase_if(comps, [&](const SubSubstrate& c) {
    return !has_enough_resources(c, sn, vn);
  });
  std::sort(comps.begin(), comps.end(), [](const SubSubstrate& x, const SubSubstrate& y) {
    if (x.total_resources != y.total_resources) return x.total_resources < y.total_resources;
    return x.host_nodes.front() < y.host_nodes.front();
  });
  return comps;
}

bool has_enough_resources(const SubSubstrate& sub, const SubstrateNetwork& sn,
                          const VirtualNetwork& vn) {
  if (sub.host_nodes.empty()) return false;
  std::vector<char> member(static_cast<std::size_t>(sn.node_count()), 0);
  double cpu_avail = 0.0;
  for (int h : sub.host_nodes) {
    member[static_cast<std::size_t>(h)] = 1;
    cpu_avail += sn.node(h).cpu_residual();
  }
  double bw_avail = 0.0;
  for (const SubstrateLink& l : sn.links()) {
    if (member[static_cast<std::size_t>(l.a)] && member[static_cast<std::size_t>(l.b)])
      bw_avail += l.bw_residual();
  }
  double cpu_need = 0.0;
  for (const VirtualNode& n : vn.nodes()) cpu_need += n.cpu_demand;
  double bw_need = 0.0;
  for (const VirtualLink& l : vn.links()) bw_need += l.bw_demand;
  return cpu_avail >= cpu_need && bw_avail >= bw_need;
}

double total_available_resources(const SubSubstrate& sub, const SubstrateNetwork& sn) {
  std::vector<char> member(static_cast<std::size_t>(sn.node_count()), 0);
  for (int h : sub.host_nodes) member[static_cast<std::size_t>(h)] = 1;
  double total = 0.0;
  for (int h : sub.host_nodes) {
    total += sn.node(h).cpu_residual();
    for (int lid : sn.incident_links(h)) {
      const SubstrateLink& l = sn.link(lid);
      if (member[static_cast<std::size_t>(l.a)] && member[static_cast<std::size_t>(l.b)])
        total += l.bw_residual();
    }
  }
  return total;
}

}  // namespace vnesim
