#include "vnesim/hem.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "vnesim/subgraph.hpp"

namespace vnesim {

namespace {

struct WorkLink {
  int a = -1;  // super-node ids, a < b
  int b = -1;
  std::vector<int> constituents;  // ascending original link ids
  double bw = 0.0;
  int sort_id() const { return constituents.front(); }
};

struct WorkGraph {
  const VirtualNetwork* vn = nullptr;
  std::map<int, SuperNode> supers;  // keyed by super-node id
  std::vector<WorkLink> links;

  // Canonical sums, recomputed from members / constituents in ascending id
  // order so the value never depends on merge history.
  double node_cpu(const std::vector<int>& members) const {
    double s = 0.0;
    for (int m : members) s += vn->node(m).cpu_demand;
    return s;
  }
  double link_bw(const std::vector<int>& constituents) const {
    double s = 0.0;
    for (int c : constituents) s += vn->link(c).bw_demand;
    return s;
  }
};

WorkGraph initial_graph(const VirtualNetwork& vn) {
  WorkGraph g;
  g.vn = &vn;
  for (const VirtualNode& n : vn.nodes()) g.supers[n.id] = {n.id, {n.id}, n.cpu_demand};
  for (const VirtualLink& l : vn.links()) g.links.push_back({l.a, l.b, {l.id}, l.bw_demand});
  return g;
}

std::vector<std::size_t> scan_order(const WorkGraph& g) {
  std::vector<std::size_t> order(g.links.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&g](std::size_t x, std::size_t y) {
    const WorkLink& lx = g.links[x];
    const WorkLink& ly = g.links[y];
    if (lx.bw != ly.bw) return lx.bw > ly.bw;
    return lx.sort_id() < ly.sort_id();
  });
  return order;
}

// Contracts the endpoints of g.links[pos] into one super-node and collapses
// any parallel links this creates.  The merged link's constituents become
// internal.
void merge_link(WorkGraph& g, std::size_t pos, std::vector<int>& internal) {
  WorkLink merged = g.links[pos];
  int keep = std::min(merged.a, merged.b);
  int drop = std::max(merged.a, merged.b);
  for (int c : merged.constituents) internal.push_back(c);
  g.links.erase(g.links.begin() + static_cast<std::ptrdiff_t>(pos));

  SuperNode& target = g.supers.at(keep);
  SuperNode& gone = g.supers.at(drop);
  target.members.insert(target.members.end(), gone.members.begin(), gone.members.end());
  std::sort(target.members.begin(), target.members.end());
  target.cpu_demand = g.node_cpu(target.members);
  g.supers.erase(drop);

  // Re-point links touching the dropped super-node, then collapse parallels.
  for (WorkLink& l : g.links) {
    if (l.a == drop) l.a = keep;
    if (l.b == drop) l.b = keep;
    if (l.a > l.b) std::swap(l.a, l.b);
  }
  std::map<std::pair<int, int>, std::size_t> seen;
  std::vector<WorkLink> collapsed;
  for (WorkLink& l : g.links) {
    auto key = std::pair{l.a, l.b};
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen[key] = collapsed.size();
      collapsed.push_back(std::move(l));
    } else {
      WorkLink& into = collapsed[it->second];
      into.constituents.insert(into.constituents.end(), l.constituents.begin(),
                               l.constituents.end());
      std::sort(into.constituents.begin(), into.constituents.end());
      into.bw = g.link_bw(into.constituents);
    }
  }
  g.links = std::move(collapsed);
}

}  // namespace

CoarsenedVN coarsen(const VirtualNetwork& vn, double cpu_max, CoarsenScan scan) {
  WorkGraph g = initial_graph(vn);
  std::vector<int> internal;

  bool merged_any = true;
  while (merged_any) {
    merged_any = false;
    std::vector<std::size_t> order = scan_order(g);
    // Snapshot the entries so a position stays meaningful after merges in
    // the continue-scan variant: an entry is skipped when its link no
    // longer exists unchanged.
    std::vector<WorkLink> snapshot;
    snapshot.reserve(order.size());
    for (std::size_t i : order) snapshot.push_back(g.links[i]);
    for (const WorkLink& want : snapshot) {
      std::size_t pos = g.links.size();
      for (std::size_t i = 0; i < g.links.size(); ++i) {
        const WorkLink& l = g.links[i];
        if (l.a == want.a && l.b == want.b && l.constituents == want.constituents) {
          pos = i;
          break;
        }
      }
      if (pos == g.links.size()) continue;  // changed by an earlier merge
      const WorkLink& l = g.links[pos];
      double joint = g.supers.at(l.a).cpu_demand + g.supers.at(l.b).cpu_demand;
      if (joint > cpu_max) continue;
      merge_link(g, pos, internal);
      merged_any = true;
      if (scan == CoarsenScan::RestartAfterMerge) break;
    }
  }

  CoarsenedVN out;
  for (auto& [id, s] : g.supers) out.super_nodes.push_back(std::move(s));
  for (WorkLink& l : g.links)
    out.super_links.push_back({l.sort_id(), l.a, l.b, std::move(l.constituents), l.bw});
  std::sort(out.super_links.begin(), out.super_links.end(),
            [](const SuperLink& x, const SuperLink& y) { return x.id < y.id; });
  std::sort(internal.begin(), internal.end());
  out.internal_links = std::move(internal);
  return out;
}

VirtualNetwork coarse_as_network(const CoarsenedVN& cvn) {
  VirtualNetwork g;
  std::map<int, int> dense;  // super-node id -> dense index
  for (const SuperNode& s : cvn.super_nodes) dense[s.id] = g.add_node(s.cpu_demand);
  for (const SuperLink& l : cvn.super_links) g.add_link(dense.at(l.a), dense.at(l.b), l.bw_demand);
  return g;
}

Mapping expand_mapping(const Mapping& coarse, const CoarsenedVN& cvn,
                       const VirtualNetwork& vn) {
  Mapping full;
  std::map<int, int> host_of_node;
  for (const SuperNode& s : cvn.super_nodes) {
    int host = coarse.node_map.at(s.id);
    for (int m : s.members) {
      full.node_map[m] = host;
      host_of_node[m] = host;
    }
  }
  for (const SuperLink& l : cvn.super_links) {
    for (int c : l.constituents) full.link_map[c] = coarse.link_map.at(c);
  }
  for (int c : cvn.internal_links) {
    int host = host_of_node.at(vn.link(c).a);
    full.link_map[c] = Path{host, host, {}};
  }
  return full;
}

namespace {

// The coarse demand graph with dense ids, carrying per-constituent
// bandwidths, plus the translation back to super-node ids.
struct CoarseProblem {
  EmbedProblem problem;
  std::vector<int> super_of;  // dense node index -> super-node id
};

CoarseProblem make_coarse_problem(const CoarsenedVN& cvn, const VirtualNetwork& vn) {
  CoarseProblem cp;
  std::map<int, int> dense;
  for (const SuperNode& s : cvn.super_nodes) {
    dense[s.id] = cp.problem.graph.add_node(s.cpu_demand);
    cp.super_of.push_back(s.id);
  }
  cp.problem.original_bw.resize(static_cast<std::size_t>(vn.link_count()));
  for (const VirtualLink& l : vn.links())
    cp.problem.original_bw[static_cast<std::size_t>(l.id)] = l.bw_demand;
  for (const SuperLink& l : cvn.super_links) {
    cp.problem.graph.add_link(dense.at(l.a), dense.at(l.b), l.bw_demand);
    std::vector<LinkDemand> parts;
    parts.reserve(l.constituents.size());
    for (int c : l.constituents) parts.push_back({c, vn.link(c).bw_demand});
    std::sort(parts.begin(), parts.end(), [](const LinkDemand& x, const LinkDemand& y) {
      if (x.bw != y.bw) return x.bw > y.bw;
      return x.link_id < y.link_id;
    });
    cp.problem.constituents.push_back(std::move(parts));
  }
  return cp;
}

}  // namespace

EmbedOutcome bfsn_hem_embed(const VirtualNetwork& vn, const SubstrateNetwork& sn, int max_hops,
                            long long max_backtrack, BacktrackCounting counting,
                            CoarsenScan scan) {
  EmbedOutcome outcome;
  for (const SubSubstrate& sub : candidate_subnetworks(sn, vn, max_hops)) {
    ++outcome.subnets_tried;
    double cpu_max = 0.0;
    for (int h : sub.host_nodes) cpu_max = std::max(cpu_max, sn.node(h).cpu_residual());
    CoarsenedVN cvn = coarsen(vn, cpu_max, scan);
    CoarseProblem cp = make_coarse_problem(cvn, vn);
    EmbedOrder order = build_embed_order(cp.problem.graph);
    EmbedAttempt attempt;
    attempt.working_sn = sn;
    bool ok = embed_recursive(cp.problem, order, 0, sub, attempt, max_hops, max_backtrack,
                              counting);
    outcome.backtracks += attempt.backtrack_count;
    if (!ok) continue;
    Mapping coarse;
    coarse.link_map = attempt.partial_mapping.link_map;
    for (const auto& [dense_id, host] : attempt.partial_mapping.node_map)
      coarse.node_map[cp.super_of[static_cast<std::size_t>(dense_id)]] = host;
    outcome.mapping = expand_mapping(coarse, cvn, vn);
    return outcome;
  }
  return outcome;
}

}  // namespace vnesim
