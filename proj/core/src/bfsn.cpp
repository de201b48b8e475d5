#include "vnesim/bfsn.hpp"

#include <algorithm>
#include <stdexcept>

#include "vnesim/pathing.hpp"

namespace vnesim {

EmbedOrder build_embed_order(const VirtualNetwork& vn) {
  if (vn.node_count() == 0) throw std::invalid_argument("request has no nodes");
  auto resources = [&vn](int id) { return node_resources(vn, id); };
  auto by_resources_desc = [&](int x, int y) {
    double rx = resources(x), ry = resources(y);
    if (rx != ry) return rx > ry;
    return x < y;
  };

  int root = 0;
  for (int id = 1; id < vn.node_count(); ++id) {
    if (by_resources_desc(id, root)) root = id;
  }

  EmbedOrder order;
  std::vector<char> seen(static_cast<std::size_t>(vn.node_count()), 0);
  seen[static_cast<std::size_t>(root)] = 1;
  std::vector<int> level{root};
  while (!level.empty()) {
    std::sort(level.begin(), level.end(), by_resources_desc);
    order.sequence.insert(order.sequence.end(), level.begin(), level.end());
    std::vector<int> next;
    for (int u : level) {
      for (int lid : vn.incident_links(u)) {
        int v = vn.link(lid).other(u);
        if (seen[static_cast<std::size_t>(v)]) continue;
        seen[static_cast<std::size_t>(v)] = 1;
        order.tree_parent[v] = u;
        next.push_back(v);
      }
    }
    level = std::move(next);
  }
  if (static_cast<int>(order.sequence.size()) != vn.node_count())
    throw std::invalid_argument("request graph is not connected");
  return order;
}

EmbedProblem EmbedProblem::from(const VirtualNetwork& vn) {
  EmbedProblem p;
  p.graph = vn;
  p.constituents.resize(static_cast<std::size_t>(vn.link_count()));
  p.original_bw.resize(static_cast<std::size_t>(vn.link_count()));
  for (const VirtualLink& l : vn.links()) {
    p.constituents[static_cast<std::size_t>(l.id)] = {{l.id, l.bw_demand}};
    p.original_bw[static_cast<std::size_t>(l.id)] = l.bw_demand;
  }
  return p;
}

namespace {

// Demand links from the node being placed towards already-placed
// neighbours, in ascending graph link id order.
struct PlacedNeighbourLink {
  int graph_link = -1;
  int neighbour_host = -1;
  const std::vector<LinkDemand>* constituents = nullptr;
};

std::vector<PlacedNeighbourLink> placed_neighbour_links(const EmbedProblem& problem, int v,
                                                        const Mapping& partial) {
  std::vector<PlacedNeighbourLink> out;
  for (int lid : problem.graph.incident_links(v)) {
    int u = problem.graph.link(lid).other(v);
    auto it = partial.node_map.find(u);
    if (it == partial.node_map.end()) continue;
    out.push_back({lid, it->second, &problem.constituents[static_cast<std::size_t>(lid)]});
  }
  std::sort(out.begin(), out.end(), [](const PlacedNeighbourLink& x,
                                       const PlacedNeighbourLink& y) {
    return x.graph_link < y.graph_link;
  });
  return out;
}

// Exact per-constituent plan for placing v on host, reserving each chosen
// path before planning the next constituent (and undoing everything before
// returning) so that constituents sharing a substrate link cannot jointly
// exceed its residual.  Returns false when some constituent has no path.
bool plan_links(SubstrateNetwork& working, const std::vector<PlacedNeighbourLink>& demand,
                int host, int max_hops, std::map<int, Path>& plan, double& link_cost) {
  std::vector<std::pair<int, double>> reserved;  // substrate link id, bw
  bool ok = true;
  for (const PlacedNeighbourLink& d : demand) {
    for (const LinkDemand& c : *d.constituents) {
      std::optional<Path> p =
          cheapest_feasible_path(working, d.neighbour_host, host, max_hops, c.bw);
      if (!p) {
        ok = false;
        break;
      }
      for (int slid : p->links) {
        working.link(slid).bw.reserve(c.bw);
        reserved.emplace_back(slid, c.bw);
      }
      link_cost += c.bw * static_cast<double>(p->length());
      plan[c.link_id] = std::move(*p);
    }
    if (!ok) break;
  }
  for (std::size_t i = reserved.size(); i-- > 0;)
    working.link(reserved[i].first).bw.unreserve(reserved[i].second);
  return ok;
}

std::vector<HostCandidate> candidates_impl(const EmbedProblem& problem, const EmbedOrder& order,
                                           int idx, const SubSubstrate& sub,
                                           SubstrateNetwork& working, const Mapping& partial,
                                           int max_hops) {
  int v = order.sequence.at(static_cast<std::size_t>(idx));
  double demand = problem.graph.node(v).cpu_demand;
  std::vector<HostCandidate> out;

  if (idx == 0) {
    for (int h : sub.host_nodes) {
      if (working.node(h).cpu_residual() >= demand) out.push_back({h, {}, 0.0});
    }
    std::sort(out.begin(), out.end(), [&working](const HostCandidate& x, const HostCandidate& y) {
      double rx = node_resources(working, x.host), ry = node_resources(working, y.host);
      if (rx != ry) return rx > ry;
      return x.host < y.host;
    });
    return out;
  }

  std::vector<PlacedNeighbourLink> demand_links = placed_neighbour_links(problem, v, partial);
  // Cheap necessary filter: the host must be reachable from every placed
  // neighbour carrying at least the largest constituent of that link.
  std::vector<std::vector<char>> reach;
  reach.reserve(demand_links.size());
  for (const PlacedNeighbourLink& d : demand_links) {
    std::vector<char> ok(static_cast<std::size_t>(working.node_count()), 0);
    double largest = d.constituents->front().bw;
    for (const ReachabilityEntry& e :
         bfs_reachable(working, d.neighbour_host, max_hops, largest))
      ok[static_cast<std::size_t>(e.node)] = 1;
    reach.push_back(std::move(ok));
  }

  for (int h : sub.host_nodes) {
    if (working.node(h).cpu_residual() < demand) continue;
    bool filtered = false;
    for (const auto& ok : reach) {
      if (!ok[static_cast<std::size_t>(h)]) {
        filtered = true;
        break;
      }
    }
    if (filtered) continue;
    HostCandidate cand;
    cand.host = h;
    if (plan_links(working, demand_links, h, max_hops, cand.link_plan, cand.link_cost))
      out.push_back(std::move(cand));
  }
  std::sort(out.begin(), out.end(), [](const HostCandidate& x, const HostCandidate& y) {
    if (x.link_cost != y.link_cost) return x.link_cost < y.link_cost;
    return x.host < y.host;
  });
  return out;
}

void apply_candidate(const EmbedProblem& problem, EmbedAttempt& attempt, int v,
                     const HostCandidate& cand) {
  attempt.working_sn.node(cand.host).cpu.reserve(problem.graph.node(v).cpu_demand);
  attempt.partial_mapping.node_map[v] = cand.host;
  for (const auto& [orig_id, path] : cand.link_plan) {
    double bw = problem.original_bw[static_cast<std::size_t>(orig_id)];
    for (int slid : path.links) attempt.working_sn.link(slid).bw.reserve(bw);
    attempt.partial_mapping.link_map[orig_id] = path;
  }
}

void undo_candidate(const EmbedProblem& problem, EmbedAttempt& attempt, int v,
                    const HostCandidate& cand) {
  for (const auto& [orig_id, path] : cand.link_plan) {
    double bw = problem.original_bw[static_cast<std::size_t>(orig_id)];
    for (int slid : path.links) attempt.working_sn.link(slid).bw.unreserve(bw);
    attempt.partial_mapping.link_map.erase(orig_id);
  }
  attempt.working_sn.node(cand.host).cpu.unreserve(problem.graph.node(v).cpu_demand);
  attempt.partial_mapping.node_map.erase(v);
}

bool embed_recurse(const EmbedProblem& problem, const EmbedOrder& order, int idx,
                   const SubSubstrate& sub, EmbedAttempt& attempt, int max_hops,
                   long long max_backtrack, BacktrackCounting counting) {
  if (idx == static_cast<int>(order.sequence.size())) return true;
  int v = order.sequence.at(static_cast<std::size_t>(idx));
  std::vector<HostCandidate> cands = candidates_impl(
      problem, order, idx, sub, attempt.working_sn, attempt.partial_mapping, max_hops);
  for (const HostCandidate& cand : cands) {
    apply_candidate(problem, attempt, v, cand);
    if (embed_recurse(problem, order, idx + 1, sub, attempt, max_hops, max_backtrack, counting))
      return true;
    undo_candidate(problem, attempt, v, cand);
    if (counting == BacktrackCounting::EveryDelete) ++attempt.backtrack_count;
    if (attempt.backtrack_count > max_backtrack) return false;
  }
  if (counting == BacktrackCounting::ExhaustionsOnly) ++attempt.backtrack_count;
  return false;
}

}  // namespace

std::vector<HostCandidate> candidate_hosts(const EmbedProblem& problem, const EmbedOrder& order,
                                           int idx, const SubSubstrate& sub,
                                           const EmbedAttempt& attempt, int max_hops) {
  SubstrateNetwork scratch = attempt.working_sn;
  return candidates_impl(problem, order, idx, sub, scratch, attempt.partial_mapping, max_hops);
}

std::vector<HostCandidate> candidate_hosts(const VirtualNetwork& vn, const EmbedOrder& order,
                                           int idx, const SubSubstrate& sub,
                                           const EmbedAttempt& attempt, int max_hops) {
  return candidate_hosts(EmbedProblem::from(vn), order, idx, sub, attempt, max_hops);
}

bool embed_recursive(const EmbedProblem& problem, const EmbedOrder& order, int idx,
                     const SubSubstrate& sub, EmbedAttempt& attempt, int max_hops,
                     long long max_backtrack, BacktrackCounting counting) {
  return embed_recurse(problem, order, idx, sub, attempt, max_hops, max_backtrack, counting);
}

bool embed_recursive(const VirtualNetwork& vn, const EmbedOrder& order, int idx,
                     const SubSubstrate& sub, EmbedAttempt& attempt, int max_hops,
                     long long max_backtrack, BacktrackCounting counting) {
  return embed_recurse(EmbedProblem::from(vn), order, idx, sub, attempt, max_hops,
                       max_backtrack, counting);
}

EmbedOutcome bfsn_embed(const VirtualNetwork& vn, const SubstrateNetwork& sn, int max_hops,
                        long long max_backtrack, BacktrackCounting counting) {
  EmbedProblem problem = EmbedProblem::from(vn);
  EmbedOrder order = build_embed_order(vn);
  EmbedOutcome outcome;
  for (const SubSubstrate& sub : candidate_subnetworks(sn, vn, max_hops)) {
    ++outcome.subnets_tried;
    EmbedAttempt attempt;
    attempt.working_sn = sn;
    bool ok = embed_recurse(problem, order, 0, sub, attempt, max_hops, max_backtrack, counting);
    outcome.backtracks += attempt.backtrack_count;
    if (ok) {
      outcome.mapping = std::move(attempt.partial_mapping);
      return outcome;
    }
  }
  return outcome;
}

}  // namespace vnesim
