#include "vnesim/reference.hpp"

#include <algorithm>
#include <stdexcept>

#include "vnesim/pathing.hpp"

namespace vnesim {

namespace {

constexpr int kMaxVirtual = 6;
constexpr int kMaxSubstrate = 10;

struct OracleSearch {
  const VirtualNetwork& vn;
  const SubstrateNetwork& sn;
  int max_hops;
  OracleObjective objective;
  std::vector<int> hosts;  // allowed placements, ascending

  SubstrateNetwork working;
  Mapping current;
  std::optional<Mapping> best;
  double best_cost = 0.0;
  std::vector<Mapping>* collect = nullptr;
  std::size_t collect_limit = 0;
  bool done = false;

  OracleSearch(const VirtualNetwork& vn_, const SubstrateNetwork& sn_, int max_hops_,
               OracleObjective objective_, const std::vector<int>* hosts_)
      : vn(vn_), sn(sn_), max_hops(max_hops_), objective(objective_), working(sn_) {
    if (vn.node_count() > kMaxVirtual || sn.node_count() > kMaxSubstrate)
      throw std::invalid_argument("instance too large for exhaustive search");
    if (hosts_) {
      hosts = *hosts_;
      std::sort(hosts.begin(), hosts.end());
    } else {
      for (int i = 0; i < sn.node_count(); ++i) hosts.push_back(i);
    }
  }

  void complete() {
    if (collect) {
      if (collect->size() < collect_limit) collect->push_back(current);
      if (collect->size() >= collect_limit) done = true;
      return;
    }
    if (objective == OracleObjective::Feasibility) {
      best = current;
      done = true;
      return;
    }
    double c = cost(vn, current);
    if (!best || c < best_cost) {
      best = current;
      best_cost = c;
    }
  }

  // Links from vnode to lower-indexed (already placed) neighbours, routed
  // one after another with every loop-free candidate path tried.
  void route_links(int vnode, std::size_t link_pos, const std::vector<int>& pending) {
    if (done) return;
    if (link_pos == pending.size()) {
      place(vnode + 1);
      return;
    }
    const VirtualLink& l = vn.link(pending[link_pos]);
    int src = current.node_map.at(l.a);
    int dst = current.node_map.at(l.b);
    if (src == dst) {
      current.link_map[l.id] = Path{src, dst, {}};
      route_links(vnode, link_pos + 1, pending);
      current.link_map.erase(l.id);
      return;
    }
    // Depth-first path enumeration in ascending neighbour order gives
    // lexicographic node-sequence order.
    std::vector<int> seq{src};
    std::vector<int> link_seq;
    std::vector<char> on_path(static_cast<std::size_t>(sn.node_count()), 0);
    on_path[static_cast<std::size_t>(src)] = 1;
    extend_path(vnode, link_pos, pending, l, dst, seq, link_seq, on_path);
  }

  void extend_path(int vnode, std::size_t link_pos, const std::vector<int>& pending,
                   const VirtualLink& l, int dst, std::vector<int>& seq,
                   std::vector<int>& link_seq, std::vector<char>& on_path) {
    if (done) return;
    int at = seq.back();
    if (at == dst) {
      current.link_map[l.id] = Path{seq.front(), dst, link_seq};
      route_links(vnode, link_pos + 1, pending);
      current.link_map.erase(l.id);
      return;
    }
    if (static_cast<int>(link_seq.size()) >= max_hops) return;
    std::vector<std::pair<int, int>> steps;  // neighbour, link id
    for (int lid : working.incident_links(at)) {
      const SubstrateLink& sl = working.link(lid);
      if (sl.bw_residual() < l.bw_demand) continue;
      int nb = sl.other(at);
      if (on_path[static_cast<std::size_t>(nb)]) continue;
      steps.emplace_back(nb, lid);
    }
    std::sort(steps.begin(), steps.end());
    for (auto [nb, lid] : steps) {
      working.link(lid).bw.reserve(l.bw_demand);
      on_path[static_cast<std::size_t>(nb)] = 1;
      seq.push_back(nb);
      link_seq.push_back(lid);
      extend_path(vnode, link_pos, pending, l, dst, seq, link_seq, on_path);
      link_seq.pop_back();
      seq.pop_back();
      on_path[static_cast<std::size_t>(nb)] = 0;
      working.link(lid).bw.unreserve(l.bw_demand);
      if (done) return;
    }
  }

  void place(int vnode) {
    if (done) return;
    if (vnode == vn.node_count()) {
      complete();
      return;
    }
    double demand = vn.node(vnode).cpu_demand;
    std::vector<int> pending;
    for (int lid : vn.incident_links(vnode)) {
      if (vn.link(lid).other(vnode) < vnode) pending.push_back(lid);
    }
    std::sort(pending.begin(), pending.end());
    for (int h : hosts) {
      if (!working.node(h).cpu.can_reserve(demand)) continue;
      working.node(h).cpu.reserve(demand);
      current.node_map[vnode] = h;
      route_links(vnode, 0, pending);
      current.node_map.erase(vnode);
      working.node(h).cpu.unreserve(demand);
      if (done) return;
    }
  }
};

}  // namespace

std::optional<Mapping> oracle_embed(const VirtualNetwork& vn, const SubstrateNetwork& sn,
                                    int max_hops, OracleObjective objective,
                                    const std::vector<int>* hosts) {
  OracleSearch search(vn, sn, max_hops, objective, hosts);
  search.place(0);
  return search.best;
}

std::vector<Mapping> oracle_feasible_set(const VirtualNetwork& vn, const SubstrateNetwork& sn,
                                         int max_hops, std::size_t limit,
                                         const std::vector<int>* hosts) {
  OracleSearch search(vn, sn, max_hops, OracleObjective::Feasibility, hosts);
  std::vector<Mapping> out;
  search.collect = &out;
  search.collect_limit = limit;
  if (limit > 0) search.place(0);
  return out;
}

EmbedOutcome greedy_embed(const VirtualNetwork& vn, const SubstrateNetwork& sn, int max_hops) {
  EmbedOutcome outcome;
  if (vn.node_count() == 0) throw std::invalid_argument("request has no nodes");
  if (vn.node_count() > sn.node_count()) return outcome;  // hosts are never shared

  SubstrateNetwork working = sn;
  Mapping m;

  std::vector<int> vnodes(static_cast<std::size_t>(vn.node_count()));
  for (int i = 0; i < vn.node_count(); ++i) vnodes[static_cast<std::size_t>(i)] = i;
  std::sort(vnodes.begin(), vnodes.end(), [&vn](int x, int y) {
    double dx = vn.node(x).cpu_demand, dy = vn.node(y).cpu_demand;
    if (dx != dy) return dx > dy;
    return x < y;
  });

  std::vector<char> used(static_cast<std::size_t>(sn.node_count()), 0);
  for (int v : vnodes) {
    double demand = vn.node(v).cpu_demand;
    int chosen = -1;
    double chosen_resources = 0.0;
    for (int h = 0; h < working.node_count(); ++h) {
      if (used[static_cast<std::size_t>(h)]) continue;
      if (!working.node(h).cpu.can_reserve(demand)) continue;
      double r = node_resources(working, h);
      if (chosen == -1 || r > chosen_resources) {
        chosen = h;
        chosen_resources = r;
      }
    }
    if (chosen == -1) return outcome;
    used[static_cast<std::size_t>(chosen)] = 1;
    working.node(chosen).cpu.reserve(demand);
    m.node_map[v] = chosen;
  }

  for (const VirtualLink& l : vn.links()) {
    int src = m.node_map.at(l.a);
    int dst = m.node_map.at(l.b);
    std::optional<Path> p = cheapest_feasible_path(working, src, dst, max_hops, l.bw_demand);
    if (!p) return outcome;
    for (int slid : p->links) working.link(slid).bw.reserve(l.bw_demand);
    m.link_map[l.id] = std::move(*p);
  }

  outcome.mapping = std::move(m);
  return outcome;
}

}  // namespace vnesim
