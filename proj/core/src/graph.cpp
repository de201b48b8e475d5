#include "vnesim/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace vnesim {

namespace {

std::pair<int, int> ordered(int u, int v) { return u < v ? std::pair{u, v} : std::pair{v, u}; }

}  // namespace

int SubstrateNetwork::add_node(double cpu_capacity) {
  int id = node_count();
  nodes_.push_back({id, ResourcePool(cpu_capacity)});
  incident_.emplace_back();
  return id;
}

int SubstrateNetwork::add_link(int u, int v, double bw_capacity) {
  if (!has_node(u) || !has_node(v)) throw std::invalid_argument("link endpoint out of range");
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  auto key = ordered(u, v);
  if (by_pair_.count(key)) throw std::invalid_argument("duplicate link between node pair");
  int id = link_count();
  links_.push_back({id, key.first, key.second, ResourcePool(bw_capacity)});
  by_pair_[key] = id;
  incident_[static_cast<std::size_t>(u)].push_back(id);
  incident_[static_cast<std::size_t>(v)].push_back(id);
  return id;
}

const std::vector<int>& SubstrateNetwork::incident_links(int node) const {
  return incident_.at(static_cast<std::size_t>(node));
}

int SubstrateNetwork::find_link(int u, int v) const {
  auto it = by_pair_.find(ordered(u, v));
  return it == by_pair_.end() ? -1 : it->second;
}

int VirtualNetwork::add_node(double cpu_demand) {
  int id = node_count();
  nodes_.push_back({id, cpu_demand});
  incident_.emplace_back();
  return id;
}

int VirtualNetwork::add_link(int u, int v, double bw_demand) {
  if (!has_node(u) || !has_node(v)) throw std::invalid_argument("link endpoint out of range");
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  auto key = ordered(u, v);
  if (by_pair_.count(key)) throw std::invalid_argument("duplicate link between node pair");
  int id = link_count();
  links_.push_back({id, key.first, key.second, bw_demand});
  by_pair_[key] = id;
  incident_[static_cast<std::size_t>(u)].push_back(id);
  incident_[static_cast<std::size_t>(v)].push_back(id);
  return id;
}

const std::vector<int>& VirtualNetwork::incident_links(int node) const {
  return incident_.at(static_cast<std::size_t>(node));
}

int VirtualNetwork::find_link(int u, int v) const {
  auto it = by_pair_.find(ordered(u, v));
  return it == by_pair_.end() ? -1 : it->second;
}

bool VirtualNetwork::connected() const {
  if (nodes_.empty()) return true;
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int lid : incident_[static_cast<std::size_t>(u)]) {
      int w = links_[static_cast<std::size_t>(lid)].other(u);
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == node_count();
}

std::optional<std::vector<int>> path_node_sequence(const SubstrateNetwork& sn,
                                                   const Path& path) {
  if (!sn.has_node(path.from) || !sn.has_node(path.to)) return std::nullopt;
  if (path.links.empty()) {
    if (path.from != path.to) return std::nullopt;
    return std::vector<int>{path.from};
  }
  std::vector<int> seq{path.from};
  int at = path.from;
  for (int lid : path.links) {
    if (lid < 0 || lid >= sn.link_count()) return std::nullopt;
    const SubstrateLink& l = sn.link(lid);
    if (l.a != at && l.b != at) return std::nullopt;
    at = l.other(at);
    seq.push_back(at);
  }
  if (at != path.to) return std::nullopt;
  std::vector<int> sorted = seq;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::nullopt;
  return seq;
}

namespace {

std::string node_label(int id) { return "node " + std::to_string(id); }
std::string link_label(int id) { return "link " + std::to_string(id); }

struct DemandTotals {
  std::map<int, double> per_node;  // substrate node -> summed cpu demand
  std::map<int, double> per_link;  // substrate link -> summed bw demand
};

// Sums the demand each substrate resource would carry under m.  Iteration
// is in ascending virtual id order so the fold order is deterministic.
DemandTotals demand_totals(const VirtualNetwork& vn, const Mapping& m) {
  DemandTotals t;
  for (const VirtualNode& n : vn.nodes()) {
    auto it = m.node_map.find(n.id);
    if (it == m.node_map.end()) continue;
    t.per_node[it->second] += n.cpu_demand;
  }
  for (const VirtualLink& l : vn.links()) {
    auto it = m.link_map.find(l.id);
    if (it == m.link_map.end()) continue;
    for (int lid : it->second.links) t.per_link[lid] += l.bw_demand;
  }
  return t;
}

}  // namespace

ValidationReport validate_mapping(const SubstrateNetwork& sn, const VirtualNetwork& vn,
                                  const Mapping& m, int max_hops) {
  ValidationReport report;
  auto add = [&report](ViolationKind kind, std::string detail) {
    report.push_back({kind, std::move(detail)});
  };

  for (const VirtualNode& n : vn.nodes()) {
    auto it = m.node_map.find(n.id);
    if (it == m.node_map.end()) {
      add(ViolationKind::MissingNode, "virtual " + node_label(n.id) + " is unmapped");
    } else if (!sn.has_node(it->second)) {
      add(ViolationKind::UnknownSubstrateNode,
          "virtual " + node_label(n.id) + " maps to unknown substrate " + node_label(it->second));
    }
  }

  for (const VirtualLink& l : vn.links()) {
    auto it = m.link_map.find(l.id);
    if (it == m.link_map.end()) {
      add(ViolationKind::MissingLink, "virtual " + link_label(l.id) + " is unmapped");
      continue;
    }
    const Path& p = it->second;
    auto hu = m.node_map.find(l.a);
    auto hv = m.node_map.find(l.b);
    if (hu == m.node_map.end() || hv == m.node_map.end()) continue;  // reported above
    if (!sn.has_node(hu->second) || !sn.has_node(hv->second)) continue;

    auto seq = path_node_sequence(sn, p);
    if (!seq) {
      add(ViolationKind::BrokenPath,
          "virtual " + link_label(l.id) + " path does not form a loop-free chain");
      continue;
    }
    bool matches = (p.from == hu->second && p.to == hv->second) ||
                   (p.from == hv->second && p.to == hu->second);
    if (!matches) {
      add(ViolationKind::EndpointMismatch,
          "virtual " + link_label(l.id) + " path endpoints disagree with its node hosts");
      continue;
    }
    if (hu->second == hv->second) {
      if (!p.empty())
        add(ViolationKind::EndpointMismatch,
            "virtual " + link_label(l.id) + " endpoints share a host but the path is non-empty");
    } else if (p.empty()) {
      add(ViolationKind::EndpointMismatch,
          "virtual " + link_label(l.id) + " endpoints differ but the path is empty");
    }
    if (p.length() > max_hops) {
      add(ViolationKind::HopLimitExceeded,
          "virtual " + link_label(l.id) + " path uses " + std::to_string(p.length()) +
              " hops, limit " + std::to_string(max_hops));
    }
  }

  DemandTotals totals = demand_totals(vn, m);
  for (const auto& [snode, demand] : totals.per_node) {
    if (!sn.has_node(snode)) continue;
    double residual = sn.node(snode).cpu_residual();
    if (demand > residual) {
      std::ostringstream os;
      os << "substrate " << node_label(snode) << ": co-located cpu demand " << demand
         << " exceeds residual " << residual;
      add(ViolationKind::CpuOvercommit, os.str());
    }
  }
  for (const auto& [slink, demand] : totals.per_link) {
    if (slink < 0 || slink >= sn.link_count()) continue;
    double residual = sn.link(slink).bw_residual();
    if (demand > residual) {
      std::ostringstream os;
      os << "substrate " << link_label(slink) << ": routed bw demand " << demand
         << " exceeds residual " << residual;
      add(ViolationKind::BwOvercommit, os.str());
    }
  }
  return report;
}

bool allocate(SubstrateNetwork& sn, const VirtualNetwork& vn, const Mapping& m) {
  // Feasibility first, on a scratch reservation, so failure leaves sn untouched.
  std::vector<std::pair<ResourcePool*, double>> plan;
  for (const VirtualNode& n : vn.nodes()) {
    int host = m.node_map.at(n.id);
    plan.emplace_back(&sn.node(host).cpu, n.cpu_demand);
  }
  for (const VirtualLink& l : vn.links()) {
    const Path& p = m.link_map.at(l.id);
    for (int lid : p.links) plan.emplace_back(&sn.link(lid).bw, l.bw_demand);
  }
  std::size_t applied = 0;
  for (; applied < plan.size(); ++applied) {
    auto [pool, amount] = plan[applied];
    if (!pool->can_reserve(amount)) break;
    pool->reserve(amount);
  }
  if (applied == plan.size()) return true;
  for (std::size_t i = applied; i-- > 0;) plan[i].first->unreserve(plan[i].second);
  return false;
}

bool release(SubstrateNetwork& sn, const VirtualNetwork& vn, const Mapping& m) {
  bool clean = true;
  for (const VirtualNode& n : vn.nodes()) {
    auto it = m.node_map.find(n.id);
    if (it == m.node_map.end() || !sn.has_node(it->second)) {
      clean = false;
      continue;
    }
    if (!sn.node(it->second).cpu.unreserve(n.cpu_demand)) clean = false;
  }
  for (const VirtualLink& l : vn.links()) {
    auto it = m.link_map.find(l.id);
    if (it == m.link_map.end()) {
      clean = false;
      continue;
    }
    for (int lid : it->second.links) {
      if (lid < 0 || lid >= sn.link_count() || !sn.link(lid).bw.unreserve(l.bw_demand))
        clean = false;
    }
  }
  return clean;
}

double revenue(const VirtualNetwork& vn) {
  double r = 0.0;
  for (const VirtualNode& n : vn.nodes()) r += n.cpu_demand;
  for (const VirtualLink& l : vn.links()) r += l.bw_demand;
  return r;
}

double cost(const VirtualNetwork& vn, const Mapping& m) {
  double c = 0.0;
  for (const VirtualNode& n : vn.nodes()) c += n.cpu_demand;
  for (const VirtualLink& l : vn.links()) {
    const Path& p = m.link_map.at(l.id);
    c += l.bw_demand * static_cast<double>(p.length());
  }
  return c;
}

double node_resources(const SubstrateNetwork& sn, int id) {
  if (!sn.has_node(id)) throw std::out_of_range("unknown substrate node");
  double r = sn.node(id).cpu_residual();
  for (int lid : sn.incident_links(id)) r += sn.link(lid).bw_residual();
  return r;
}

double node_resources(const VirtualNetwork& vn, int id) {
  if (!vn.has_node(id)) throw std::out_of_range("unknown virtual node");
  double r = vn.node(id).cpu_demand;
  for (int lid : vn.incident_links(id)) r += vn.link(lid).bw_demand;
  return r;
}

}  // namespace vnesim
