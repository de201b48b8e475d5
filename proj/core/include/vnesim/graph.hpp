#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vnesim {

// Capacity with a ledger of outstanding reservations.  The residual is
// always recomputed as capacity minus the left-fold sum of the ledger, so
// reserving and then unreserving the same amount restores the previous
// state bit-for-bit (naive -=/+= arithmetic does not round-trip in
// floating point).
class ResourcePool {
 public:
  ResourcePool() = default;
  explicit ResourcePool(double capacity) : capacity_(capacity) {}

  double capacity() const { return capacity_; }
  double residual() const { return capacity_ - outstanding_; }

  bool can_reserve(double amount) const {
    return capacity_ - fold_with(amount) >= 0.0;
  }

  void reserve(double amount) {
    ledger_.push_back(amount);
    outstanding_ = fold();
  }

  // Removes the last ledger entry equal to amount, so undoing a fresh
  // reservation pops it and restores the previous fold order exactly.
  // Returns false (and changes nothing) when no such entry exists.
  bool unreserve(double amount) {
    for (std::size_t i = ledger_.size(); i-- > 0;) {
      if (ledger_[i] == amount) {
        ledger_.erase(ledger_.begin() + static_cast<std::ptrdiff_t>(i));
        outstanding_ = fold();
        return true;
      }
    }
    return false;
  }

  void clear_reservations() {
    ledger_.clear();
    outstanding_ = 0.0;
  }

  const std::vector<double>& ledger() const { return ledger_; }

  bool operator==(const ResourcePool&) const = default;

 private:
  double fold() const {
    double s = 0.0;
    for (double d : ledger_) s += d;
    return s;
  }
  double fold_with(double extra) const {
    double s = fold();
    s += extra;
    return s;
  }

  double capacity_ = 0.0;
  double outstanding_ = 0.0;
  std::vector<double> ledger_;
};

struct SubstrateNode {
  int id = -1;
  ResourcePool cpu;

  double cpu_capacity() const { return cpu.capacity(); }
  double cpu_residual() const { return cpu.residual(); }
  bool operator==(const SubstrateNode&) const = default;
};

struct SubstrateLink {
  int id = -1;
  int a = -1;  // endpoint ids, a < b
  int b = -1;
  ResourcePool bw;

  double bw_capacity() const { return bw.capacity(); }
  double bw_residual() const { return bw.residual(); }
  int other(int node) const { return node == a ? b : a; }
  bool operator==(const SubstrateLink&) const = default;
};

// Undirected substrate topology.  Node and link ids are dense from 0,
// self-loops are rejected and node pairs carry at most one link.
class SubstrateNetwork {
 public:
  int add_node(double cpu_capacity);
  int add_link(int u, int v, double bw_capacity);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int link_count() const { return static_cast<int>(links_.size()); }

  SubstrateNode& node(int id) { return nodes_.at(static_cast<std::size_t>(id)); }
  const SubstrateNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  SubstrateLink& link(int id) { return links_.at(static_cast<std::size_t>(id)); }
  const SubstrateLink& link(int id) const { return links_.at(static_cast<std::size_t>(id)); }

  const std::vector<SubstrateNode>& nodes() const { return nodes_; }
  const std::vector<SubstrateLink>& links() const { return links_; }

  // Link ids incident to a node, ascending.
  const std::vector<int>& incident_links(int node) const;
  // Link id joining u and v, or -1.
  int find_link(int u, int v) const;
  bool has_node(int id) const { return id >= 0 && id < node_count(); }

  bool operator==(const SubstrateNetwork&) const = default;

 private:
  std::vector<SubstrateNode> nodes_;
  std::vector<SubstrateLink> links_;
  std::vector<std::vector<int>> incident_;
  std::map<std::pair<int, int>, int> by_pair_;
};

struct VirtualNode {
  int id = -1;
  double cpu_demand = 0.0;
  bool operator==(const VirtualNode&) const = default;
};

struct VirtualLink {
  int id = -1;
  int a = -1;  // endpoint ids, a < b
  int b = -1;
  double bw_demand = 0.0;
  int other(int node) const { return node == a ? b : a; }
  bool operator==(const VirtualLink&) const = default;
};

// Virtual network request topology; same id and multiplicity rules as the
// substrate.  Demands are expected to be positive and the graph connected,
// which generators and parsers enforce.
class VirtualNetwork {
 public:
  int add_node(double cpu_demand);
  int add_link(int u, int v, double bw_demand);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int link_count() const { return static_cast<int>(links_.size()); }

  VirtualNode& node(int id) { return nodes_.at(static_cast<std::size_t>(id)); }
  const VirtualNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  VirtualLink& link(int id) { return links_.at(static_cast<std::size_t>(id)); }
  const VirtualLink& link(int id) const { return links_.at(static_cast<std::size_t>(id)); }

  const std::vector<VirtualNode>& nodes() const { return nodes_; }
  const std::vector<VirtualLink>& links() const { return links_; }

  const std::vector<int>& incident_links(int node) const;
  int find_link(int u, int v) const;
  bool has_node(int id) const { return id >= 0 && id < node_count(); }
  bool connected() const;

  bool operator==(const VirtualNetwork&) const = default;

 private:
  std::vector<VirtualNode> nodes_;
  std::vector<VirtualLink> links_;
  std::vector<std::vector<int>> incident_;
  std::map<std::pair<int, int>, int> by_pair_;
};

struct VNRequest {
  int id = -1;
  VirtualNetwork network;
  double arrival = 0.0;
  double lifetime = 0.0;
  bool operator==(const VNRequest&) const = default;
};

// Loop-free substrate walk: ordered substrate link ids from `from` to `to`.
// Empty link list means co-location and requires from == to.
struct Path {
  int from = -1;
  int to = -1;
  std::vector<int> links;

  int length() const { return static_cast<int>(links.size()); }
  bool empty() const { return links.empty(); }
  bool operator==(const Path&) const = default;
};

// Reconstructs the node sequence of a path and validates the chain:
// consecutive links share exactly one node, no node repeats, the walk runs
// from path.from to path.to.  Returns nullopt when the chain is broken.
std::optional<std::vector<int>> path_node_sequence(const SubstrateNetwork& sn,
                                                   const Path& path);

struct Mapping {
  std::map<int, int> node_map;   // virtual node id -> substrate node id
  std::map<int, Path> link_map;  // virtual link id -> substrate path
  bool operator==(const Mapping&) const = default;
};

enum class ViolationKind {
  MissingNode,
  MissingLink,
  UnknownSubstrateNode,
  BrokenPath,
  HopLimitExceeded,
  EndpointMismatch,
  CpuOvercommit,
  BwOvercommit,
};

struct Violation {
  ViolationKind kind;
  std::string detail;
};

using ValidationReport = std::vector<Violation>;

// Checks a mapping against current residuals: totality, endpoint
// consistency (empty path exactly when the endpoints share a host),
// loop-freedom, the hop bound, and per-node / per-link residual cover for
// the co-located demand sums.  Violations are data, not errors.
ValidationReport validate_mapping(const SubstrateNetwork& sn, const VirtualNetwork& vn,
                                  const Mapping& m, int max_hops);

// Reserves every demand of the mapping on sn.  Refuses (returning false,
// with sn untouched) if any residual would go negative.
bool allocate(SubstrateNetwork& sn, const VirtualNetwork& vn, const Mapping& m);

// Releases every demand of the mapping.  Returns false when some
// reservation was not found (a caller bug); the affected pools are left
// capped at capacity rather than inflated past it.
bool release(SubstrateNetwork& sn, const VirtualNetwork& vn, const Mapping& m);

// Total demand of a request: sum of cpu demands plus sum of bw demands.
double revenue(const VirtualNetwork& vn);

// Embedding cost: sum of cpu demands plus each bw demand weighted by its
// substrate path length.  Co-located links contribute nothing.
double cost(const VirtualNetwork& vn, const Mapping& m);

// Residual cpu plus the residual bandwidth of all incident links.
double node_resources(const SubstrateNetwork& sn, int id);
// Demand-side analogue: cpu demand plus incident bw demands.
double node_resources(const VirtualNetwork& vn, int id);

}  // namespace vnesim
