#include "fixtures.hpp"

#include <set>
#include <utility>

namespace vnesim::testing {

SubstrateNetwork ring_substrate() {
  SubstrateNetwork sn;
  sn.add_node(10.0);  // A
  sn.add_node(10.0);  // B
  sn.add_node(5.0);   // C
  sn.add_node(8.0);   // D
  sn.add_link(0, 1, 10.0);
  sn.add_link(1, 2, 5.0);
  sn.add_link(2, 3, 8.0);
  sn.add_link(3, 0, 6.0);
  return sn;
}

VirtualNetwork chain_request() {
  VirtualNetwork vn;
  vn.add_node(4.0);  // x
  vn.add_node(3.0);  // y
  vn.add_node(2.0);  // z
  vn.add_link(0, 1, 2.0);
  vn.add_link(1, 2, 1.0);
  return vn;
}

Mapping chain_on_ring_mapping() {
  Mapping m;
  m.node_map = {{0, 0}, {1, 1}, {2, 2}};
  m.link_map[0] = Path{0, 1, {0}};
  m.link_map[1] = Path{1, 2, {1}};
  return m;
}

SubstrateNetwork walkthrough_substrate() {
  SubstrateNetwork sn;
  sn.add_node(55.0);  // A
  sn.add_node(60.0);  // F
  sn.add_node(90.0);  // G
  sn.add_link(1, 0, 25.0);  // FA
  sn.add_link(2, 1, 60.0);  // GF
  return sn;
}

VirtualNetwork walkthrough_request() {
  VirtualNetwork vn;
  vn.add_node(30.0);  // a
  vn.add_node(55.0);  // b
  vn.add_node(25.0);  // c
  vn.add_link(0, 1, 25.0);  // ab
  vn.add_link(1, 2, 15.0);  // bc
  vn.add_link(2, 0, 35.0);  // ca
  return vn;
}

SubstrateNetwork two_pocket_substrate(double small_cpu, double small_bw) {
  SubstrateNetwork sn;
  for (int i = 0; i < 5; ++i) sn.add_node(50.0);
  for (int i = 0; i < 5; ++i) sn.add_node(small_cpu);
  for (int i = 0; i < 5; ++i) sn.add_link(i, (i + 1) % 5, 50.0);
  for (int i = 0; i < 5; ++i) sn.add_link(5 + i, 5 + (i + 1) % 5, small_bw);
  return sn;
}

VirtualNetwork triangle_request() {
  VirtualNetwork vn;
  for (int i = 0; i < 3; ++i) vn.add_node(10.0);
  vn.add_link(0, 1, 5.0);
  vn.add_link(1, 2, 5.0);
  vn.add_link(2, 0, 5.0);
  return vn;
}

SubstrateNetwork parallel_route_substrate() {
  SubstrateNetwork sn;
  sn.add_node(16.0);  // X
  sn.add_node(14.0);  // Y
  sn.add_node(8.0);   // R1
  sn.add_node(8.0);   // R2
  sn.add_link(0, 2, 15.0);
  sn.add_link(2, 1, 15.0);
  sn.add_link(0, 3, 15.0);
  sn.add_link(3, 1, 15.0);
  return sn;
}

VirtualNetwork bundled_link_request() {
  VirtualNetwork vn;
  vn.add_node(8.0);   // a
  vn.add_node(8.0);   // b
  vn.add_node(14.0);  // c
  vn.add_link(0, 1, 2.0);
  vn.add_link(0, 2, 9.0);
  vn.add_link(1, 2, 8.0);
  return vn;
}

double dyadic(Rng& rng, double lo, double hi) {
  long long klo = static_cast<long long>(lo * 128.0);
  long long khi = static_cast<long long>(hi * 128.0);
  std::uniform_int_distribution<long long> pick(klo, khi);
  return static_cast<double>(pick(rng)) / 128.0;
}

namespace {

template <typename Net>
void grow_connected(Net& net, Rng& rng, int nodes, int extra_links, double cpu_lo,
                    double cpu_hi, double bw_lo, double bw_hi) {
  for (int i = 0; i < nodes; ++i) net.add_node(dyadic(rng, cpu_lo, cpu_hi));
  std::set<std::pair<int, int>> used;
  for (int i = 1; i < nodes; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    int p = parent(rng);
    net.add_link(p, i, dyadic(rng, bw_lo, bw_hi));
    used.insert({p, i});
  }
  if (nodes < 2) return;
  std::uniform_int_distribution<int> any(0, nodes - 1);
  for (int e = 0; e < extra_links; ++e) {
    int u = any(rng);
    int v = any(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (used.count({u, v})) continue;
    net.add_link(u, v, dyadic(rng, bw_lo, bw_hi));
    used.insert({u, v});
  }
}

}  // namespace

SubstrateNetwork random_substrate(Rng& rng, int nodes, int extra_links, double cpu_lo,
                                  double cpu_hi, double bw_lo, double bw_hi) {
  SubstrateNetwork sn;
  grow_connected(sn, rng, nodes, extra_links, cpu_lo, cpu_hi, bw_lo, bw_hi);
  return sn;
}

VirtualNetwork random_request(Rng& rng, int nodes, int extra_links, double cpu_lo,
                              double cpu_hi, double bw_lo, double bw_hi) {
  VirtualNetwork vn;
  grow_connected(vn, rng, nodes, extra_links, cpu_lo, cpu_hi, bw_lo, bw_hi);
  return vn;
}

}  // namespace vnesim::testing
