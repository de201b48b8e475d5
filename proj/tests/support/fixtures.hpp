#pragma once

#include <random>
#include <vector>

#include "vnesim/graph.hpp"

namespace vnesim::testing {

// Four-node ring used across the suite:
//   nodes A=0 (cpu 10), B=1 (10), C=2 (5), D=3 (8)
//   links AB=0 (bw 10), BC=1 (5), CD=2 (8), DA=3 (6)
SubstrateNetwork ring_substrate();

// Three-node chain request:
//   nodes x=0 (cpu 4), y=1 (3), z=2 (2); links xy=0 (bw 2), yz=1 (bw 1)
VirtualNetwork chain_request();

// The hand-checked valid mapping of chain_request onto ring_substrate:
//   x->A, y->B, z->C, xy->[AB], yz->[BC]
Mapping chain_on_ring_mapping();

// Substrate for the co-location walkthrough:
//   nodes A=0 (cpu 55), F=1 (60), G=2 (90)
//   links FA=0 (bw 25), GF=1 (bw 60)
SubstrateNetwork walkthrough_substrate();

// Triangle request for the walkthrough:
//   nodes a=0 (cpu 30), b=1 (55), c=2 (25)
//   links ab=0 (bw 25), bc=1 (bw 15), ca=2 (bw 35)
VirtualNetwork walkthrough_request();

// Two disconnected 5-node pockets.  Pocket one: nodes 0-4, cpu 50 each,
// ring links bw 50.  Pocket two: nodes 5-9, cpu `small_cpu` each, ring
// links bw `small_bw`.
SubstrateNetwork two_pocket_substrate(double small_cpu = 20.0, double small_bw = 20.0);

// Triangle request fitting either pocket when both are roomy:
// cpu 10 per node, bw 5 per link.
VirtualNetwork triangle_request();

// Substrate with no direct X-Y link but two disjoint 2-hop routes:
//   X=0 (cpu 16), Y=1 (14), R1=2 (8), R2=3 (8)
//   links X-R1=0, R1-Y=1, X-R2=2, R2-Y=3, all bw 15
SubstrateNetwork parallel_route_substrate();

// Request whose coarsening (cpu_max 16) yields one super-link of total bw
// 17, more than any single substrate path above can carry:
//   a=0 (cpu 8), b=1 (8), c=2 (14); ab=0 (bw 2), ac=1 (9), bc=2 (8)
VirtualNetwork bundled_link_request();

using Rng = std::mt19937_64;

// Uniform dyadic value in [lo, hi]: an integer multiple of 1/128, so sums
// and differences of a few thousand of them stay exact in doubles.
double dyadic(Rng& rng, double lo, double hi);

// Connected random substrate: `nodes` nodes, a random spanning tree plus
// `extra_links` random non-duplicate links, cpu in [cpu_lo, cpu_hi] and bw
// in [bw_lo, bw_hi], all dyadic.
SubstrateNetwork random_substrate(Rng& rng, int nodes, int extra_links, double cpu_lo,
                                  double cpu_hi, double bw_lo, double bw_hi);

// Connected random request, same construction, demands dyadic.
VirtualNetwork random_request(Rng& rng, int nodes, int extra_links, double cpu_lo,
                              double cpu_hi, double bw_lo, double bw_hi);

}  // namespace vnesim::testing
