#include <doctest.h>

#include <algorithm>
#include <optional>
#include <vector>

#include "fixtures.hpp"
#include "vnesim/graph.hpp"
#include "vnesim/pathing.hpp"

using namespace vnesim;
namespace tst = vnesim::testing;

namespace {

// Exhaustive loop-free path enumeration for tiny graphs: every node
// sequence from src within max_hops whose links all pass the bw floor.
void enumerate_paths(const SubstrateNetwork& sn, int at, int max_hops, double bw,
                     std::vector<int>& seq, std::vector<std::vector<int>>& out) {
  out.push_back(seq);
  if (static_cast<int>(seq.size()) - 1 >= max_hops) return;
  for (int lid : sn.incident_links(at)) {
    const SubstrateLink& l = sn.link(lid);
    if (l.bw_residual() < bw) continue;
    int nb = l.other(at);
    if (std::find(seq.begin(), seq.end(), nb) != seq.end()) continue;
    seq.push_back(nb);
    enumerate_paths(sn, nb, max_hops, bw, seq, out);
    seq.pop_back();
  }
}

std::optional<std::vector<int>> best_sequence_to(const SubstrateNetwork& sn, int src, int dst,
                                                 int max_hops, double bw) {
  std::vector<int> seq{src};
  std::vector<std::vector<int>> all;
  enumerate_paths(sn, src, max_hops, bw, seq, all);
  std::optional<std::vector<int>> best;
  for (const auto& s : all) {
    if (s.back() != dst) continue;
    if (!best || s.size() < best->size() || (s.size() == best->size() && s < *best)) best = s;
  }
  return best;
}

std::vector<int> sequence_of(const SubstrateNetwork& sn, const Path& p) {
  auto seq = path_node_sequence(sn, p);
  REQUIRE(seq.has_value());
  return *seq;
}

}  // namespace

TEST_CASE("reachability within one hop honours the bandwidth floor") {
  SubstrateNetwork sn = tst::ring_substrate();
  auto entries = bfs_reachable(sn, 0, 1, 2.0);
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].node == 0);
  CHECK(entries[0].best_path == Path{0, 0, {}});
  CHECK(entries[1].node == 1);
  CHECK(entries[1].best_path == Path{0, 1, {0}});
  CHECK(entries[2].node == 3);
  CHECK(entries[2].best_path == Path{0, 3, {3}});
}

TEST_CASE("a high bandwidth floor prunes whole regions") {
  SubstrateNetwork sn = tst::ring_substrate();
  auto entries = bfs_reachable(sn, 0, 2, 7.0);  // only AB (10) and CD (8) qualify
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].node == 0);
  CHECK(entries[1].node == 1);
}

TEST_CASE("zero-radius reachability is just the root") {
  SubstrateNetwork sn = tst::ring_substrate();
  auto entries = bfs_reachable(sn, 2, 0, 0.0);
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].node == 2);
  CHECK(entries[0].best_path.empty());
}

TEST_CASE("cheapest path prefers the lexicographically smaller tie") {
  SubstrateNetwork sn = tst::ring_substrate();
  auto p = cheapest_feasible_path(sn, 0, 2, 2, 3.0);
  REQUIRE(p.has_value());
  CHECK(p->links == std::vector<int>{0, 1});  // A-B-C beats A-D-C
  CHECK(sequence_of(sn, *p) == std::vector<int>{0, 1, 2});
}

TEST_CASE("hop limit and endpoints behave at the edges") {
  SubstrateNetwork sn = tst::ring_substrate();
  CHECK_FALSE(cheapest_feasible_path(sn, 0, 2, 1, 1.0).has_value());
  auto self_path = cheapest_feasible_path(sn, 1, 1, 2, 1e9);
  REQUIRE(self_path.has_value());
  CHECK(self_path->empty());
  CHECK(path_exists(sn, 0, 2, 2, 3.0));
  CHECK_FALSE(path_exists(sn, 0, 2, 1, 1.0));
  CHECK(path_exists(sn, 1, 1, 0, 1e9));
}

TEST_CASE("reachability is monotone in hops and bandwidth") {
  tst::Rng rng(11);
  std::uniform_int_distribution<int> nodes(2, 8), extra(0, 8), hops(0, 3);
  for (int round = 0; round < 200; ++round) {
    SubstrateNetwork sn =
        tst::random_substrate(rng, nodes(rng), extra(rng), 1.0, 10.0, 1.0, 10.0);
    int h = hops(rng);
    double bw = tst::dyadic(rng, 1.0, 10.0);
    auto base = bfs_reachable(sn, 0, h, bw);
    auto more_hops = bfs_reachable(sn, 0, h + 1, bw);
    auto less_bw = bfs_reachable(sn, 0, h, bw / 2.0);
    CHECK(base.size() <= more_hops.size());
    CHECK(base.size() <= less_bw.size());
  }
}

TEST_CASE("search agrees with exhaustive enumeration on tiny graphs") {
  tst::Rng rng(23);
  std::uniform_int_distribution<int> nodes(2, 7), extra(0, 8), hops(0, 4);
  for (int round = 0; round < 300; ++round) {
    SubstrateNetwork sn =
        tst::random_substrate(rng, nodes(rng), extra(rng), 1.0, 10.0, 1.0, 10.0);
    int h = hops(rng);
    double bw = tst::dyadic(rng, 1.0, 10.0);

    auto entries = bfs_reachable(sn, 0, h, bw);
    for (int dst = 0; dst < sn.node_count(); ++dst) {
      auto expect = best_sequence_to(sn, 0, dst, h, bw);
      auto it = std::find_if(entries.begin(), entries.end(),
                             [dst](const ReachabilityEntry& e) { return e.node == dst; });
      auto got = cheapest_feasible_path(sn, 0, dst, h, bw);
      if (!expect.has_value()) {
        CHECK(it == entries.end());
        CHECK_FALSE(got.has_value());
        continue;
      }
      REQUIRE(it != entries.end());
      CHECK(sequence_of(sn, it->best_path) == *expect);
      REQUIRE(got.has_value());
      CHECK(sequence_of(sn, *got) == *expect);
      CHECK(got->length() == static_cast<int>(expect->size()) - 1);
    }
  }
}
