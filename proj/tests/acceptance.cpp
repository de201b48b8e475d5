// Release gate: every headline property of the library gets one criterion
// with one [PASS]/[FAIL] line.  The binary exits non-zero if anything fails,
// so CI can hang a red light on it without parsing the output.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "vnesim/bfsn.hpp"
#include "vnesim/graph.hpp"
#include "vnesim/hem.hpp"
#include "vnesim/reference.hpp"
#include "vnesim/sim.hpp"
#include "vnesim/subgraph.hpp"
#include "vnesim/workload.hpp"

#ifndef VNESIM_CLI_PATH
#error "VNESIM_CLI_PATH must point at the CLI binary"
#endif

namespace fs = std::filesystem;
using namespace vnesim;
namespace tst = vnesim::testing;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

template <typename T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  require(static_cast<bool>(in), "cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run_cli(const std::string& args) {
  static int invocation = 0;
  fs::path sink = fs::path("acceptance_cli_" + std::to_string(invocation++) + ".log");
  std::string cmd = std::string(VNESIM_CLI_PATH) + " " + args + " >" + sink.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (code != 0) {
    std::ifstream in(sink);
    std::ostringstream buf;
    buf << in.rdbuf();
    fs::remove(sink);
    throw Failure("cli `" + args + "` exited " + str(code) + ": " + buf.str());
  }
  fs::remove(sink);
  return code;
}

std::string violation_text(const ValidationReport& report) {
  if (report.empty()) return "";
  return report.front().detail;
}

// ---------------------------------------------------------------------------
// 1. Every accepted embedding is consistent and fits the residuals.

void accepted_embeddings_are_sound() {
  tst::Rng rng(2024);
  int accepted[3] = {0, 0, 0};
  int rejected[3] = {0, 0, 0};
  const char* names[3] = {"bfsn", "bfsn-hem", "greedy"};
  for (int round = 0; round < 1000; ++round) {
    std::uniform_int_distribution<int> nodes(4, 30), extra(0, 12), hops(1, 3);
    int sn_nodes = nodes(rng);
    int sn_extra = extra(rng);
    SubstrateNetwork sn =
        tst::random_substrate(rng, sn_nodes, sn_extra, 4.0, 12.0, 4.0, 12.0);
    std::uniform_int_distribution<int> vnodes(2, 10), vextra(0, 4);
    int vn_nodes = vnodes(rng);
    int vn_extra = vextra(rng);
    VirtualNetwork vn = tst::random_request(rng, vn_nodes, vn_extra, 1.0, 6.0, 1.0, 5.0);
    int max_hops = hops(rng);
    long long budget = 3 * vn.node_count();

    const SubstrateNetwork before = sn;
    for (int a = 0; a < 3; ++a) {
      EmbedOutcome out = a == 0   ? bfsn_embed(vn, sn, max_hops, budget)
                         : a == 1 ? bfsn_hem_embed(vn, sn, max_hops, budget)
                                  : greedy_embed(vn, sn, max_hops);
      require(sn == before, std::string(names[a]) + " round " + str(round) +
                                " mutated the substrate it was only probing");
      if (!out.accepted()) {
        ++rejected[a];
        continue;
      }
      ++accepted[a];
      ValidationReport report = validate_mapping(sn, vn, *out.mapping, max_hops);
      require(report.empty(), std::string(names[a]) + " round " + str(round) +
                                  " produced an invalid mapping: " + violation_text(report));
      SubstrateNetwork copy = sn;
      require(allocate(copy, vn, *out.mapping),
              std::string(names[a]) + " round " + str(round) + " overcommitted a residual");
    }
  }
  for (int a = 0; a < 3; ++a) {
    require(accepted[a] >= 50, std::string(names[a]) + " accepted only " + str(accepted[a]) +
                                   " of 1000 fuzz rounds; the fuzz regime lost its teeth");
    require(rejected[a] >= 50, std::string(names[a]) + " rejected only " + str(rejected[a]) +
                                   " of 1000 fuzz rounds; the fuzz regime lost its teeth");
  }
}

// ---------------------------------------------------------------------------
// 2. On tiny instances whose demand filter leaves a single candidate
//    component, an unbounded-backtracking search accepts exactly when
//    exhaustive enumeration over that component's hosts finds an embedding,
//    and never beats the enumerated minimum cost.  Bandwidth is kept
//    generous (any one substrate link covers the whole request) so the
//    sequential path reservations cannot mask a node-placement disagreement;
//    cpu is kept scarce so infeasible instances actually occur.

void exhaustive_search_agreement() {
  tst::Rng rng(77);
  int used = 0, yes = 0, no = 0, cost_checked = 0;
  int attempts = 0;
  while (used < 300) {
    require(++attempts <= 6000,
            "could not assemble 300 single-component instances in 6000 draws");
    std::uniform_int_distribution<int> nodes(5, 8), extra(0, 3);
    SubstrateNetwork sn =
        tst::random_substrate(rng, nodes(rng), extra(rng), 12.0, 28.0, 60.0, 80.0);
    std::uniform_int_distribution<int> vnodes(2, 5), vextra(0, 2);
    VirtualNetwork vn = tst::random_request(rng, vnodes(rng), vextra(rng), 10.0, 28.0, 1.0, 8.0);
    const int max_hops = 2;

    std::vector<SubSubstrate> cands = candidate_subnetworks(sn, vn, max_hops);
    if (cands.size() != 1) continue;
    ++used;

    std::optional<Mapping> feasible = oracle_embed(vn, sn, max_hops, OracleObjective::Feasibility,
                                                   &cands.front().host_nodes);
    EmbedOutcome out = bfsn_embed(vn, sn, max_hops, 1LL << 40);
    require(out.accepted() == feasible.has_value(),
            "instance " + str(used) + ": search said " + (out.accepted() ? "accept" : "reject") +
                " but enumeration said " + (feasible ? "feasible" : "infeasible"));
    if (feasible) {
      ++yes;
      if (vn.node_count() == 2) {
        std::optional<Mapping> best = oracle_embed(vn, sn, max_hops, OracleObjective::MinCost,
                                                   &cands.front().host_nodes);
        require(best.has_value(), "MinCost disagrees with Feasibility");
        double got = cost(vn, *out.mapping);
        double floor = cost(vn, *best);
        require(got >= floor - 1e-9, "instance " + str(used) + ": search cost " + str(got) +
                                         " beats the enumerated minimum " + str(floor));
        ++cost_checked;
      }
    } else {
      ++no;
    }
  }
  require(yes >= 50, "only " + str(yes) + " feasible instances of 300; regime too tight");
  require(no >= 20, "only " + str(no) + " infeasible instances of 300; regime too loose");
  require(cost_checked >= 20, "only " + str(cost_checked) + " cost comparisons ran");
}

// ---------------------------------------------------------------------------
// 3. A full simulated day returns the substrate to factory state, and the
//    CLI replays the emitted log without complaint.

void resources_conserved_and_log_replayable() {
  WorkloadConfig cfg;
  cfg.seed = 13;
  cfg.sn_nodes = 30;
  cfg.sn_links = 60;
  cfg.vn_count = 500;
  cfg.vn_size_range = {2, 6};

  TempDir tmp("acceptance_conserve_tmp");
  fs::path dir = tmp.path / "wl";
  write_workload(generate_workload(cfg), dir);
  Workload wl = load_workload(dir);

  const std::pair<Algorithm, const char*> algos[] = {
      {Algorithm::Bfsn, "bfsn"}, {Algorithm::BfsnHem, "bfsn-hem"}, {Algorithm::Greedy, "greedy"}};
  for (const auto& [algo, name] : algos) {
    SimConfig sim;
    sim.algorithm = algo;
    sim.horizon = 12000;
    sim.sample_every = 1000;
    SimResult result = run_simulation(wl.substrate, wl.requests, sim);
    require(result.final_substrate == wl.substrate,
            std::string(name) + ": substrate did not return to capacity after all departures");

    fs::path log = tmp.path / (std::string(name) + ".decisions.csv");
    std::ofstream out(log);
    write_decisions_csv(out, result.decisions);
    out.close();
    run_cli("validate --workload " + dir.string() + " --decisions " + log.string() +
            " --algorithm " + name);
  }
}

// ---------------------------------------------------------------------------
// 4. Coarsening partitions nodes and links exactly, respects the cpu cap for
//    every merged group, and reaches a fixpoint.

void coarsening_partitions_demand_exactly() {
  tst::Rng rng(99);
  for (int round = 0; round < 1000; ++round) {
    std::uniform_int_distribution<int> vnodes(2, 8), vextra(0, 6);
    VirtualNetwork vn = tst::random_request(rng, vnodes(rng), vextra(rng), 1.0, 8.0, 1.0, 9.0);
    double cap = tst::dyadic(rng, 2.0, 20.0);
    for (CoarsenScan scan : {CoarsenScan::RestartAfterMerge, CoarsenScan::ContinueDownList}) {
      CoarsenedVN cvn = coarsen(vn, cap, scan);
      const std::string tag = "round " + str(round) + " cap " + str(cap);

      std::vector<int> members;
      for (const SuperNode& s : cvn.super_nodes) {
        require(!s.members.empty() && std::is_sorted(s.members.begin(), s.members.end()),
                tag + ": group members not sorted");
        require(s.id == s.members.front(), tag + ": group id is not the smallest member");
        double cpu = 0.0;
        for (int m : s.members) cpu += vn.node(m).cpu_demand;
        require(cpu == s.cpu_demand, tag + ": group cpu is not the exact member sum");
        if (s.members.size() > 1)
          require(s.cpu_demand <= cap, tag + ": merged group exceeds the cpu cap");
        members.insert(members.end(), s.members.begin(), s.members.end());
      }
      std::sort(members.begin(), members.end());
      std::vector<int> all_nodes(static_cast<std::size_t>(vn.node_count()));
      for (int i = 0; i < vn.node_count(); ++i) all_nodes[static_cast<std::size_t>(i)] = i;
      require(members == all_nodes, tag + ": groups do not partition the nodes");

      std::map<int, int> owner;  // original node -> super id
      for (const SuperNode& s : cvn.super_nodes)
        for (int m : s.members) owner[m] = s.id;

      std::vector<int> links = cvn.internal_links;
      for (const SuperLink& l : cvn.super_links) {
        require(!l.constituents.empty() &&
                    std::is_sorted(l.constituents.begin(), l.constituents.end()),
                tag + ": bundle constituents not sorted");
        require(l.id == l.constituents.front(), tag + ": bundle id is not the smallest member");
        require(l.a < l.b, tag + ": bundle endpoints not ordered");
        double bw = 0.0;
        for (int c : l.constituents) {
          const VirtualLink& orig = vn.link(c);
          int oa = owner.at(orig.a), ob = owner.at(orig.b);
          require(std::minmax(oa, ob) == std::minmax(l.a, l.b),
                  tag + ": a constituent joins the wrong groups");
          bw += orig.bw_demand;
        }
        require(bw == l.bw_demand, tag + ": bundle bw is not the exact constituent sum");
        links.insert(links.end(), l.constituents.begin(), l.constituents.end());
      }
      for (int c : cvn.internal_links)
        require(owner.at(vn.link(c).a) == owner.at(vn.link(c).b),
                tag + ": an absorbed link crosses two groups");
      std::sort(links.begin(), links.end());
      std::vector<int> all_links(static_cast<std::size_t>(vn.link_count()));
      for (int i = 0; i < vn.link_count(); ++i) all_links[static_cast<std::size_t>(i)] = i;
      require(links == all_links, tag + ": bundles do not partition the links");

      double crossing = 0.0;
      for (const SuperLink& l : cvn.super_links) crossing += l.bw_demand;
      double total_bw = 0.0;
      for (int i = 0; i < vn.link_count(); ++i) total_bw += vn.link(i).bw_demand;
      bool merged = std::any_of(cvn.super_nodes.begin(), cvn.super_nodes.end(),
                                [](const SuperNode& s) { return s.members.size() > 1; });
      if (merged)
        require(crossing < total_bw,
                tag + ": merging did not strictly reduce the crossing bandwidth");
      else
        require(crossing == total_bw, tag + ": crossing bandwidth moved without any merge");

      CoarsenedVN again = coarsen(coarse_as_network(cvn), cap, scan);
      require(static_cast<int>(again.super_nodes.size()) ==
                  static_cast<int>(cvn.super_nodes.size()),
              tag + ": coarsening was not a fixpoint");
    }
  }
}

// ---------------------------------------------------------------------------
// 5-7. Desk-scale comparison runs shared by three criteria.

struct DeskScale {
  // indices: 0 bfsn, 1 bfsn-hem, 2 greedy
  double mean_acceptance[3] = {0, 0, 0};
  double mean_revenue[3] = {0, 0, 0};
  std::vector<double> rc_values;  // bfsn and bfsn-hem, every seed
  std::string detail;
};

const DeskScale& desk_scale() {
  static std::optional<DeskScale> cache;
  static std::string error;
  if (!error.empty()) throw Failure(error);
  if (cache) return *cache;
  try {
    DeskScale d;
    const Algorithm algos[3] = {Algorithm::Bfsn, Algorithm::BfsnHem, Algorithm::Greedy};
    const char* names[3] = {"bfsn", "bfsn-hem", "greedy"};
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      WorkloadConfig cfg;
      cfg.seed = seed;
      cfg.sn_nodes = 100;
      cfg.sn_links = 500;
      cfg.vn_count = 600;
      GeneratedWorkload gw = generate_workload(cfg);
      std::vector<VNRequest> requests;
      requests.reserve(gw.requests.size());
      for (const GeneratedRequest& r : gw.requests) requests.push_back(r.request);

      for (int a = 0; a < 3; ++a) {
        SimConfig sim;
        sim.algorithm = algos[a];
        sim.horizon = 6000;
        sim.sample_every = 500;
        SimResult result = run_simulation(gw.substrate.network, requests, sim);
        std::optional<double> acc = acceptance_ratio(result.decisions);
        require(acc.has_value(), "no arrivals in a desk-scale run");
        double rev = long_term_avg_revenue(result.decisions, sim.horizon);
        d.mean_acceptance[a] += *acc / 3.0;
        d.mean_revenue[a] += rev / 3.0;
        if (algos[a] != Algorithm::Greedy) {
          std::optional<double> rc = revenue_cost_ratio(result.decisions, sim.horizon);
          require(rc.has_value(), "zero accumulated cost in a desk-scale run");
          d.rc_values.push_back(*rc);
        }
        d.detail += str(names[a]) + "/seed" + str(seed) + " acc=" + str(*acc) +
                    " rev=" + str(rev) + "; ";
      }
    }
    cache = std::move(d);
    return *cache;
  } catch (const std::exception& e) {
    error = e.what();
    throw Failure(error);
  }
}

void acceptance_ratio_ordering_at_scale() {
  const DeskScale& d = desk_scale();
  std::ostringstream got;
  got << "bfsn-hem=" << d.mean_acceptance[1] << " bfsn=" << d.mean_acceptance[0]
      << " greedy=" << d.mean_acceptance[2];
  require(d.mean_acceptance[1] >= d.mean_acceptance[0] - 0.02,
          "coarsened search fell more than 2 points behind the plain one: " + got.str());
  require(d.mean_acceptance[0] >= d.mean_acceptance[2] + 0.10,
          "plain search is not at least 10 points above greedy: " + got.str());
}

void revenue_ordering_at_scale() {
  const DeskScale& d = desk_scale();
  std::ostringstream got;
  got << "bfsn-hem=" << d.mean_revenue[1] << " bfsn=" << d.mean_revenue[0]
      << " greedy=" << d.mean_revenue[2];
  require(d.mean_revenue[1] >= d.mean_revenue[0] - 1e-9,
          "coarsened search earns less than the plain one: " + got.str());
  require(d.mean_revenue[0] >= 1.5 * d.mean_revenue[2],
          "plain search does not earn 1.5x greedy: " + got.str());
}

void revenue_cost_band_at_scale() {
  const DeskScale& d = desk_scale();
  require(d.rc_values.size() == 6, "expected 6 revenue/cost readings");
  for (double rc : d.rc_values) {
    require(rc > 0.8 && rc < 1.6,
            "revenue/cost " + str(rc) + " is outside the plausible (0.8, 1.6) band");
  }
}

// ---------------------------------------------------------------------------
// 8. The CLI reproduces itself bit for bit.

void cli_runs_are_reproducible() {
  TempDir tmp("acceptance_cli_tmp");
  std::string gen = "generate --seed 21 --sn-nodes 20 --sn-links 40 --vn-count 40"
                    " --vn-size-min 2 --vn-size-max 5 --out-dir ";
  run_cli(gen + (tmp.path / "a").string());
  run_cli(gen + (tmp.path / "b").string());
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(tmp.path / "a")) {
    fs::path name = entry.path().filename();
    require(slurp(tmp.path / "a" / name) == slurp(tmp.path / "b" / name),
            "regenerated workload differs in " + name.string());
    ++compared;
  }
  require(compared == 42, "expected 42 files per workload, saw " + str(compared));

  for (const std::string out : {"r1", "r2"}) {
    run_cli("run --workload " + (tmp.path / "a").string() +
            " --algorithm bfsn-hem --horizon 800 --sample-every 100 --out " +
            (tmp.path / out).string());
  }
  for (const std::string suffix : {".decisions.csv", ".metrics.csv"}) {
    require(slurp((tmp.path / "r1").string() + suffix) ==
                slurp((tmp.path / "r2").string() + suffix),
            "re-run differs in " + suffix);
  }
}

// ---------------------------------------------------------------------------
// 9. Worked examples that were checked by hand stay frozen.

void frozen_examples_still_hold() {
  {
    VirtualNetwork vn;
    vn.add_node(5.0);
    vn.add_node(8.0);
    vn.add_node(3.0);
    vn.add_link(0, 1, 4.0);
    vn.add_link(1, 2, 2.0);
    EmbedOrder order = build_embed_order(vn);
    require(order.sequence == std::vector<int>({1, 0, 2}), "embed order of the 3-chain moved");
  }
  {
    SubstrateNetwork sn = tst::walkthrough_substrate();
    VirtualNetwork vn = tst::walkthrough_request();
    EmbedOutcome out = bfsn_embed(vn, sn, 2, 9);
    require(out.accepted(), "walkthrough request no longer embeds");
    std::map<int, int> expect{{0, 2}, {1, 2}, {2, 1}};
    require(out.mapping->node_map == expect, "walkthrough placement moved");
    require(cost(vn, *out.mapping) == 160.0,
            "walkthrough cost is " + str(cost(vn, *out.mapping)) + ", expected 160");
    require(revenue(vn) == 185.0, "walkthrough revenue moved");
  }
  {
    EmbedOutcome out = greedy_embed(tst::chain_request(), tst::ring_substrate(), 2);
    require(out.accepted(), "greedy no longer embeds the chain on the ring");
    std::map<int, int> expect{{0, 0}, {1, 1}, {2, 3}};
    require(out.mapping->node_map == expect, "greedy placement on the ring moved");
    require(cost(tst::chain_request(), *out.mapping) == 13.0, "greedy ring cost moved");
  }
  {
    CoarsenedVN cvn = coarsen(tst::chain_request(), 7.0);
    CoarsenedVN expect;
    expect.super_nodes = {{0, {0, 1}, 7.0}, {2, {2}, 2.0}};
    expect.super_links = {{1, 0, 2, {1}, 1.0}};
    expect.internal_links = {0};
    require(cvn == expect, "coarsening of the 3-chain at cap 7 moved");
  }
  {
    std::vector<DecisionRecord> log{{0, 3.5, 100.0, true, 12.0, 6.0, 1, 0}};
    require(long_term_avg_revenue(log, 1000) == 1.2,
            "tick accrual moved for a fractional arrival");
    log[0].arrival = 3.0;
    require(long_term_avg_revenue(log, 1000) == 1.2,
            "tick accrual moved for an integer arrival");
    require(long_term_avg_cost(log, 1000) == 0.6, "tick cost accrual moved");
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void()> run;
  };
  const Criterion criteria[] = {
      {"accepted embeddings are sound (3 algorithms, 1000 fuzz rounds)",
       accepted_embeddings_are_sound},
      {"search agrees with exhaustive enumeration on 300 small instances",
       exhaustive_search_agreement},
      {"simulation conserves resources and its logs replay via the CLI",
       resources_conserved_and_log_replayable},
      {"coarsening partitions demand exactly and reaches a fixpoint",
       coarsening_partitions_demand_exactly},
      {"acceptance ratio ordering holds at desk scale (3 seeds averaged)",
       acceptance_ratio_ordering_at_scale},
      {"revenue ordering holds at desk scale (3 seeds averaged)", revenue_ordering_at_scale},
      {"revenue/cost stays in the plausible band at desk scale", revenue_cost_band_at_scale},
      {"CLI workload generation and runs are bit-reproducible", cli_runs_are_reproducible},
      {"hand-checked worked examples are frozen", frozen_examples_still_hold},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string what;
    try {
      c.run();
    } catch (const std::exception& e) {
      what = e.what();
    }
    auto secs = std::chrono::duration_cast<std::chrono::duration<double>>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    if (what.empty()) {
      line << "[PASS] " << c.name << " (" << secs << "s)";
    } else {
      ++failures;
      line << "[FAIL] " << c.name << " (" << secs << "s)\n       " << what;
    }
    std::cout << line.str() << std::endl;
  }
  if (failures) std::cout << failures << " criterion(s) failed" << std::endl;
  return failures == 0 ? 0 : 1;
}
