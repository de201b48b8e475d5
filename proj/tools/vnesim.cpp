// Command-line front end: workload generation, online embedding runs,
// decision-log validation, and metrics reporting.
//
// Exit codes: 0 success, 1 domain failure (bad input data, failed
// validation), 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vnesim/bfsn.hpp"
#include "vnesim/graph.hpp"
#include "vnesim/hem.hpp"
#include "vnesim/reference.hpp"
#include "vnesim/sim.hpp"
#include "vnesim/textio.hpp"
#include "vnesim/workload.hpp"

namespace {

using namespace vnesim;

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "bfsn") return Algorithm::Bfsn;
  if (name == "bfsn-hem") return Algorithm::BfsnHem;
  if (name == "greedy") return Algorithm::Greedy;
  throw std::runtime_error("unknown algorithm: " + name);
}

AccrualMode accrual_from_name(const std::string& name) {
  if (name == "discrete") return AccrualMode::DiscreteUnits;
  if (name == "continuous") return AccrualMode::Continuous;
  throw std::runtime_error("unknown accrual mode: " + name);
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_real(*v) : "nan";
}

EmbedOutcome embed_one(Algorithm algorithm, const VirtualNetwork& vn,
                       const SubstrateNetwork& sn, int max_hops, double backtrack_factor) {
  long long budget =
      std::llround(backtrack_factor * static_cast<double>(vn.node_count()));
  switch (algorithm) {
    case Algorithm::Bfsn:
      return bfsn_embed(vn, sn, max_hops, budget);
    case Algorithm::BfsnHem:
      return bfsn_hem_embed(vn, sn, max_hops, budget);
    case Algorithm::Greedy:
      return greedy_embed(vn, sn, max_hops);
  }
  throw std::logic_error("unhandled algorithm");
}

// ---- generate ----

struct GenerateArgs {
  WorkloadConfig cfg;
  std::string out_dir;
  std::vector<std::string> profile_specs;  // name:cpu overrides
  std::vector<double> cpu_choices;         // overrides cfg.vn_cpu_choices
};

int do_generate(GenerateArgs& a) {
  if (!a.profile_specs.empty()) {
    a.cfg.server_profiles.clear();
    for (const std::string& entry : a.profile_specs) {
      std::size_t colon = entry.rfind(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == entry.size())
        throw std::runtime_error("server profile must be <name>:<cpu>, got '" + entry + "'");
      a.cfg.server_profiles.push_back(
          {entry.substr(0, colon), parse_real(entry.substr(colon + 1))});
    }
  }
  if (!a.cpu_choices.empty()) a.cfg.vn_cpu_choices = a.cpu_choices;

  GeneratedWorkload w = generate_workload(a.cfg);
  write_workload(w, a.out_dir);
  std::cout << "generated " << a.out_dir << ": " << w.substrate.network.node_count()
            << " nodes, " << w.substrate.network.link_count() << " links, "
            << w.requests.size() << " requests (seed " << a.cfg.seed << ")\n";
  return 0;
}

// ---- run ----

struct RunArgs {
  std::string workload_dir;
  std::string algorithm = "bfsn";
  int max_hops = 2;
  double backtrack_factor = 3.0;
  long long horizon = 30000;
  long long sample_every = 100;
  std::string accrual = "discrete";
  std::string out_prefix;
};

void write_text_file(const std::filesystem::path& path, const std::string& body) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << body;
  if (!out.flush()) throw std::runtime_error("cannot write " + path.string());
}

int do_run(const RunArgs& a) {
  Workload w = load_workload(a.workload_dir);
  SimConfig cfg;
  cfg.algorithm = algorithm_from_name(a.algorithm);
  cfg.max_hops = a.max_hops;
  cfg.backtrack_factor = a.backtrack_factor;
  cfg.horizon = a.horizon;
  cfg.sample_every = a.sample_every;
  cfg.accrual = accrual_from_name(a.accrual);

  SimResult r = run_simulation(w.substrate, w.requests, cfg);

  std::ostringstream metrics;
  write_metrics_csv(metrics, r.timeline);
  write_text_file(a.out_prefix + ".metrics.csv", metrics.str());
  std::ostringstream decisions;
  write_decisions_csv(decisions, r.decisions);
  write_text_file(a.out_prefix + ".decisions.csv", decisions.str());

  const MetricsSample& last = r.timeline.samples.back();
  std::cout << "algorithm=" << a.algorithm << " accrual=" << a.accrual << " horizon="
            << a.horizon << " accepted=" << last.accepted << "/"
            << (last.accepted + last.rejected)
            << " acceptance_ratio=" << format_optional(last.acceptance_ratio)
            << " avg_revenue=" << format_real(last.avg_revenue)
            << " revenue_cost_ratio=" << format_optional(last.revenue_cost_ratio) << "\n";
  return 0;
}

// ---- validate ----

struct ValidateArgs {
  std::string workload_dir;
  std::string decisions_path;
  std::string algorithm = "bfsn";
  int max_hops = 2;
  double backtrack_factor = 3.0;
};

// Replays the log against the workload: re-runs the deterministic
// algorithm at each arrival, checks every recorded field, validates and
// re-applies each accepted mapping, releases departures, and finally
// checks that all residuals return to capacity.
int do_validate(const ValidateArgs& a) {
  Workload w = load_workload(a.workload_dir);
  std::ifstream in(a.decisions_path);
  if (!in) throw std::runtime_error("cannot open " + a.decisions_path);
  std::vector<DecisionRecord> log = read_decisions_csv(in, a.decisions_path);
  Algorithm algorithm = algorithm_from_name(a.algorithm);

  auto fail = [](int id, const std::string& what) {
    std::cerr << "validate: request " << id << ": " << what << "\n";
    return 1;
  };
  if (log.size() != w.requests.size()) {
    std::cerr << "validate: log has " << log.size() << " records but workload has "
              << w.requests.size() << " requests\n";
    return 1;
  }

  std::map<int, const VNRequest*> by_id;
  for (const VNRequest& req : w.requests) by_id[req.id] = &req;

  struct Active {
    double departs;
    int id;
    const VNRequest* req;
    Mapping mapping;
    bool operator>(const Active& o) const {
      return departs != o.departs ? departs > o.departs : id > o.id;
    }
  };
  std::priority_queue<Active, std::vector<Active>, std::greater<Active>> departures;
  SubstrateNetwork working = w.substrate;

  for (std::size_t i = 0; i < log.size(); ++i) {
    const DecisionRecord& rec = log[i];
    auto it = by_id.find(rec.id);
    if (it == by_id.end()) return fail(rec.id, "unknown request id");
    const VNRequest& req = *it->second;
    if (&req != &w.requests[i]) return fail(rec.id, "log order differs from arrival order");
    if (rec.arrival != req.arrival) return fail(rec.id, "arrival differs from workload");
    if (rec.lifetime != req.lifetime) return fail(rec.id, "lifetime differs from workload");

    while (!departures.empty() && departures.top().departs <= req.arrival) {
      const Active& d = departures.top();
      if (!release(working, d.req->network, d.mapping))
        return fail(d.id, "release failed during replay");
      departures.pop();
    }

    EmbedOutcome outcome = embed_one(algorithm, req.network, working, a.max_hops,
                                     a.backtrack_factor);
    if (rec.accepted != outcome.accepted())
      return fail(rec.id, rec.accepted ? "log says accept but replay rejects"
                                       : "log says reject but replay accepts");
    if (rec.revenue != revenue(req.network)) return fail(rec.id, "revenue mismatch");
    if (rec.n_subnets_tried != outcome.subnets_tried)
      return fail(rec.id, "n_subnets_tried mismatch");
    if (rec.backtracks_used != outcome.backtracks)
      return fail(rec.id, "backtracks_used mismatch");
    if (!outcome.mapping) {
      if (rec.cost != 0.0) return fail(rec.id, "rejected request with nonzero cost");
      continue;
    }
    ValidationReport report = validate_mapping(working, req.network, *outcome.mapping,
                                               a.max_hops);
    if (!report.empty()) return fail(rec.id, "invalid mapping: " + report.front().detail);
    if (rec.cost != cost(req.network, *outcome.mapping)) return fail(rec.id, "cost mismatch");
    if (!allocate(working, req.network, *outcome.mapping))
      return fail(rec.id, "allocation failed during replay");
    departures.push(Active{req.arrival + req.lifetime, req.id, &req, *outcome.mapping});
  }

  while (!departures.empty()) {
    const Active& d = departures.top();
    if (!release(working, d.req->network, d.mapping))
      return fail(d.id, "release failed during replay");
    departures.pop();
  }
  for (const SubstrateNode& n : working.nodes()) {
    if (n.cpu_residual() != n.cpu_capacity()) {
      std::cerr << "validate: node " << n.id << ": residual " << format_real(n.cpu_residual())
                << " != capacity " << format_real(n.cpu_capacity()) << " after all departures\n";
      return 1;
    }
  }
  for (const SubstrateLink& l : working.links()) {
    if (l.bw_residual() != l.bw_capacity()) {
      std::cerr << "validate: link " << l.id << ": residual " << format_real(l.bw_residual())
                << " != capacity " << format_real(l.bw_capacity()) << " after all departures\n";
      return 1;
    }
  }

  long long accepted = 0;
  for (const DecisionRecord& r : log) accepted += r.accepted ? 1 : 0;
  std::cout << "validate: ok (" << log.size() << " requests, " << accepted << " accepted)\n";
  return 0;
}

// ---- report ----

struct ReportArgs {
  std::vector<std::string> metrics_paths;
  std::string out_prefix;
};

std::string series_name(const std::filesystem::path& p) {
  std::string stem = p.stem().string();  // strips .csv
  const std::string suffix = ".metrics";
  if (stem.size() > suffix.size() && stem.ends_with(suffix))
    stem.resize(stem.size() - suffix.size());
  return stem.empty() ? p.string() : stem;
}

// Step-samples a timeline at `t`: the latest sample with time <= t.
const MetricsSample* sample_at(const MetricsTimeline& tl, long long t) {
  const MetricsSample* best = nullptr;
  for (const MetricsSample& s : tl.samples) {
    if (s.time <= t) best = &s;
  }
  return best;
}

int do_report(const ReportArgs& a) {
  std::vector<MetricsTimeline> runs;
  std::vector<std::string> names;
  for (const std::string& path : a.metrics_paths) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    MetricsTimeline tl = read_metrics_csv(in, path);
    if (tl.samples.empty()) throw std::runtime_error(path + ": no samples");
    runs.push_back(std::move(tl));
    names.push_back(series_name(path));
  }

  // The run with the fewest samples defines the shared grid; other runs
  // are step-resampled onto it.
  std::size_t coarsest = 0;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].samples.size() < runs[coarsest].samples.size()) coarsest = i;
  }
  std::vector<long long> grid;
  for (const MetricsSample& s : runs[coarsest].samples) grid.push_back(s.time);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::vector<long long> g;
    for (const MetricsSample& s : runs[i].samples) g.push_back(s.time);
    if (g != grid) {
      std::cerr << "report: warning: " << names[i]
                << " has a different sample grid; resampling to the coarsest\n";
    }
  }

  struct MetricColumn {
    const char* file_tag;
    std::optional<double> (*get)(const MetricsSample&);
  };
  const MetricColumn columns[] = {
      {"acceptance_ratio", [](const MetricsSample& s) { return s.acceptance_ratio; }},
      {"avg_revenue",
       [](const MetricsSample& s) { return std::optional<double>(s.avg_revenue); }},
      {"revenue_cost_ratio", [](const MetricsSample& s) { return s.revenue_cost_ratio; }},
  };

  for (const MetricColumn& col : columns) {
    std::ostringstream body;
    body << "# time";
    for (const std::string& n : names) body << " " << n;
    body << "\n";
    for (long long t : grid) {
      body << t;
      for (const MetricsTimeline& run : runs) {
        const MetricsSample* s = sample_at(run, t);
        body << " " << (s ? format_optional(col.get(*s)) : "nan");
      }
      body << "\n";
    }
    write_text_file(a.out_prefix + "." + col.file_tag + ".dat", body.str());
  }

  std::ostringstream script;
  script << "set datafile missing \"nan\"\nset key left top\nset xlabel \"time\"\n";
  for (const MetricColumn& col : columns) {
    script << "set output \"" << a.out_prefix << "." << col.file_tag
           << ".png\"\nset terminal pngcairo size 900,540\nset ylabel \"" << col.file_tag
           << "\"\nplot";
    for (std::size_t i = 0; i < names.size(); ++i) {
      script << (i ? ", " : " ") << "\"" << a.out_prefix << "." << col.file_tag << ".dat\" using 1:"
             << i + 2 << " with linespoints title \"" << names[i] << "\"";
    }
    script << "\n";
  }
  write_text_file(a.out_prefix + ".gnuplot", script.str());

  std::cout << "run                  final_time  acceptance_ratio  avg_revenue  revenue_cost_ratio\n";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const MetricsSample& last = runs[i].samples.back();
    std::ostringstream row;
    row.setf(std::ios::left);
    row.width(20);
    row << names[i];
    std::cout << row.str() << " " << last.time << "  "
              << format_optional(last.acceptance_ratio) << "  " << format_real(last.avg_revenue)
              << "  " << format_optional(last.revenue_cost_ratio) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online virtual network embedding workbench"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* c_gen = app.add_subcommand("generate", "Generate a workload directory");
  c_gen->add_option("--seed", gen.cfg.seed, "RNG seed")->capture_default_str();
  c_gen->add_option("--sn-nodes", gen.cfg.sn_nodes, "Substrate node count")
      ->capture_default_str();
  c_gen->add_option("--sn-links", gen.cfg.sn_links, "Substrate link count")
      ->capture_default_str();
  c_gen->add_option("--sn-bw-min", gen.cfg.sn_bw_range.lo, "Substrate bandwidth lower bound")
      ->capture_default_str();
  c_gen->add_option("--sn-bw-max", gen.cfg.sn_bw_range.hi, "Substrate bandwidth upper bound")
      ->capture_default_str();
  c_gen->add_option("--server-profile", gen.profile_specs,
                    "Server profile <name>:<cpu>; repeat to replace the default pool");
  c_gen->add_option("--vn-count", gen.cfg.vn_count, "Number of requests")
      ->capture_default_str();
  c_gen->add_option("--vn-size-min", gen.cfg.vn_size_range.lo, "Smallest request node count")
      ->capture_default_str();
  c_gen->add_option("--vn-size-max", gen.cfg.vn_size_range.hi, "Largest request node count")
      ->capture_default_str();
  c_gen->add_option("--vn-connectivity", gen.cfg.vn_connectivity,
                    "Target request edge density in (0,1]")
      ->capture_default_str();
  c_gen->add_option("--vn-cpu", gen.cpu_choices,
                    "Request cpu demand choice; repeat to replace the default pool");
  c_gen->add_option("--vn-bw-min", gen.cfg.vn_bw_range.lo, "Request bandwidth lower bound")
      ->capture_default_str();
  c_gen->add_option("--vn-bw-max", gen.cfg.vn_bw_range.hi, "Request bandwidth upper bound")
      ->capture_default_str();
  c_gen->add_option("--arrival-rate", gen.cfg.arrival_rate, "Requests per time unit")
      ->capture_default_str();
  c_gen->add_option("--lifetime-min", gen.cfg.lifetime_range.lo, "Shortest lifetime")
      ->capture_default_str();
  c_gen->add_option("--lifetime-max", gen.cfg.lifetime_range.hi, "Longest lifetime")
      ->capture_default_str();
  c_gen->add_option("--waxman-alpha", gen.cfg.waxman_alpha, "Waxman acceptance scale")
      ->capture_default_str();
  c_gen->add_option("--waxman-beta", gen.cfg.waxman_beta, "Waxman distance decay")
      ->capture_default_str();
  c_gen->add_option("--plane-size", gen.cfg.plane_size, "Placement plane side length")
      ->capture_default_str();
  c_gen->add_option("--out-dir", gen.out_dir, "Output directory")->required();

  RunArgs run;
  CLI::App* c_run = app.add_subcommand("run", "Run one algorithm over a workload");
  c_run->add_option("--workload", run.workload_dir, "Workload directory")->required();
  c_run->add_option("--algorithm", run.algorithm, "bfsn, bfsn-hem, or greedy")
      ->check(CLI::IsMember({"bfsn", "bfsn-hem", "greedy"}))
      ->capture_default_str();
  c_run->add_option("--max-hops", run.max_hops, "Path hop limit")->capture_default_str();
  c_run->add_option("--backtrack-factor", run.backtrack_factor,
                    "Backtrack budget per request node")
      ->capture_default_str();
  c_run->add_option("--horizon", run.horizon, "Simulated time units")->capture_default_str();
  c_run->add_option("--sample-every", run.sample_every, "Metric sampling period")
      ->capture_default_str();
  c_run->add_option("--accrual", run.accrual, "Revenue accrual: discrete or continuous")
      ->check(CLI::IsMember({"discrete", "continuous"}))
      ->capture_default_str();
  c_run->add_option("--out", run.out_prefix, "Output prefix for .metrics.csv/.decisions.csv")
      ->required();

  ValidateArgs val;
  CLI::App* c_val = app.add_subcommand("validate", "Replay a decision log against a workload");
  c_val->add_option("--workload", val.workload_dir, "Workload directory")->required();
  c_val->add_option("--decisions", val.decisions_path, "Decision log CSV")->required();
  c_val->add_option("--algorithm", val.algorithm, "Algorithm the log was produced with")
      ->check(CLI::IsMember({"bfsn", "bfsn-hem", "greedy"}))
      ->capture_default_str();
  c_val->add_option("--max-hops", val.max_hops, "Path hop limit used for the log")
      ->capture_default_str();
  c_val->add_option("--backtrack-factor", val.backtrack_factor,
                    "Backtrack budget per request node used for the log")
      ->capture_default_str();

  ReportArgs rep;
  CLI::App* c_rep = app.add_subcommand("report", "Tabulate metrics CSVs into plot data");
  c_rep->add_option("--metrics", rep.metrics_paths, "Metrics CSV files")
      ->required()
      ->expected(-1);
  c_rep->add_option("--out", rep.out_prefix, "Output prefix for .dat/.gnuplot files")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(c_gen)) return do_generate(gen);
    if (app.got_subcommand(c_run)) return do_run(run);
    if (app.got_subcommand(c_val)) return do_validate(val);
    if (app.got_subcommand(c_rep)) return do_report(rep);
  } catch (const std::exception& e) {
    std::cerr << "vnesim: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
