#include "vnesim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "vnesim/bfsn.hpp"
#include "vnesim/hem.hpp"
#include "vnesim/reference.hpp"
#include "vnesim/textio.hpp"

namespace vnesim {

namespace {

// Integer ticks t in [0, horizon] with arrival <= t < arrival + lifetime.
long long active_ticks(double arrival, double lifetime, long long horizon) {
  long long lo = std::max<long long>(static_cast<long long>(std::ceil(arrival)), 0);
  long long hi =
      std::min<long long>(static_cast<long long>(std::ceil(arrival + lifetime)) - 1, horizon);
  return hi >= lo ? hi - lo + 1 : 0;
}

double active_span(double arrival, double lifetime, long long horizon) {
  double lo = std::max(arrival, 0.0);
  double hi = std::min(arrival + lifetime, static_cast<double>(horizon));
  return hi > lo ? hi - lo : 0.0;
}

double weight_in_window(const DecisionRecord& r, long long horizon, AccrualMode accrual) {
  if (accrual == AccrualMode::DiscreteUnits)
    return static_cast<double>(active_ticks(r.arrival, r.lifetime, horizon));
  return active_span(r.arrival, r.lifetime, horizon);
}

void require_positive_horizon(long long horizon) {
  if (horizon <= 0) throw std::invalid_argument("horizon must be positive");
}

double summed(const std::vector<DecisionRecord>& log, long long horizon, AccrualMode accrual,
              double DecisionRecord::* field) {
  double total = 0.0;
  for (const DecisionRecord& r : log) {
    if (!r.accepted) continue;
    total += (r.*field) * weight_in_window(r, horizon, accrual);
  }
  return total;
}

}  // namespace

double long_term_avg_revenue(const std::vector<DecisionRecord>& log, long long horizon,
                             AccrualMode accrual) {
  require_positive_horizon(horizon);
  return summed(log, horizon, accrual, &DecisionRecord::revenue) /
         static_cast<double>(horizon);
}

double long_term_avg_cost(const std::vector<DecisionRecord>& log, long long horizon,
                          AccrualMode accrual) {
  require_positive_horizon(horizon);
  return summed(log, horizon, accrual, &DecisionRecord::cost) / static_cast<double>(horizon);
}

std::optional<double> acceptance_ratio(const std::vector<DecisionRecord>& log) {
  if (log.empty()) return std::nullopt;
  long long accepted = 0;
  for (const DecisionRecord& r : log) accepted += r.accepted ? 1 : 0;
  return static_cast<double>(accepted) / static_cast<double>(log.size());
}

std::optional<double> revenue_cost_ratio(const std::vector<DecisionRecord>& log,
                                         long long horizon, AccrualMode accrual) {
  require_positive_horizon(horizon);
  double rev = summed(log, horizon, accrual, &DecisionRecord::revenue);
  double cst = summed(log, horizon, accrual, &DecisionRecord::cost);
  if (cst == 0.0) return std::nullopt;
  return rev / cst;
}

MetricsTimeline metrics_from_decisions(const std::vector<DecisionRecord>& log, long long horizon,
                                       long long sample_every, AccrualMode accrual) {
  require_positive_horizon(horizon);
  if (sample_every <= 0) throw std::invalid_argument("sample_every must be positive");

  MetricsTimeline timeline;
  auto sample_at_time = [](long long t) {
    MetricsSample s;
    s.time = t;
    return s;
  };
  for (long long t = sample_every; t <= horizon; t += sample_every) {
    timeline.samples.push_back(sample_at_time(t));
    if (t > horizon - sample_every) break;  // avoid overflow near LLONG_MAX
  }
  if (timeline.samples.empty() || timeline.samples.back().time != horizon)
    timeline.samples.push_back(sample_at_time(horizon));

  for (MetricsSample& s : timeline.samples) {
    std::vector<DecisionRecord> arrived;
    for (const DecisionRecord& r : log) {
      if (r.arrival <= static_cast<double>(s.time)) arrived.push_back(r);
    }
    for (const DecisionRecord& r : arrived) (r.accepted ? s.accepted : s.rejected) += 1;
    if (!arrived.empty())
      s.acceptance_ratio = static_cast<double>(s.accepted) /
                           static_cast<double>(s.accepted + s.rejected);
    s.avg_revenue = long_term_avg_revenue(arrived, s.time, accrual);
    s.avg_cost = long_term_avg_cost(arrived, s.time, accrual);
    s.revenue_cost_ratio = revenue_cost_ratio(arrived, s.time, accrual);
  }
  return timeline;
}

namespace {

struct Departure {
  double time = 0.0;
  int id = 0;
  std::size_t index = 0;  // into the request stream

  bool operator>(const Departure& o) const {
    return time != o.time ? time > o.time : id > o.id;
  }
};

using DepartureQueue =
    std::priority_queue<Departure, std::vector<Departure>, std::greater<Departure>>;

void release_departure(SubstrateNetwork& working, const std::vector<VNRequest>& requests,
                       const std::vector<Mapping>& mappings, const Departure& d) {
  if (!release(working, requests[d.index].network, mappings[d.index]))
    throw std::logic_error("departure release failed for request " + std::to_string(d.id));
}

}  // namespace

SimResult run_simulation(const SubstrateNetwork& sn, const std::vector<VNRequest>& requests,
                         const SimConfig& cfg) {
  require_positive_horizon(cfg.horizon);
  if (cfg.sample_every <= 0) throw std::invalid_argument("sample_every must be positive");
  for (std::size_t i = 1; i < requests.size(); ++i) {
    if (requests[i].arrival < requests[i - 1].arrival)
      throw std::invalid_argument("requests are not sorted by arrival");
  }

  SimResult result;
  result.final_substrate = sn;
  SubstrateNetwork& working = result.final_substrate;
  std::vector<Mapping> mappings(requests.size());
  DepartureQueue departures;

  for (std::size_t i = 0; i < requests.size(); ++i) {
    const VNRequest& req = requests[i];
    while (!departures.empty() && departures.top().time <= req.arrival) {
      release_departure(working, requests, mappings, departures.top());
      departures.pop();
    }

    int n = req.network.node_count();
    long long budget = std::llround(cfg.backtrack_factor * static_cast<double>(n));
    EmbedOutcome outcome;
    switch (cfg.algorithm) {
      case Algorithm::Bfsn:
        outcome = bfsn_embed(req.network, working, cfg.max_hops, budget);
        break;
      case Algorithm::BfsnHem:
        outcome = bfsn_hem_embed(req.network, working, cfg.max_hops, budget);
        break;
      case Algorithm::Greedy:
        outcome = greedy_embed(req.network, working, cfg.max_hops);
        break;
    }

    DecisionRecord rec;
    rec.id = req.id;
    rec.arrival = req.arrival;
    rec.lifetime = req.lifetime;
    rec.revenue = revenue(req.network);
    rec.n_subnets_tried = outcome.subnets_tried;
    rec.backtracks_used = outcome.backtracks;
    if (outcome.mapping) {
      rec.accepted = true;
      rec.cost = cost(req.network, *outcome.mapping);
      if (!allocate(working, req.network, *outcome.mapping))
        throw std::logic_error("accepted mapping failed to allocate for request " +
                               std::to_string(req.id));
      mappings[i] = std::move(*outcome.mapping);
      departures.push(Departure{req.arrival + req.lifetime, req.id, i});
    }
    result.decisions.push_back(rec);
  }

  while (!departures.empty()) {
    release_departure(working, requests, mappings, departures.top());
    departures.pop();
  }

  result.timeline = metrics_from_decisions(result.decisions, cfg.horizon, cfg.sample_every,
                                           cfg.accrual);
  return result;
}

namespace {

constexpr const char* kDecisionsHeader =
    "id,arrival,lifetime,decision,revenue,cost,n_subnets_tried,backtracks_used";
constexpr const char* kMetricsHeader =
    "time,accepted,rejected,acceptance_ratio,avg_revenue,avg_cost,revenue_cost_ratio";

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

[[noreturn]] void csv_fail(const std::string& name, int line_no, const std::string& message) {
  throw std::runtime_error(name + ":" + std::to_string(line_no) + ": " + message);
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_real(*v) : "nan";
}

std::optional<double> parse_optional(const std::string& text, const std::string& name,
                                     int line_no) {
  if (text == "nan") return std::nullopt;
  try {
    return parse_real(text);
  } catch (const std::invalid_argument& e) {
    csv_fail(name, line_no, e.what());
  }
}

double parse_real_at(const std::string& text, const std::string& name, int line_no) {
  try {
    return parse_real(text);
  } catch (const std::invalid_argument& e) {
    csv_fail(name, line_no, e.what());
  }
}

long long parse_int_at(const std::string& text, const std::string& name, int line_no) {
  try {
    return parse_int(text);
  } catch (const std::invalid_argument& e) {
    csv_fail(name, line_no, e.what());
  }
}

}  // namespace

void write_decisions_csv(std::ostream& out, const std::vector<DecisionRecord>& log) {
  out << kDecisionsHeader << "\n";
  for (const DecisionRecord& r : log) {
    out << r.id << "," << format_real(r.arrival) << "," << format_real(r.lifetime) << ","
        << (r.accepted ? "accept" : "reject") << "," << format_real(r.revenue) << ","
        << format_real(r.cost) << "," << r.n_subnets_tried << "," << r.backtracks_used << "\n";
  }
}

std::vector<DecisionRecord> read_decisions_csv(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) csv_fail(name, 1, "empty file");
  if (line == std::string(kDecisionsHeader) + "\r") line.pop_back();
  if (line != kDecisionsHeader) csv_fail(name, 1, "unexpected header");

  std::vector<DecisionRecord> log;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f = split_fields(line);
    if (f.size() != 8) csv_fail(name, line_no, "expected 8 fields");
    DecisionRecord r;
    r.id = static_cast<int>(parse_int_at(f[0], name, line_no));
    r.arrival = parse_real_at(f[1], name, line_no);
    r.lifetime = parse_real_at(f[2], name, line_no);
    if (f[3] == "accept")
      r.accepted = true;
    else if (f[3] == "reject")
      r.accepted = false;
    else
      csv_fail(name, line_no, "decision must be accept or reject");
    r.revenue = parse_real_at(f[4], name, line_no);
    r.cost = parse_real_at(f[5], name, line_no);
    r.n_subnets_tried = static_cast<int>(parse_int_at(f[6], name, line_no));
    r.backtracks_used = parse_int_at(f[7], name, line_no);
    log.push_back(r);
  }
  return log;
}

void write_metrics_csv(std::ostream& out, const MetricsTimeline& timeline) {
  out << kMetricsHeader << "\n";
  for (const MetricsSample& s : timeline.samples) {
    out << s.time << "," << s.accepted << "," << s.rejected << ","
        << format_optional(s.acceptance_ratio) << "," << format_real(s.avg_revenue) << ","
        << format_real(s.avg_cost) << "," << format_optional(s.revenue_cost_ratio) << "\n";
  }
}

MetricsTimeline read_metrics_csv(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) csv_fail(name, 1, "empty file");
  if (line == std::string(kMetricsHeader) + "\r") line.pop_back();
  if (line != kMetricsHeader) csv_fail(name, 1, "unexpected header");

  MetricsTimeline timeline;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f = split_fields(line);
    if (f.size() != 7) csv_fail(name, line_no, "expected 7 fields");
    MetricsSample s;
    s.time = parse_int_at(f[0], name, line_no);
    s.accepted = parse_int_at(f[1], name, line_no);
    s.rejected = parse_int_at(f[2], name, line_no);
    s.acceptance_ratio = parse_optional(f[3], name, line_no);
    s.avg_revenue = parse_real_at(f[4], name, line_no);
    s.avg_cost = parse_real_at(f[5], name, line_no);
    s.revenue_cost_ratio = parse_optional(f[6], name, line_no);
    timeline.samples.push_back(s);
  }
  return timeline;
}

}  // namespace vnesim
