#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vnesim/graph.hpp"

namespace vnesim {

enum class Algorithm { Bfsn, BfsnHem, Greedy };

// How revenue and cost accrue over a request's stay.  DiscreteUnits sums
// over integer clock ticks (a request counts at tick t iff
// arrival <= t < arrival + lifetime); Continuous integrates the exact
// overlap of [arrival, arrival + lifetime) with the observation window.
enum class AccrualMode { DiscreteUnits, Continuous };

struct DecisionRecord {
  int id = 0;
  double arrival = 0.0;
  double lifetime = 0.0;
  bool accepted = false;
  double revenue = 0.0;  // request revenue, recorded whether or not accepted
  double cost = 0.0;     // cost of the chosen mapping; 0 when rejected
  int n_subnets_tried = 0;
  long long backtracks_used = 0;

  bool operator==(const DecisionRecord&) const = default;
};

struct MetricsSample {
  long long time = 0;
  long long accepted = 0;
  long long rejected = 0;
  std::optional<double> acceptance_ratio;    // absent before any arrival
  double avg_revenue = 0.0;
  double avg_cost = 0.0;
  std::optional<double> revenue_cost_ratio;  // absent while cost sum is 0

  bool operator==(const MetricsSample&) const = default;
};

struct MetricsTimeline {
  std::vector<MetricsSample> samples;

  bool operator==(const MetricsTimeline&) const = default;
};

// Aggregates over a complete decision log.  Only accepted requests earn
// revenue or cost; a request is active on integer tick t iff
// arrival <= t < arrival + lifetime, ticks run over [0, horizon], and the
// sums divide by horizon.  Continuous mode integrates over real time in
// [0, horizon] instead.  horizon must be positive.
double long_term_avg_revenue(const std::vector<DecisionRecord>& log, long long horizon,
                             AccrualMode accrual = AccrualMode::DiscreteUnits);
double long_term_avg_cost(const std::vector<DecisionRecord>& log, long long horizon,
                          AccrualMode accrual = AccrualMode::DiscreteUnits);

// Accepted / arrived; absent for an empty log.
std::optional<double> acceptance_ratio(const std::vector<DecisionRecord>& log);

// Time-summed revenue over time-summed cost across the same window;
// absent while the cost sum is zero.
std::optional<double> revenue_cost_ratio(const std::vector<DecisionRecord>& log,
                                         long long horizon,
                                         AccrualMode accrual = AccrualMode::DiscreteUnits);

// Running metrics sampled at sample_every, 2*sample_every, ... and at
// horizon.  Each sample covers requests with arrival <= sample time and
// accrues revenue/cost up to that time.  Pure function of the log: the
// simulator's own timeline is reproduced bit-exactly from its decisions.
MetricsTimeline metrics_from_decisions(const std::vector<DecisionRecord>& log, long long horizon,
                                       long long sample_every,
                                       AccrualMode accrual = AccrualMode::DiscreteUnits);

struct SimConfig {
  Algorithm algorithm = Algorithm::Bfsn;
  int max_hops = 2;
  double backtrack_factor = 3.0;  // budget = round(factor * request node count)
  long long horizon = 30000;
  long long sample_every = 100;
  AccrualMode accrual = AccrualMode::DiscreteUnits;
};

struct SimResult {
  std::vector<DecisionRecord> decisions;
  MetricsTimeline timeline;
  SubstrateNetwork final_substrate;  // after every departure has been released
};

// Online discrete-event run: requests (sorted by arrival) hit the
// algorithm one at a time; acceptance allocates on the live substrate and
// schedules a departure at arrival + lifetime; departures release.  At
// equal timestamps departures precede the arrival, ordered by request id.
// All requests are processed even past the horizon (the timeline simply
// stops there), and every departure is drained before returning, so
// final_substrate ends at full capacity.
SimResult run_simulation(const SubstrateNetwork& sn, const std::vector<VNRequest>& requests,
                         const SimConfig& cfg);

// CSV with header exactly
//   id,arrival,lifetime,decision,revenue,cost,n_subnets_tried,backtracks_used
// decision is "accept" or "reject"; reals use shortest round-trip form.
void write_decisions_csv(std::ostream& out, const std::vector<DecisionRecord>& log);
std::vector<DecisionRecord> read_decisions_csv(std::istream& in,
                                               const std::string& name = "<stream>");

// CSV with header exactly
//   time,accepted,rejected,acceptance_ratio,avg_revenue,avg_cost,revenue_cost_ratio
// absent ratios are written as nan and read back as absent.
void write_metrics_csv(std::ostream& out, const MetricsTimeline& timeline);
MetricsTimeline read_metrics_csv(std::istream& in, const std::string& name = "<stream>");

}  // namespace vnesim
