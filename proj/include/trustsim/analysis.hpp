#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "trustsim/engine.hpp"

namespace trustsim {

struct TransitionMatrix {
  std::vector<std::string> state_order;  // from the model, lowest first
  std::vector<std::vector<std::uint64_t>> counts;
  std::vector<std::vector<double>> probabilities;  // row-stochastic

  std::uint64_t total_count() const;
};

// Counts every logged i->j move. Rows with no observations keep a self-loop
// of 1 so the probability matrix stays stochastic without inventing
// unobserved behaviour. Throws UnknownStateError for states outside the
// model.
TransitionMatrix empirical_transition_matrix(
    std::span<const StateTransition> transitions, const TrustModel& model);

// Pools the transition logs of every vehicle in the run.
TransitionMatrix empirical_transition_matrix(const SimResult& result,
                                             const TrustModel& model);

struct StationaryResult {
  bool converged = false;
  std::vector<double> distribution;
  std::size_t iterations = 0;
  double residual = 0.0;  // L1 norm of pi*P - pi at exit
};

// Power iteration. Starts from a near-uniform vector with a small
// deterministic tilt so periodic chains oscillate instead of sitting on an
// unstable fixed point; returns converged = false once max_iter is spent.
StationaryResult stationary_distribution(
    const std::vector<std::vector<double>>& probabilities, double tol = 1e-10,
    std::size_t max_iter = 1'000'000);

StationaryResult stationary_distribution(const TransitionMatrix& matrix,
                                         double tol = 1e-10,
                                         std::size_t max_iter = 1'000'000);

struct VehicleGranularity {
  VehicleId vehicle;
  std::size_t distinct_states = 0;
  std::size_t transitions = 0;
  double mean_dwell_s = 0.0;
  std::map<std::string, double> dwell_by_state;
};

// Distinct states visited, transition counts and dwell times, straight from
// each trajectory's transition log.
std::vector<VehicleGranularity> granularity_metrics(const SimResult& result);

struct RunGranularity {
  std::uint64_t seed = 0;
  std::size_t total_transitions = 0;
  double mean_distinct_states = 0.0;
  double mean_dwell_s = 0.0;
};

struct KindAggregate {
  ModelKind kind = ModelKind::Custom;
  std::size_t state_count = 0;
  std::size_t runs = 0;
  double mean_transitions = 0.0;
  double stddev_transitions = 0.0;  // sample standard deviation
  double mean_distinct_states = 0.0;
  double mean_dwell_s = 0.0;
  std::vector<RunGranularity> per_run;
};

struct OrderingStep {
  ModelKind finer;
  ModelKind coarser;
  double gap = 0.0;        // mean(finer) - mean(coarser)
  double pooled_se = 0.0;  // sqrt(s_f^2/n_f + s_c^2/n_c)
  bool exceeds_se = false;
};

// The granularity claim, made operational: these three metrics quantify how
// much behavioural movement each state partition captures.
struct GranularityReport {
  std::vector<KindAggregate> kinds;     // sorted by state count, ascending
  std::vector<OrderingStep> ordering;   // consecutive finer-vs-coarser gaps
  bool ordering_holds = false;          // every gap positive and > pooled SE
};

class MismatchedConfigsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KindResults {
  ModelKind kind = ModelKind::Custom;
  std::vector<const SimResult*> results;
};

// Aggregates granularity metrics per model kind. All runs must share the
// same config apart from the model and the seed; otherwise
// MismatchedConfigsError.
GranularityReport compare_models(std::span<const KindResults> groups);

// Human-readable table for standard output.
std::string granularity_report_table(const GranularityReport& report);

}  // namespace trustsim
