#include "trustsim/analysis.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <set>

namespace trustsim {

std::uint64_t TransitionMatrix::total_count() const {
  std::uint64_t total = 0;
  for (const auto& row : counts) {
    total = std::accumulate(row.begin(), row.end(), total);
  }
  return total;
}

TransitionMatrix empirical_transition_matrix(
    std::span<const StateTransition> transitions, const TrustModel& model) {
  TransitionMatrix m;
  const std::size_t n = model.states.size();
  m.state_order.reserve(n);
  for (const auto& s : model.states) m.state_order.push_back(s.name);
  m.counts.assign(n, std::vector<std::uint64_t>(n, 0));
  m.probabilities.assign(n, std::vector<double>(n, 0.0));

  for (const StateTransition& t : transitions) {
    const std::size_t from = model.index_of(t.from);
    const std::size_t to = model.index_of(t.to);
    ++m.counts[from][to];
  }

  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t row_sum =
        std::accumulate(m.counts[i].begin(), m.counts[i].end(), std::uint64_t{0});
    if (row_sum == 0) {
      m.probabilities[i][i] = 1.0;  // unobserved rows self-loop
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      m.probabilities[i][j] =
          static_cast<double>(m.counts[i][j]) / static_cast<double>(row_sum);
    }
  }
  return m;
}

TransitionMatrix empirical_transition_matrix(const SimResult& result,
                                             const TrustModel& model) {
  std::vector<StateTransition> all;
  for (const TrustTrajectory& t : result.trajectories) {
    all.insert(all.end(), t.transitions.begin(), t.transitions.end());
  }
  return empirical_transition_matrix(all, model);
}

StationaryResult stationary_distribution(
    const std::vector<std::vector<double>>& p, double tol,
    std::size_t max_iter) {
  const std::size_t n = p.size();
  StationaryResult out;
  if (n == 0 || tol <= 0.0) return out;

  // Near-uniform start with a deterministic tilt: an exactly uniform vector
  // can sit on the unstable fixed point of a periodic chain and hide its
  // non-convergence.
  std::vector<double> pi(n);
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pi[i] = 1.0 + 1e-3 * static_cast<double>(i + 1);
    norm += pi[i];
  }
  for (double& x : pi) x /= norm;

  constexpr std::size_t kRateWindow = 12;
  std::vector<double> next(n, 0.0);
  std::vector<double> ratios;
  double prev_diff = -1.0;
  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = pi[i];
      if (w == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) next[j] += w * p[i][j];
    }
    double diff = 0.0;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      diff += std::abs(next[j] - pi[j]);
      sum += next[j];
    }
    for (double& x : next) x /= sum;  // guard against drift
    pi.swap(next);

    if (prev_diff > 0.0) {
      ratios.push_back(std::min(diff / prev_diff, 0.9999999));
      if (ratios.size() > kRateWindow) ratios.erase(ratios.begin());
    }
    prev_diff = diff;

    // The step gap alone overstates convergence for slowly mixing chains:
    // with contraction rate r, the distance left to the fixed point is
    // bounded by the geometric tail gap * r / (1 - r). r is taken as the
    // worst step ratio over a recent window to ride out oscillation. Once
    // the gap reaches rounding noise the ratio estimate saturates near 1,
    // so the noise floor counts as converged.
    const double noise_floor =
        64.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon();
    double tail = diff;
    if (!ratios.empty()) {
      const double rate = *std::max_element(ratios.begin(), ratios.end());
      tail = diff * rate / (1.0 - rate);
    }
    if (diff <= tol && (diff <= noise_floor || tail <= tol)) {
      out.converged = true;
      out.iterations = iter;
      out.residual = diff;
      out.distribution = pi;
      return out;
    }
  }
  out.iterations = max_iter;
  out.distribution = pi;
  return out;
}

StationaryResult stationary_distribution(const TransitionMatrix& matrix,
                                         double tol, std::size_t max_iter) {
  return stationary_distribution(matrix.probabilities, tol, max_iter);
}

std::vector<VehicleGranularity> granularity_metrics(const SimResult& result) {
  std::vector<VehicleGranularity> out;
  out.reserve(result.trajectories.size());
  for (const TrustTrajectory& t : result.trajectories) {
    VehicleGranularity g;
    g.vehicle = t.vehicle;
    g.transitions = t.transitions.size();

    std::set<std::string> visited;
    visited.insert(t.samples.front().state);
    for (const StateTransition& tr : t.transitions) visited.insert(tr.to);
    g.distinct_states = visited.size();

    // Dwell segments: [0, t1), [t1, t2), ..., [tk, horizon].
    Seconds horizon = result.config.duration;
    if (!t.transitions.empty()) {
      horizon = std::max(horizon, t.transitions.back().time);
    }
    Seconds segment_start = 0;
    std::string current = t.samples.front().state;
    for (const StateTransition& tr : t.transitions) {
      g.dwell_by_state[current] += static_cast<double>(tr.time - segment_start);
      segment_start = tr.time;
      current = tr.to;
    }
    g.dwell_by_state[current] += static_cast<double>(horizon - segment_start);
    g.mean_dwell_s = static_cast<double>(horizon) /
                     static_cast<double>(t.transitions.size() + 1);
    out.push_back(std::move(g));
  }
  return out;
}

namespace {

bool configs_comparable(const ScenarioConfig& a, const ScenarioConfig& b) {
  return a.duration == b.duration && a.warmup == b.warmup &&
         a.announcement_interval == b.announcement_interval &&
         a.severity == b.severity && a.sender == b.sender &&
         a.reporters == b.reporters && a.reporter_mode == b.reporter_mode &&
         a.vehicle_count == b.vehicle_count &&
         a.default_trust == b.default_trust &&
         a.initial_trust == b.initial_trust &&
         a.clarifier_pool_size == b.clarifier_pool_size &&
         a.clarifier_honesty == b.clarifier_honesty &&
         a.rsu_count == b.rsu_count &&
         a.collaboration_timer == b.collaboration_timer &&
         a.reward == b.reward && a.punishment == b.punishment &&
         a.clarify_reward == b.clarify_reward &&
         a.delivery.loss_probability == b.delivery.loss_probability &&
         a.delivery.delivery_lag == b.delivery.delivery_lag &&
         a.script.size() == b.script.size();
}

std::size_t builtin_state_count(ModelKind kind) {
  switch (kind) {
    case ModelKind::FourState: return 4;
    case ModelKind::SixState: return 6;
    case ModelKind::ElevenState: return 11;
    case ModelKind::Custom: return 0;
  }
  return 0;
}

}  // namespace

GranularityReport compare_models(std::span<const KindResults> groups) {
  if (groups.empty()) {
    throw MismatchedConfigsError("no result groups to compare");
  }
  const SimResult* reference = nullptr;
  for (const KindResults& g : groups) {
    if (g.results.empty()) {
      throw MismatchedConfigsError(std::string("no results for model ") +
                                   to_string(g.kind));
    }
    for (const SimResult* r : g.results) {
      if (r->config.model_kind != g.kind) {
        throw MismatchedConfigsError(
            "result run with model " +
            std::string(to_string(r->config.model_kind)) +
            " filed under " + to_string(g.kind));
      }
      if (reference == nullptr) {
        reference = r;
      } else if (!configs_comparable(reference->config, r->config)) {
        throw MismatchedConfigsError(
            "configs differ in more than the model kind and seed");
      }
    }
  }

  GranularityReport report;
  for (const KindResults& g : groups) {
    KindAggregate agg;
    agg.kind = g.kind;
    agg.state_count = g.kind == ModelKind::Custom
                          ? g.results.front()->config.custom_model->states.size()
                          : builtin_state_count(g.kind);
    agg.runs = g.results.size();
    for (const SimResult* r : g.results) {
      const std::vector<VehicleGranularity> metrics = granularity_metrics(*r);
      RunGranularity run;
      run.seed = r->seed;
      double distinct = 0.0;
      double dwell = 0.0;
      for (const VehicleGranularity& m : metrics) {
        run.total_transitions += m.transitions;
        distinct += static_cast<double>(m.distinct_states);
        dwell += m.mean_dwell_s;
      }
      const double v = static_cast<double>(metrics.size());
      run.mean_distinct_states = distinct / v;
      run.mean_dwell_s = dwell / v;
      agg.per_run.push_back(run);
    }
    double sum = 0.0;
    for (const RunGranularity& r : agg.per_run) {
      sum += static_cast<double>(r.total_transitions);
      agg.mean_distinct_states += r.mean_distinct_states;
      agg.mean_dwell_s += r.mean_dwell_s;
    }
    const double n = static_cast<double>(agg.runs);
    agg.mean_transitions = sum / n;
    agg.mean_distinct_states /= n;
    agg.mean_dwell_s /= n;
    if (agg.runs > 1) {
      double ss = 0.0;
      for (const RunGranularity& r : agg.per_run) {
        const double d = static_cast<double>(r.total_transitions) - agg.mean_transitions;
        ss += d * d;
      }
      agg.stddev_transitions = std::sqrt(ss / (n - 1.0));
    }
    report.kinds.push_back(std::move(agg));
  }

  std::sort(report.kinds.begin(), report.kinds.end(),
            [](const KindAggregate& a, const KindAggregate& b) {
              return a.state_count < b.state_count;
            });

  report.ordering_holds = report.kinds.size() >= 2;
  for (std::size_t i = 1; i < report.kinds.size(); ++i) {
    const KindAggregate& coarse = report.kinds[i - 1];
    const KindAggregate& fine = report.kinds[i];
    OrderingStep step;
    step.finer = fine.kind;
    step.coarser = coarse.kind;
    step.gap = fine.mean_transitions - coarse.mean_transitions;
    step.pooled_se = std::sqrt(
        fine.stddev_transitions * fine.stddev_transitions / static_cast<double>(fine.runs) +
        coarse.stddev_transitions * coarse.stddev_transitions / static_cast<double>(coarse.runs));
    step.exceeds_se = step.gap > step.pooled_se;
    if (!(step.gap > 0.0) || !step.exceeds_se) report.ordering_holds = false;
    report.ordering.push_back(step);
  }
  return report;
}

std::string granularity_report_table(const GranularityReport& report) {
  char line[192];
  std::string out;
  out += "model          states  runs  mean transitions  stddev   mean distinct  mean dwell s\n";
  for (const KindAggregate& k : report.kinds) {
    std::snprintf(line, sizeof(line), "%-14s %6zu %5zu %17.2f %7.2f %14.2f %13.1f\n",
                  to_string(k.kind), k.state_count, k.runs, k.mean_transitions,
                  k.stddev_transitions, k.mean_distinct_states, k.mean_dwell_s);
    out += line;
  }
  for (const OrderingStep& s : report.ordering) {
    std::snprintf(line, sizeof(line),
                  "gap %s - %s: %.2f transitions (pooled SE %.2f)%s\n",
                  to_string(s.finer), to_string(s.coarser), s.gap, s.pooled_se,
                  s.exceeds_se ? "" : "  [not significant]");
    out += line;
  }
  out += report.ordering_holds
             ? "finer state partitions capture more transitions: ordering holds\n"
             : "transition ordering by granularity does NOT hold\n";
  out +=
      "metrics are this toolkit's operationalization of behavioural "
      "granularity: distinct states visited, state transitions, dwell times\n";
  return out;
}

}  // namespace trustsim
