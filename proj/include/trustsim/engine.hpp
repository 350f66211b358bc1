#pragma once

#include <string>
#include <vector>

#include "trustsim/scenario.hpp"

namespace trustsim {

struct TrajectorySample {
  Seconds time = 0;
  TrustScore trust;
  std::string state;
};

struct StateTransition {
  Seconds time = 0;
  std::string from;
  std::string to;
};

// Trust is piecewise constant, so one sample at time zero plus one per
// applied adjustment describes the whole curve.
struct TrustTrajectory {
  VehicleId vehicle;
  std::vector<TrajectorySample> samples;
  std::vector<StateTransition> transitions;

  TrustScore final_trust() const { return samples.back().trust; }
  const std::string& final_state() const { return samples.back().state; }
};

struct AdjustmentRecord {
  std::uint64_t dispute_id = 0;
  TrustAdjustment adjustment;
  // Not-applied (clarifying) entries are never put on the air.
  std::optional<DeliveryOutcome> delivery;
  bool clamped = false;
  int effective_delta = 0;  // hundredths actually added after clamping
};

struct SimResult {
  std::uint64_t seed = 0;
  ScenarioConfig config;
  std::vector<Announcement> announcements;
  std::vector<Report> reports;
  std::vector<Dispute> disputes;
  std::vector<AdjustmentRecord> adjustments;
  std::vector<TrustTrajectory> trajectories;  // one per vehicle, by index
};

// Announcement slots: every multiple of the interval inside
// (warmup, duration], provided the first slot after the warm-up still fits
// before the end of the run.
std::vector<Seconds> build_schedule(const ScenarioConfig& config);

// Runs one scenario to completion. Fully deterministic for a given
// (config, seed); throws InvalidConfigError on a bad config.
SimResult run_scenario(const ScenarioConfig& config);

struct VehicleSummary {
  VehicleId vehicle;
  TrustScore initial_trust;
  TrustScore final_trust;
  std::string final_state;
  std::size_t transitions = 0;
};

struct RunSummary {
  std::vector<VehicleSummary> vehicles;
  std::size_t announcements = 0;
  std::size_t disputes = 0;
  std::size_t truthful = 0;
  std::size_t untruthful = 0;
  std::size_t unresolved = 0;
  std::size_t lost_adjustments = 0;
  std::size_t clamped_deliveries = 0;
};

RunSummary summarize(const SimResult& result);

}  // namespace trustsim
