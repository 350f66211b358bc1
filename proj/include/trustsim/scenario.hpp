#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trustsim/dispute.hpp"

namespace trustsim {

// Forces an adjustment's fate for one vehicle of one dispute: a fixed
// landing time, or loss in transit.
struct ScriptedDelivery {
  VehicleId vehicle;
  std::optional<Seconds> deliver_at;
  bool lost = false;
};

// Per-announcement-slot overrides for deterministic replays. Overrides only
// constrain events the schedule would produce; RNG draws advance exactly as
// in an unscripted run, so partial scripts stay deterministic.
struct ScriptedStep {
  std::uint64_t announcement_index = 1;  // 1-based over the schedule
  std::optional<bool> ground_truth;
  // Outer nullopt: no override. Inner nullopt: force "no report".
  std::optional<std::optional<VehicleId>> reporter;
  std::optional<DisputeOutcome> verdict;
  std::vector<ScriptedDelivery> deliveries;
};

enum class ReporterMode { SingleCandidate, Independent };

const char* to_string(ReporterMode m);
std::optional<ReporterMode> reporter_mode_from_string(const std::string& s);

// Parameters carried along from the experiment sheet but not simulated.
struct ProvenanceInfo {
  int transmission_range_m = 300;
  std::string area = "urban";
  int lanes = 2;
  bool car_following = true;
};

struct ScenarioConfig {
  std::string description;
  ModelKind model_kind = ModelKind::SixState;
  std::optional<TrustModel> custom_model;  // required iff model_kind == Custom
  Seconds duration = 5000;
  Seconds warmup = 400;
  Seconds announcement_interval = 500;
  Severity severity = Severity::Severe;
  VehicleId sender{0};
  std::vector<VehicleId> reporters = {VehicleId{1}, VehicleId{2}, VehicleId{3},
                                      VehicleId{4}, VehicleId{5}};
  ReporterMode reporter_mode = ReporterMode::SingleCandidate;
  std::uint32_t vehicle_count = 100;
  int default_trust = 50;                  // hundredths
  std::map<std::uint32_t, int> initial_trust;  // per-vehicle overrides
  std::size_t clarifier_pool_size = 5;
  double clarifier_honesty = 1.0;
  int rsu_count = 12;
  Seconds collaboration_timer = 120;
  int reward = 10;          // hundredths
  int punishment = 10;      // hundredths
  int clarify_reward = 8;   // hundredths, logged but never added
  DeliveryModel delivery;
  std::uint64_t seed = 1;
  std::vector<ScriptedStep> script;
  ProvenanceInfo provenance;

  int trust_of(VehicleId v) const {
    auto it = initial_trust.find(v.index);
    return it == initial_trust.end() ? default_trust : it->second;
  }
};

class InvalidConfigError : public std::runtime_error {
 public:
  explicit InvalidConfigError(std::vector<std::string> details);
  const std::vector<std::string>& details() const { return details_; }

 private:
  std::vector<std::string> details_;
};

// Field-level diagnostics; empty iff the config can run.
std::vector<std::string> validate_config(const ScenarioConfig& config);

// Throws InvalidConfigError when validation fails.
void ensure_valid(const ScenarioConfig& config);

// Builtin for the configured kind, or the embedded custom model.
TrustModel resolve_model(const ScenarioConfig& config);

}  // namespace trustsim
