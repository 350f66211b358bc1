#include "trustsim/scenario.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace trustsim {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

}  // namespace

const char* to_string(ReporterMode m) {
  switch (m) {
    case ReporterMode::SingleCandidate: return "single_candidate";
    case ReporterMode::Independent: return "independent";
  }
  return "?";
}

std::optional<ReporterMode> reporter_mode_from_string(const std::string& s) {
  if (s == "single_candidate") return ReporterMode::SingleCandidate;
  if (s == "independent") return ReporterMode::Independent;
  return std::nullopt;
}

InvalidConfigError::InvalidConfigError(std::vector<std::string> details)
    : std::runtime_error("invalid scenario config: " + join(details)),
      details_(std::move(details)) {}

std::vector<std::string> validate_config(const ScenarioConfig& c) {
  std::vector<std::string> errors;
  auto fail = [&errors](std::string msg) { errors.push_back(std::move(msg)); };

  if (c.duration <= 0) fail("duration_s must be positive");
  if (c.warmup < 0) fail("warmup_s must be non-negative");
  if (c.warmup >= c.duration) fail("warmup_s must be below duration_s");
  if (c.announcement_interval <= 0) fail("announcement_interval_s must be positive");
  if (c.collaboration_timer <= 0) fail("collaboration_timer_s must be positive");
  if (c.vehicle_count == 0) fail("vehicle_count must be positive");
  if (c.rsu_count <= 0) fail("rsu_count must be positive");
  if (c.reward < 0) fail("reward must be non-negative");
  if (c.punishment < 0) fail("punishment must be non-negative");
  if (c.clarify_reward < 0) fail("clarify_reward must be non-negative");
  if (c.clarifier_honesty < 0.0 || c.clarifier_honesty > 1.0) {
    fail("clarifier_honesty must lie in [0, 1]");
  }
  if (c.delivery.loss_probability < 0.0 || c.delivery.loss_probability > 1.0) {
    fail("delivery.loss_probability must lie in [0, 1]");
  }
  if (c.delivery.delivery_lag < 0) fail("delivery.delivery_lag_s must be non-negative");

  if (c.sender.index >= c.vehicle_count) {
    fail("sender " + c.sender.label() + " is outside the fleet of " +
         std::to_string(c.vehicle_count));
  }
  std::set<std::uint32_t> reporter_set;
  for (const VehicleId& r : c.reporters) {
    if (r.index >= c.vehicle_count) {
      fail("reporter " + r.label() + " is outside the fleet");
    }
    if (r == c.sender) {
      fail("sender " + c.sender.label() + " cannot also be a reporter");
    }
    if (!reporter_set.insert(r.index).second) {
      fail("reporter " + r.label() + " listed twice");
    }
  }

  auto check_trust = [&](const std::string& key, int h) {
    if (h < TrustScore::kMin || h > TrustScore::kMax) {
      fail(key + ": trust " + format_trust(TrustScore{h}) +
           " outside [0.00, 0.90]");
    }
  };
  check_trust("default_trust", c.default_trust);
  for (const auto& [idx, h] : c.initial_trust) {
    check_trust("initial_trust." + VehicleId{idx}.label(), h);
    if (idx >= c.vehicle_count) {
      fail("initial_trust." + VehicleId{idx}.label() + " is outside the fleet");
    }
  }

  if (c.model_kind == ModelKind::Custom) {
    if (!c.custom_model.has_value()) {
      fail("model is custom but no model was provided");
    } else {
      ValidationReport r = validate_model(*c.custom_model);
      for (const auto& v : r.violations) fail("model: " + v);
    }
  } else if (c.custom_model.has_value()) {
    fail("a custom model was provided for a builtin model kind");
  }

  // Scripted steps may only constrain slots the schedule produces.
  Seconds slots = 0;
  if (c.announcement_interval > 0 && c.warmup + c.announcement_interval <= c.duration) {
    slots = c.duration / c.announcement_interval -
            c.warmup / c.announcement_interval;
  }
  std::set<std::uint64_t> step_indices;
  for (const ScriptedStep& step : c.script) {
    const std::string where = "script[" + std::to_string(step.announcement_index) + "]";
    if (step.announcement_index == 0 ||
        step.announcement_index > static_cast<std::uint64_t>(slots)) {
      fail(where + ": announcement index outside the schedule of " +
           std::to_string(slots) + " slots");
    }
    if (!step_indices.insert(step.announcement_index).second) {
      fail(where + ": duplicate step for this announcement");
    }
    if (step.reporter.has_value() && step.reporter->has_value()) {
      const VehicleId r = **step.reporter;
      if (r.index >= c.vehicle_count) {
        fail(where + ": unknown vehicle " + r.label());
      } else if (r == c.sender) {
        fail(where + ": the sender cannot report its own announcement");
      }
    }
    std::set<std::uint32_t> targets;
    for (const ScriptedDelivery& d : step.deliveries) {
      if (d.vehicle.index >= c.vehicle_count) {
        fail(where + ": unknown vehicle " + d.vehicle.label() + " in deliveries");
      }
      if (!targets.insert(d.vehicle.index).second) {
        fail(where + ": duplicate delivery override for " + d.vehicle.label());
      }
      if (d.lost && d.deliver_at.has_value()) {
        fail(where + ": delivery for " + d.vehicle.label() +
             " cannot be both lost and timed");
      }
      if (d.deliver_at.has_value() && *d.deliver_at < 0) {
        fail(where + ": delivery time for " + d.vehicle.label() +
             " must be non-negative");
      }
    }
  }

  return errors;
}

void ensure_valid(const ScenarioConfig& config) {
  std::vector<std::string> errors = validate_config(config);
  if (!errors.empty()) throw InvalidConfigError(std::move(errors));
}

TrustModel resolve_model(const ScenarioConfig& config) {
  if (config.model_kind == ModelKind::Custom) {
    if (!config.custom_model.has_value()) {
      throw InvalidConfigError({"model is custom but no model was provided"});
    }
    return *config.custom_model;
  }
  return builtin_model(config.model_kind);
}

}  // namespace trustsim
