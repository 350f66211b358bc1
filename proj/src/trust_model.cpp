#include "trustsim/trust_model.hpp"

#include <algorithm>

namespace trustsim {

namespace {

TrustStateDef make_state(std::string name, int lo, int hi, int send_true,
                         int report_fraud, Severity severity) {
  TrustStateDef s;
  s.name = std::move(name);
  s.bin_lo = lo;
  s.bin_hi = hi;
  s.p_send_true = Probability{send_true};
  s.p_send_untrue = Probability{100 - send_true};
  s.p_report_fraud = Probability{report_fraud};
  s.p_report_honest = Probability{100 - report_fraud};
  s.max_severity = severity;
  return s;
}

TrustStateDef blacklisted_state(std::string name, int lo, int hi) {
  TrustStateDef s;
  s.name = std::move(name);
  s.bin_lo = lo;
  s.bin_hi = hi;
  s.max_severity = std::nullopt;
  return s;  // all probabilities zero
}

}  // namespace

const char* to_string(ModelKind k) {
  switch (k) {
    case ModelKind::FourState: return "four_state";
    case ModelKind::SixState: return "six_state";
    case ModelKind::ElevenState: return "eleven_state";
    case ModelKind::Custom: return "custom";
  }
  return "?";
}

std::optional<ModelKind> model_kind_from_string(const std::string& s) {
  if (s == "four_state") return ModelKind::FourState;
  if (s == "six_state") return ModelKind::SixState;
  if (s == "eleven_state") return ModelKind::ElevenState;
  if (s == "custom") return ModelKind::Custom;
  return std::nullopt;
}

bool TrustStateDef::blacklisted() const {
  return p_send_true.hundredths == 0 && p_send_untrue.hundredths == 0 &&
         p_report_fraud.hundredths == 0 && p_report_honest.hundredths == 0 &&
         !max_severity.has_value();
}

bool TrustStateDef::contains(TrustScore t, bool topmost) const {
  if (t.hundredths < bin_lo) return false;
  return topmost ? t.hundredths <= bin_hi : t.hundredths < bin_hi;
}

const TrustStateDef* TrustModel::find_state(const std::string& name) const {
  for (const auto& s : states) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const TrustStateDef& TrustModel::state(const std::string& name) const {
  if (const TrustStateDef* s = find_state(name)) return *s;
  throw UnknownStateError("unknown trust state '" + name + "'");
}

std::size_t TrustModel::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].name == name) return i;
  }
  throw UnknownStateError("unknown trust state '" + name + "'");
}

std::size_t TrustModel::state_index_of(TrustScore t) const {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].contains(t, i + 1 == states.size())) return i;
  }
  throw UnknownStateError("trust " + format_trust(t) +
                          " not covered by any state bin");
}

const TrustStateDef& TrustModel::state_of(TrustScore t) const {
  return states[state_index_of(t)];
}

bool TrustModel::is_blacklisted(TrustScore t) const {
  return state_of(t).blacklisted();
}

TrustModel builtin_model(ModelKind kind) {
  TrustModel m;
  m.kind = kind;
  m.blacklist_threshold = TrustScore{10};
  switch (kind) {
    case ModelKind::FourState:
      m.states = {
          blacklisted_state("SB", 0, 10),
          make_state("S1", 10, 50, 40, 60, Severity::Minor),
          make_state("S2", 50, 60, 50, 50, Severity::Moderate),
          make_state("S3", 60, 90, 80, 20, Severity::Severe),
      };
      break;
    case ModelKind::SixState:
      m.states = {
          blacklisted_state("Blacklisted", 0, 10),
          make_state("Very Bad", 10, 30, 10, 90, Severity::Minor),
          make_state("Bad", 30, 49, 20, 70, Severity::Minor),
          make_state("Normal", 49, 60, 40, 50, Severity::Moderate),
          make_state("Good", 60, 75, 60, 30, Severity::Severe),
          make_state("Very Good", 75, 90, 80, 10, Severity::Severe),
      };
      break;
    case ModelKind::ElevenState:
      m.states = {
          blacklisted_state("Blacklisted", 0, 10),
          make_state("Very Bad", 10, 20, 10, 90, Severity::Minor),
          make_state("Bad", 20, 30, 20, 80, Severity::Minor),
          make_state("Fairly Bad", 30, 40, 30, 70, Severity::Minor),
          make_state("Below Normal", 40, 50, 40, 60, Severity::Moderate),
          make_state("Normal", 50, 55, 50, 55, Severity::Moderate),
          make_state("Above Normal", 55, 65, 60, 50, Severity::Moderate),
          make_state("Fairly Good", 65, 75, 70, 40, Severity::Severe),
          make_state("Good", 75, 83, 80, 30, Severity::Severe),
          make_state("Very Good", 83, 88, 85, 20, Severity::Severe),
          make_state("Outstanding", 88, 90, 95, 10, Severity::Severe),
      };
      break;
    case ModelKind::Custom:
      throw std::invalid_argument("no builtin definition for a custom model");
  }
  return m;
}

ValidationReport validate_model(const TrustModel& model) {
  ValidationReport report;
  auto fail = [&report](std::string msg) {
    report.violations.push_back(std::move(msg));
  };

  if (model.states.empty()) {
    fail("model has no states");
    return report;
  }

  const std::size_t n = model.states.size();
  switch (model.kind) {
    case ModelKind::FourState:
      if (n != 4) fail("four_state model must have 4 states, has " + std::to_string(n));
      break;
    case ModelKind::SixState:
      if (n != 6) fail("six_state model must have 6 states, has " + std::to_string(n));
      break;
    case ModelKind::ElevenState:
      if (n != 11) fail("eleven_state model must have 11 states, has " + std::to_string(n));
      break;
    case ModelKind::Custom:
      break;
  }

  // Bin coverage: contiguous, non-overlapping, exactly [0, 90].
  if (model.states.front().bin_lo != TrustScore::kMin) {
    fail("lowest bin must start at 0, starts at " +
         std::to_string(model.states.front().bin_lo));
  }
  if (model.states.back().bin_hi != TrustScore::kMax) {
    fail("topmost bin must end at 90, ends at " +
         std::to_string(model.states.back().bin_hi));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = model.states[i];
    if (s.bin_lo >= s.bin_hi) {
      fail("state '" + s.name + "' has empty bin [" + std::to_string(s.bin_lo) +
           ", " + std::to_string(s.bin_hi) + ")");
    }
    if (i + 1 < n) {
      const auto& next = model.states[i + 1];
      if (s.bin_hi < next.bin_lo) {
        fail("gap between '" + s.name + "' and '" + next.name + "' at [" +
             std::to_string(s.bin_hi) + ", " + std::to_string(next.bin_lo) + ")");
      } else if (s.bin_hi > next.bin_lo) {
        fail("overlap between '" + s.name + "' and '" + next.name + "' at [" +
             std::to_string(next.bin_lo) + ", " + std::to_string(s.bin_hi) + ")");
      }
    }
  }

  // Duplicate names break state lookup.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (model.states[i].name == model.states[j].name) {
        fail("duplicate state name '" + model.states[i].name + "'");
      }
    }
  }

  // Exactly one blacklisted state, owning the lowest bin.
  std::size_t blacklisted_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (model.states[i].blacklisted()) {
      ++blacklisted_count;
      if (i != 0) {
        fail("blacklisted state '" + model.states[i].name +
             "' must own the lowest bin");
      }
    }
  }
  if (blacklisted_count != 1) {
    fail("model must have exactly one blacklisted state, has " +
         std::to_string(blacklisted_count));
  }

  // Probability rows.
  for (const auto& s : model.states) {
    if (s.blacklisted()) continue;
    const int send_sum = s.p_send_true.hundredths + s.p_send_untrue.hundredths;
    if (send_sum != 100) {
      fail("state '" + s.name + "' sender probabilities sum to " +
           std::to_string(send_sum) + "/100");
    }
    const int report_sum =
        s.p_report_fraud.hundredths + s.p_report_honest.hundredths;
    if (report_sum != 100) {
      fail("state '" + s.name + "' reporter probabilities sum to " +
           std::to_string(report_sum) + "/100");
    }
  }

  if (model.blacklist_threshold.hundredths != model.states.front().bin_hi) {
    fail("blacklist threshold " +
         std::to_string(model.blacklist_threshold.hundredths) +
         " does not match the lowest bin edge " +
         std::to_string(model.states.front().bin_hi));
  }

  return report;
}

const TrustStateDef& state_of(const TrustModel& model, TrustScore trust) {
  return model.state_of(trust);
}

bool can_announce(const TrustModel& model, const std::string& state_name,
                  Severity severity) {
  const TrustStateDef& s = model.state(state_name);
  return s.max_severity.has_value() && severity <= *s.max_severity;
}

AdjustmentOutcome apply_adjustment(TrustScore trust, const TrustAdjustment& adj,
                                   const TrustModel& model) {
  if (adj.cause == AdjustmentCause::ClarifyingReward || !adj.applied) {
    throw ClarifyingRewardError(
        "clarifying rewards are recorded but never applied");
  }
  AdjustmentOutcome out;
  out.new_trust = TrustScore::clamped(trust.hundredths + adj.delta_hundredths);
  out.clamped =
      out.new_trust.hundredths != trust.hundredths + adj.delta_hundredths;
  out.old_state = model.state_of(trust).name;
  out.new_state = model.state_of(out.new_trust).name;
  out.state_changed = out.old_state != out.new_state;
  return out;
}

}  // namespace trustsim
