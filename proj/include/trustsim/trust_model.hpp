#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trustsim/types.hpp"

namespace trustsim {

enum class ModelKind { FourState, SixState, ElevenState, Custom };

const char* to_string(ModelKind k);
std::optional<ModelKind> model_kind_from_string(const std::string& s);

// One trust state: a score bin [bin_lo, bin_hi) in hundredths (the topmost
// bin is closed above), the sender/reporter behaviour probabilities, and the
// most severe event kind that may be announced from it.
struct TrustStateDef {
  std::string name;
  int bin_lo = 0;
  int bin_hi = 0;
  Probability p_send_true;
  Probability p_send_untrue;
  Probability p_report_fraud;
  Probability p_report_honest;
  std::optional<Severity> max_severity;

  // The blacklisted state is the one with all-zero probabilities and no
  // announcement permission.
  bool blacklisted() const;
  bool contains(TrustScore t, bool topmost) const;
};

class UnknownStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a ClarifyingReward adjustment is fed to apply_adjustment;
// clarifying rewards are logged but never added.
class ClarifyingRewardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrustModel {
  ModelKind kind = ModelKind::Custom;
  TrustScore blacklist_threshold{10};
  std::vector<TrustStateDef> states;  // ordered lowest to highest trust

  const TrustStateDef* find_state(const std::string& name) const;
  const TrustStateDef& state(const std::string& name) const;  // throws UnknownStateError
  std::size_t index_of(const std::string& name) const;        // throws UnknownStateError
  std::size_t state_index_of(TrustScore t) const;
  const TrustStateDef& state_of(TrustScore t) const;
  bool is_blacklisted(TrustScore t) const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

TrustModel builtin_model(ModelKind kind);  // FourState, SixState or ElevenState

ValidationReport validate_model(const TrustModel& model);

const TrustStateDef& state_of(const TrustModel& model, TrustScore trust);

// True iff the state may announce an event of this severity.
bool can_announce(const TrustModel& model, const std::string& state_name,
                  Severity severity);

struct AdjustmentOutcome {
  TrustScore new_trust;
  std::string old_state;
  std::string new_state;
  bool state_changed = false;
  bool clamped = false;  // the delta was cut short at 0.00 or 0.90
};

// Clamped trust arithmetic plus the resulting state move. Throws
// ClarifyingRewardError for adjustments that may never be applied.
AdjustmentOutcome apply_adjustment(TrustScore trust, const TrustAdjustment& adj,
                                   const TrustModel& model);

}  // namespace trustsim
