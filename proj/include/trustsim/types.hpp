#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace trustsim {

// Simulation clock, whole seconds.
using Seconds = std::int64_t;

// Trust is kept in integer hundredths (0.40 -> 40) so that replay arithmetic
// is exact and golden tests never drift.
struct TrustScore {
  int hundredths = 0;

  static constexpr int kMin = 0;
  static constexpr int kMax = 90;

  // Throws std::out_of_range outside [0.00, 0.90].
  static TrustScore from_hundredths(int h);
  static TrustScore from_value(double v);
  static TrustScore clamped(int h);

  double value() const { return hundredths / 100.0; }
  auto operator<=>(const TrustScore&) const = default;
};

// Two-decimal fixed point, e.g. "0.40".
std::string format_trust(TrustScore t);

// Behaviour-table probabilities are two-decimal values; stored in hundredths
// so row sums can be checked exactly.
struct Probability {
  int hundredths = 0;

  static Probability from_value(double v);  // throws std::out_of_range
  double value() const { return hundredths / 100.0; }
  auto operator<=>(const Probability&) const = default;
};

struct VehicleId {
  std::uint32_t index = 0;

  std::string label() const;  // "V7"
  static std::optional<VehicleId> parse(const std::string& s);
  auto operator<=>(const VehicleId&) const = default;
};

enum class Severity { Minor = 0, Moderate = 1, Severe = 2 };

const char* to_string(Severity s);
std::optional<Severity> severity_from_string(const std::string& s);

enum class AdjustmentCause { RsuReward, RsuPunishment, ClarifyingReward };

const char* to_string(AdjustmentCause c);
std::optional<AdjustmentCause> adjustment_cause_from_string(const std::string& s);

// A pending trust change. Clarifying rewards are always logged with
// applied = false: the trust manager records them but never adds them.
struct TrustAdjustment {
  VehicleId target;
  int delta_hundredths = 0;
  AdjustmentCause cause = AdjustmentCause::RsuReward;
  bool applied = true;
};

}  // namespace trustsim
