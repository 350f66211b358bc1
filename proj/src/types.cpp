#include "trustsim/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace trustsim {

TrustScore TrustScore::from_hundredths(int h) {
  if (h < kMin || h > kMax) {
    throw std::out_of_range("trust " + std::to_string(h) +
                            " hundredths outside [0, 90]");
  }
  return TrustScore{h};
}

TrustScore TrustScore::from_value(double v) {
  return from_hundredths(static_cast<int>(std::llround(v * 100.0)));
}

TrustScore TrustScore::clamped(int h) {
  return TrustScore{std::clamp(h, kMin, kMax)};
}

std::string format_trust(TrustScore t) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%d.%02d", t.hundredths / 100,
                t.hundredths % 100);
  return buf;
}

Probability Probability::from_value(double v) {
  const int h = static_cast<int>(std::llround(v * 100.0));
  if (h < 0 || h > 100) {
    throw std::out_of_range("probability " + std::to_string(v) +
                            " outside [0, 1]");
  }
  return Probability{h};
}

std::string VehicleId::label() const { return "V" + std::to_string(index); }

std::optional<VehicleId> VehicleId::parse(const std::string& s) {
  if (s.size() < 2 || (s[0] != 'V' && s[0] != 'v')) return std::nullopt;
  std::uint32_t value = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    value = value * 10 + static_cast<std::uint32_t>(s[i] - '0');
    if (value > 10'000'000) return std::nullopt;
  }
  return VehicleId{value};
}

const char* to_string(Severity s) {
  switch (s) {
    case Severity::Minor: return "minor";
    case Severity::Moderate: return "moderate";
    case Severity::Severe: return "severe";
  }
  return "?";
}

std::optional<Severity> severity_from_string(const std::string& s) {
  if (s == "minor") return Severity::Minor;
  if (s == "moderate") return Severity::Moderate;
  if (s == "severe") return Severity::Severe;
  return std::nullopt;
}

const char* to_string(AdjustmentCause c) {
  switch (c) {
    case AdjustmentCause::RsuReward: return "rsu_reward";
    case AdjustmentCause::RsuPunishment: return "rsu_punishment";
    case AdjustmentCause::ClarifyingReward: return "clarifying_reward";
  }
  return "?";
}

std::optional<AdjustmentCause> adjustment_cause_from_string(
    const std::string& s) {
  if (s == "rsu_reward") return AdjustmentCause::RsuReward;
  if (s == "rsu_punishment") return AdjustmentCause::RsuPunishment;
  if (s == "clarifying_reward") return AdjustmentCause::ClarifyingReward;
  return std::nullopt;
}

}  // namespace trustsim
