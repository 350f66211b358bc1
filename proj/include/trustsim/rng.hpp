#pragma once

#include <cstdint>

namespace trustsim {

enum class StreamPurpose : std::uint32_t {
  Send = 1,
  SelectReporter = 2,
  Report = 3,
  SelectClarifiers = 4,
  Clarify = 5,
  Delivery = 6,
};

const char* to_string(StreamPurpose p);

// Counter-based random stream: every draw is a pure function of
// (seed, agent, purpose, counter). Streams for different agents or purposes
// never interact, so adding an agent to a scenario cannot shift anyone
// else's sequence, and draws are reproducible regardless of evaluation
// order across agents.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint32_t agent, StreamPurpose purpose)
      : seed_(seed), agent_(agent), purpose_(purpose) {}

  static std::uint64_t word(std::uint64_t seed, std::uint32_t agent,
                            std::uint32_t purpose, std::uint64_t counter);

  std::uint64_t next_u64() {
    return word(seed_, agent_, static_cast<std::uint32_t>(purpose_), counter_++);
  }

  // Uniform in [0, 1), 53 bits of precision.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, n). n must be positive.
  std::uint32_t next_below(std::uint32_t n) {
    return static_cast<std::uint32_t>(next_double() * n);
  }

  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint32_t agent_;
  StreamPurpose purpose_;
  std::uint64_t counter_ = 0;
};

}  // namespace trustsim
