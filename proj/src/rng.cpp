#include "trustsim/rng.hpp"

namespace trustsim {

namespace {

// splitmix64 finalizer; bijective with strong avalanche.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

const char* to_string(StreamPurpose p) {
  switch (p) {
    case StreamPurpose::Send: return "send";
    case StreamPurpose::SelectReporter: return "select_reporter";
    case StreamPurpose::Report: return "report";
    case StreamPurpose::SelectClarifiers: return "select_clarifiers";
    case StreamPurpose::Clarify: return "clarify";
    case StreamPurpose::Delivery: return "delivery";
  }
  return "?";
}

std::uint64_t RngStream::word(std::uint64_t seed, std::uint32_t agent,
                              std::uint32_t purpose, std::uint64_t counter) {
  std::uint64_t h = mix(seed);
  h = mix(h ^ ((static_cast<std::uint64_t>(agent) << 32) | purpose));
  return mix(h ^ counter);
}

}  // namespace trustsim
