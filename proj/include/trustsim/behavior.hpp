#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>

#include "trustsim/rng.hpp"
#include "trustsim/trust_model.hpp"

namespace trustsim {

enum class Role : unsigned { Sender = 1u, Reporter = 2u, Clarifier = 4u };

constexpr unsigned role_mask(Role r) { return static_cast<unsigned>(r); }

struct DriverAgent {
  VehicleId id;
  TrustScore trust;
  unsigned roles = 0;

  bool has_role(Role r) const { return (roles & role_mask(r)) != 0; }
  // The current state is always derived from the live trust score.
  const TrustStateDef& state(const TrustModel& model) const {
    return model.state_of(trust);
  }
};

struct Announcement {
  std::uint64_t id = 0;  // schedule slot, 1-based
  VehicleId sender;
  Seconds time = 0;
  Severity severity = Severity::Severe;
  bool ground_truth = true;
};

struct Report {
  std::uint64_t id = 0;
  VehicleId reporter;
  std::uint64_t announcement_id = 0;
  Seconds time = 0;
  bool fraudulent = false;  // a complaint against a true announcement
};

enum class SenderAction { AnnounceTrue, AnnounceUntrue, Silent };

const char* to_string(SenderAction a);

class EmptyPoolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Silent when access control forbids this severity from the agent's state
// (no draw consumed); otherwise one draw decides true vs untrue.
SenderAction decide_sender_action(const DriverAgent& agent, Severity severity,
                                  const TrustModel& model, RngStream& rng);

// One draw. A true announcement is reported with the state's fraudulent
// reporting probability, an untrue one with its honest reporting
// probability; the blacklisted rows are all-zero so blacklisted agents
// never report.
std::optional<Report> decide_reporter_action(const DriverAgent& agent,
                                             const Announcement& ann,
                                             const TrustModel& model,
                                             RngStream& rng);

// +1 supports the announcement, -1 disputes it. With probability `honesty`
// the vote matches the ground truth. One draw.
int decide_clarifier_vote(const DriverAgent& agent, const Announcement& ann,
                          double honesty, RngStream& rng);

// Uniform pick of the single reporter who gets to examine this
// announcement. Throws EmptyPoolError on an empty pool.
VehicleId select_candidate_reporter(std::span<const VehicleId> reporters,
                                    RngStream& rng);

}  // namespace trustsim
