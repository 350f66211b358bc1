#include "trustsim/behavior.hpp"

#include <cassert>

namespace trustsim {

const char* to_string(SenderAction a) {
  switch (a) {
    case SenderAction::AnnounceTrue: return "announce_true";
    case SenderAction::AnnounceUntrue: return "announce_untrue";
    case SenderAction::Silent: return "silent";
  }
  return "?";
}

SenderAction decide_sender_action(const DriverAgent& agent, Severity severity,
                                  const TrustModel& model, RngStream& rng) {
  assert(agent.has_role(Role::Sender));
  const TrustStateDef& state = agent.state(model);
  if (!can_announce(model, state.name, severity)) return SenderAction::Silent;
  return rng.next_double() < state.p_send_true.value()
             ? SenderAction::AnnounceTrue
             : SenderAction::AnnounceUntrue;
}

std::optional<Report> decide_reporter_action(const DriverAgent& agent,
                                             const Announcement& ann,
                                             const TrustModel& model,
                                             RngStream& rng) {
  assert(agent.has_role(Role::Reporter));
  assert(agent.id != ann.sender);
  const TrustStateDef& state = agent.state(model);
  const Probability p = ann.ground_truth ? state.p_report_fraud
                                         : state.p_report_honest;
  if (rng.next_double() >= p.value()) return std::nullopt;
  Report r;
  r.reporter = agent.id;
  r.announcement_id = ann.id;
  r.time = ann.time;
  r.fraudulent = ann.ground_truth;
  return r;
}

int decide_clarifier_vote([[maybe_unused]] const DriverAgent& agent,
                          const Announcement& ann, double honesty,
                          RngStream& rng) {
  assert(agent.has_role(Role::Clarifier));
  const bool truthful_vote = rng.next_double() < honesty;
  const bool says_true = truthful_vote ? ann.ground_truth : !ann.ground_truth;
  return says_true ? +1 : -1;
}

VehicleId select_candidate_reporter(std::span<const VehicleId> reporters,
                                    RngStream& rng) {
  if (reporters.empty()) {
    throw EmptyPoolError("no reporters to select from");
  }
  return reporters[rng.next_below(static_cast<std::uint32_t>(reporters.size()))];
}

}  // namespace trustsim
