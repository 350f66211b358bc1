#include "trustsim/dispute.hpp"

#include <algorithm>

namespace trustsim {

const char* to_string(DisputeOutcome o) {
  switch (o) {
    case DisputeOutcome::SenderTruthful: return "sender_truthful";
    case DisputeOutcome::SenderUntruthful: return "sender_untruthful";
    case DisputeOutcome::Unresolved: return "unresolved";
  }
  return "?";
}

std::optional<DisputeOutcome> dispute_outcome_from_string(
    const std::string& s) {
  if (s == "sender_truthful") return DisputeOutcome::SenderTruthful;
  if (s == "sender_untruthful") return DisputeOutcome::SenderUntruthful;
  if (s == "unresolved") return DisputeOutcome::Unresolved;
  return std::nullopt;
}

Dispute open_dispute(int rsu, const Report& report, VehicleId sender,
                     Seconds now, Seconds timer) {
  if (timer <= 0) {
    throw std::invalid_argument("collaboration timer must be positive");
  }
  Dispute d;
  d.announcement_id = report.announcement_id;
  d.report_id = report.id;
  d.sender = sender;
  d.reporter = report.reporter;
  d.rsu = rsu;
  d.opened_at = now;
  d.deadline = now + timer;
  return d;
}

void add_feedback(Dispute& dispute, VehicleId clarifier, TrustScore trust,
                  int vote, Seconds now) {
  if (vote != 1 && vote != -1) {
    throw std::invalid_argument("clarifier vote must be +1 or -1");
  }
  if (now >= dispute.deadline) {
    throw WindowClosedError("feedback at " + std::to_string(now) +
                            "s, window closed at " +
                            std::to_string(dispute.deadline) + "s");
  }
  if (clarifier == dispute.sender || clarifier == dispute.reporter) {
    throw ConflictOfInterestError(clarifier.label() +
                                  " is a party to the dispute");
  }
  const bool seen = std::any_of(
      dispute.feedback.begin(), dispute.feedback.end(),
      [&](const FeedbackEntry& f) { return f.clarifier == clarifier; });
  if (seen) {
    throw DuplicateClarifierError(clarifier.label() + " already voted");
  }
  dispute.feedback.push_back(FeedbackEntry{clarifier, trust, vote});
}

Verdict resolve_dispute(Dispute& dispute, Seconds now) {
  if (dispute.verdict.has_value()) {
    throw AlreadyResolvedError("dispute " + std::to_string(dispute.id) +
                               " already resolved");
  }
  if (now < dispute.deadline) {
    throw std::logic_error("dispute " + std::to_string(dispute.id) +
                           " cannot resolve before its deadline");
  }
  Verdict v;
  for (const FeedbackEntry& f : dispute.feedback) {
    v.weighted_sum_hundredths += f.trust_at_vote.hundredths * f.vote;
  }
  if (v.weighted_sum_hundredths > 0) {
    v.outcome = DisputeOutcome::SenderTruthful;
  } else if (v.weighted_sum_hundredths < 0) {
    v.outcome = DisputeOutcome::SenderUntruthful;
  } else {
    v.outcome = DisputeOutcome::Unresolved;
  }
  dispute.verdict = v;
  return v;
}

std::vector<TrustAdjustment> allocate_adjustments(const Verdict& verdict,
                                                  const Dispute& dispute,
                                                  int reward, int punishment,
                                                  int clarify_reward) {
  std::vector<TrustAdjustment> out;
  switch (verdict.outcome) {
    case DisputeOutcome::SenderTruthful:
      out.push_back({dispute.sender, reward, AdjustmentCause::RsuReward, true});
      out.push_back(
          {dispute.reporter, -punishment, AdjustmentCause::RsuPunishment, true});
      break;
    case DisputeOutcome::SenderUntruthful:
      out.push_back(
          {dispute.sender, -punishment, AdjustmentCause::RsuPunishment, true});
      out.push_back({dispute.reporter, reward, AdjustmentCause::RsuReward, true});
      break;
    case DisputeOutcome::Unresolved:
      return out;  // tie: nobody rewarded or punished
  }
  for (const FeedbackEntry& f : dispute.feedback) {
    out.push_back(
        {f.clarifier, clarify_reward, AdjustmentCause::ClarifyingReward, false});
  }
  return out;
}

DeliveryOutcome schedule_delivery(const TrustAdjustment&,
                                  const DeliveryModel& model,
                                  Seconds resolved_at, RngStream& rng) {
  DeliveryOutcome out;
  out.lost = rng.next_double() < model.loss_probability;
  out.at = out.lost ? 0 : resolved_at + model.delivery_lag;
  return out;
}

DisputeLedger::DisputeLedger(int rsu_count, Seconds timer)
    : rsu_count_(rsu_count > 0 ? rsu_count : 1), timer_(timer) {}

Dispute& DisputeLedger::open(const Report& report, VehicleId sender,
                             Seconds now) {
  if (disputed_reports_.contains(report.id)) {
    throw DuplicateDisputeError("report " + std::to_string(report.id) +
                                " already has a dispute");
  }
  const std::uint64_t id = disputes_.size() + 1;
  const int rsu = static_cast<int>((id - 1) % rsu_count_) + 1;
  Dispute d = open_dispute(rsu, report, sender, now, timer_);
  d.id = id;
  disputed_reports_.insert(report.id);
  disputes_.push_back(std::move(d));
  return disputes_.back();
}

Dispute& DisputeLedger::by_id(std::uint64_t id) {
  return disputes_.at(id - 1);
}

std::vector<RsuNode> DisputeLedger::rsu_view() const {
  std::vector<RsuNode> rsus(static_cast<std::size_t>(rsu_count_));
  for (int i = 0; i < rsu_count_; ++i) rsus[static_cast<std::size_t>(i)].id = i + 1;
  for (const Dispute& d : disputes_) {
    rsus[static_cast<std::size_t>(d.rsu - 1)].dispute_ids.push_back(d.id);
  }
  return rsus;
}

}  // namespace trustsim
