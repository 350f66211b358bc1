#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "trustsim/behavior.hpp"

namespace trustsim {

enum class DisputeOutcome { SenderTruthful, SenderUntruthful, Unresolved };

const char* to_string(DisputeOutcome o);
std::optional<DisputeOutcome> dispute_outcome_from_string(const std::string& s);

struct Verdict {
  DisputeOutcome outcome = DisputeOutcome::Unresolved;
  int weighted_sum_hundredths = 0;  // sum of clarifier trust * vote, exact
  bool overridden = false;          // a replay script forced the outcome

  double weighted_sum() const { return weighted_sum_hundredths / 100.0; }
};

struct FeedbackEntry {
  VehicleId clarifier;
  TrustScore trust_at_vote;  // frozen when the vote is cast
  int vote = 0;              // +1 or -1
};

struct Dispute {
  std::uint64_t id = 0;
  std::uint64_t announcement_id = 0;
  std::uint64_t report_id = 0;
  VehicleId sender;
  VehicleId reporter;
  int rsu = 0;
  Seconds opened_at = 0;
  Seconds deadline = 0;  // opened_at + collaboration timer
  std::vector<FeedbackEntry> feedback;
  std::optional<Verdict> verdict;
};

class WindowClosedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DuplicateClarifierError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ConflictOfInterestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class AlreadyResolvedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DuplicateDisputeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Dispute open_dispute(int rsu, const Report& report, VehicleId sender,
                     Seconds now, Seconds timer);

// Records one clarifier's vote, freezing their trust. The window is
// half-open: a vote at the deadline is already too late.
void add_feedback(Dispute& dispute, VehicleId clarifier, TrustScore trust,
                  int vote, Seconds now);

// Weighted vote: the verdict is the sign of sum(trust_i * vote_i). An empty
// feedback list sums to zero and leaves the dispute unresolved.
Verdict resolve_dispute(Dispute& dispute, Seconds now);

// SenderTruthful rewards the sender and punishes the reporter;
// SenderUntruthful does the opposite; Unresolved allocates nothing. Every
// resolved outcome also logs a fixed clarifying reward per clarifier that is
// never applied. Amounts are trust hundredths.
std::vector<TrustAdjustment> allocate_adjustments(const Verdict& verdict,
                                                  const Dispute& dispute,
                                                  int reward, int punishment,
                                                  int clarify_reward);

// Abstract wireless layer for reward/punishment delivery. hop_limit is
// recorded for provenance only.
struct DeliveryModel {
  double loss_probability = 0.0;
  Seconds delivery_lag = 0;
  int hop_limit = 3;
};

struct DeliveryOutcome {
  bool lost = false;
  Seconds at = 0;
};

// One draw: the packet is lost with loss_probability, otherwise it lands at
// resolved_at + delivery_lag.
DeliveryOutcome schedule_delivery(const TrustAdjustment& adj,
                                  const DeliveryModel& model,
                                  Seconds resolved_at, RngStream& rng);

struct RsuNode {
  int id = 0;
  std::vector<std::uint64_t> dispute_ids;
};

// Owns the disputes of one run: assigns ids, spreads disputes round-robin
// across RSUs and enforces one dispute per report.
class DisputeLedger {
 public:
  DisputeLedger(int rsu_count, Seconds timer);

  Dispute& open(const Report& report, VehicleId sender, Seconds now);
  Dispute& by_id(std::uint64_t id);
  const std::vector<Dispute>& disputes() const { return disputes_; }
  std::vector<RsuNode> rsu_view() const;

 private:
  int rsu_count_;
  Seconds timer_;
  std::vector<Dispute> disputes_;
  std::set<std::uint64_t> disputed_reports_;
};

}  // namespace trustsim
