#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "trustsim/dispute.hpp"

using namespace trustsim;

namespace {

Report make_report(Seconds now) {
  Report r;
  r.id = 1;
  r.reporter = VehicleId{5};
  r.announcement_id = 1;
  r.time = now;
  r.fraudulent = true;
  return r;
}

Dispute dispute_at(Seconds now, Seconds timer = 120) {
  Dispute d = open_dispute(1, make_report(now), VehicleId{0}, now, timer);
  d.id = 1;
  return d;
}

// Independent sign oracle in integer tenths; the implementation sums
// hundredths.
int oracle_sign(const std::vector<int>& trust_tenths, const std::vector<int>& votes) {
  int sum = 0;
  for (std::size_t i = 0; i < trust_tenths.size(); ++i) {
    sum += trust_tenths[i] * votes[i];
  }
  return (sum > 0) - (sum < 0);
}

}  // namespace

TEST_CASE("open_dispute: deadlines and degenerate timer") {
  CHECK(dispute_at(500).deadline == 620);
  CHECK(dispute_at(3500).deadline == 3620);
  CHECK_THROWS_AS(open_dispute(1, make_report(500), VehicleId{0}, 500, 0),
                  std::invalid_argument);
}

TEST_CASE("add_feedback: window, duplicates, conflicts") {
  Dispute d = dispute_at(500);
  add_feedback(d, VehicleId{7}, TrustScore{50}, +1, 500);
  CHECK(d.feedback.size() == 1);
  CHECK(d.feedback[0].trust_at_vote.hundredths == 50);

  SUBCASE("the window is half-open at the deadline") {
    CHECK_THROWS_AS(add_feedback(d, VehicleId{8}, TrustScore{50}, +1, 620),
                    WindowClosedError);
    add_feedback(d, VehicleId{8}, TrustScore{50}, +1, 619);
    CHECK(d.feedback.size() == 2);
  }
  SUBCASE("no clarifier votes twice") {
    CHECK_THROWS_AS(add_feedback(d, VehicleId{7}, TrustScore{60}, -1, 510),
                    DuplicateClarifierError);
  }
  SUBCASE("parties to the dispute cannot vote") {
    CHECK_THROWS_AS(add_feedback(d, VehicleId{0}, TrustScore{50}, +1, 510),
                    ConflictOfInterestError);
    CHECK_THROWS_AS(add_feedback(d, VehicleId{5}, TrustScore{50}, +1, 510),
                    ConflictOfInterestError);
  }
}

TEST_CASE("resolve_dispute: sign of the weighted vote") {
  SUBCASE("0.7 + 0.6 - 0.5 favours the sender") {
    Dispute d = dispute_at(500);
    add_feedback(d, VehicleId{1}, TrustScore{70}, +1, 500);
    add_feedback(d, VehicleId{2}, TrustScore{60}, +1, 500);
    add_feedback(d, VehicleId{3}, TrustScore{50}, -1, 500);
    const Verdict v = resolve_dispute(d, 620);
    CHECK(v.outcome == DisputeOutcome::SenderTruthful);
    CHECK(v.weighted_sum_hundredths == 80);
    CHECK(v.weighted_sum() == doctest::Approx(0.80));
  }
  SUBCASE("all negative votes condemn the sender") {
    Dispute d = dispute_at(500);
    add_feedback(d, VehicleId{1}, TrustScore{30}, -1, 500);
    add_feedback(d, VehicleId{2}, TrustScore{80}, -1, 500);
    CHECK(resolve_dispute(d, 620).outcome == DisputeOutcome::SenderUntruthful);
  }
  SUBCASE("symmetric cancellation leaves the dispute unresolved") {
    Dispute d = dispute_at(500);
    add_feedback(d, VehicleId{1}, TrustScore{50}, +1, 500);
    add_feedback(d, VehicleId{2}, TrustScore{50}, -1, 500);
    const Verdict v = resolve_dispute(d, 620);
    CHECK(v.outcome == DisputeOutcome::Unresolved);
    CHECK(v.weighted_sum_hundredths == 0);
  }
  SUBCASE("no feedback means no verdict either way") {
    Dispute d = dispute_at(500);
    CHECK(resolve_dispute(d, 620).outcome == DisputeOutcome::Unresolved);
  }
  SUBCASE("a dispute resolves exactly once") {
    Dispute d = dispute_at(500);
    resolve_dispute(d, 620);
    CHECK_THROWS_AS(resolve_dispute(d, 620), AlreadyResolvedError);
  }
}

TEST_CASE("weighted vote matches the brute-force oracle, up to 3 clarifiers") {
  // The acceptance suite runs the full 4-clarifier sweep.
  std::size_t cases = 0;
  for (int k = 0; k <= 3; ++k) {
    std::size_t trust_combos = 1;
    for (int i = 0; i < k; ++i) trust_combos *= 9;
    for (std::size_t tc = 0; tc < trust_combos; ++tc) {
      std::vector<int> trust(k);  // tenths, 1..9
      std::size_t rest = tc;
      for (int i = 0; i < k; ++i) {
        trust[i] = static_cast<int>(rest % 9) + 1;
        rest /= 9;
      }
      for (unsigned mask = 0; mask < (1u << k); ++mask) {
        std::vector<int> votes(k);
        for (int i = 0; i < k; ++i) votes[i] = (mask >> i) & 1u ? +1 : -1;

        Dispute d = dispute_at(0);
        for (int i = 0; i < k; ++i) {
          add_feedback(d, VehicleId{static_cast<std::uint32_t>(10 + i)},
                       TrustScore{trust[i] * 10}, votes[i], 0);
        }
        const Verdict v = resolve_dispute(d, 120);
        const int expected = oracle_sign(trust, votes);
        if (expected > 0) REQUIRE(v.outcome == DisputeOutcome::SenderTruthful);
        if (expected < 0) REQUIRE(v.outcome == DisputeOutcome::SenderUntruthful);
        if (expected == 0) REQUIRE(v.outcome == DisputeOutcome::Unresolved);
        ++cases;
      }
    }
  }
  CHECK(cases == 1 + 2 * 9 + 4 * 81 + 8 * 729);
}

TEST_CASE("verdict is invariant under a common scaling of all trusts") {
  for (int scale : {2, 3}) {
    Dispute base = dispute_at(0);
    Dispute scaled = dispute_at(0);
    const int trusts[] = {10, 20, 30};
    const int votes[] = {+1, -1, +1};
    for (int i = 0; i < 3; ++i) {
      add_feedback(base, VehicleId{static_cast<std::uint32_t>(10 + i)},
                   TrustScore{trusts[i]}, votes[i], 0);
      add_feedback(scaled, VehicleId{static_cast<std::uint32_t>(10 + i)},
                   TrustScore{trusts[i] * scale}, votes[i], 0);
    }
    CHECK(resolve_dispute(base, 120).outcome == resolve_dispute(scaled, 120).outcome);
  }
}

TEST_CASE("allocate_adjustments: reward and punishment routing") {
  Dispute d = dispute_at(500);
  add_feedback(d, VehicleId{7}, TrustScore{50}, +1, 500);
  add_feedback(d, VehicleId{8}, TrustScore{50}, +1, 500);

  SUBCASE("sender wins") {
    const Verdict v{DisputeOutcome::SenderTruthful, 100, false};
    const auto adjs = allocate_adjustments(v, d, 10, 10, 8);
    REQUIRE(adjs.size() == 4);
    CHECK(adjs[0].target == VehicleId{0});
    CHECK(adjs[0].delta_hundredths == +10);
    CHECK(adjs[0].cause == AdjustmentCause::RsuReward);
    CHECK(adjs[0].applied);
    CHECK(adjs[1].target == VehicleId{5});
    CHECK(adjs[1].delta_hundredths == -10);
    CHECK(adjs[1].cause == AdjustmentCause::RsuPunishment);
    for (std::size_t i = 2; i < adjs.size(); ++i) {
      CHECK(adjs[i].cause == AdjustmentCause::ClarifyingReward);
      CHECK(adjs[i].delta_hundredths == +8);
      CHECK_FALSE(adjs[i].applied);
    }
  }
  SUBCASE("reporter wins") {
    const Verdict v{DisputeOutcome::SenderUntruthful, -100, false};
    const auto adjs = allocate_adjustments(v, d, 10, 10, 8);
    REQUIRE(adjs.size() == 4);
    CHECK(adjs[0].target == VehicleId{0});
    CHECK(adjs[0].delta_hundredths == -10);
    CHECK(adjs[1].target == VehicleId{5});
    CHECK(adjs[1].delta_hundredths == +10);
  }
  SUBCASE("a tie allocates nothing") {
    const Verdict v{DisputeOutcome::Unresolved, 0, false};
    CHECK(allocate_adjustments(v, d, 10, 10, 8).empty());
  }
  SUBCASE("exactly one applied adjustment each for sender and reporter") {
    for (const DisputeOutcome outcome :
         {DisputeOutcome::SenderTruthful, DisputeOutcome::SenderUntruthful}) {
      const auto adjs = allocate_adjustments(Verdict{outcome, 1, false}, d, 10, 10, 8);
      int sender_applied = 0, reporter_applied = 0, clarifier_applied = 0;
      for (const TrustAdjustment& a : adjs) {
        if (!a.applied) continue;
        if (a.target == d.sender) ++sender_applied;
        else if (a.target == d.reporter) ++reporter_applied;
        else ++clarifier_applied;
      }
      CHECK(sender_applied == 1);
      CHECK(reporter_applied == 1);
      CHECK(clarifier_applied == 0);
    }
  }
}

TEST_CASE("schedule_delivery: loss model") {
  const TrustAdjustment adj{VehicleId{0}, 10, AdjustmentCause::RsuReward, true};

  SUBCASE("loss 0 delivers at resolution plus lag") {
    RngStream rng(1, 0, StreamPurpose::Delivery);
    const DeliveryOutcome out = schedule_delivery(adj, {0.0, 30, 3}, 620, rng);
    CHECK_FALSE(out.lost);
    CHECK(out.at == 650);
  }
  SUBCASE("loss 1 always loses") {
    RngStream rng(2, 0, StreamPurpose::Delivery);
    for (int i = 0; i < 1000; ++i) {
      CHECK(schedule_delivery(adj, {1.0, 0, 3}, 620, rng).lost);
    }
  }
  SUBCASE("loss 0.1 loses about 10%") {
    RngStream rng(3, 0, StreamPurpose::Delivery);
    int lost = 0;
    for (int i = 0; i < 100'000; ++i) {
      if (schedule_delivery(adj, {0.1, 0, 3}, 620, rng).lost) ++lost;
    }
    CHECK(std::abs(lost / 100'000.0 - 0.10) < 0.01);
  }
}

TEST_CASE("ledger: round-robin RSUs and one dispute per report") {
  DisputeLedger ledger(12, 120);
  for (std::uint64_t i = 1; i <= 15; ++i) {
    Report r = make_report(500);
    r.id = i;
    const Dispute& d = ledger.open(r, VehicleId{0}, 500);
    CHECK(d.id == i);
    CHECK(d.rsu == static_cast<int>((i - 1) % 12) + 1);
  }
  Report dup = make_report(900);
  dup.id = 3;
  CHECK_THROWS_AS(ledger.open(dup, VehicleId{0}, 900), DuplicateDisputeError);

  const auto rsus = ledger.rsu_view();
  REQUIRE(rsus.size() == 12);
  CHECK(rsus[0].dispute_ids.size() == 2);  // disputes 1 and 13
  CHECK(rsus[2].dispute_ids.size() == 2);  // disputes 3 and 15
  CHECK(rsus[4].dispute_ids.size() == 1);
  CHECK(rsus[11].dispute_ids.size() == 1);
}
