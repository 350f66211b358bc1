#include "trustsim/engine.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <utility>

namespace trustsim {

namespace {

// Scenario-level draws (reporter selection, clarifier pool sampling) hang
// off a reserved agent id so vehicle streams stay untouched.
constexpr std::uint32_t kCoordinatorAgent = 0xFFFFFFFFu;

enum class EventKind : int {
  Announce = 0,
  Report = 1,
  ClarifyRequest = 2,
  Resolve = 3,
  DeliverAdjustment = 4,
};

struct SimEvent {
  Seconds time = 0;
  EventKind kind = EventKind::Announce;
  std::uint64_t id = 0;  // slot, report id, dispute id or adjustment index

  // Min-queue order: time, then the kind order above, then payload id.
  bool operator>(const SimEvent& other) const {
    if (time != other.time) return time > other.time;
    if (kind != other.kind) return kind > other.kind;
    return id > other.id;
  }
};

class StreamTable {
 public:
  explicit StreamTable(std::uint64_t seed) : seed_(seed) {}

  RngStream& get(std::uint32_t agent, StreamPurpose purpose) {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(agent) << 8) |
        static_cast<std::uint64_t>(purpose);
    auto it = streams_.find(key);
    if (it == streams_.end()) {
      it = streams_.emplace(key, RngStream(seed_, agent, purpose)).first;
    }
    return it->second;
  }

 private:
  std::uint64_t seed_;
  std::map<std::uint64_t, RngStream> streams_;
};

class ScenarioRun {
 public:
  explicit ScenarioRun(const ScenarioConfig& config)
      : cfg_(config), model_(resolve_model(config)), streams_(config.seed),
        ledger_(config.rsu_count, config.collaboration_timer) {}

  SimResult run();

 private:
  void handle_announce(Seconds now, std::uint64_t slot);
  void handle_report(std::uint64_t report_id);
  void handle_clarify(Seconds now, std::uint64_t dispute_id);
  void handle_resolve(Seconds now, std::uint64_t dispute_id);
  void handle_delivery(Seconds now, std::uint64_t adjustment_index);

  const ScriptedStep* step_for_slot(std::uint64_t slot) const;
  std::vector<VehicleId> sample_clarifier_pool(const Dispute& dispute);
  void file_report(const Report& report, Seconds now);

  const ScenarioConfig& cfg_;
  TrustModel model_;
  StreamTable streams_;
  DisputeLedger ledger_;
  std::vector<DriverAgent> agents_;
  SimResult result_;
  std::priority_queue<SimEvent, std::vector<SimEvent>, std::greater<SimEvent>> queue_;
  std::uint64_t next_report_id_ = 1;
};

const ScriptedStep* ScenarioRun::step_for_slot(std::uint64_t slot) const {
  for (const ScriptedStep& s : cfg_.script) {
    if (s.announcement_index == slot) return &s;
  }
  return nullptr;
}

SimResult ScenarioRun::run() {
  ensure_valid(cfg_);
  result_.seed = cfg_.seed;
  result_.config = cfg_;

  agents_.resize(cfg_.vehicle_count);
  result_.trajectories.resize(cfg_.vehicle_count);
  for (std::uint32_t i = 0; i < cfg_.vehicle_count; ++i) {
    DriverAgent& a = agents_[i];
    a.id = VehicleId{i};
    a.trust = TrustScore{cfg_.trust_of(a.id)};
    if (a.id == cfg_.sender) {
      a.roles = role_mask(Role::Sender);
    } else {
      a.roles = role_mask(Role::Clarifier);
      if (std::find(cfg_.reporters.begin(), cfg_.reporters.end(), a.id) !=
          cfg_.reporters.end()) {
        a.roles |= role_mask(Role::Reporter);
      }
    }
    TrustTrajectory& t = result_.trajectories[i];
    t.vehicle = a.id;
    t.samples.push_back({0, a.trust, model_.state_of(a.trust).name});
  }

  const std::vector<Seconds> schedule = build_schedule(cfg_);
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    queue_.push({schedule[k], EventKind::Announce, k + 1});
  }

  while (!queue_.empty()) {
    const SimEvent ev = queue_.top();
    queue_.pop();
    switch (ev.kind) {
      case EventKind::Announce: handle_announce(ev.time, ev.id); break;
      case EventKind::Report: handle_report(ev.id); break;
      case EventKind::ClarifyRequest: handle_clarify(ev.time, ev.id); break;
      case EventKind::Resolve: handle_resolve(ev.time, ev.id); break;
      case EventKind::DeliverAdjustment: handle_delivery(ev.time, ev.id); break;
    }
  }

  result_.disputes = ledger_.disputes();
  return std::move(result_);
}

void ScenarioRun::handle_announce(Seconds now, std::uint64_t slot) {
  DriverAgent& sender = agents_[cfg_.sender.index];
  const SenderAction action = decide_sender_action(
      sender, cfg_.severity, model_, streams_.get(sender.id.index, StreamPurpose::Send));
  // Access control is absolute: a script cannot conjure an announcement out
  // of a gated state.
  if (action == SenderAction::Silent) return;

  bool truth = action == SenderAction::AnnounceTrue;
  const ScriptedStep* step = step_for_slot(slot);
  if (step && step->ground_truth.has_value()) truth = *step->ground_truth;

  Announcement ann;
  ann.id = slot;
  ann.sender = sender.id;
  ann.time = now;
  ann.severity = cfg_.severity;
  ann.ground_truth = truth;
  result_.announcements.push_back(ann);

  if (cfg_.reporters.empty()) return;

  if (cfg_.reporter_mode == ReporterMode::SingleCandidate) {
    const VehicleId candidate = select_candidate_reporter(
        cfg_.reporters, streams_.get(kCoordinatorAgent, StreamPurpose::SelectReporter));
    std::optional<Report> report = decide_reporter_action(
        agents_[candidate.index], ann, model_,
        streams_.get(candidate.index, StreamPurpose::Report));
    if (step && step->reporter.has_value()) {
      if (step->reporter->has_value()) {
        Report forced;
        forced.reporter = **step->reporter;
        forced.announcement_id = ann.id;
        forced.time = ann.time;
        forced.fraudulent = ann.ground_truth;
        report = forced;
      } else {
        report = std::nullopt;
      }
    }
    if (report.has_value()) file_report(*report, now);
  } else {
    for (const VehicleId r : cfg_.reporters) {
      std::optional<Report> report = decide_reporter_action(
          agents_[r.index], ann, model_, streams_.get(r.index, StreamPurpose::Report));
      if (step && step->reporter.has_value()) {
        if (step->reporter->has_value() && **step->reporter == r) {
          Report forced;
          forced.reporter = r;
          forced.announcement_id = ann.id;
          forced.time = ann.time;
          forced.fraudulent = ann.ground_truth;
          report = forced;
        } else {
          report = std::nullopt;
        }
      }
      if (report.has_value()) file_report(*report, now);
    }
  }
}

void ScenarioRun::file_report(const Report& report, Seconds now) {
  Report filed = report;
  filed.id = next_report_id_++;
  result_.reports.push_back(filed);
  queue_.push({now, EventKind::Report, filed.id});
}

void ScenarioRun::handle_report(std::uint64_t report_id) {
  const Report& report = result_.reports[report_id - 1];
  Dispute& d = ledger_.open(report, cfg_.sender, report.time);
  queue_.push({report.time, EventKind::ClarifyRequest, d.id});
  queue_.push({d.deadline, EventKind::Resolve, d.id});
}

std::vector<VehicleId> ScenarioRun::sample_clarifier_pool(const Dispute& dispute) {
  std::vector<VehicleId> eligible;
  for (const DriverAgent& a : agents_) {
    if (!a.has_role(Role::Clarifier)) continue;
    if (a.id == dispute.sender || a.id == dispute.reporter) continue;
    if (model_.is_blacklisted(a.trust)) continue;
    eligible.push_back(a.id);
  }
  const std::size_t want = std::min(cfg_.clarifier_pool_size, eligible.size());
  RngStream& rng = streams_.get(kCoordinatorAgent, StreamPurpose::SelectClarifiers);
  // Partial Fisher-Yates: the first `want` entries are a uniform sample.
  for (std::size_t i = 0; i < want; ++i) {
    const std::size_t j =
        i + rng.next_below(static_cast<std::uint32_t>(eligible.size() - i));
    std::swap(eligible[i], eligible[j]);
  }
  eligible.resize(want);
  return eligible;
}

void ScenarioRun::handle_clarify(Seconds now, std::uint64_t dispute_id) {
  Dispute& d = ledger_.by_id(dispute_id);
  const Announcement& ann = *std::find_if(
      result_.announcements.begin(), result_.announcements.end(),
      [&](const Announcement& a) { return a.id == d.announcement_id; });
  for (const VehicleId c : sample_clarifier_pool(d)) {
    const int vote = decide_clarifier_vote(
        agents_[c.index], ann, cfg_.clarifier_honesty,
        streams_.get(c.index, StreamPurpose::Clarify));
    add_feedback(d, c, agents_[c.index].trust, vote, now);
  }
}

void ScenarioRun::handle_resolve(Seconds now, std::uint64_t dispute_id) {
  Dispute& d = ledger_.by_id(dispute_id);
  Verdict verdict = resolve_dispute(d, now);

  const ScriptedStep* step = step_for_slot(d.announcement_id);
  if (step && step->verdict.has_value()) {
    verdict.outcome = *step->verdict;
    verdict.overridden = true;
    d.verdict = verdict;
  }

  for (TrustAdjustment& adj : allocate_adjustments(
           verdict, d, cfg_.reward, cfg_.punishment, cfg_.clarify_reward)) {
    AdjustmentRecord rec;
    rec.dispute_id = d.id;
    rec.adjustment = adj;
    if (adj.applied) {
      DeliveryOutcome out = schedule_delivery(
          adj, cfg_.delivery, now,
          streams_.get(adj.target.index, StreamPurpose::Delivery));
      if (step) {
        for (const ScriptedDelivery& sd : step->deliveries) {
          if (sd.vehicle != adj.target) continue;
          if (sd.lost) {
            out = DeliveryOutcome{true, 0};
          } else if (sd.deliver_at.has_value()) {
            // Never land a packet before the verdict that produced it.
            out = DeliveryOutcome{false, std::max(*sd.deliver_at, now)};
          }
        }
      }
      rec.delivery = out;
      const std::uint64_t index = result_.adjustments.size();
      result_.adjustments.push_back(rec);
      if (!out.lost) {
        queue_.push({out.at, EventKind::DeliverAdjustment, index});
      }
    } else {
      result_.adjustments.push_back(rec);
    }
  }
}

void ScenarioRun::handle_delivery(Seconds now, std::uint64_t adjustment_index) {
  AdjustmentRecord& rec = result_.adjustments[adjustment_index];
  DriverAgent& agent = agents_[rec.adjustment.target.index];
  const AdjustmentOutcome out = apply_adjustment(agent.trust, rec.adjustment, model_);
  rec.clamped = out.clamped;
  rec.effective_delta = out.new_trust.hundredths - agent.trust.hundredths;
  agent.trust = out.new_trust;

  TrustTrajectory& t = result_.trajectories[agent.id.index];
  t.samples.push_back({now, agent.trust, out.new_state});
  if (out.state_changed) {
    t.transitions.push_back({now, out.old_state, out.new_state});
  }
}

}  // namespace

std::vector<Seconds> build_schedule(const ScenarioConfig& config) {
  std::vector<Seconds> times;
  const Seconds interval = config.announcement_interval;
  if (interval <= 0) return times;
  // The first slot after the warm-up must still fit inside the run.
  if (config.warmup + interval > config.duration) return times;
  for (Seconds t = interval; t <= config.duration; t += interval) {
    if (t > config.warmup) times.push_back(t);
  }
  return times;
}

SimResult run_scenario(const ScenarioConfig& config) {
  return ScenarioRun(config).run();
}

RunSummary summarize(const SimResult& result) {
  RunSummary s;
  s.announcements = result.announcements.size();
  s.disputes = result.disputes.size();
  for (const Dispute& d : result.disputes) {
    if (!d.verdict.has_value()) continue;
    switch (d.verdict->outcome) {
      case DisputeOutcome::SenderTruthful: ++s.truthful; break;
      case DisputeOutcome::SenderUntruthful: ++s.untruthful; break;
      case DisputeOutcome::Unresolved: ++s.unresolved; break;
    }
  }
  for (const AdjustmentRecord& a : result.adjustments) {
    if (a.delivery.has_value() && a.delivery->lost) ++s.lost_adjustments;
    if (a.clamped) ++s.clamped_deliveries;
  }
  for (const TrustTrajectory& t : result.trajectories) {
    VehicleSummary v;
    v.vehicle = t.vehicle;
    v.initial_trust = t.samples.front().trust;
    v.final_trust = t.final_trust();
    v.final_state = t.final_state();
    v.transitions = t.transitions.size();
    s.vehicles.push_back(std::move(v));
  }
  return s;
}

}  // namespace trustsim
