#include "trustsim/json_io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <string>

namespace trustsim {

namespace {

using nlohmann::json;

std::string at(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) {
    throw SyntaxError((path.empty() ? std::string("document") : path) +
                      ": expected an object");
  }
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  expect_object(j, path);
  for (const auto& [key, value] : j.items()) {
    bool found = false;
    for (const char* a : allowed) {
      if (key == a) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw SyntaxError("unknown key '" + at(path, key) + "'");
    }
  }
}

std::int64_t get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) {
    throw SyntaxError(path + ": expected an integer");
  }
  return j.get<std::int64_t>();
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) {
    throw SyntaxError(path + ": expected a number");
  }
  return j.get<double>();
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) {
    throw SyntaxError(path + ": expected a boolean");
  }
  return j.get<bool>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) {
    throw SyntaxError(path + ": expected a string");
  }
  return j.get<std::string>();
}

// Trust scores and probabilities appear in files as two-decimal values.
int get_hundredths(const json& j, const std::string& path) {
  const double v = get_number(j, path);
  const double scaled = v * 100.0;
  const auto rounded = static_cast<int>(std::llround(scaled));
  if (std::abs(scaled - rounded) > 1e-6) {
    throw SyntaxError(path + ": value " + std::to_string(v) +
                      " is not a multiple of 0.01");
  }
  return rounded;
}

VehicleId get_vehicle(const json& j, const std::string& path) {
  const std::string label = get_string(j, path);
  const std::optional<VehicleId> v = VehicleId::parse(label);
  if (!v.has_value()) {
    throw SyntaxError(path + ": '" + label + "' is not a vehicle id like 'V3'");
  }
  return *v;
}

json trust_json(int hundredths) { return json(hundredths / 100.0); }

}  // namespace

json model_to_json(const TrustModel& model) {
  json states = json::array();
  for (const TrustStateDef& s : model.states) {
    json js;
    js["name"] = s.name;
    js["bin_lo"] = s.bin_lo;
    js["bin_hi"] = s.bin_hi;
    js["p_send_true"] = s.p_send_true.value();
    js["p_send_untrue"] = s.p_send_untrue.value();
    js["p_report_fraud"] = s.p_report_fraud.value();
    js["p_report_honest"] = s.p_report_honest.value();
    js["max_severity"] =
        s.max_severity.has_value() ? json(to_string(*s.max_severity)) : json();
    states.push_back(std::move(js));
  }
  json j;
  j["kind"] = to_string(model.kind);
  j["blacklist_threshold"] = model.blacklist_threshold.hundredths;
  j["states"] = std::move(states);
  return j;
}

TrustModel model_from_json(const json& j) {
  check_keys(j, "model", {"kind", "blacklist_threshold", "states"});
  TrustModel m;
  if (j.contains("kind")) {
    const std::string kind = get_string(j.at("kind"), "model.kind");
    const auto k = model_kind_from_string(kind);
    if (!k.has_value()) {
      throw SyntaxError("model.kind: unknown kind '" + kind + "'");
    }
    m.kind = *k;
  } else {
    m.kind = ModelKind::Custom;
  }
  if (j.contains("blacklist_threshold")) {
    m.blacklist_threshold = TrustScore{static_cast<int>(
        get_int(j.at("blacklist_threshold"), "model.blacklist_threshold"))};
  }
  if (!j.contains("states") || !j.at("states").is_array()) {
    throw SyntaxError("model.states: expected an array");
  }
  std::size_t i = 0;
  for (const json& js : j.at("states")) {
    const std::string path = "model.states[" + std::to_string(i++) + "]";
    check_keys(js, path,
               {"name", "bin_lo", "bin_hi", "p_send_true", "p_send_untrue",
                "p_report_fraud", "p_report_honest", "max_severity"});
    TrustStateDef s;
    s.name = get_string(js.at("name"), at(path, "name"));
    s.bin_lo = static_cast<int>(get_int(js.at("bin_lo"), at(path, "bin_lo")));
    s.bin_hi = static_cast<int>(get_int(js.at("bin_hi"), at(path, "bin_hi")));
    s.p_send_true =
        Probability{get_hundredths(js.at("p_send_true"), at(path, "p_send_true"))};
    s.p_send_untrue = Probability{
        get_hundredths(js.at("p_send_untrue"), at(path, "p_send_untrue"))};
    s.p_report_fraud = Probability{
        get_hundredths(js.at("p_report_fraud"), at(path, "p_report_fraud"))};
    s.p_report_honest = Probability{
        get_hundredths(js.at("p_report_honest"), at(path, "p_report_honest"))};
    if (js.contains("max_severity") && !js.at("max_severity").is_null()) {
      const std::string sev =
          get_string(js.at("max_severity"), at(path, "max_severity"));
      const auto parsed = severity_from_string(sev);
      if (!parsed.has_value()) {
        throw SyntaxError(at(path, "max_severity") + ": unknown severity '" +
                          sev + "'");
      }
      s.max_severity = *parsed;
    }
    m.states.push_back(std::move(s));
  }
  return m;
}

TrustModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SyntaxError("model file " + path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

void save_model(const TrustModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model file " + path.string());
  out << model_to_json(model).dump(2) << '\n';
}

json config_to_json(const ScenarioConfig& c) {
  json j;
  if (!c.description.empty()) j["description"] = c.description;
  j["model"] = to_string(c.model_kind);
  if (c.custom_model.has_value()) j["model_inline"] = model_to_json(*c.custom_model);
  j["duration_s"] = c.duration;
  j["warmup_s"] = c.warmup;
  j["announcement_interval_s"] = c.announcement_interval;
  j["severity"] = to_string(c.severity);
  j["sender"] = c.sender.label();
  json reporters = json::array();
  for (const VehicleId& r : c.reporters) reporters.push_back(r.label());
  j["reporters"] = std::move(reporters);
  j["reporter_mode"] = to_string(c.reporter_mode);
  j["vehicle_count"] = c.vehicle_count;
  j["default_trust"] = trust_json(c.default_trust);
  json initial = json::object();
  for (const auto& [idx, h] : c.initial_trust) {
    initial[VehicleId{idx}.label()] = trust_json(h);
  }
  j["initial_trust"] = std::move(initial);
  j["clarifier_pool_size"] = c.clarifier_pool_size;
  j["clarifier_honesty"] = c.clarifier_honesty;
  j["rsu_count"] = c.rsu_count;
  j["collaboration_timer_s"] = c.collaboration_timer;
  j["reward"] = trust_json(c.reward);
  j["punishment"] = trust_json(c.punishment);
  j["clarify_reward"] = trust_json(c.clarify_reward);
  j["delivery"] = {{"loss_probability", c.delivery.loss_probability},
                   {"delivery_lag_s", c.delivery.delivery_lag},
                   {"hop_limit", c.delivery.hop_limit}};
  j["seed"] = c.seed;
  if (!c.script.empty()) {
    json script = json::array();
    for (const ScriptedStep& s : c.script) {
      json js;
      js["announcement"] = s.announcement_index;
      if (s.ground_truth.has_value()) js["ground_truth"] = *s.ground_truth;
      if (s.reporter.has_value()) {
        js["reporter"] =
            s.reporter->has_value() ? json((*s.reporter)->label()) : json();
      }
      if (s.verdict.has_value()) js["verdict"] = to_string(*s.verdict);
      if (!s.deliveries.empty()) {
        json ds = json::array();
        for (const ScriptedDelivery& d : s.deliveries) {
          json jd;
          jd["vehicle"] = d.vehicle.label();
          if (d.lost) {
            jd["lost"] = true;
          } else if (d.deliver_at.has_value()) {
            jd["at_s"] = *d.deliver_at;
          }
          ds.push_back(std::move(jd));
        }
        js["deliveries"] = std::move(ds);
      }
      script.push_back(std::move(js));
    }
    j["script"] = std::move(script);
  }
  j["provenance"] = {{"transmission_range_m", c.provenance.transmission_range_m},
                     {"area", c.provenance.area},
                     {"lanes", c.provenance.lanes},
                     {"car_following", c.provenance.car_following}};
  return j;
}

ScenarioConfig config_from_json(const json& j,
                                const std::filesystem::path& base_dir) {
  check_keys(j, "",
             {"description", "model", "model_file", "model_inline",
              "duration_s", "warmup_s", "announcement_interval_s", "severity",
              "sender", "reporters", "reporter_mode", "vehicle_count",
              "default_trust", "initial_trust", "clarifier_pool_size",
              "clarifier_honesty", "rsu_count", "collaboration_timer_s",
              "reward", "punishment", "clarify_reward", "delivery", "seed",
              "script", "provenance"});
  ScenarioConfig c;
  if (j.contains("description")) {
    c.description = get_string(j.at("description"), "description");
  }
  if (j.contains("model")) {
    const std::string kind = get_string(j.at("model"), "model");
    const auto k = model_kind_from_string(kind);
    if (!k.has_value()) throw SyntaxError("model: unknown kind '" + kind + "'");
    c.model_kind = *k;
  }
  if (j.contains("model_inline")) {
    c.custom_model = model_from_json(j.at("model_inline"));
  }
  if (j.contains("model_file")) {
    if (c.custom_model.has_value()) {
      throw SyntaxError("model_file: both model_file and model_inline given");
    }
    const std::filesystem::path file =
        get_string(j.at("model_file"), "model_file");
    c.custom_model = load_model(file.is_absolute() ? file : base_dir / file);
  }
  if (j.contains("duration_s")) c.duration = get_int(j.at("duration_s"), "duration_s");
  if (j.contains("warmup_s")) c.warmup = get_int(j.at("warmup_s"), "warmup_s");
  if (j.contains("announcement_interval_s")) {
    c.announcement_interval =
        get_int(j.at("announcement_interval_s"), "announcement_interval_s");
  }
  if (j.contains("severity")) {
    const std::string sev = get_string(j.at("severity"), "severity");
    const auto parsed = severity_from_string(sev);
    if (!parsed.has_value()) {
      throw SyntaxError("severity: unknown severity '" + sev + "'");
    }
    c.severity = *parsed;
  }
  if (j.contains("sender")) c.sender = get_vehicle(j.at("sender"), "sender");
  if (j.contains("reporters")) {
    if (!j.at("reporters").is_array()) {
      throw SyntaxError("reporters: expected an array");
    }
    c.reporters.clear();
    std::size_t i = 0;
    for (const json& r : j.at("reporters")) {
      c.reporters.push_back(
          get_vehicle(r, "reporters[" + std::to_string(i++) + "]"));
    }
  }
  if (j.contains("reporter_mode")) {
    const std::string mode = get_string(j.at("reporter_mode"), "reporter_mode");
    const auto parsed = reporter_mode_from_string(mode);
    if (!parsed.has_value()) {
      throw SyntaxError("reporter_mode: unknown mode '" + mode + "'");
    }
    c.reporter_mode = *parsed;
  }
  if (j.contains("vehicle_count")) {
    c.vehicle_count =
        static_cast<std::uint32_t>(get_int(j.at("vehicle_count"), "vehicle_count"));
  }
  if (j.contains("default_trust")) {
    c.default_trust = get_hundredths(j.at("default_trust"), "default_trust");
  }
  if (j.contains("initial_trust")) {
    expect_object(j.at("initial_trust"), "initial_trust");
    for (const auto& [key, value] : j.at("initial_trust").items()) {
      const std::optional<VehicleId> v = VehicleId::parse(key);
      if (!v.has_value()) {
        throw SyntaxError("initial_trust: '" + key +
                          "' is not a vehicle id like 'V3'");
      }
      c.initial_trust[v->index] = get_hundredths(value, at("initial_trust", key));
    }
  }
  if (j.contains("clarifier_pool_size")) {
    c.clarifier_pool_size = static_cast<std::size_t>(
        get_int(j.at("clarifier_pool_size"), "clarifier_pool_size"));
  }
  if (j.contains("clarifier_honesty")) {
    c.clarifier_honesty = get_number(j.at("clarifier_honesty"), "clarifier_honesty");
  }
  if (j.contains("rsu_count")) {
    c.rsu_count = static_cast<int>(get_int(j.at("rsu_count"), "rsu_count"));
  }
  if (j.contains("collaboration_timer_s")) {
    c.collaboration_timer =
        get_int(j.at("collaboration_timer_s"), "collaboration_timer_s");
  }
  if (j.contains("reward")) c.reward = get_hundredths(j.at("reward"), "reward");
  if (j.contains("punishment")) {
    c.punishment = get_hundredths(j.at("punishment"), "punishment");
  }
  if (j.contains("clarify_reward")) {
    c.clarify_reward = get_hundredths(j.at("clarify_reward"), "clarify_reward");
  }
  if (j.contains("delivery")) {
    const json& d = j.at("delivery");
    check_keys(d, "delivery", {"loss_probability", "delivery_lag_s", "hop_limit"});
    if (d.contains("loss_probability")) {
      c.delivery.loss_probability =
          get_number(d.at("loss_probability"), "delivery.loss_probability");
    }
    if (d.contains("delivery_lag_s")) {
      c.delivery.delivery_lag =
          get_int(d.at("delivery_lag_s"), "delivery.delivery_lag_s");
    }
    if (d.contains("hop_limit")) {
      c.delivery.hop_limit =
          static_cast<int>(get_int(d.at("hop_limit"), "delivery.hop_limit"));
    }
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer()) {
      throw SyntaxError("seed: expected an integer");
    }
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("script")) {
    if (!j.at("script").is_array()) {
      throw SyntaxError("script: expected an array");
    }
    std::size_t i = 0;
    for (const json& js : j.at("script")) {
      const std::string path = "script[" + std::to_string(i++) + "]";
      check_keys(js, path,
                 {"announcement", "ground_truth", "reporter", "verdict",
                  "deliveries"});
      ScriptedStep step;
      if (!js.contains("announcement")) {
        throw SyntaxError(path + ": missing 'announcement' index");
      }
      step.announcement_index = static_cast<std::uint64_t>(
          get_int(js.at("announcement"), at(path, "announcement")));
      if (js.contains("ground_truth")) {
        step.ground_truth = get_bool(js.at("ground_truth"), at(path, "ground_truth"));
      }
      if (js.contains("reporter")) {
        if (js.at("reporter").is_null()) {
          step.reporter = std::optional<VehicleId>{};
        } else {
          step.reporter = get_vehicle(js.at("reporter"), at(path, "reporter"));
        }
      }
      if (js.contains("verdict")) {
        const std::string v = get_string(js.at("verdict"), at(path, "verdict"));
        const auto parsed = dispute_outcome_from_string(v);
        if (!parsed.has_value()) {
          throw SyntaxError(at(path, "verdict") + ": unknown verdict '" + v + "'");
        }
        step.verdict = *parsed;
      }
      if (js.contains("deliveries")) {
        if (!js.at("deliveries").is_array()) {
          throw SyntaxError(at(path, "deliveries") + ": expected an array");
        }
        std::size_t k = 0;
        for (const json& jd : js.at("deliveries")) {
          const std::string dpath = at(path, "deliveries[" + std::to_string(k++) + "]");
          check_keys(jd, dpath, {"vehicle", "at_s", "lost"});
          ScriptedDelivery d;
          if (!jd.contains("vehicle")) {
            throw SyntaxError(dpath + ": missing 'vehicle'");
          }
          d.vehicle = get_vehicle(jd.at("vehicle"), at(dpath, "vehicle"));
          if (jd.contains("lost")) d.lost = get_bool(jd.at("lost"), at(dpath, "lost"));
          if (jd.contains("at_s")) {
            d.deliver_at = get_int(jd.at("at_s"), at(dpath, "at_s"));
          }
          step.deliveries.push_back(d);
        }
      }
      c.script.push_back(std::move(step));
    }
  }
  if (j.contains("provenance")) {
    const json& p = j.at("provenance");
    check_keys(p, "provenance",
               {"transmission_range_m", "area", "lanes", "car_following"});
    if (p.contains("transmission_range_m")) {
      c.provenance.transmission_range_m = static_cast<int>(
          get_int(p.at("transmission_range_m"), "provenance.transmission_range_m"));
    }
    if (p.contains("area")) {
      c.provenance.area = get_string(p.at("area"), "provenance.area");
    }
    if (p.contains("lanes")) {
      c.provenance.lanes =
          static_cast<int>(get_int(p.at("lanes"), "provenance.lanes"));
    }
    if (p.contains("car_following")) {
      c.provenance.car_following =
          get_bool(p.at("car_following"), "provenance.car_following");
    }
  }
  return c;
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SyntaxError("config file " + path.string() + ": " + e.what());
  }
  ScenarioConfig c = config_from_json(j, path.parent_path());
  ensure_valid(c);
  return c;
}

namespace {

json delivery_json(const std::optional<DeliveryOutcome>& d) {
  if (!d.has_value()) return json();
  json j;
  j["lost"] = d->lost;
  if (!d->lost) j["at_s"] = d->at;
  return j;
}

}  // namespace

json result_to_json(const SimResult& r) {
  json j;
  j["seed"] = r.seed;
  j["config"] = config_to_json(r.config);

  json anns = json::array();
  for (const Announcement& a : r.announcements) {
    anns.push_back({{"id", a.id},
                    {"sender", a.sender.label()},
                    {"time_s", a.time},
                    {"severity", to_string(a.severity)},
                    {"ground_truth", a.ground_truth}});
  }
  j["announcements"] = std::move(anns);

  json reports = json::array();
  for (const Report& rep : r.reports) {
    reports.push_back({{"id", rep.id},
                       {"reporter", rep.reporter.label()},
                       {"announcement_id", rep.announcement_id},
                       {"time_s", rep.time},
                       {"fraudulent", rep.fraudulent}});
  }
  j["reports"] = std::move(reports);

  json disputes = json::array();
  for (const Dispute& d : r.disputes) {
    json feedback = json::array();
    for (const FeedbackEntry& f : d.feedback) {
      feedback.push_back({{"clarifier", f.clarifier.label()},
                          {"trust", trust_json(f.trust_at_vote.hundredths)},
                          {"vote", f.vote}});
    }
    json verdict;
    if (d.verdict.has_value()) {
      verdict = {{"outcome", to_string(d.verdict->outcome)},
                 {"weighted_sum", d.verdict->weighted_sum_hundredths / 100.0},
                 {"overridden", d.verdict->overridden}};
    }
    disputes.push_back({{"id", d.id},
                        {"announcement_id", d.announcement_id},
                        {"report_id", d.report_id},
                        {"sender", d.sender.label()},
                        {"reporter", d.reporter.label()},
                        {"rsu", d.rsu},
                        {"opened_at_s", d.opened_at},
                        {"deadline_s", d.deadline},
                        {"feedback", std::move(feedback)},
                        {"verdict", std::move(verdict)}});
  }
  j["disputes"] = std::move(disputes);

  json adjustments = json::array();
  for (const AdjustmentRecord& a : r.adjustments) {
    adjustments.push_back({{"dispute_id", a.dispute_id},
                           {"target", a.adjustment.target.label()},
                           {"cause", to_string(a.adjustment.cause)},
                           {"delta", trust_json(a.adjustment.delta_hundredths)},
                           {"applied", a.adjustment.applied},
                           {"delivery", delivery_json(a.delivery)},
                           {"clamped", a.clamped},
                           {"effective_delta", trust_json(a.effective_delta)}});
  }
  j["adjustments"] = std::move(adjustments);

  json trajectories = json::array();
  for (const TrustTrajectory& t : r.trajectories) {
    json samples = json::array();
    for (const TrajectorySample& s : t.samples) {
      samples.push_back({{"time_s", s.time},
                         {"trust", trust_json(s.trust.hundredths)},
                         {"state", s.state}});
    }
    json transitions = json::array();
    for (const StateTransition& tr : t.transitions) {
      transitions.push_back(
          {{"time_s", tr.time}, {"from", tr.from}, {"to", tr.to}});
    }
    trajectories.push_back({{"vehicle", t.vehicle.label()},
                            {"samples", std::move(samples)},
                            {"transitions", std::move(transitions)}});
  }
  j["trajectories"] = std::move(trajectories);
  return j;
}

SimResult result_from_json(const json& j) {
  check_keys(j, "",
             {"seed", "config", "announcements", "reports", "disputes",
              "adjustments", "trajectories"});
  SimResult r;
  r.seed = j.at("seed").get<std::uint64_t>();
  r.config = config_from_json(j.at("config"));

  for (const json& a : j.at("announcements")) {
    Announcement ann;
    ann.id = a.at("id").get<std::uint64_t>();
    ann.sender = get_vehicle(a.at("sender"), "announcements.sender");
    ann.time = a.at("time_s").get<Seconds>();
    ann.severity = *severity_from_string(a.at("severity").get<std::string>());
    ann.ground_truth = a.at("ground_truth").get<bool>();
    r.announcements.push_back(ann);
  }
  for (const json& rep : j.at("reports")) {
    Report report;
    report.id = rep.at("id").get<std::uint64_t>();
    report.reporter = get_vehicle(rep.at("reporter"), "reports.reporter");
    report.announcement_id = rep.at("announcement_id").get<std::uint64_t>();
    report.time = rep.at("time_s").get<Seconds>();
    report.fraudulent = rep.at("fraudulent").get<bool>();
    r.reports.push_back(report);
  }
  for (const json& jd : j.at("disputes")) {
    Dispute d;
    d.id = jd.at("id").get<std::uint64_t>();
    d.announcement_id = jd.at("announcement_id").get<std::uint64_t>();
    d.report_id = jd.at("report_id").get<std::uint64_t>();
    d.sender = get_vehicle(jd.at("sender"), "disputes.sender");
    d.reporter = get_vehicle(jd.at("reporter"), "disputes.reporter");
    d.rsu = jd.at("rsu").get<int>();
    d.opened_at = jd.at("opened_at_s").get<Seconds>();
    d.deadline = jd.at("deadline_s").get<Seconds>();
    for (const json& f : jd.at("feedback")) {
      FeedbackEntry entry;
      entry.clarifier = get_vehicle(f.at("clarifier"), "feedback.clarifier");
      entry.trust_at_vote =
          TrustScore{get_hundredths(f.at("trust"), "feedback.trust")};
      entry.vote = f.at("vote").get<int>();
      d.feedback.push_back(entry);
    }
    if (!jd.at("verdict").is_null()) {
      Verdict v;
      v.outcome = *dispute_outcome_from_string(
          jd.at("verdict").at("outcome").get<std::string>());
      v.weighted_sum_hundredths =
          get_hundredths(jd.at("verdict").at("weighted_sum"), "verdict.weighted_sum");
      v.overridden = jd.at("verdict").at("overridden").get<bool>();
      d.verdict = v;
    }
    r.disputes.push_back(std::move(d));
  }
  for (const json& ja : j.at("adjustments")) {
    AdjustmentRecord rec;
    rec.dispute_id = ja.at("dispute_id").get<std::uint64_t>();
    rec.adjustment.target = get_vehicle(ja.at("target"), "adjustments.target");
    rec.adjustment.cause =
        *adjustment_cause_from_string(ja.at("cause").get<std::string>());
    rec.adjustment.delta_hundredths =
        get_hundredths(ja.at("delta"), "adjustments.delta");
    rec.adjustment.applied = ja.at("applied").get<bool>();
    if (!ja.at("delivery").is_null()) {
      DeliveryOutcome d;
      d.lost = ja.at("delivery").at("lost").get<bool>();
      if (!d.lost) d.at = ja.at("delivery").at("at_s").get<Seconds>();
      rec.delivery = d;
    }
    rec.clamped = ja.at("clamped").get<bool>();
    rec.effective_delta =
        get_hundredths(ja.at("effective_delta"), "adjustments.effective_delta");
    r.adjustments.push_back(rec);
  }
  for (const json& jt : j.at("trajectories")) {
    TrustTrajectory t;
    t.vehicle = get_vehicle(jt.at("vehicle"), "trajectories.vehicle");
    for (const json& s : jt.at("samples")) {
      TrajectorySample sample;
      sample.time = s.at("time_s").get<Seconds>();
      sample.trust = TrustScore{get_hundredths(s.at("trust"), "samples.trust")};
      sample.state = s.at("state").get<std::string>();
      t.samples.push_back(std::move(sample));
    }
    for (const json& tr : jt.at("transitions")) {
      StateTransition transition;
      transition.time = tr.at("time_s").get<Seconds>();
      transition.from = tr.at("from").get<std::string>();
      transition.to = tr.at("to").get<std::string>();
      t.transitions.push_back(std::move(transition));
    }
    r.trajectories.push_back(std::move(t));
  }
  return r;
}

void write_result_json(const SimResult& result,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << result_to_json(result).dump(2) << '\n';
}

SimResult read_result_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open result file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SyntaxError("result file " + path.string() + ": " + e.what());
  }
  return result_from_json(j);
}

json transition_matrix_to_json(const TransitionMatrix& m) {
  json j;
  j["states"] = m.state_order;
  j["counts"] = m.counts;
  j["probabilities"] = m.probabilities;
  j["total_transitions"] = m.total_count();
  return j;
}

json granularity_report_to_json(const GranularityReport& report) {
  json kinds = json::array();
  for (const KindAggregate& k : report.kinds) {
    json per_run = json::array();
    for (const RunGranularity& r : k.per_run) {
      per_run.push_back({{"seed", r.seed},
                         {"total_transitions", r.total_transitions},
                         {"mean_distinct_states", r.mean_distinct_states},
                         {"mean_dwell_s", r.mean_dwell_s}});
    }
    kinds.push_back({{"model", to_string(k.kind)},
                     {"state_count", k.state_count},
                     {"runs", k.runs},
                     {"mean_transitions", k.mean_transitions},
                     {"stddev_transitions", k.stddev_transitions},
                     {"mean_distinct_states", k.mean_distinct_states},
                     {"mean_dwell_s", k.mean_dwell_s},
                     {"per_run", std::move(per_run)}});
  }
  json ordering = json::array();
  for (const OrderingStep& s : report.ordering) {
    ordering.push_back({{"finer", to_string(s.finer)},
                        {"coarser", to_string(s.coarser)},
                        {"gap", s.gap},
                        {"pooled_se", s.pooled_se},
                        {"exceeds_se", s.exceeds_se}});
  }
  json j;
  j["kinds"] = std::move(kinds);
  j["ordering"] = std::move(ordering);
  j["ordering_holds"] = report.ordering_holds;
  j["note"] =
      "granularity operationalized as distinct states visited, state "
      "transitions and dwell times";
  return j;
}

}  // namespace trustsim
