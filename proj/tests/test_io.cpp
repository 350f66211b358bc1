#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "trustsim/csv.hpp"
#include "trustsim/json_io.hpp"
#include "trustsim/svg.hpp"

using namespace trustsim;

namespace {

const std::filesystem::path kConfigDir = TRUSTSIM_CONFIG_DIR;

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "trustsim_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SimResult fig09_result() {
  return run_scenario(parse_config(kConfigDir / "fig09.json"));
}

}  // namespace

TEST_CASE("trajectory CSV: header, ordering and the punished sender's row") {
  const SimResult r = fig09_result();
  const auto path = temp_file("traj.csv");
  write_trajectories_csv(r, path);
  const std::string text = slurp(path);
  CHECK(text.rfind("time_s,vehicle,trust,state\n", 0) == 0);
  CHECK(text.find("620,V0,0.40,Bad\n") != std::string::npos);
  CHECK(text.find("620,V5,0.60,Good\n") != std::string::npos);
  CHECK(text.find("0,V0,0.50,Normal\n") != std::string::npos);

  // Sorted by (time, vehicle).
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  Seconds prev_time = -1;
  std::uint32_t prev_vehicle = 0;
  while (std::getline(lines, line)) {
    const auto comma1 = line.find(',');
    const auto comma2 = line.find(',', comma1 + 1);
    const Seconds t = std::stoll(line.substr(0, comma1));
    const std::uint32_t v =
        VehicleId::parse(line.substr(comma1 + 1, comma2 - comma1 - 1))->index;
    if (t == prev_time) CHECK(v > prev_vehicle);
    CHECK(t >= prev_time);
    prev_time = t;
    prev_vehicle = v;
  }
}

TEST_CASE("empty run writes a header-only trajectory CSV") {
  ScenarioConfig c;
  c.vehicle_count = 0;  // invalid; use a valid no-slot run instead
  c = ScenarioConfig{};
  c.vehicle_count = 1;
  c.reporters.clear();
  c.duration = 450;
  c.warmup = 400;
  SimResult r = run_scenario(c);
  r.trajectories.clear();  // project away even the initial samples
  const auto path = temp_file("empty.csv");
  write_trajectories_csv(r, path);
  CHECK(slurp(path) == "time_s,vehicle,trust,state\n");
  CHECK(read_trajectories_csv(path).empty());
}

TEST_CASE("trajectory CSV round-trips the sample lists") {
  const SimResult r = fig09_result();
  const auto path = temp_file("roundtrip.csv");
  write_trajectories_csv(r, path);
  const std::vector<TrustTrajectory> back = read_trajectories_csv(path);
  REQUIRE(back.size() == r.trajectories.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    const TrustTrajectory& a = r.trajectories[i];
    const TrustTrajectory& b = back[i];
    CHECK(a.vehicle == b.vehicle);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t k = 0; k < a.samples.size(); ++k) {
      CHECK(a.samples[k].time == b.samples[k].time);
      CHECK(a.samples[k].trust == b.samples[k].trust);
      CHECK(a.samples[k].state == b.samples[k].state);
    }
  }
}

TEST_CASE("dispute CSV: fig09 has exactly one losing row") {
  const SimResult r = fig09_result();
  const auto path = temp_file("disputes.csv");
  write_disputes_csv(r, path);
  const std::string text = slurp(path);
  std::istringstream lines(text);
  std::string header, row, extra;
  REQUIRE(std::getline(lines, header));
  CHECK(header ==
        "dispute_id,announcement_id,reporter,opened_at,deadline,weighted_sum,outcome");
  REQUIRE(std::getline(lines, row));
  CHECK_FALSE(std::getline(lines, extra));
  CHECK(row.find("sender_untruthful") != std::string::npos);
  CHECK(row.rfind("1,1,V5,500,620,", 0) == 0);
}

TEST_CASE("dispute CSV outcomes always come from the verdict enum") {
  ScenarioConfig c;
  c.vehicle_count = 12;
  c.severity = Severity::Moderate;
  c.initial_trust[0] = 60;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    c.seed = seed;
    const auto path = temp_file("outcomes.csv");
    write_disputes_csv(run_scenario(c), path);
    std::istringstream lines(slurp(path));
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) {
      const auto last_comma = line.rfind(',');
      const std::string outcome = line.substr(last_comma + 1);
      CHECK(dispute_outcome_from_string(outcome).has_value());
    }
  }
}

TEST_CASE("no-report run writes a header-only dispute CSV") {
  ScenarioConfig c;
  c.vehicle_count = 6;
  c.reporters.clear();
  c.severity = Severity::Moderate;
  c.initial_trust[0] = 60;
  const auto path = temp_file("nodisputes.csv");
  write_disputes_csv(run_scenario(c), path);
  CHECK(slurp(path) ==
        "dispute_id,announcement_id,reporter,opened_at,deadline,weighted_sum,outcome\n");
}

TEST_CASE("SVG output is deterministic and steps at delivery times") {
  const SimResult r = fig09_result();
  const auto a = temp_file("a.svg");
  const auto b = temp_file("b.svg");
  render_trajectory_svg(r, a);
  render_trajectory_svg(r, b);
  const std::string bytes = slurp(a);
  CHECK(bytes == slurp(b));
  CHECK(bytes.find("<svg") != std::string::npos);
  CHECK(bytes.find("polyline") != std::string::npos);
  // One polyline per vehicle.
  std::size_t count = 0;
  for (std::size_t pos = bytes.find("<polyline"); pos != std::string::npos;
       pos = bytes.find("<polyline", pos + 1)) {
    ++count;
  }
  CHECK(count == r.trajectories.size());
}

TEST_CASE("constant-trust run renders horizontal lines only") {
  ScenarioConfig c;
  c.vehicle_count = 4;
  c.reporters.clear();
  c.duration = 1000;
  const SimResult r = run_scenario(c);
  const auto path = temp_file("flat.svg");
  render_trajectory_svg(r, path);
  const std::string bytes = slurp(path);
  // Only polylines carry a points attribute; flat trust means every point of
  // a line sits at one height.
  std::size_t polylines = 0;
  for (std::size_t pos = bytes.find("points=\""); pos != std::string::npos;
       pos = bytes.find("points=\"", pos + 1)) {
    ++polylines;
    const std::size_t end = bytes.find('"', pos + 8);
    const std::string points = bytes.substr(pos + 8, end - pos - 8);
    std::istringstream ss(points);
    std::string pair;
    std::string y_first;
    bool same_height = true;
    while (ss >> pair) {
      const std::string y = pair.substr(pair.find(',') + 1);
      if (y_first.empty()) y_first = y;
      same_height = same_height && y == y_first;
    }
    CHECK(same_height);
  }
  CHECK(polylines == r.trajectories.size());
}

TEST_CASE("parse_config: shipped replay file") {
  const ScenarioConfig c = parse_config(kConfigDir / "fig09.json");
  CHECK(c.model_kind == ModelKind::SixState);
  CHECK(c.default_trust == 50);
  CHECK_FALSE(c.script.empty());
  CHECK(c.collaboration_timer == 120);
  CHECK(c.provenance.transmission_range_m == 300);
}

TEST_CASE("parse_config: error taxonomy") {
  SUBCASE("missing file is an Io error") {
    CHECK_THROWS_AS(parse_config("/nonexistent/nope.json"), IoError);
  }
  SUBCASE("bad JSON is a syntax error") {
    const auto path = temp_file("broken.json");
    std::ofstream(path) << "{ not json";
    CHECK_THROWS_AS(parse_config(path), SyntaxError);
  }
  SUBCASE("unknown keys are syntax errors naming the key") {
    const auto path = temp_file("unknown_key.json");
    std::ofstream(path) << R"({"model": "six_state", "speed": 33})";
    try {
      parse_config(path);
      FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
      CHECK(std::string(e.what()).find("speed") != std::string::npos);
    }
  }
  SUBCASE("trust above the cap is a validation error") {
    const auto path = temp_file("cap.json");
    std::ofstream(path) << R"({"initial_trust": {"V0": 0.95}, "vehicle_count": 6})";
    CHECK_THROWS_AS(parse_config(path), InvalidConfigError);
  }
  SUBCASE("wrong types are syntax errors") {
    const auto path = temp_file("type.json");
    std::ofstream(path) << R"({"duration_s": "long"})";
    CHECK_THROWS_AS(parse_config(path), SyntaxError);
  }
}

TEST_CASE("model JSON round-trip and custom model loading") {
  TrustModel m = builtin_model(ModelKind::ElevenState);
  const nlohmann::json j = model_to_json(m);
  const TrustModel back = model_from_json(j);
  CHECK(back.kind == m.kind);
  REQUIRE(back.states.size() == m.states.size());
  for (std::size_t i = 0; i < m.states.size(); ++i) {
    CHECK(back.states[i].name == m.states[i].name);
    CHECK(back.states[i].bin_lo == m.states[i].bin_lo);
    CHECK(back.states[i].bin_hi == m.states[i].bin_hi);
    CHECK(back.states[i].p_send_true == m.states[i].p_send_true);
    CHECK(back.states[i].p_report_honest == m.states[i].p_report_honest);
    CHECK(back.states[i].max_severity == m.states[i].max_severity);
  }

  // A scenario config can pull a custom model from a file.
  m.kind = ModelKind::Custom;
  const auto model_path = temp_file("custom_model.json");
  save_model(m, model_path);
  const auto config_path = temp_file("custom_config.json");
  std::ofstream(config_path)
      << R"({"model": "custom", "model_file": "custom_model.json",)"
      << R"( "vehicle_count": 8, "severity": "moderate",)"
      << R"( "initial_trust": {"V0": 0.6}})";
  const ScenarioConfig c = parse_config(config_path);
  REQUIRE(c.custom_model.has_value());
  CHECK(c.custom_model->states.size() == 11);
  CHECK_FALSE(run_scenario(c).trajectories.empty());
}

TEST_CASE("result JSON round-trips losslessly") {
  const SimResult r = fig09_result();
  const auto path = temp_file("result.json");
  write_result_json(r, path);
  const SimResult back = read_result_json(path);
  CHECK(result_to_json(back).dump() == result_to_json(r).dump());
}
