#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trustsim/analysis.hpp"
#include "trustsim/csv.hpp"
#include "trustsim/engine.hpp"
#include "trustsim/json_io.hpp"
#include "trustsim/svg.hpp"

namespace fs = std::filesystem;
using namespace trustsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;        // also syntax errors
constexpr int kExitValidation = 2;  // also mismatched comparisons

fs::path default_out_dir() {
  if (const char* env = std::getenv("TRUSTSIM_OUT")) return fs::path(env);
  return fs::path("out");
}

void write_run_artifacts(const SimResult& result, const fs::path& dir,
                         bool with_svg) {
  fs::create_directories(dir);
  write_result_json(result, dir / "result.json");
  write_trajectories_csv(result, dir / "trajectories.csv");
  write_disputes_csv(result, dir / "disputes.csv");
  if (with_svg) render_trajectory_svg(result, dir / "trajectory.svg");
}

void print_summary(const SimResult& result) {
  const RunSummary s = summarize(result);
  std::cout << "announcements: " << s.announcements
            << "  disputes: " << s.disputes << " (truthful " << s.truthful
            << ", untruthful " << s.untruthful << ", unresolved "
            << s.unresolved << ")  lost adjustments: " << s.lost_adjustments
            << "\n";
  for (const VehicleSummary& v : s.vehicles) {
    const bool focal =
        v.vehicle == result.config.sender ||
        std::find(result.config.reporters.begin(), result.config.reporters.end(),
                  v.vehicle) != result.config.reporters.end();
    if (!focal && v.transitions == 0 && v.initial_trust == v.final_trust) continue;
    std::cout << "  " << v.vehicle.label() << ": "
              << format_trust(v.initial_trust) << " -> "
              << format_trust(v.final_trust) << " (" << v.final_state << ", "
              << v.transitions << " transitions)\n";
  }
}

std::vector<fs::path> find_result_files(const fs::path& dir) {
  std::vector<fs::path> files;
  if (!fs::exists(dir)) throw IoError("no such directory: " + dir.string());
  if (fs::is_regular_file(dir)) {
    files.push_back(dir);
    return files;
  }
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().filename() == "result.json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw IoError("no result.json files under " + dir.string());
  }
  return files;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& s) {
  const std::size_t sep = s.find("..");
  try {
    if (sep == std::string::npos) {
      const std::uint64_t v = std::stoull(s);
      return {v, v};
    }
    const std::uint64_t lo = std::stoull(s.substr(0, sep));
    const std::uint64_t hi = std::stoull(s.substr(sep + 2));
    if (hi < lo) throw std::invalid_argument("range is backwards");
    return {lo, hi};
  } catch (const std::exception&) {
    throw InvalidConfigError({"bad seed range '" + s + "', expected A..B"});
  }
}

int cmd_run(const std::string& config_path, bool replay_mode,
            std::optional<std::uint64_t> seed, const fs::path& out_dir) {
  ScenarioConfig config = parse_config(config_path);
  if (replay_mode && config.script.empty()) {
    throw InvalidConfigError({"replay requires a config with a script"});
  }
  if (seed.has_value()) config.seed = *seed;
  const SimResult result = run_scenario(config);
  write_run_artifacts(result, out_dir, /*with_svg=*/true);
  print_summary(result);
  std::cout << "wrote " << out_dir.string() << "\n";
  return kExitOk;
}

int cmd_batch(const std::string& config_path, const std::string& seed_range,
              const fs::path& out_dir) {
  const ScenarioConfig base = parse_config(config_path);
  const auto [lo, hi] = parse_seed_range(seed_range);
  for (std::uint64_t seed = lo; seed <= hi; ++seed) {
    ScenarioConfig config = base;
    config.seed = seed;
    const SimResult result = run_scenario(config);
    write_run_artifacts(result, out_dir / ("seed_" + std::to_string(seed)),
                        /*with_svg=*/false);
  }
  std::cout << "wrote " << (hi - lo + 1) << " runs under " << out_dir.string()
            << "\n";
  return kExitOk;
}

int cmd_analyze(const fs::path& dir, const std::string& out_file) {
  std::vector<SimResult> results;
  for (const fs::path& f : find_result_files(dir)) {
    results.push_back(read_result_json(f));
  }
  const ModelKind kind = results.front().config.model_kind;
  for (const SimResult& r : results) {
    if (r.config.model_kind != kind) {
      throw MismatchedConfigsError(
          "results under " + dir.string() + " mix model kinds");
    }
  }
  const TrustModel model = resolve_model(results.front().config);

  std::vector<StateTransition> all;
  std::size_t total_transitions = 0;
  for (const SimResult& r : results) {
    for (const TrustTrajectory& t : r.trajectories) {
      all.insert(all.end(), t.transitions.begin(), t.transitions.end());
      total_transitions += t.transitions.size();
    }
  }
  const TransitionMatrix matrix = empirical_transition_matrix(all, model);
  const StationaryResult stationary = stationary_distribution(matrix);

  std::cout << "runs: " << results.size()
            << "  model: " << to_string(kind)
            << "  transitions: " << total_transitions << "\n";
  std::cout << "empirical transition counts (rows = from, lowest state first):\n";
  for (std::size_t i = 0; i < matrix.state_order.size(); ++i) {
    std::cout << "  " << matrix.state_order[i] << ":";
    for (const std::uint64_t c : matrix.counts[i]) std::cout << " " << c;
    std::cout << "\n";
  }
  if (stationary.converged) {
    std::cout << "stationary distribution (power iteration, "
              << stationary.iterations << " iterations):\n ";
    for (std::size_t i = 0; i < matrix.state_order.size(); ++i) {
      char buf[48];
      std::snprintf(buf, sizeof(buf), " %s=%.4f", matrix.state_order[i].c_str(),
                    stationary.distribution[i]);
      std::cout << buf;
    }
    std::cout << "\n";
  } else {
    std::cout << "stationary distribution: no convergence\n";
  }

  nlohmann::json j;
  j["runs"] = results.size();
  j["model"] = to_string(kind);
  j["transition_matrix"] = transition_matrix_to_json(matrix);
  if (stationary.converged) {
    j["stationary"] = {{"distribution", stationary.distribution},
                       {"iterations", stationary.iterations},
                       {"residual", stationary.residual}};
  } else {
    j["stationary"] = nullptr;
  }
  const fs::path out = out_file.empty() ? dir / "analysis.json" : fs::path(out_file);
  std::ofstream f(out);
  if (!f) throw IoError("cannot write " + out.string());
  f << j.dump(2) << '\n';
  std::cout << "wrote " << out.string() << "\n";
  return kExitOk;
}

int cmd_compare(const std::vector<std::string>& dirs, const std::string& out_file) {
  std::vector<std::vector<SimResult>> storage;
  storage.reserve(dirs.size());
  for (const std::string& dir : dirs) {
    std::vector<SimResult> results;
    for (const fs::path& f : find_result_files(dir)) {
      results.push_back(read_result_json(f));
    }
    storage.push_back(std::move(results));
  }
  std::vector<KindResults> groups;
  for (const std::vector<SimResult>& results : storage) {
    KindResults g;
    g.kind = results.front().config.model_kind;
    for (const SimResult& r : results) g.results.push_back(&r);
    groups.push_back(std::move(g));
  }
  const GranularityReport report = compare_models(groups);
  std::cout << granularity_report_table(report);
  if (!out_file.empty()) {
    std::ofstream f(out_file);
    if (!f) throw IoError("cannot write " + out_file);
    f << granularity_report_to_json(report).dump(2) << '\n';
    std::cout << "wrote " << out_file << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markov-chain driver-trust simulator for vehicular networks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string seed_range;
  std::string out_dir;
  std::string out_file;
  std::string analyze_dir;
  std::vector<std::string> compare_dirs;
  std::optional<std::uint64_t> seed;

  CLI::App* run = app.add_subcommand("run", "run one scenario");
  run->add_option("config", config_path, "scenario JSON file")->required();
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--out", out_dir, "output directory");

  CLI::App* replay = app.add_subcommand("replay", "run a scripted scenario");
  replay->add_option("config", config_path, "scenario JSON file with a script")
      ->required();
  replay->add_option("--out", out_dir, "output directory");

  CLI::App* batch = app.add_subcommand("batch", "run a seed range");
  batch->add_option("config", config_path, "scenario JSON file")->required();
  batch->add_option("--seeds", seed_range, "seed range A..B")->required();
  batch->add_option("--out", out_dir, "output directory");

  CLI::App* analyze = app.add_subcommand("analyze", "chain analytics for a result directory");
  analyze->add_option("dir", analyze_dir, "directory with result.json files")
      ->required();
  analyze->add_option("--out", out_file, "analysis JSON path");

  CLI::App* compare = app.add_subcommand(
      "compare", "granularity comparison across model kinds");
  compare->add_option("dirs", compare_dirs, "one result directory per model kind")
      ->expected(2, 16);
  compare->add_option("--out", out_file, "report JSON path");

  CLI11_PARSE(app, argc, argv);

  const fs::path out = out_dir.empty() ? default_out_dir() : fs::path(out_dir);
  try {
    if (run->parsed()) return cmd_run(config_path, false, seed, out);
    if (replay->parsed()) return cmd_run(config_path, true, std::nullopt, out);
    if (batch->parsed()) return cmd_batch(config_path, seed_range, out);
    if (analyze->parsed()) return cmd_analyze(analyze_dir, out_file);
    if (compare->parsed()) return cmd_compare(compare_dirs, out_file);
  } catch (const InvalidConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const MismatchedConfigsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
