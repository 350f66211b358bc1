#pragma once

#include <filesystem>
#include <stdexcept>

#include <json.hpp>

#include "trustsim/analysis.hpp"
#include "trustsim/engine.hpp"

namespace trustsim {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed JSON, wrong types, unknown keys.
class SyntaxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Trust model files (custom models).
nlohmann::json model_to_json(const TrustModel& model);
TrustModel model_from_json(const nlohmann::json& j);
TrustModel load_model(const std::filesystem::path& path);
void save_model(const TrustModel& model, const std::filesystem::path& path);

// Scenario files. Unknown keys are rejected so typos cannot silently fall
// back to defaults. model_file paths resolve relative to the config file.
nlohmann::json config_to_json(const ScenarioConfig& config);
ScenarioConfig config_from_json(const nlohmann::json& j,
                                const std::filesystem::path& base_dir = {});
ScenarioConfig parse_config(const std::filesystem::path& path);

// Full run results, loss-free.
nlohmann::json result_to_json(const SimResult& result);
SimResult result_from_json(const nlohmann::json& j);
void write_result_json(const SimResult& result, const std::filesystem::path& path);
SimResult read_result_json(const std::filesystem::path& path);

// Analysis artifacts.
nlohmann::json transition_matrix_to_json(const TransitionMatrix& matrix);
nlohmann::json granularity_report_to_json(const GranularityReport& report);

}  // namespace trustsim
