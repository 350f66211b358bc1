#include "trustsim/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "trustsim/json_io.hpp"  // IoError, SyntaxError

namespace trustsim {

void write_trajectories_csv(const SimResult& result,
                            const std::filesystem::path& path) {
  struct Row {
    Seconds time;
    std::uint32_t vehicle;
    TrustScore trust;
    const std::string* state;
  };
  std::vector<Row> rows;
  for (const TrustTrajectory& t : result.trajectories) {
    for (const TrajectorySample& s : t.samples) {
      rows.push_back({s.time, t.vehicle.index, s.trust, &s.state});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.time != b.time ? a.time < b.time : a.vehicle < b.vehicle;
  });

  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "time_s,vehicle,trust,state\n";
  for (const Row& r : rows) {
    out << r.time << ',' << VehicleId{r.vehicle}.label() << ','
        << format_trust(r.trust) << ',' << *r.state << '\n';
  }
}

std::vector<TrustTrajectory> read_trajectories_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "time_s,vehicle,trust,state") {
    throw SyntaxError(path.string() + ": bad trajectory CSV header");
  }
  std::map<std::uint32_t, TrustTrajectory> by_vehicle;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string time_field, vehicle_field, trust_field, state_field;
    if (!std::getline(ss, time_field, ',') ||
        !std::getline(ss, vehicle_field, ',') ||
        !std::getline(ss, trust_field, ',') ||
        !std::getline(ss, state_field)) {
      throw SyntaxError(path.string() + ":" + std::to_string(line_no) +
                        ": expected 4 fields");
    }
    const std::optional<VehicleId> vehicle = VehicleId::parse(vehicle_field);
    if (!vehicle.has_value()) {
      throw SyntaxError(path.string() + ":" + std::to_string(line_no) +
                        ": bad vehicle id '" + vehicle_field + "'");
    }
    TrajectorySample sample;
    try {
      sample.time = std::stoll(time_field);
      sample.trust = TrustScore::from_value(std::stod(trust_field));
    } catch (const std::exception&) {
      throw SyntaxError(path.string() + ":" + std::to_string(line_no) +
                        ": bad numeric field");
    }
    sample.state = state_field;
    TrustTrajectory& t = by_vehicle[vehicle->index];
    t.vehicle = *vehicle;
    t.samples.push_back(std::move(sample));
  }
  std::vector<TrustTrajectory> out;
  out.reserve(by_vehicle.size());
  for (auto& [_, t] : by_vehicle) out.push_back(std::move(t));
  return out;
}

void write_disputes_csv(const SimResult& result,
                        const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "dispute_id,announcement_id,reporter,opened_at,deadline,weighted_sum,outcome\n";
  for (const Dispute& d : result.disputes) {
    const Verdict verdict = d.verdict.value_or(Verdict{});
    char sum[24];
    std::snprintf(sum, sizeof(sum), "%.2f", verdict.weighted_sum());
    out << d.id << ',' << d.announcement_id << ',' << d.reporter.label() << ','
        << d.opened_at << ',' << d.deadline << ',' << sum << ','
        << to_string(verdict.outcome) << '\n';
  }
}

}  // namespace trustsim
