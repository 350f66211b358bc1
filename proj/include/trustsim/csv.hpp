#pragma once

#include <filesystem>
#include <vector>

#include "trustsim/engine.hpp"

namespace trustsim {

// Header `time_s,vehicle,trust,state`, rows sorted by (time, vehicle),
// trust as two-decimal fixed point.
void write_trajectories_csv(const SimResult& result,
                            const std::filesystem::path& path);

// Inverse of write_trajectories_csv, sample lists only (the transition log
// is not part of the CSV projection).
std::vector<TrustTrajectory> read_trajectories_csv(
    const std::filesystem::path& path);

// Header `dispute_id,announcement_id,reporter,opened_at,deadline,
// weighted_sum,outcome`, one row per dispute.
void write_disputes_csv(const SimResult& result,
                        const std::filesystem::path& path);

}  // namespace trustsim
