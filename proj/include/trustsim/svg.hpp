#pragma once

#include <filesystem>

#include "trustsim/engine.hpp"

namespace trustsim {

// Step-line trust chart: simulation seconds on the x-axis, trust on the
// y-axis (0..0.9), one line per vehicle with a legend. Output bytes are a
// pure function of the result.
void render_trajectory_svg(const SimResult& result,
                           const std::filesystem::path& path);

}  // namespace trustsim
