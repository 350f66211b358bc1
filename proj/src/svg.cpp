#include "trustsim/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>

#include "trustsim/json_io.hpp"  // IoError

namespace trustsim {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 560.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;  // room for the legend
constexpr double kTop = 46.0;
constexpr double kBottom = 52.0;
constexpr double kYMax = 0.9;

const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#ad494a",
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

void render_trajectory_svg(const SimResult& result,
                           const std::filesystem::path& path) {
  Seconds x_end = result.config.duration;
  for (const TrustTrajectory& t : result.trajectories) {
    if (!t.samples.empty()) x_end = std::max(x_end, t.samples.back().time);
  }
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto x_of = [&](Seconds t) {
    return kLeft + plot_w * static_cast<double>(t) / static_cast<double>(x_end);
  };
  const auto y_of = [&](TrustScore v) {
    return kTop + plot_h * (1.0 - v.value() / kYMax);
  };

  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n"
      << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";

  const std::string title = result.config.description.empty()
                                ? std::string(to_string(result.config.model_kind)) +
                                      " run, seed " + std::to_string(result.seed)
                                : result.config.description;
  out << "<text x=\"" << num(kLeft) << "\" y=\"24\" font-family=\"sans-serif\" "
         "font-size=\"15\" fill=\"#222\">" << title << "</text>\n";

  // Grid and y ticks every 0.1 trust.
  for (int h = 0; h <= 90; h += 10) {
    const double y = y_of(TrustScore{h});
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(kLeft + plot_w) << "\" y2=\"" << num(y)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\" "
           "text-anchor=\"end\">" << format_trust(TrustScore{h}) << "</text>\n";
  }

  // X ticks: ten even divisions of the horizon.
  const Seconds x_step = std::max<Seconds>(1, x_end / 10);
  for (Seconds t = 0; t <= x_end; t += x_step) {
    const double x = x_of(t);
    out << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop + plot_h)
        << "\" x2=\"" << num(x) << "\" y2=\"" << num(kTop + plot_h + 5)
        << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + plot_h + 18)
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\" "
           "text-anchor=\"middle\">" << t << "</text>\n";
  }

  // Axes.
  out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\""
      << num(kLeft) << "\" y2=\"" << num(kTop + plot_h)
      << "\" stroke=\"#222\" stroke-width=\"1.5\"/>\n";
  out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + plot_h)
      << "\" x2=\"" << num(kLeft + plot_w) << "\" y2=\"" << num(kTop + plot_h)
      << "\" stroke=\"#222\" stroke-width=\"1.5\"/>\n";
  out << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\""
      << num(kHeight - 12)
      << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\" "
         "text-anchor=\"middle\">simulation seconds</text>\n";
  out << "<text x=\"18\" y=\"" << num(kTop + plot_h / 2)
      << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\" "
         "text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << num(kTop + plot_h / 2) << ")\">trust score</text>\n";

  // One step line per vehicle.
  for (const TrustTrajectory& t : result.trajectories) {
    const char* color = kPalette[t.vehicle.index % kPaletteSize];
    std::string points;
    TrustScore level = t.samples.front().trust;
    points += num(x_of(0)) + "," + num(y_of(level));
    for (std::size_t i = 1; i < t.samples.size(); ++i) {
      const TrajectorySample& s = t.samples[i];
      points += " " + num(x_of(s.time)) + "," + num(y_of(level));
      points += " " + num(x_of(s.time)) + "," + num(y_of(s.trust));
      level = s.trust;
    }
    points += " " + num(x_of(x_end)) + "," + num(y_of(level));
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.8\" points=\"" << points << "\"/>\n";
  }

  // Legend.
  const double legend_x = kLeft + plot_w + 18;
  double legend_y = kTop + 6;
  for (const TrustTrajectory& t : result.trajectories) {
    const char* color = kPalette[t.vehicle.index % kPaletteSize];
    out << "<line x1=\"" << num(legend_x) << "\" y1=\"" << num(legend_y)
        << "\" x2=\"" << num(legend_x + 22) << "\" y2=\"" << num(legend_y)
        << "\" stroke=\"" << color << "\" stroke-width=\"2.5\"/>\n";
    out << "<text x=\"" << num(legend_x + 28) << "\" y=\"" << num(legend_y + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">"
        << t.vehicle.label() << "</text>\n";
    legend_y += 15;
    if (legend_y > kTop + plot_h) break;  // deep fleets: legend shows a prefix
  }

  out << "</svg>\n";
}

}  // namespace trustsim
