#pragma once

#include <limits>
#include <string>
#include <vector>

namespace specpart {

struct SvgPoint {
  double x = 0.0;
  double y = 0.0;
  double opacity = 1.0;
};

struct SvgSeries {
  std::string label;
  std::string color = "#1f77b4";
  bool draw_line = false;  // polyline instead of scatter markers
  bool dashed = false;
  std::vector<SvgPoint> points;
};

struct SvgAxes {
  std::string title;
  std::string x_label = "sin theta";
  std::string y_label = "gamma";
  // NaN bounds are computed from the data (5% padding).
  double x_min = std::numeric_limits<double>::quiet_NaN();
  double x_max = std::numeric_limits<double>::quiet_NaN();
  double y_min = std::numeric_limits<double>::quiet_NaN();
  double y_max = std::numeric_limits<double>::quiet_NaN();
};

/// 800x600 linear-axes chart with legend; scatter series draw circles with
/// per-point fill opacity, line series a single polyline. An empty series
/// list still produces a valid document with axes.
void render_svg(const std::vector<SvgSeries>& series, const SvgAxes& axes,
                const std::string& path);

}  // namespace specpart
