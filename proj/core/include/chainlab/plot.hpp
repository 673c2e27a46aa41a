#pragma once

#include <string>
#include <vector>

namespace chainlab {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  /// Points with y <= 0 are dropped on a log axis.
  bool log_y = true;
  bool log_x = false;
  std::vector<Series> series;
};

/// Deterministic SVG text: fixed canvas, palette and series order; tick labels with 6 significant digits.
std::string render_svg(const PlotSpec& spec);

/// Writes render_svg(spec) to path.
void emit_plot(const PlotSpec& spec, const std::string& path);

}  // namespace chainlab
