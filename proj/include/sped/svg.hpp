#pragma once

#include <string>
#include <vector>

namespace sped {

// Minimal line-plot emission: axes, tick labels and polylines, nothing more.
struct SvgSeries {
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#000000";
  bool dashed = false;
};

struct SvgPlot {
  std::vector<SvgSeries> series;
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  int width = 720;
  int height = 480;
};

void write_line_svg(const std::string& path, const SvgPlot& plot);

}  // namespace sped
