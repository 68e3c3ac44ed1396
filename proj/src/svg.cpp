#include "sped/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sped/csv.hpp"

namespace sped {

namespace {

constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 16;
constexpr int kMarginTop = 28;
constexpr int kMarginBottom = 44;

std::string tick_label(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

void write_line_svg(const std::string& path, const SvgPlot& plot) {
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const auto& s : plot.series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("svg: x/y size mismatch");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double xv = plot.log_x ? std::log10(s.x[i]) : s.x[i];
      if (!std::isfinite(xv) || !std::isfinite(s.y[i])) continue;
      x_min = std::min(x_min, xv);
      x_max = std::max(x_max, xv);
      y_min = std::min(y_min, s.y[i]);
      y_max = std::max(y_max, s.y[i]);
    }
  }
  if (!(x_min < x_max)) { x_min -= 0.5; x_max += 0.5; }
  if (!(y_min < y_max)) { y_min -= 0.5; y_max += 0.5; }
  const double y_pad = 0.04 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  const double plot_w = plot.width - kMarginLeft - kMarginRight;
  const double plot_h = plot.height - kMarginTop - kMarginBottom;
  auto px = [&](double xv) {
    const double v = plot.log_x ? std::log10(xv) : xv;
    return kMarginLeft + (v - x_min) / (x_max - x_min) * plot_w;
  };
  auto py = [&](double yv) {
    return kMarginTop + (y_max - yv) / (y_max - y_min) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.width << "\" height=\""
      << plot.height << "\" viewBox=\"0 0 " << plot.width << " " << plot.height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!plot.title.empty()) {
    svg << "<text x=\"" << plot.width / 2 << "\" y=\"18\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">" << plot.title << "</text>\n";
  }

  // axes
  svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
      << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
      << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double fx = x_min + (x_max - x_min) * i / 4.0;
    const double gx = kMarginLeft + plot_w * i / 4.0;
    const double label = plot.log_x ? std::pow(10.0, fx) : fx;
    svg << "<line x1=\"" << gx << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << gx
        << "\" y2=\"" << kMarginTop + plot_h + 4 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << gx << "\" y=\"" << kMarginTop + plot_h + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << tick_label(label) << "</text>\n";

    const double fy = y_min + (y_max - y_min) * i / 4.0;
    const double gy = py(fy);
    svg << "<line x1=\"" << kMarginLeft - 4 << "\" y1=\"" << gy << "\" x2=\"" << kMarginLeft
        << "\" y2=\"" << gy << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << gy + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << tick_label(fy) << "</text>\n";
  }
  if (!plot.x_label.empty()) {
    svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << plot.height - 8
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << plot.x_label << "</text>\n";
  }
  if (!plot.y_label.empty()) {
    svg << "<text x=\"14\" y=\"" << kMarginTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 14 " << kMarginTop + plot_h / 2 << ")\">" << plot.y_label
        << "</text>\n";
  }

  for (const auto& s : plot.series) {
    if (s.x.empty()) continue;
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\"";
    if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
    svg << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i > 0) svg << ' ';
      svg << px(s.x[i]) << ',' << py(s.y[i]);
    }
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  write_text_file(path, svg.str());
}

}  // namespace sped
