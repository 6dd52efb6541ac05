#include "racgap/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace racgap {

namespace {

constexpr double kWidth = 840;
constexpr double kHeight = 500;
constexpr double kLeft = 70, kRight = 30, kTop = 46, kBottom = 58;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<SvgSeries>& series,
                      const std::vector<std::pair<std::string, double>>& ref_lines) {
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("svg: series x/y size mismatch");
    for (double v : s.x) { x_min = std::min(x_min, v); x_max = std::max(x_max, v); }
    for (double v : s.y) { y_min = std::min(y_min, v); y_max = std::max(y_max, v); }
  }
  for (const auto& [name, v] : ref_lines) { y_min = std::min(y_min, v); y_max = std::max(y_max, v); }
  if (!std::isfinite(x_min) || !std::isfinite(y_min)) {
    throw std::invalid_argument("svg: nothing to plot");
  }
  if (x_max == x_min) { x_max += 1; x_min -= 1; }
  const double y_pad = (y_max - y_min) * 0.08 + 1e-9;
  y_min -= y_pad;
  y_max += y_pad;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double v) { return kLeft + (v - x_min) / (x_max - x_min) * pw; };
  auto sy = [&](double v) { return kTop + (1.0 - (v - y_min) / (y_max - y_min)) * ph; };

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << title << "</text>\n";

  // Frame and ticks.
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\""
      << ph << "\" fill=\"none\" stroke=\"#333\"/>\n";
  const int n_ticks = 5;
  for (int i = 0; i <= n_ticks; ++i) {
    const double fx = x_min + (x_max - x_min) * i / n_ticks;
    const double fy = y_min + (y_max - y_min) * i / n_ticks;
    const double px = sx(fx);
    const double py = sy(fy);
    out << "<line x1=\"" << px << "\" y1=\"" << kTop + ph << "\" x2=\"" << px << "\" y2=\""
        << kTop + ph + 5 << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << px << "\" y=\"" << kTop + ph + 20
        << "\" text-anchor=\"middle\">" << fmt(fx) << "</text>\n";
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kLeft << "\" y2=\""
        << py << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << kLeft - 9 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\">" << fmt(fy) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 14
      << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << kTop + ph / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << kTop + ph / 2 << ")\">"
      << y_label << "</text>\n";

  for (std::size_t i = 0; i < ref_lines.size(); ++i) {
    const double py = sy(ref_lines[i].second);
    out << "<line x1=\"" << kLeft << "\" y1=\"" << py << "\" x2=\"" << kLeft + pw
        << "\" y2=\"" << py << "\" stroke=\"#666\" stroke-dasharray=\"6 4\"/>\n";
    out << "<text x=\"" << kLeft + pw - 4 << "\" y=\"" << py - 5
        << "\" text-anchor=\"end\" fill=\"#666\">" << ref_lines[i].first << "</text>\n";
  }

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < series[i].x.size(); ++k) {
      out << sx(series[i].x[k]) << "," << sy(series[i].y[k]) << " ";
    }
    out << "\"/>\n";
    for (std::size_t k = 0; k < series[i].x.size(); ++k) {
      out << "<circle cx=\"" << sx(series[i].x[k]) << "\" cy=\"" << sy(series[i].y[k])
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = kTop + 16 + 18 * static_cast<double>(i);
    out << "<line x1=\"" << kLeft + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kLeft + 34
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kLeft + 40 << "\" y=\"" << ly << "\">" << series[i].name
        << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace racgap
