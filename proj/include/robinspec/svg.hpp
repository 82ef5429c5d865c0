// Minimal deterministic SVG line plots: fixed canvas, computed ticks, no
// external assets, byte-stable output for identical inputs.
#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "robinspec/spectral_result.hpp"

namespace robinspec {

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
};

namespace svg_detail {

inline constexpr int kWidth = 800;
inline constexpr int kHeight = 560;
inline constexpr int kMarginL = 72, kMarginR = 24, kMarginT = 40, kMarginB = 56;

inline const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                      "#9467bd", "#ff7f0e", "#8c564b"};

// fixed 6-digit coordinate formatting keeps the byte stream stable
inline std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::vector<double> ticks(double lo, double hi, int target = 6) {
  if (!(hi > lo)) return {lo};
  double raw = (hi - lo) / target;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * m >= raw) {
      step = mag * m;
      break;
    }
  }
  std::vector<double> out;
  double first = std::ceil(lo / step) * step;
  for (double t = first; t <= hi + 1e-12 * (hi - lo); t += step) out.push_back(t);
  return out;
}

inline std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace svg_detail

// A self-contained line plot.
inline std::string render_line_plot(const std::vector<PlotSeries>& series,
                                    const std::string& title,
                                    const std::string& xlabel,
                                    const std::string& ylabel,
                                    bool log_x = false) {
  using namespace svg_detail;
  if (series.empty()) throw std::invalid_argument("render_line_plot: no data");
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || s.x.empty())
      throw std::invalid_argument("render_line_plot: bad series");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double xv = log_x ? std::log10(s.x[i]) : s.x[i];
      xlo = std::min(xlo, xv);
      xhi = std::max(xhi, xv);
      ylo = std::min(ylo, s.y[i]);
      yhi = std::max(yhi, s.y[i]);
    }
  }
  if (xhi <= xlo) xhi = xlo + 1.0;
  if (yhi <= ylo) {
    yhi = ylo + 1.0;
    ylo -= 1.0;
  }
  double ypad = 0.05 * (yhi - ylo);
  ylo -= ypad;
  yhi += ypad;

  auto px = [&](double x) {
    double v = log_x ? std::log10(x) : x;
    return kMarginL + (v - xlo) / (xhi - xlo) * (kWidth - kMarginL - kMarginR);
  };
  auto py = [&](double y) {
    return kHeight - kMarginB -
           (y - ylo) / (yhi - ylo) * (kHeight - kMarginT - kMarginB);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

  // frame
  out << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\""
      << (kWidth - kMarginL - kMarginR) << "\" height=\""
      << (kHeight - kMarginT - kMarginB)
      << "\" fill=\"none\" stroke=\"#333333\"/>\n";

  for (double t : ticks(xlo, xhi)) {
    double x = kMarginL + (t - xlo) / (xhi - xlo) * (kWidth - kMarginL - kMarginR);
    out << "<line x1=\"" << coord(x) << "\" y1=\"" << (kHeight - kMarginB)
        << "\" x2=\"" << coord(x) << "\" y2=\"" << (kHeight - kMarginB + 5)
        << "\" stroke=\"#333333\"/>\n";
    out << "<text x=\"" << coord(x) << "\" y=\"" << (kHeight - kMarginB + 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << (log_x ? "1e" + tick_label(t) : tick_label(t)) << "</text>\n";
  }
  for (double t : ticks(ylo, yhi)) {
    double y = py(t);
    out << "<line x1=\"" << (kMarginL - 5) << "\" y1=\"" << coord(y) << "\" x2=\""
        << kMarginL << "\" y2=\"" << coord(y) << "\" stroke=\"#333333\"/>\n";
    out << "<text x=\"" << (kMarginL - 8) << "\" y=\"" << coord(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << tick_label(t) << "</text>\n";
  }
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << (kHeight - 12)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << xlabel << "</text>\n";
  out << "<text x=\"18\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << kHeight / 2 << ")\">" << ylabel
      << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kSeriesColors[si % 6];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) out << " ";
      out << coord(px(s.x[i])) << "," << coord(py(s.y[i]));
    }
    out << "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      out << "<circle cx=\"" << coord(px(s.x[i])) << "\" cy=\"" << coord(py(s.y[i]))
          << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    out << "<text x=\"" << (kMarginL + 10) << "\" y=\"" << (kMarginT + 18 + 16 * si)
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">"
        << s.label << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

// Closed-curve drawing for 2D boundaries (geometry plot); the first curve is
// filled, later ones (inner boundaries) are white.
inline std::string render_curves_plot(
    const std::vector<std::vector<std::array<double, 2>>>& curves,
    const std::string& title) {
  using namespace svg_detail;
  if (curves.empty() || curves.front().size() < 3)
    throw std::invalid_argument("render_curves_plot: need points");
  double lo = 1e300, hi = -1e300;
  for (const auto& pts : curves)
    for (const auto& p : pts) {
      lo = std::min({lo, p[0], p[1]});
      hi = std::max({hi, p[0], p[1]});
    }
  double pad = 0.08 * (hi - lo);
  lo -= pad;
  hi += pad;
  int side = std::min(kWidth, kHeight);
  auto to = [&](double v) { return (v - lo) / (hi - lo) * (side - 80) + 40; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side
      << "\" height=\"" << side << "\" viewBox=\"0 0 " << side << " " << side
      << "\">\n<rect width=\"" << side << "\" height=\"" << side
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << side / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    out << "<polygon fill=\"" << (c == 0 ? "#dce9f5" : "white")
        << "\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    const auto& pts = curves[c];
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out << " ";
      out << coord(to(pts[i][0])) << "," << coord(side - to(pts[i][1]));
    }
    out << "\"/>\n";
  }
  // axes through the origin
  out << "<line x1=\"" << coord(to(0.0)) << "\" y1=\"40\" x2=\"" << coord(to(0.0))
      << "\" y2=\"" << (side - 40) << "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
  out << "<line x1=\"40\" y1=\"" << coord(side - to(0.0)) << "\" x2=\""
      << (side - 40) << "\" y2=\"" << coord(side - to(0.0))
      << "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace robinspec
