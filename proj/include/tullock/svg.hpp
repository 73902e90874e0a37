#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tullock/experiments.hpp"

// Dependency-free SVG 1.1 scatter plots: one color per policy, the
// least-squares line drawn through each series.  Publication plotting is
// expected to go through the CSV output instead.

namespace tullock {

namespace detail {

inline const char* series_color(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  return colors[i % 6];
}

inline std::string fmt_num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace detail

inline std::string emit_svg(const std::vector<PlotSeries>& series, const std::string& x_label,
                            const std::string& title) {
  const double width = 640, height = 480;
  const double ml = 70, mr = 20, mt = 40, mb = 50;

  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      if (first) {
        xmin = xmax = p.x;
        ymin = ymax = p.mean;
        first = false;
      }
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.mean);
      ymax = std::max(ymax, p.mean);
    }
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;

  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
  auto py = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" "
         "height=\"480\" viewBox=\"0 0 640 480\">\n";
  svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">" + title + "</text>\n";

  // axes
  svg += "<line x1=\"" + detail::fmt_num(ml) + "\" y1=\"" + detail::fmt_num(height - mb) +
         "\" x2=\"" + detail::fmt_num(width - mr) + "\" y2=\"" + detail::fmt_num(height - mb) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + detail::fmt_num(ml) + "\" y1=\"" + detail::fmt_num(mt) + "\" x2=\"" +
         detail::fmt_num(ml) + "\" y2=\"" + detail::fmt_num(height - mb) +
         "\" stroke=\"black\"/>\n";
  svg += "<text x=\"320\" y=\"470\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">" + x_label + "</text>\n";
  svg += "<text x=\"16\" y=\"240\" transform=\"rotate(-90 16 240)\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"13\">steps</text>\n";

  // axis extent labels
  svg += "<text x=\"" + detail::fmt_num(ml) + "\" y=\"" + detail::fmt_num(height - mb + 18) +
         "\" font-family=\"sans-serif\" font-size=\"11\">" + detail::fmt_num(xmin) + "</text>\n";
  svg += "<text x=\"" + detail::fmt_num(width - mr) + "\" y=\"" +
         detail::fmt_num(height - mb + 18) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
         detail::fmt_num(xmax) + "</text>\n";
  svg += "<text x=\"" + detail::fmt_num(ml - 6) + "\" y=\"" + detail::fmt_num(height - mb) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
         detail::fmt_num(ymin) + "</text>\n";
  svg += "<text x=\"" + detail::fmt_num(ml - 6) + "\" y=\"" + detail::fmt_num(mt + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
         detail::fmt_num(ymax) + "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = detail::series_color(si);
    for (const auto& p : s.points) {
      svg += "<circle cx=\"" + detail::fmt_num(px(p.x)) + "\" cy=\"" + detail::fmt_num(py(p.mean)) +
             "\" r=\"3\" fill=\"" + color + "\"/>\n";
      if (p.stderr_mean > 0.0) {
        const double y0 = py(p.mean - p.stderr_mean), y1 = py(p.mean + p.stderr_mean);
        svg += "<line x1=\"" + detail::fmt_num(px(p.x)) + "\" y1=\"" + detail::fmt_num(y0) +
               "\" x2=\"" + detail::fmt_num(px(p.x)) + "\" y2=\"" + detail::fmt_num(y1) +
               "\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
      }
    }
    if (s.points.size() >= 2) {
      const double y_at = s.intercept + s.slope * xmin;
      const double y_to = s.intercept + s.slope * xmax;
      svg += "<line x1=\"" + detail::fmt_num(px(xmin)) + "\" y1=\"" +
             detail::fmt_num(py(std::clamp(y_at, ymin, ymax))) + "\" x2=\"" +
             detail::fmt_num(px(xmax)) + "\" y2=\"" +
             detail::fmt_num(py(std::clamp(y_to, ymin, ymax))) + "\" stroke=\"" + color +
             "\" stroke-dasharray=\"4 3\" stroke-width=\"1\"/>\n";
    }
    // legend
    const double ly = mt + 16.0 * static_cast<double>(si);
    svg += "<rect x=\"" + detail::fmt_num(width - mr - 120) + "\" y=\"" + detail::fmt_num(ly) +
           "\" width=\"10\" height=\"10\" fill=\"" + std::string(color) + "\"/>\n";
    svg += "<text x=\"" + detail::fmt_num(width - mr - 105) + "\" y=\"" + detail::fmt_num(ly + 9) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + s.policy + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace tullock
