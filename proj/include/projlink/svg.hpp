#pragma once

#include <fstream>
#include <sstream>

#include "projlink/core.hpp"

namespace projlink {

struct HeatPoint {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
  bool flagged = false;  // drawn with a stroke (e.g. non-member verdict)
};

namespace svgdetail {

// five-stop blue->yellow ramp
inline void ramp(double u, int& r, int& g, int& b) {
  static const int stops[5][3] = {
      {38, 38, 110}, {60, 90, 180}, {60, 160, 150}, {150, 200, 80}, {250, 230, 60}};
  u = std::clamp(u, 0.0, 1.0) * 4.0;
  const int i = std::min(3, static_cast<int>(u));
  const double f = u - i;
  r = static_cast<int>(stops[i][0] + f * (stops[i + 1][0] - stops[i][0]));
  g = static_cast<int>(stops[i][1] + f * (stops[i + 1][1] - stops[i][1]));
  b = static_cast<int>(stops[i][2] + f * (stops[i + 1][2] - stops[i][2]));
}

}  // namespace svgdetail

/// Minimal SVG heat map of scattered cell values; `cell` is the square side
/// in data units.
inline void write_heatmap_svg(const std::string& file,
                              const std::vector<HeatPoint>& pts, double cell) {
  if (pts.empty()) {
    std::ofstream out(file);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1\" height=\"1\"/>\n";
    return;
  }
  double x0 = pts[0].x, x1 = pts[0].x, y0 = pts[0].y, y1 = pts[0].y;
  double v0 = pts[0].value, v1 = pts[0].value;
  for (const auto& p : pts) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
    v0 = std::min(v0, p.value);
    v1 = std::max(v1, p.value);
  }
  const double pad = cell;
  const double scale = 640.0 / std::max(x1 - x0 + 2 * pad, y1 - y0 + 2 * pad);
  auto px = [&](double x) { return (x - x0 + pad) * scale; };
  auto py = [&](double y) { return (y1 - y + pad) * scale; };  // y up

  std::ofstream out(file);
  if (!out) throw ValidationError("cannot write file: " + file);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << (x1 - x0 + 2 * pad) * scale << "\" height=\""
      << (y1 - y0 + 2 * pad) * scale << "\">\n";
  const double span = v1 > v0 ? v1 - v0 : 1.0;
  for (const auto& p : pts) {
    int r, g, b;
    svgdetail::ramp((p.value - v0) / span, r, g, b);
    out << "<rect x=\"" << px(p.x) - 0.5 * cell * scale << "\" y=\""
        << py(p.y) - 0.5 * cell * scale << "\" width=\"" << cell * scale
        << "\" height=\"" << cell * scale << "\" fill=\"rgb(" << r << "," << g
        << "," << b << ")\"";
    if (p.flagged) out << " stroke=\"red\" stroke-width=\"1\"";
    out << "/>\n";
  }
  out << "</svg>\n";
}

}  // namespace projlink
