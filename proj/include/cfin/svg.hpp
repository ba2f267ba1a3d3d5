#pragma once

// Minimal static SVG 1.1 plots: framed axes with min/max labels, point
// clouds and polylines. One or more panels laid out side by side.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace cfin::svg {

struct Series {
  std::vector<std::pair<double, double>> points;
  bool polyline = false;
  std::string color = "#1f77b4";
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

inline constexpr std::size_t kMaxPointsPerSeries = 20'000;
inline constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"};

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  void finish() {
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-300) lo -= 0.5, hi += 0.5;
  }
};

}  // namespace detail

inline std::string render(std::span<const Panel> panels, int width = 480, int height = 360) {
  constexpr int margin = 50;
  std::ostringstream os;
  const int total_width = width * static_cast<int>(std::max<std::size_t>(panels.size(), 1));
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << total_width << "\" height=\""
     << height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const Panel& panel = panels[p];
    detail::Range xr, yr;
    for (const auto& s : panel.series)
      for (const auto& [x, y] : s.points) {
        xr.add(x);
        yr.add(y);
      }
    xr.finish();
    yr.finish();

    const double x0 = static_cast<double>(p) * width + margin;
    const double plot_w = width - 1.5 * margin;
    const double plot_h = height - 2.0 * margin;
    auto sx = [&](double x) { return x0 + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    auto sy = [&](double y) { return margin + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h; };

    os << "<g font-family=\"sans-serif\" font-size=\"11\">\n"
       << "<rect x=\"" << x0 << "\" y=\"" << margin << "\" width=\"" << plot_w << "\" height=\"" << plot_h
       << "\" fill=\"none\" stroke=\"black\"/>\n"
       << "<text x=\"" << x0 + plot_w / 2 << "\" y=\"" << margin / 2 << "\" text-anchor=\"middle\">"
       << detail::escape(panel.title) << "</text>\n"
       << "<text x=\"" << x0 + plot_w / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">"
       << detail::escape(panel.x_label) << "</text>\n"
       << "<text x=\"" << x0 - 35 << "\" y=\"" << margin + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 "
       << x0 - 35 << ' ' << margin + plot_h / 2 << ")\">" << detail::escape(panel.y_label) << "</text>\n"
       << "<text x=\"" << x0 << "\" y=\"" << margin + plot_h + 14 << "\">" << detail::num(xr.lo) << "</text>\n"
       << "<text x=\"" << x0 + plot_w << "\" y=\"" << margin + plot_h + 14 << "\" text-anchor=\"end\">"
       << detail::num(xr.hi) << "</text>\n"
       << "<text x=\"" << x0 - 4 << "\" y=\"" << margin + plot_h << "\" text-anchor=\"end\">" << detail::num(yr.lo)
       << "</text>\n"
       << "<text x=\"" << x0 - 4 << "\" y=\"" << margin + 10 << "\" text-anchor=\"end\">" << detail::num(yr.hi)
       << "</text>\n";

    for (const auto& s : panel.series) {
      const std::size_t stride = std::max<std::size_t>(1, s.points.size() / kMaxPointsPerSeries);
      if (s.polyline) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" points=\"";
        for (std::size_t i = 0; i < s.points.size(); i += stride) {
          const auto& [x, y] = s.points[i];
          if (std::isfinite(x) && std::isfinite(y)) os << detail::num(sx(x)) << ',' << detail::num(sy(y)) << ' ';
        }
        os << "\"/>\n";
      } else {
        os << "<g fill=\"" << s.color << "\">\n";
        for (std::size_t i = 0; i < s.points.size(); i += stride) {
          const auto& [x, y] = s.points[i];
          if (std::isfinite(x) && std::isfinite(y))
            os << "<circle cx=\"" << detail::num(sx(x)) << "\" cy=\"" << detail::num(sy(y)) << "\" r=\"0.8\"/>\n";
        }
        os << "</g>\n";
      }
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace cfin::svg
