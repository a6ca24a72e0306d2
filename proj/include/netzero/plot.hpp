#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "netzero/errors.hpp"

namespace netzero {

struct PlotSeries {
  std::string name;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

// Minimal dependency-free line chart, written as SVG.
inline void write_line_plot(const std::vector<PlotSeries>& series,
                            const std::string& title,
                            const std::filesystem::path& path) {
  const double W = 720, H = 420, ml = 70, mr = 20, mt = 40, mb = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 0, ymax = -1e300;
  for (const auto& s : series) {
    for (double v : s.x) {
      xmin = std::min(xmin, v);
      xmax = std::max(xmax, v);
    }
    for (double v : s.y) ymax = std::max(ymax, v);
  }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  ymax *= 1.05;

  auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr);
  };
  auto py = [&](double y) {
    return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb);
  };

  std::ostringstream svg;
  svg << std::fixed << std::setprecision(2);
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='"
      << H << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<text x='" << W / 2 << "' y='24' text-anchor='middle' "
      << "font-family='sans-serif' font-size='16'>" << title << "</text>\n";
  // axes
  svg << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr
      << "' y2='" << H - mb << "' stroke='black'/>\n";
  svg << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='"
      << H - mb << "' stroke='black'/>\n";
  // x ticks
  int nticks = 6;
  for (int t = 0; t <= nticks; ++t) {
    double x = xmin + (xmax - xmin) * t / nticks;
    svg << "<text x='" << px(x) << "' y='" << H - mb + 20
        << "' text-anchor='middle' font-family='sans-serif' font-size='11'>"
        << std::setprecision(x == static_cast<long long>(x) ? 0 : 2) << x
        << std::setprecision(2) << "</text>\n";
  }
  for (int t = 0; t <= 4; ++t) {
    double y = ymin + (ymax - ymin) * t / 4;
    svg << "<text x='" << ml - 8 << "' y='" << py(y) + 4
        << "' text-anchor='end' font-family='sans-serif' font-size='11'>"
        << std::setprecision(4) << y << std::setprecision(2) << "</text>\n";
  }
  size_t li = 0;
  for (const auto& s : series) {
    svg << "<polyline fill='none' stroke='" << s.color << "' stroke-width='2' points='";
    for (size_t i = 0; i < s.x.size(); ++i)
      svg << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    svg << "'/>\n";
    svg << "<text x='" << W - mr - 10 << "' y='" << mt + 16 * (li + 1)
        << "' text-anchor='end' font-family='sans-serif' font-size='12' fill='"
        << s.color << "'>" << s.name << "</text>\n";
    ++li;
  }
  svg << "</svg>\n";

  std::ofstream os(path);
  if (!os) throw IoError("cannot write plot: " + path.string());
  os << svg.str();
}

}  // namespace netzero
