#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

namespace trenchfield::plot {

struct Series {
  std::string label;
  std::vector<double> x, y;
};

// minimal static line chart, enough for sweep panels
inline void write_svg(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series) {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]); x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]); y1 = std::max(y1, s.y[i]);
    }
  if (!(x1 > x0)) { x0 -= 1; x1 += 1; }
  if (!(y1 > y0)) { y0 -= 1; y1 += 1; }
  const double width = 640, height = 420, ml = 70, mr = 20, mt = 40, mb = 50;
  const auto sx = [&](double x) { return ml + (x - x0) / (x1 - x0) * (width - ml - mr); };
  const auto sy = [&](double y) {
    return height - mb - (y - y0) / (y1 - y0) * (height - mt - mb);
  };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  std::ofstream out(path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='"
      << height << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << width / 2 << "' y='24' text-anchor='middle' font-size='15'>"
      << title << "</text>\n";
  out << "<line x1='" << ml << "' y1='" << height - mb << "' x2='" << width - mr
      << "' y2='" << height - mb << "' stroke='black'/>\n";
  out << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='"
      << height - mb << "' stroke='black'/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
    out << "<text x='" << sx(xv) << "' y='" << height - mb + 18
        << "' text-anchor='middle' font-size='11'>" << xv << "</text>\n";
    out << "<text x='" << ml - 6 << "' y='" << sy(yv) + 4
        << "' text-anchor='end' font-size='11'>" << yv << "</text>\n";
  }
  out << "<text x='" << width / 2 << "' y='" << height - 12
      << "' text-anchor='middle' font-size='12'>" << x_label << "</text>\n";
  out << "<text x='16' y='" << height / 2
      << "' text-anchor='middle' font-size='12' transform='rotate(-90 16 "
      << height / 2 << ")'>" << y_label << "</text>\n";
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    out << "<polyline fill='none' stroke='" << colors[si % 5] << "' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      if (std::isfinite(s.y[i])) out << sx(s.x[i]) << ',' << sy(s.y[i]) << ' ';
    out << "'/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      if (std::isfinite(s.y[i]))
        out << "<circle cx='" << sx(s.x[i]) << "' cy='" << sy(s.y[i])
            << "' r='2.5' fill='" << colors[si % 5] << "'/>\n";
    out << "<text x='" << width - mr - 4 << "' y='" << mt + 16 * (si + 1)
        << "' text-anchor='end' font-size='11' fill='" << colors[si % 5] << "'>"
        << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace trenchfield::plot
