#include "pmelab/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "pmelab/errors.hpp"

namespace pmelab {

namespace {

constexpr double kW = 640.0, kH = 440.0;
constexpr double kL = 70.0, kR = 20.0, kT = 40.0, kB = 55.0;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

}  // namespace

void write_loglog_svg(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<PlotSeries>& series) {
  double lx0 = 0.0, lx1 = 0.0, ly0 = 0.0, ly1 = 0.0;
  bool any = false;
  for (const auto& s : series) {
    for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
      const double lx = std::log10(s.x[i]), ly = std::log10(s.y[i]);
      if (!any) {
        lx0 = lx1 = lx;
        ly0 = ly1 = ly;
        any = true;
      } else {
        lx0 = std::min(lx0, lx);
        lx1 = std::max(lx1, lx);
        ly0 = std::min(ly0, ly);
        ly1 = std::max(ly1, ly);
      }
    }
  }
  if (!any) {
    lx0 = ly0 = -1.0;
    lx1 = ly1 = 1.0;
  }
  if (lx1 - lx0 < 1e-9) { lx0 -= 0.5; lx1 += 0.5; }
  if (ly1 - ly0 < 1e-9) { ly0 -= 0.5; ly1 += 0.5; }
  const double padx = 0.05 * (lx1 - lx0), pady = 0.05 * (ly1 - ly0);
  lx0 -= padx; lx1 += padx;
  ly0 -= pady; ly1 += pady;

  auto X = [&](double v) { return kL + (std::log10(v) - lx0) / (lx1 - lx0) * (kW - kL - kR); };
  auto Y = [&](double v) { return kH - kB - (std::log10(v) - ly0) / (ly1 - ly0) * (kH - kT - kB); };

  std::ofstream os(path);
  if (!os) throw io_error("cannot open for writing: " + path);
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW << "' height='" << kH
     << "' viewBox='0 0 " << kW << " " << kH << "'>\n"
     << "<rect width='100%' height='100%' fill='white'/>\n"
     << "<text x='" << kW / 2 << "' y='24' text-anchor='middle' font-size='16' "
        "font-family='sans-serif'>" << title << "</text>\n";

  // frame
  os << "<rect x='" << kL << "' y='" << kT << "' width='" << kW - kL - kR
     << "' height='" << kH - kT - kB << "' fill='none' stroke='#444'/>\n";

  // decade ticks
  for (int e = static_cast<int>(std::ceil(lx0)); e <= static_cast<int>(std::floor(lx1)); ++e) {
    const double v = std::pow(10.0, e);
    os << "<line x1='" << X(v) << "' y1='" << kT << "' x2='" << X(v) << "' y2='"
       << kH - kB << "' stroke='#ddd'/>\n"
       << "<text x='" << X(v) << "' y='" << kH - kB + 18
       << "' text-anchor='middle' font-size='11' font-family='sans-serif'>1e" << e
       << "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(ly0)); e <= static_cast<int>(std::floor(ly1)); ++e) {
    const double v = std::pow(10.0, e);
    os << "<line x1='" << kL << "' y1='" << Y(v) << "' x2='" << kW - kR << "' y2='"
       << Y(v) << "' stroke='#ddd'/>\n"
       << "<text x='" << kL - 8 << "' y='" << Y(v) + 4
       << "' text-anchor='end' font-size='11' font-family='sans-serif'>1e" << e
       << "</text>\n";
  }

  os << "<text x='" << (kL + kW - kR) / 2 << "' y='" << kH - 12
     << "' text-anchor='middle' font-size='13' font-family='sans-serif'>" << xlabel
     << "</text>\n"
     << "<text x='16' y='" << (kT + kH - kB) / 2
     << "' text-anchor='middle' font-size='13' font-family='sans-serif' "
        "transform='rotate(-90 16 " << (kT + kH - kB) / 2 << ")'>" << ylabel
     << "</text>\n";

  double legend_y = kT + 16.0;
  for (const auto& s : series) {
    std::ostringstream pts;
    for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
      pts << fmt(X(s.x[i])) << ',' << fmt(Y(s.y[i])) << ' ';
    }
    if (s.line)
      os << "<polyline points='" << pts.str() << "' fill='none' stroke='" << s.color
         << "' stroke-width='1.6'/>\n";
    if (s.markers) {
      for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
        if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
        os << "<circle cx='" << fmt(X(s.x[i])) << "' cy='" << fmt(Y(s.y[i]))
           << "' r='3' fill='" << s.color << "'/>\n";
      }
    }
    if (!s.label.empty()) {
      os << "<line x1='" << kW - kR - 150 << "' y1='" << legend_y << "' x2='"
         << kW - kR - 125 << "' y2='" << legend_y << "' stroke='" << s.color
         << "' stroke-width='2'/>\n"
         << "<text x='" << kW - kR - 118 << "' y='" << legend_y + 4
         << "' font-size='12' font-family='sans-serif'>" << s.label << "</text>\n";
      legend_y += 18.0;
    }
  }
  os << "</svg>\n";
  if (!os) throw io_error("write failed: " + path);
}

}  // namespace pmelab
