#pragma once

#include <string>
#include <vector>

namespace pmelab {

/** Minimal self-contained log-log line plot, for oscillation-decay figures.
 *  Non-positive values are skipped (they have no logarithm to draw).
 */
struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool line = true;
  bool markers = true;
};

void write_loglog_svg(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<PlotSeries>& series);

}  // namespace pmelab
