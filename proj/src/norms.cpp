#include "pmelab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "pmelab/kahan.hpp"

namespace pmelab {

Cylinder full_cylinder(const Field& f) {
  const Grid& g = f.grid();
  Cylinder c;
  double radius = 0.5 * g.extent();
  for (int k = 0; k < g.d; ++k) c.center[k] = 0.5 * (g.xlo[k] + g.xhi(k));
  c.radius = radius;
  c.t_begin = f.times().front();
  c.t_end = f.times().back();
  return c;
}

double lpq_norm(const Field& f, double p, double q, const Cylinder& region) {
  if (!(p >= 1.0) || !(q >= 1.0))
    throw std::domain_error("lpq_norm: p and q must be >= 1 (or infinity)");
  if (!(region.radius > 0.0)) throw std::domain_error("lpq_norm: radius must be positive");
  if (!(region.t_end > region.t_begin))
    throw std::domain_error("lpq_norm: empty time window");

  const Grid& g = f.grid();
  const double xtol = 1e-9 * g.h;
  for (int k = 0; k < g.d; ++k) {
    if (region.center[k] - region.radius < g.xlo[k] - xtol ||
        region.center[k] + region.radius > g.xhi(k) + xtol) {
      std::ostringstream os;
      os << "lpq_norm: ball (center " << region.center[k] << ", radius " << region.radius
         << ") exceeds the grid box on axis " << k;
      throw std::domain_error(os.str());
    }
  }
  const auto& times = f.times();
  const double ttol = 1e-9 * (std::abs(times.back() - times.front()) + 1.0);
  if (region.t_begin < times.front() - ttol || region.t_end > times.back() + ttol)
    throw std::domain_error("lpq_norm: time window exceeds the sampled range");

  // cells whose centers lie in the closed ball
  std::vector<int> cells;
  const double r2max = region.radius * region.radius * (1.0 + 1e-12);
  for (int c = 0; c < g.cells(); ++c) {
    const Point x = g.cell_center(c);
    double r2 = 0.0;
    for (int k = 0; k < g.d; ++k) {
      const double dx = x[k] - region.center[k];
      r2 += dx * dx;
    }
    if (r2 <= r2max) cells.push_back(c);
  }
  if (cells.empty())
    throw std::domain_error("lpq_norm: no cell centers inside the ball (radius below grid resolution)");

  std::vector<int> active;  // slice indices in the window
  for (int j = 0; j < f.slice_count(); ++j)
    if (times[j] >= region.t_begin - ttol && times[j] <= region.t_end + ttol)
      active.push_back(j);
  if (active.empty())
    throw std::domain_error("lpq_norm: no time slices inside the window");

  const double hd = g.d == 1 ? g.h : g.h * g.h;
  auto slice_norm = [&](int j) {
    const auto u = f.slice(j);
    if (std::isinf(p)) {
      double mx = 0.0;
      for (int c : cells) mx = std::max(mx, std::abs(u[c]));
      return mx;
    }
    KahanSum s;
    for (int c : cells) s.add(std::pow(std::abs(u[c]), p) * hd);
    return std::pow(s.value(), 1.0 / p);
  };

  if (std::isinf(q)) {
    double mx = 0.0;
    for (int j : active) mx = std::max(mx, slice_norm(j));
    return mx;
  }

  // midpoint partition of the window among active slices
  KahanSum total;
  for (size_t a = 0; a < active.size(); ++a) {
    const double lo = a == 0 ? region.t_begin
                             : 0.5 * (times[active[a - 1]] + times[active[a]]);
    const double hi = a + 1 == active.size()
                          ? region.t_end
                          : 0.5 * (times[active[a]] + times[active[a + 1]]);
    const double w = std::max(hi - lo, 0.0);
    if (w == 0.0) continue;
    total.add(w * std::pow(slice_norm(active[a]), q));
  }
  return std::pow(total.value(), 1.0 / q);
}

}  // namespace pmelab
