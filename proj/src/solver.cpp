#include "pmelab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pmelab/errors.hpp"
#include "pmelab/kahan.hpp"

namespace pmelab {

double signed_pow(double u, double m) {
  if (u >= 0.0) return std::pow(u, m);
  return -std::pow(-u, m);
}

namespace {

double max_abs_checked(std::span<const double> u) {
  double mx = 0.0;
  for (double v : u) {
    if (!std::isfinite(v)) throw numerical_error("solver: non-finite field value");
    mx = std::max(mx, std::abs(v));
  }
  return mx;
}

/* ghost value outside the wall on `axis` (low or high side), aligned with
 * interior line index `line`, in u-space (signed_pow applied by the caller) */
double ghost_u(std::span<const double> u, const Grid& g, const Boundary& bc,
               int axis, bool high, int line, double t) {
  const int n = g.n;
  switch (bc.kind) {
    case BoundaryKind::Periodic: {
      const int wrap = high ? 0 : n - 1;
      if (g.d == 1) return u[wrap];
      return axis == 0 ? u[wrap + n * line] : u[line + n * wrap];
    }
    case BoundaryKind::DirichletZero: {
      const int edge = high ? n - 1 : 0;
      if (g.d == 1) return -u[edge];
      return axis == 0 ? -u[edge + n * line] : -u[line + n * edge];
    }
    case BoundaryKind::DirichletOracle: {
      Point x{0.0, 0.0};
      const double beyond = high ? g.xhi(axis) + 0.5 * g.h : g.xlo[axis] - 0.5 * g.h;
      if (g.d == 1) {
        x[0] = beyond;
      } else if (axis == 0) {
        x[0] = beyond;
        x[1] = g.center(1, line);
      } else {
        x[0] = g.center(0, line);
        x[1] = beyond;
      }
      return bc.oracle(x, t);
    }
    default:
      throw std::domain_error("solver: DirichletData boundary is only for heat_reference");
  }
}

}  // namespace

double cfl_dt(std::span<const double> u, double m, double h, int d,
              double safety, double floor) {
  if (!(m > 0.0)) throw std::domain_error("cfl_dt: m must be positive");
  if (!(h > 0.0)) throw std::domain_error("cfl_dt: h must be positive");
  if (!(safety > 0.0 && safety <= 1.0)) throw std::domain_error("cfl_dt: safety in (0,1]");
  if (!(floor > 0.0)) throw std::domain_error("cfl_dt: floor must be positive");
  const double umax = max_abs_checked(u);
  const double diff = std::max(m * std::pow(umax, m - 1.0), floor);
  return safety * h * h / (2.0 * d * diff);
}

void step_explicit(const Grid& grid, const PMEProblem& problem,
                   std::span<const double> u, double t, double dt,
                   std::span<double> out) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::domain_error("step_explicit: dt must be positive and finite");
  const double m = problem.m;
  if (!(m >= 1.0)) throw std::domain_error("step_explicit: m must satisfy m >= 1");

  const double umax = max_abs_checked(u);
  if (umax > 0.0) {
    const double gate = grid.h * grid.h / (2.0 * grid.d * m * std::pow(umax, m - 1.0));
    if (dt > gate * (1.0 + 1e-9))
      throw numerical_error("step_explicit: dt exceeds the monotonicity limit");
  }

  const int n = grid.n;
  const int cells = grid.cells();
  static thread_local std::vector<double> w;
  w.resize(cells);
  for (int c = 0; c < cells; ++c) w[c] = signed_pow(u[c], m);

  const double r = dt / (grid.h * grid.h);
  const Boundary& bc = problem.boundary;
  auto gw = [&](int axis, bool high, int line) {
    return signed_pow(ghost_u(u, grid, bc, axis, high, line, t), m);
  };

  if (grid.d == 1) {
    for (int i = 0; i < n; ++i) {
      const double wL = i > 0 ? w[i - 1] : gw(0, false, 0);
      const double wR = i < n - 1 ? w[i + 1] : gw(0, true, 0);
      out[i] = u[i] + r * (wL - 2.0 * w[i] + wR);
    }
  } else {
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        const int c = ix + n * iy;
        const double wW = ix > 0 ? w[c - 1] : gw(0, false, iy);
        const double wE = ix < n - 1 ? w[c + 1] : gw(0, true, iy);
        const double wS = iy > 0 ? w[c - n] : gw(1, false, ix);
        const double wN = iy < n - 1 ? w[c + n] : gw(1, true, ix);
        out[c] = u[c] + r * (wW + wE + wS + wN - 4.0 * w[c]);
      }
  }

  if (problem.source) {
    for (int c = 0; c < cells; ++c)
      out[c] += dt * problem.source(grid.cell_center(c), t);
  }
  for (int c = 0; c < cells; ++c)
    if (!std::isfinite(out[c]))
      throw numerical_error("step_explicit: non-finite value after update");
}

SolveResult solve(const PMEProblem& problem, const Grid& grid,
                  const SolveOptions& options) {
  grid.validate();
  if (!problem.initial) throw std::domain_error("solve: initial data required");
  if (problem.boundary.kind == BoundaryKind::DirichletOracle && !problem.boundary.oracle)
    throw std::domain_error("solve: DirichletOracle boundary without an oracle");

  SolveResult res{Field(grid, linspace(grid.t0, grid.T, grid.slices))};
  Field& f = res.field;
  res.dt_min = std::numeric_limits<double>::infinity();

  std::vector<double> u(grid.cells()), unew(grid.cells());
  for (int c = 0; c < grid.cells(); ++c) u[c] = problem.initial(grid.cell_center(c));
  max_abs_checked(u);
  std::copy(u.begin(), u.end(), f.slice(0).begin());

  const double tiny = 1e-12 * (grid.T - grid.t0);
  double t = grid.t0;
  for (int j = 1; j < grid.slices; ++j) {
    const double target = f.times()[j];
    while (t < target - tiny) {
      double dt = cfl_dt(u, problem.m, grid.h, grid.d, options.cfl_safety, options.floor);
      if (grid.dt > 0.0) dt = std::min(dt, grid.dt);
      dt = std::min(dt, target - t);
      step_explicit(grid, problem, u, t, dt, unew);
      u.swap(unew);
      t += dt;
      ++res.steps;
      res.dt_min = std::min(res.dt_min, dt);
      res.dt_max = std::max(res.dt_max, dt);
      if (res.steps > options.max_steps)
        throw numerical_error("solve: step budget exhausted (CFL step too small)");
    }
    t = target;
    std::copy(u.begin(), u.end(), f.slice(j).begin());
  }
  if (res.steps == 0) res.dt_min = 0.0;
  return res;
}

// ---- weak form -------------------------------------------------------------

TestFunction bump_test_function(const Point& center, double rx, double t_center,
                                double rt) {
  if (!(rx > 0.0) || !(rt > 0.0))
    throw std::domain_error("bump_test_function: rx and rt must be positive");

  auto bump = [](double s) {
    const double s2 = s * s;
    if (s2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s2));
  };
  // B'(s) = B(s) * (-2s / (1-s^2)^2)
  auto bump_d = [bump](double s) {
    const double s2 = s * s;
    if (s2 >= 1.0) return 0.0;
    const double den = 1.0 - s2;
    return bump(s) * (-2.0 * s / (den * den));
  };

  TestFunction phi;
  phi.center = center;
  phi.rx = rx;
  phi.t_center = t_center;
  phi.rt = rt;

  auto radial = [center, rx](const Point& x) {
    const double dx = x[0] - center[0];
    const double dy = x[1] - center[1];
    return std::sqrt(dx * dx + dy * dy) / rx;
  };
  phi.value = [=](const Point& x, double t) {
    return bump(radial(x)) * bump((t - t_center) / rt);
  };
  phi.time_derivative = [=](const Point& x, double t) {
    return bump(radial(x)) * bump_d((t - t_center) / rt) / rt;
  };
  phi.gradient = [=](const Point& x, double t) -> Point {
    const double rho = radial(x);
    if (rho < 1e-14 || rho >= 1.0) return {0.0, 0.0};
    const double factor = bump_d(rho) * bump((t - t_center) / rt) / (rho * rx * rx);
    return {factor * (x[0] - center[0]), factor * (x[1] - center[1])};
  };
  return phi;
}

double weak_residual(const Field& u, double m, const SpaceTimeFn& source,
                     const TestFunction& phi) {
  const Grid& g = u.grid();
  for (int k = 0; k < g.d; ++k) {
    if (phi.center[k] - phi.rx < g.xlo[k] + g.h || phi.center[k] + phi.rx > g.xhi(k) - g.h)
      throw std::domain_error("weak_residual: bump support must sit inside the box");
  }
  if (phi.t_center - phi.rt < u.times().front() || phi.t_center + phi.rt > u.times().back())
    throw std::domain_error("weak_residual: bump support must sit inside the time range");

  const auto& times = u.times();
  const int n = g.n;
  const double hd = g.d == 1 ? g.h : g.h * g.h;
  const double hface = g.d == 1 ? 1.0 : g.h;

  KahanSum total;
  std::vector<double> w(g.cells());
  for (int j = 0; j < u.slice_count(); ++j) {
    const double t = times[j];
    const double lo = j == 0 ? times.front() : 0.5 * (times[j - 1] + times[j]);
    const double hi = j + 1 == u.slice_count() ? times.back() : 0.5 * (times[j] + times[j + 1]);
    const double wt = hi - lo;
    if (wt <= 0.0) continue;

    const auto s = u.slice(j);
    for (int c = 0; c < g.cells(); ++c) w[c] = signed_pow(s[c], m);

    KahanSum acc;
    for (int c = 0; c < g.cells(); ++c) {
      const Point x = g.cell_center(c);
      acc.add(-s[c] * phi.time_derivative(x, t) * hd);
      if (source) acc.add(-source(x, t) * phi.value(x, t) * hd);
    }
    if (g.d == 1) {
      for (int i = 0; i + 1 < n; ++i) {
        const Point xf{g.xlo[0] + (i + 1) * g.h, 0.0};
        acc.add((w[i + 1] - w[i]) * phi.gradient(xf, t)[0] * hface);
      }
    } else {
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix + 1 < n; ++ix) {
          const Point xf{g.xlo[0] + (ix + 1) * g.h, g.center(1, iy)};
          acc.add((w[ix + 1 + n * iy] - w[ix + n * iy]) * phi.gradient(xf, t)[0] * hface);
        }
      for (int iy = 0; iy + 1 < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
          const Point xf{g.center(0, ix), g.xlo[1] + (iy + 1) * g.h};
          acc.add((w[ix + n * (iy + 1)] - w[ix + n * iy]) * phi.gradient(xf, t)[1] * hface);
        }
    }
    total.add(wt * acc.value());
  }
  return total.value();
}

}  // namespace pmelab
