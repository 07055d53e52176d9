#include "pmelab/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pmelab {

double IntrinsicCylinder::t_extent() const { return std::pow(r, sigma); }

// ---- zero set ---------------------------------------------------------------

ZeroSet detect_zero_set(const Field& u, double tol_zero) {
  ZeroSet zs;
  zs.tol = tol_zero < 0.0 ? 1e-3 * u.max_abs() : tol_zero;
  const Grid& g = u.grid();
  const int n = g.n;

  auto neighbor_alive = [&](std::span<const double> s, int c) {
    const double hot = 10.0 * zs.tol;
    if (g.d == 1) {
      if (c > 0 && std::abs(s[c - 1]) > hot) return true;
      if (c < n - 1 && std::abs(s[c + 1]) > hot) return true;
      return false;
    }
    const int ix = c % n, iy = c / n;
    if (ix > 0 && std::abs(s[c - 1]) > hot) return true;
    if (ix < n - 1 && std::abs(s[c + 1]) > hot) return true;
    if (iy > 0 && std::abs(s[c - n]) > hot) return true;
    if (iy < n - 1 && std::abs(s[c + n]) > hot) return true;
    return false;
  };

  for (int j = 0; j < u.slice_count(); ++j) {
    const double t = u.times()[j];
    const auto s = u.slice(j);
    for (int c = 0; c < g.cells(); ++c) {
      if (std::abs(s[c]) <= zs.tol && neighbor_alive(s, c))
        zs.points.push_back({g.cell_center(c), t, s[c]});
    }
    // sign-change crossings along the x axis
    for (int c = 0; c + 1 < g.cells(); ++c) {
      if (g.d == 2 && (c % n) == n - 1) continue;
      const double a = s[c], b = s[c + 1];
      if ((a > zs.tol && b < -zs.tol) || (a < -zs.tol && b > zs.tol)) {
        Point x = g.cell_center(c);
        x[0] += g.h * a / (a - b);
        zs.points.push_back({x, t, 0.0});
      }
    }
  }
  return zs;
}

// ---- probes and oscillation -------------------------------------------------

Probe make_probe(const Field& u, const Point& x0, double t0) {
  const Grid& g = u.grid();
  const auto& times = u.times();
  const double ttol = 1e-9 * (std::abs(times.back() - times.front()) + 1.0);
  if (t0 < times.front() - ttol || t0 > times.back() + ttol)
    throw std::domain_error("make_probe: t0 outside the sampled time range");

  Probe p;
  p.eval = [&u, x0, t0](const Point& xi, double tau) {
    return u.interpolate({x0[0] + xi[0], x0[1] + xi[1]}, t0 + tau);
  };
  p.d = g.d;
  p.max_r = std::numeric_limits<double>::infinity();
  for (int k = 0; k < g.d; ++k) {
    p.max_r = std::min(p.max_r, x0[k] - g.xlo[k] - 0.5 * g.h);
    p.max_r = std::min(p.max_r, g.xhi(k) - x0[k] - 0.5 * g.h);
  }
  p.max_r = std::max(p.max_r, 0.0);
  p.max_back = std::max(t0 - times.front(), 0.0);
  p.max_fwd = std::max(times.back() - t0, 0.0);
  p.h_space = g.h;
  p.h_time = times.size() > 1 ? (times.back() - times.front()) / (times.size() - 1) : 0.0;
  return p;
}

Probe make_probe(SpaceTimeFn centered_eval, int d, double max_r, double max_back,
                 double max_fwd) {
  if (d != 1 && d != 2) throw std::domain_error("make_probe: d must be 1 or 2");
  if (!(max_r > 0.0)) throw std::domain_error("make_probe: max_r must be positive");
  Probe p;
  p.eval = std::move(centered_eval);
  p.d = d;
  p.max_r = max_r;
  p.max_back = max_back;
  p.max_fwd = max_fwd;
  p.default_samples = d == 1 ? 129 : 49;
  p.default_tsamples = d == 1 ? 65 : 33;
  return p;
}

namespace {

int make_odd(int n) { return n % 2 == 0 ? n + 1 : n; }

/* sup over the lattice of |eval - center|; back/fwd are the time extents
 * on either side of tau = 0 */
double sup_abs_dev(const Probe& u, double r, double back, double fwd, double center) {
  int nx = 1;
  if (r > 0.0) {
    if (u.h_space > 0.0) {
      nx = 2 * static_cast<int>(std::ceil(4.0 * r / u.h_space)) + 1;
      nx = std::clamp(nx, 9, u.d == 1 ? 2049 : 257);
    } else {
      nx = make_odd(u.default_samples);
    }
  }
  int nt = 1;
  const double span = back + fwd;
  if (span > 0.0) {
    if (u.h_time > 0.0) {
      nt = static_cast<int>(std::ceil(4.0 * span / u.h_time)) + 1;
      nt = std::clamp(nt, 5, 513);
    } else {
      nt = u.default_tsamples;
    }
    nt = make_odd(nt);
  }

  const std::vector<double> xs = nx == 1 ? std::vector<double>{0.0} : linspace(-r, r, nx);
  const std::vector<double> ts = nt == 1 ? std::vector<double>{0.0} : linspace(-back, fwd, nt);
  const double r2max = r * r * (1.0 + 1e-12);

  double sup = 0.0;
  for (double tau : ts) {
    if (u.d == 1) {
      for (double x : xs)
        sup = std::max(sup, std::abs(u.eval({x, 0.0}, tau) - center));
    } else {
      for (double y : xs) {
        for (double x : xs) {
          if (x * x + y * y > r2max) continue;
          sup = std::max(sup, std::abs(u.eval({x, y}, tau) - center));
        }
      }
    }
  }
  return sup;
}

void check_cylinder_fits(const Probe& u, double r, double ext, bool two_sided,
                         const char* who) {
  const double slack = 1.0 + 1e-9;
  std::ostringstream os;
  if (r > u.max_r * slack) {
    os << who << ": radius " << r << " exceeds the probe's spatial budget " << u.max_r;
    throw std::domain_error(os.str());
  }
  if (ext > u.max_back * slack) {
    os << who << ": window extent " << ext << " exceeds the backward budget " << u.max_back;
    throw std::domain_error(os.str());
  }
  if (two_sided && ext > u.max_fwd * slack) {
    os << who << ": window extent " << ext << " exceeds the forward budget " << u.max_fwd;
    throw std::domain_error(os.str());
  }
}

}  // namespace

double oscillation(const Probe& u, const IntrinsicCylinder& cyl) {
  if (!(cyl.r > 0.0)) throw std::domain_error("oscillation: radius must be positive");
  if (!(cyl.sigma > 0.0)) throw std::domain_error("oscillation: sigma must be positive");
  const double ext = cyl.t_extent();
  check_cylinder_fits(u, cyl.r, ext, cyl.two_sided, "oscillation");
  const double u0 = u.eval({0.0, 0.0}, 0.0);
  return sup_abs_dev(u, cyl.r, ext, cyl.two_sided ? ext : 0.0, u0);
}

double oscillation(const Field& u, const Point& x0, double t0,
                   const IntrinsicCylinder& cyl) {
  const Probe p = make_probe(u, x0, t0);
  return oscillation(p, cyl);
}

// ---- cascade ----------------------------------------------------------------

CascadeReport cascade_check(const Probe& u, double rho, double alpha, double sigma,
                            int n_levels, bool two_sided) {
  if (!(rho > 0.0 && rho < 0.5))
    throw std::domain_error("cascade_check: rho must lie in (0, 1/2)");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("cascade_check: alpha must lie in (0,1)");
  if (!(sigma > 0.0)) throw std::domain_error("cascade_check: sigma must be positive");
  if (n_levels < 1) throw std::domain_error("cascade_check: need at least one level");

  CascadeReport rep;
  rep.rho = rho;
  rep.alpha = alpha;
  rep.sigma = sigma;
  rep.two_sided = two_sided;

  for (int lvl = 1; lvl <= n_levels; ++lvl) {
    CascadeLevel L;
    L.level = lvl;
    L.r = std::pow(rho, lvl);
    L.t_extent = std::pow(L.r, sigma);
    L.bound = std::pow(rho, lvl * alpha);

    bool resolvable = L.r <= u.max_r && L.t_extent <= u.max_back &&
                      (!two_sided || L.t_extent <= u.max_fwd);
    if (u.h_space > 0.0 && L.r < 2.0 * u.h_space) resolvable = false;
    if (u.h_time > 0.0 && L.t_extent < 2.0 * u.h_time) resolvable = false;

    if (!resolvable) {
      L.verdict = LevelVerdict::Unresolved;
    } else {
      L.sup = sup_abs_dev(u, L.r, L.t_extent, two_sided ? L.t_extent : 0.0, 0.0);
      L.verdict = L.sup <= L.bound * (1.0 + 1e-12) ? LevelVerdict::Pass
                                                   : LevelVerdict::Fail;
      ++rep.resolved;
      if (L.verdict == LevelVerdict::Fail && rep.first_fail < 0) rep.first_fail = lvl;
    }
    rep.levels.push_back(L);
  }
  return rep;
}

CascadeReport cascade_check(const Field& u, const Point& x0, double t0, double rho,
                            double alpha, double sigma, int n_levels, bool two_sided) {
  const Probe p = make_probe(u, x0, t0);
  return cascade_check(p, rho, alpha, sigma, n_levels, two_sided);
}

// ---- exponent estimation ------------------------------------------------------

namespace {

void fit_loglog(FitSeries& s, double noise) {
  std::vector<double> lx, ly;
  for (size_t i = 0; i < s.values.size(); ++i) {
    if (s.values[i] > noise) {
      lx.push_back(std::log(s.radii[i]));
      ly.push_back(std::log(s.values[i]));
    }
  }
  s.used = static_cast<int>(lx.size());
  if (s.used < 2) {
    s.degenerate = true;
    s.slope = std::numeric_limits<double>::quiet_NaN();
    s.intercept = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < s.used; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= s.used;
  my /= s.used;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < s.used; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  s.degenerate = sxx <= 0.0;
  s.slope = s.degenerate ? std::numeric_limits<double>::quiet_NaN() : sxy / sxx;
  s.intercept = s.degenerate ? std::numeric_limits<double>::quiet_NaN()
                             : my - s.slope * mx;
}

}  // namespace

ExponentReport estimate_exponent(const Probe& u, std::span<const double> radii,
                                 double sigma, bool two_sided_time) {
  if (radii.size() < 4)
    throw std::domain_error("estimate_exponent: need at least 4 radii");
  if (!(sigma > 0.0)) throw std::domain_error("estimate_exponent: sigma must be positive");
  std::vector<double> rs(radii.begin(), radii.end());
  std::sort(rs.begin(), rs.end());
  if (!(rs.front() > 0.0))
    throw std::domain_error("estimate_exponent: radii must be positive");
  if (std::log10(rs.back() / rs.front()) < 1.5 - 1e-12)
    throw std::domain_error("estimate_exponent: radii must span at least 1.5 decades");
  check_cylinder_fits(u, rs.back(), std::pow(rs.back(), sigma), two_sided_time,
                      "estimate_exponent");

  ExponentReport rep;
  rep.sigma = sigma;
  rep.two_sided_time = two_sided_time;
  rep.u0 = u.eval({0.0, 0.0}, 0.0);

  for (double r : rs) {
    const double s = std::pow(r, sigma);
    rep.space.radii.push_back(r);
    rep.space.values.push_back(sup_abs_dev(u, r, 0.0, 0.0, rep.u0));
    rep.time.radii.push_back(s);
    rep.time.values.push_back(
        sup_abs_dev(u, 0.0, s, two_sided_time ? s : 0.0, rep.u0));
    rep.cylinder.radii.push_back(r);
    rep.cylinder.values.push_back(sup_abs_dev(u, r, s, 0.0, rep.u0));
  }

  const double scale = std::max({std::abs(rep.u0), rep.cylinder.values.back(),
                                 std::numeric_limits<double>::min()});
  rep.noise_floor = 10.0 * std::numeric_limits<double>::epsilon() * scale;

  fit_loglog(rep.space, rep.noise_floor);
  fit_loglog(rep.time, rep.noise_floor);
  fit_loglog(rep.cylinder, rep.noise_floor);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  rep.raw_slope_space = rep.space.slope;
  rep.alpha_hat_space = rep.space.degenerate ? nan : std::min(rep.space.slope, 1.0);
  rep.theta_time = rep.time.slope;
  rep.alpha_hat_time = rep.time.degenerate ? nan : std::min(sigma * rep.time.slope, 1.0);

  rep.c_measured = 0.0;
  if (!rep.space.degenerate && !rep.cylinder.degenerate) {
    for (size_t i = 0; i < rep.cylinder.values.size(); ++i) {
      if (rep.cylinder.values[i] > rep.noise_floor)
        rep.c_measured = std::max(
            rep.c_measured,
            rep.cylinder.values[i] / std::pow(rep.cylinder.radii[i], rep.alpha_hat_space));
    }
  }
  return rep;
}

ExponentReport estimate_exponent(const Field& u, const Point& x0, double t0,
                                 std::span<const double> radii, double sigma,
                                 bool two_sided_time) {
  const Probe p = make_probe(u, x0, t0);
  return estimate_exponent(p, radii, sigma, two_sided_time);
}

// ---- caloric gap --------------------------------------------------------------

CaloricGapReport caloric_gap(const Field& u, double delta_target, BoundaryKind kind,
                             int oversample) {
  if (!(delta_target > 0.0))
    throw std::domain_error("caloric_gap: delta_target must be positive");
  CaloricGapReport rep;
  rep.delta_target = delta_target;
  rep.h = heat_reference(u, kind, oversample);

  const Grid& g = u.grid();
  rep.region = full_cylinder(u);
  rep.region.radius *= 0.9;
  rep.region.t_begin += 0.19 * (rep.region.t_end - rep.region.t_begin);

  const double r2max = rep.region.radius * rep.region.radius * (1.0 + 1e-12);
  double gap = 0.0;
  for (int j = 0; j < u.slice_count(); ++j) {
    if (u.times()[j] < rep.region.t_begin - 1e-12) continue;
    const auto a = u.slice(j);
    const auto b = rep.h.slice(j);
    for (int c = 0; c < g.cells(); ++c) {
      const Point x = g.cell_center(c);
      double r2 = 0.0;
      for (int k = 0; k < g.d; ++k) {
        const double dx = x[k] - rep.region.center[k];
        r2 += dx * dx;
      }
      if (r2 > r2max) continue;
      gap = std::max(gap, std::abs(a[c] - b[c]));
    }
  }
  rep.gap = gap;
  rep.within = gap <= delta_target;
  return rep;
}

ContrastReport interior_vs_boundary_contrast(const Field& u, const Point& x_zero,
                                             const Point& x_interior, double t,
                                             std::span<const double> radii,
                                             double sigma) {
  ContrastReport rep;
  rep.x_zero = x_zero;
  rep.x_interior = x_interior;
  rep.t = t;
  rep.at_zero = estimate_exponent(u, x_zero, t, radii, sigma);
  rep.interior = estimate_exponent(u, x_interior, t, radii, sigma);
  return rep;
}

}  // namespace pmelab
