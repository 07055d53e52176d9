#include "pmelab/barenblatt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pmelab/errors.hpp"

namespace pmelab {

double barenblatt_curvature(double m, int d) {
  const auto e = barenblatt_exponents(m, d);  // validates m, d
  return (m - 1.0) * e.beta / (2.0 * m);
}

BarenblattSolution::BarenblattSolution(double m, int d, double M)
    : BarenblattSolution(BarenblattParams{
          m, d, M, barenblatt_curvature(m, d),
          2.0 * barenblatt_exponents(m, d).beta}) {}

BarenblattSolution::BarenblattSolution(const BarenblattParams& params)
    : params_(params), exps_(barenblatt_exponents(params.m, params.d)) {
  if (params_.d != 1 && params_.d != 2)
    throw std::domain_error("barenblatt: d must be 1 or 2");
  if (!(params_.M > 0.0) || !(params_.k > 0.0) || !(params_.time_exponent > 0.0))
    throw std::domain_error("barenblatt: M, k, time_exponent must be positive");
  inv_m1_ = 1.0 / (params_.m - 1.0);
  radius_scale_ = std::sqrt(params_.M / params_.k);
}

double BarenblattSolution::radial(double r, double t) const {
  if (!(t > 0.0)) throw std::domain_error("barenblatt: t must be positive");
  const double arg = params_.M - params_.k * r * r / std::pow(t, params_.time_exponent);
  if (arg <= 0.0) return 0.0;
  return std::pow(t, -exps_.alpha) * std::pow(arg, inv_m1_);
}

double BarenblattSolution::operator()(const Point& x, double t) const {
  double r2 = x[0] * x[0];
  if (params_.d == 2) r2 += x[1] * x[1];
  return radial(std::sqrt(r2), t);
}

double BarenblattSolution::mass() const {
  const double surface = params_.d == 1 ? 2.0 : 2.0 * std::acos(-1.0);
  const double half_d = 0.5 * params_.d;
  return 0.5 * surface * std::pow(params_.M / params_.k, half_d) *
         std::pow(params_.M, inv_m1_) * std::beta(half_d, inv_m1_ + 1.0);
}

SpaceTimeFn BarenblattSolution::centered(const Point& x0, double t0) const {
  const BarenblattParams p = params_;
  const double alpha = exps_.alpha;
  const double inv_m1 = inv_m1_;
  const double base_r2 = x0[0] * x0[0] + (p.d == 2 ? x0[1] * x0[1] : 0.0);
  return [p, alpha, inv_m1, base_r2, x0, t0](const Point& xi, double tau) {
    const double t = t0 + tau;
    if (!(t > 0.0)) throw std::domain_error("barenblatt: t must be positive");
    double cross = x0[0] * xi[0];
    double xi2 = xi[0] * xi[0];
    if (p.d == 2) {
      cross += x0[1] * xi[1];
      xi2 += xi[1] * xi[1];
    }
    const double r2 = std::max(base_r2 + 2.0 * cross + xi2, 0.0);
    const double arg = p.M - p.k * r2 / std::pow(t, p.time_exponent);
    if (arg <= 0.0) return 0.0;
    return std::pow(t, -alpha) * std::pow(arg, inv_m1);
  };
}

Field BarenblattSolution::sample(const Grid& grid) const {
  grid.validate();
  if (grid.d != params_.d) throw std::domain_error("barenblatt: grid dimension mismatch");
  if (!(grid.t0 > 0.0)) throw std::domain_error("barenblatt: grid must start at t > 0");
  Field f(grid, linspace(grid.t0, grid.T, grid.slices));
  for (int j = 0; j < f.slice_count(); ++j) {
    const double t = f.times()[j];
    auto s = f.slice(j);
    for (int c = 0; c < grid.cells(); ++c) s[c] = (*this)(grid.cell_center(c), t);
  }
  return f;
}

// ---- heat reference --------------------------------------------------------

namespace {

/* Multilinear sample of one fine slice at a coarse cell center. */
double restrict_at(const std::vector<double>& u, int nf, int d, double sx, double sy) {
  auto axis = [nf](double s, int& i0, double& w) {
    if (s <= 0.0) { i0 = 0; w = 0.0; return; }
    if (s >= nf - 1.0) { i0 = nf - 2; w = 1.0; return; }
    i0 = static_cast<int>(s);
    w = s - i0;
  };
  int ix; double wx;
  axis(sx, ix, wx);
  if (d == 1) return (1.0 - wx) * u[ix] + wx * u[ix + 1];
  int iy; double wy;
  axis(sy, iy, wy);
  return (1.0 - wy) * ((1.0 - wx) * u[ix + nf * iy] + wx * u[ix + 1 + nf * iy]) +
         wy * ((1.0 - wx) * u[ix + nf * (iy + 1)] + wx * u[ix + 1 + nf * (iy + 1)]);
}

}  // namespace

Field heat_reference(const Field& data, BoundaryKind kind, int oversample) {
  if (oversample < 1) throw std::domain_error("heat_reference: oversample must be >= 1");
  if (kind == BoundaryKind::DirichletOracle)
    throw std::domain_error("heat_reference: use DirichletData to take boundary values from the field");
  const Grid& g = data.grid();
  const int d = g.d;
  const int nf = g.n * oversample;
  const double hf = g.h / oversample;
  const int cells_f = d == 1 ? nf : nf * nf;

  std::vector<double> u(cells_f), unew(cells_f);
  auto fine_center = [&](int flat) {
    Point x{0.0, 0.0};
    if (d == 1) {
      x[0] = g.xlo[0] + (flat + 0.5) * hf;
    } else {
      x[0] = g.xlo[0] + (flat % nf + 0.5) * hf;
      x[1] = g.xlo[1] + (flat / nf + 0.5) * hf;
    }
    return x;
  };
  for (int c = 0; c < cells_f; ++c) u[c] = data.interpolate(fine_center(c), data.times().front());

  Field out(g, data.times());
  std::copy(data.slice(0).begin(), data.slice(0).end(), out.slice(0).begin());

  /* ghost value just outside the wall at fine index -1 or nf on `axis`,
   * aligned with interior line index `line` */
  auto ghost = [&](const std::vector<double>& v, int axis, bool high, int line, double t) {
    switch (kind) {
      case BoundaryKind::Periodic: {
        const int wrap = high ? 0 : nf - 1;
        if (d == 1) return v[wrap];
        return axis == 0 ? v[wrap + nf * line] : v[line + nf * wrap];
      }
      case BoundaryKind::DirichletZero: {
        const int edge = high ? nf - 1 : 0;
        if (d == 1) return -v[edge];
        return axis == 0 ? -v[edge + nf * line] : -v[line + nf * edge];
      }
      default: {  // DirichletData
        Point x{0.0, 0.0};
        const double beyond = high ? g.xhi(axis) + 0.5 * hf : g.xlo[axis] - 0.5 * hf;
        if (d == 1) {
          x[0] = beyond;
        } else if (axis == 0) {
          x[0] = beyond;
          x[1] = g.xlo[1] + (line + 0.5) * hf;
        } else {
          x[0] = g.xlo[0] + (line + 0.5) * hf;
          x[1] = beyond;
        }
        return data.interpolate(x, t);
      }
    }
  };

  const double dt_stable = 0.45 * hf * hf / (2.0 * d);
  double t = data.times().front();
  for (int j = 1; j < out.slice_count(); ++j) {
    const double t_target = data.times()[j];
    const int nsub = std::max(1, static_cast<int>(std::ceil((t_target - t) / dt_stable)));
    const double dt = (t_target - t) / nsub;
    const double r = dt / (hf * hf);
    for (int s = 0; s < nsub; ++s) {
      if (d == 1) {
        for (int i = 0; i < nf; ++i) {
          const double uL = i > 0 ? u[i - 1] : ghost(u, 0, false, 0, t);
          const double uR = i < nf - 1 ? u[i + 1] : ghost(u, 0, true, 0, t);
          unew[i] = u[i] + r * (uL - 2.0 * u[i] + uR);
        }
      } else {
        for (int iy = 0; iy < nf; ++iy)
          for (int ix = 0; ix < nf; ++ix) {
            const int c = ix + nf * iy;
            const double uW = ix > 0 ? u[c - 1] : ghost(u, 0, false, iy, t);
            const double uE = ix < nf - 1 ? u[c + 1] : ghost(u, 0, true, iy, t);
            const double uS = iy > 0 ? u[c - nf] : ghost(u, 1, false, ix, t);
            const double uN = iy < nf - 1 ? u[c + nf] : ghost(u, 1, true, ix, t);
            unew[c] = u[c] + r * (uW + uE + uS + uN - 4.0 * u[c]);
          }
      }
      u.swap(unew);
      t += dt;
    }
    t = t_target;
    auto s_out = out.slice(j);
    for (int c = 0; c < g.cells(); ++c) {
      const Point xc = g.cell_center(c);
      const double sx = (xc[0] - g.xlo[0]) / hf - 0.5;
      const double sy = d == 2 ? (xc[1] - g.xlo[1]) / hf - 0.5 : 0.0;
      s_out[c] = restrict_at(u, nf, d, sx, sy);
      if (!std::isfinite(s_out[c]))
        throw numerical_error("heat_reference: non-finite value (unstable step?)");
    }
  }
  return out;
}

}  // namespace pmelab
