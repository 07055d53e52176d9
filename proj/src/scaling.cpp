#include "pmelab/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pmelab/norms.hpp"

namespace pmelab {

namespace {

void require_ab(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw std::domain_error("scaling: a and b must be positive and finite");
}

void require_m(double m) {
  if (!(m > 1.0) || !std::isfinite(m))
    throw std::domain_error("scaling: m must satisfy m > 1 (the exponent degenerates at m = 1)");
}

}  // namespace

double gamma_of(double a, double b, double m) {
  require_ab(a, b);
  require_m(m);
  return std::pow(a * a / b, 1.0 / (m - 1.0));
}

double rescaled_source_factor(double a, double b, double m) {
  require_ab(a, b);
  require_m(m);
  return std::pow(b, m / (m - 1.0)) / std::pow(a, 2.0 / (m - 1.0));
}

double norm_transport_factor(double a, double b, double m, double p, double q, int d) {
  if (!(p >= 1.0) || !(q >= 1.0))
    throw std::domain_error("norm_transport_factor: p and q must be >= 1");
  if (d != 1 && d != 2) throw std::domain_error("norm_transport_factor: d must be 1 or 2");
  double f = rescaled_source_factor(a, b, m);
  if (!std::isinf(p)) f *= std::pow(a, -static_cast<double>(d) / p);
  if (!std::isinf(q)) f *= std::pow(b, -1.0 / q);
  return f;
}

ScalingParams inverse_scaling(const ScalingParams& s) {
  require_ab(s.a, s.b);
  ScalingParams inv;
  inv.a = 1.0 / s.a;
  inv.b = 1.0 / s.b;
  inv.x0 = {-s.x0[0] / s.a, -s.x0[1] / s.a};
  inv.t0 = -s.t0 / s.b;
  inv.m = s.m;
  return inv;
}

Field rescale_field(const Field& u, const ScalingParams& s, int n_space, int n_slices) {
  require_ab(s.a, s.b);
  const double gamma = gamma_of(s.a, s.b, s.m);
  const Grid& g = u.grid();

  const double xtol = 1e-9 * g.h;
  for (int k = 0; k < g.d; ++k) {
    if (s.x0[k] - s.a < g.xlo[k] - xtol || s.x0[k] + s.a > g.xhi(k) + xtol) {
      std::ostringstream os;
      os << "rescale_field: image of the unit ball on axis " << k << " is ["
         << s.x0[k] - s.a << ", " << s.x0[k] + s.a << "], outside the box ["
         << g.xlo[k] << ", " << g.xhi(k) << "]";
      throw std::domain_error(os.str());
    }
  }
  const auto& ut = u.times();
  const double ttol = 1e-9 * (std::abs(ut.back() - ut.front()) + 1.0);
  if (s.t0 - s.b < ut.front() - ttol || s.t0 > ut.back() + ttol) {
    std::ostringstream os;
    os << "rescale_field: image time window [" << s.t0 - s.b << ", " << s.t0
       << "] outside the sampled range [" << ut.front() << ", " << ut.back() << "]";
    throw std::domain_error(os.str());
  }

  int nx = n_space;
  if (nx <= 0) {
    nx = static_cast<int>(std::lround(2.0 * s.a / g.h));
    nx = std::clamp(nx, 8, g.d == 1 ? 4096 : 512);
  }
  int nt = n_slices;
  if (nt <= 0) {
    const double mean_dt = (ut.back() - ut.front()) / std::max<size_t>(ut.size() - 1, 1);
    nt = static_cast<int>(std::lround(s.b / mean_dt)) + 1;
    nt = std::clamp(nt, 2, 2049);
  }

  Grid vg;
  vg.d = g.d;
  vg.n = nx;
  vg.h = 2.0 / nx;
  vg.xlo = {-1.0, -1.0};
  vg.t0 = -1.0;
  vg.T = 0.0;
  vg.dt = g.dt > 0.0 ? g.dt / s.b : 0.0;
  vg.slices = nt;

  Field v(vg, linspace(-1.0, 0.0, nt));
  for (int j = 0; j < nt; ++j) {
    const double t_img = s.t0 + s.b * v.times()[j];
    auto sl = v.slice(j);
    for (int c = 0; c < vg.cells(); ++c) {
      Point x = vg.cell_center(c);
      Point x_img{s.x0[0] + s.a * x[0], s.x0[1] + s.a * x[1]};
      sl[c] = u.interpolate(x_img, std::clamp(t_img, ut.front(), ut.back())) / gamma;
    }
  }
  return v;
}

NormalizeResult normalize(const Field& u, const Field& f, double m, double eps,
                          double p, double q) {
  if (!(eps > 0.0)) throw std::domain_error("normalize: eps must be positive");
  if (!(m >= 1.0)) throw std::domain_error("normalize: m must satisfy m >= 1");
  const double nu = u.max_abs();
  const double nf = lpq_norm(f, p, q, full_cylinder(f));

  NormalizeResult res;
  if (nu == 0.0 && nf == 0.0) {
    res.v = u;
    res.f_tilde = f;
    return res;
  }

  constexpr double margin = 1e-3;
  res.K = (1.0 + margin) * std::max({(nf + nu) / eps, nu, 1.0});
  res.a = std::pow(res.K, 0.5 * (m - 1.0));

  const Grid& g = u.grid();
  for (int k = 0; k < g.d; ++k) {
    if (-res.a < g.xlo[k] - 1e-9 * g.h || res.a > g.xhi(k) + 1e-9 * g.h) {
      std::ostringstream os;
      os << "normalize: needs u sampled on [-" << res.a << ", " << res.a
         << "]^d (K = " << res.K << "), but the box on axis " << k << " is ["
         << g.xlo[k] << ", " << g.xhi(k) << "]";
      throw std::domain_error(os.str());
    }
  }

  auto shrink = [&](const Field& src) {
    const Grid& sg = src.grid();
    Grid og;
    og.d = sg.d;
    og.n = std::clamp(static_cast<int>(std::lround(2.0 * res.a / sg.h)), 8,
                      sg.d == 1 ? 4096 : 512);
    og.h = 2.0 / og.n;
    og.xlo = {-1.0, -1.0};
    og.t0 = sg.t0;
    og.T = sg.T;
    og.dt = sg.dt;
    og.slices = src.slice_count();
    Field out(og, src.times());
    for (int j = 0; j < out.slice_count(); ++j) {
      auto sl = out.slice(j);
      for (int c = 0; c < og.cells(); ++c) {
        Point x = og.cell_center(c);
        Point xi{res.a * x[0], res.a * x[1]};
        sl[c] = src.interpolate(xi, src.times()[j]) / res.K;
      }
    }
    return out;
  };
  res.v = shrink(u);
  res.f_tilde = shrink(f);
  return res;
}

}  // namespace pmelab
