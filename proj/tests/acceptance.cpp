// Acceptance suite: ten numbered criteria, one PASS/FAIL line each, with the
// pinned tolerances printed next to the measured values.  Run all criteria
// with no arguments, or a single one with --criterion N.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pmelab/barenblatt.hpp"
#include "pmelab/exponents.hpp"
#include "pmelab/field.hpp"
#include "pmelab/norms.hpp"
#include "pmelab/regularity.hpp"
#include "pmelab/scaling.hpp"
#include "pmelab/solver.hpp"

using namespace pmelab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string strf(const char* fmt, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

Grid make_grid(int d, int n, double lo, double hi, double t0, double T, int slices) {
  Grid g;
  g.d = d;
  g.n = n;
  g.h = (hi - lo) / n;
  for (int k = 0; k < d; ++k) g.xlo[k] = lo;
  g.t0 = t0;
  g.T = T;
  g.slices = slices;
  g.validate();
  return g;
}

double rel_dev(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

std::vector<double> log_radii(double lo, double hi, int count) {
  std::vector<double> r(count);
  const double llo = std::log10(lo), lhi = std::log10(hi);
  for (int i = 0; i < count; ++i)
    r[i] = std::pow(10.0, llo + (lhi - llo) * i / (count - 1));
  return r;
}

// ---- 1: exponent algebra ----------------------------------------------------

Outcome criterion1() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> um(1.01, 3.0), ua(0.01, 0.99),
      uab(0.1, 10.0), uc(0.6, 50.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double m = um(rng), alpha = ua(rng);
    worst = std::max(worst, rel_dev(sigma_of(m, alpha), 2.0 + (1.0 - m) * alpha));

    const int d = 1 + (i % 2);
    const auto be = barenblatt_exponents(m, d);
    const double denom = d * (m - 1.0) + 2.0;
    worst = std::max(worst, rel_dev(be.alpha, d / denom));
    worst = std::max(worst, rel_dev(be.beta, 1.0 / denom));

    const double a = uab(rng), b = uab(rng);
    worst = std::max(worst, rel_dev(gamma_of(a, b, m), std::pow(a * a / b, 1.0 / (m - 1.0))));
    worst = std::max(worst,
                     rel_dev(rescaled_source_factor(a, b, m),
                             std::pow(b, m / (m - 1.0)) / std::pow(a, 2.0 / (m - 1.0))));

    double c = uc(rng);
    while (!(c > std::pow(2.0, -alpha) + 0.05)) c = uc(rng);
    const auto u = universal_rho_delta(c, alpha);
    worst = std::max(worst, rel_dev(u.rho, std::pow(0.5 / c, 1.0 / (1.0 - alpha))));
    worst = std::max(worst, rel_dev(u.delta, 0.5 * std::pow(u.rho, alpha)));
    worst = std::max(worst, rel_dev(u.delta + c * u.rho, std::pow(u.rho, alpha)));
  }
  Outcome o;
  o.pass = worst <= 1e-12;
  o.detail = strf("exponent algebra closed forms on 1000 fuzzed draws, worst rel dev %.2e (tol 1e-12)", worst);
  return o;
}

// ---- 2: Barenblatt residual oracle ------------------------------------------

Outcome criterion2() {
  const BarenblattSolution sol(2.0, 1);
  const TestFunction phi = bump_test_function({0.0, 0.0}, 1.5, 1.5, 0.35);
  const int ns[3] = {256, 512, 1024};
  const int slices[3] = {65, 129, 257};
  std::vector<double> logn, logr;
  double res[3];
  for (int i = 0; i < 3; ++i) {
    const Grid g = make_grid(1, ns[i], -5.0, 5.0, 1.0, 2.0, slices[i]);
    res[i] = std::abs(weak_residual(sol.sample(g), 2.0, SpaceTimeFn{}, phi));
    logn.push_back(std::log(double(ns[i])));
    logr.push_back(std::log(res[i]));
  }
  const double order = -ls_slope(logn, logr);

  const Grid g1024 = make_grid(1, 1024, -5.0, 5.0, 1.0, 2.0, 257);
  BarenblattParams pt = sol.params();
  pt.time_exponent *= 0.5;
  const double wrong_t =
      std::abs(weak_residual(BarenblattSolution(pt).sample(g1024), 2.0, SpaceTimeFn{}, phi));
  BarenblattParams pk = sol.params();
  pk.k = 1.0 / 6.0;
  const double wrong_k =
      std::abs(weak_residual(BarenblattSolution(pk).sample(g1024), 2.0, SpaceTimeFn{}, phi));

  const Field u = sol.sample(g1024);
  const double m0 = u.slice_mass(0);
  const double m1 = u.slice_mass(g1024.slices - 1);
  const double drift = std::abs(m1 - m0) / m0;

  Outcome o;
  o.pass = order >= 1.5 && res[1] < res[0] && res[2] < res[1] &&
           wrong_t > 20.0 * res[2] && wrong_k > 20.0 * res[2] && drift <= 1e-6;
  o.detail = strf(
      "analytic residual order %.2f (>= 1.5) over n=256/512/1024 (%.2e -> %.2e -> %.2e); "
      "halved time exponent stalls at %.2e and wrong k at %.2e (> 20x exact); "
      "relative mass drift %.2e (<= 1e-6)",
      order, res[0], res[1], res[2], wrong_t, wrong_k, drift);
  return o;
}

// ---- 3: solver convergence ---------------------------------------------------

Outcome criterion3() {
  const BarenblattSolution sol(2.0, 1);
  PMEProblem prob;
  prob.m = 2.0;
  prob.initial = [&sol](const Point& x) { return sol(x, 1.0); };
  prob.boundary.kind = BoundaryKind::DirichletOracle;
  prob.boundary.oracle = [&sol](const Point& x, double t) { return sol(x, t); };

  std::vector<double> logn, log1, loginf;
  double e1[3], einf[3];
  const int ns[3] = {256, 512, 1024};
  for (int i = 0; i < 3; ++i) {
    const Grid g = make_grid(1, ns[i], -5.0, 5.0, 1.0, 2.0, 3);
    const SolveResult r = solve(prob, g);
    const auto last = r.field.slice(g.slices - 1);
    double s1 = 0.0, si = 0.0;
    for (int c = 0; c < g.cells(); ++c) {
      const double diff = std::abs(last[c] - sol(g.cell_center(c), 2.0));
      s1 += diff;
      si = std::max(si, diff);
    }
    e1[i] = g.h * s1;
    einf[i] = si;
    logn.push_back(std::log(double(ns[i])));
    log1.push_back(std::log(e1[i]));
    loginf.push_back(std::log(einf[i]));
  }
  const double order1 = -ls_slope(logn, log1);
  const double orderinf = -ls_slope(logn, loginf);
  Outcome o;
  o.pass = order1 >= 0.9 && orderinf >= 0.5;
  o.detail = strf(
      "oracle-boundary solve t=1..2, grids 256/512/1024: L1 order %.2f (>= 0.9, errors "
      "%.2e/%.2e/%.2e), Linf order %.2f (>= 0.5, errors %.2e/%.2e/%.2e)",
      order1, e1[0], e1[1], e1[2], orderinf, einf[0], einf[1], einf[2]);
  return o;
}

// ---- 4: conservation, positivity, comparison ---------------------------------

Outcome criterion4() {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> umm(1.2, 2.5), uA(0.2, 2.0), uw(0.15, 0.3),
      uc(-0.3, 0.3), uth(0.2, 0.95);

  auto bump_data = [](double A, double w, const Point& c, int d) {
    return [=](const Point& x) {
      double s2 = 0.0;
      for (int k = 0; k < d; ++k) s2 += (x[k] - c[k]) * (x[k] - c[k]);
      s2 /= w * w;
      return s2 >= 1.0 ? 0.0 : A * std::exp(1.0 - 1.0 / (1.0 - s2));
    };
  };

  double worst_drift = 0.0, worst_min = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int d = i < 25 ? 1 : 2;
    const int n = d == 1 ? 64 : 32;
    const Grid g = make_grid(d, n, -1.0, 1.0, 0.0, 0.005, 3);
    PMEProblem prob;
    prob.m = umm(rng);
    Point c{uc(rng), d == 2 ? uc(rng) : 0.0};
    prob.initial = bump_data(uA(rng), uw(rng), c, d);
    const SolveResult r = solve(prob, g);
    const double mass0 = r.field.slice_mass(0);
    const double drift = std::abs(r.field.slice_mass(g.slices - 1) - mass0) / mass0;
    worst_drift = std::max(worst_drift, drift);
    worst_min = std::min(worst_min, r.field.min_value());
  }

  double worst_violation = -1.0;
  for (int i = 0; i < 20; ++i) {
    const double m = 1.3 + 0.9 * uth(rng);
    const double A = 0.5 + uA(rng);
    const double w = uw(rng), th = uth(rng);
    const Point c{uc(rng), 0.0};
    Grid g = make_grid(1, 64, -1.0, 1.0, 0.0, 0.005, 5);
    g.dt = 0.3 * g.h * g.h / (2.0 * 1 * m * std::pow(A, m - 1.0));
    PMEProblem big, small;
    big.m = small.m = m;
    big.initial = bump_data(A, w, c, 1);
    small.initial = bump_data(th * A, w, c, 1);
    const Field ub = solve(big, g).field;
    const Field us = solve(small, g).field;
    for (int j = 0; j < g.slices; ++j) {
      const auto sb = ub.slice(j), ss = us.slice(j);
      for (int cidx = 0; cidx < g.cells(); ++cidx)
        worst_violation = std::max(worst_violation, ss[cidx] - sb[cidx]);
    }
  }

  Outcome o;
  o.pass = worst_drift <= 1e-10 && worst_min >= -1e-14 && worst_violation <= 1e-12;
  o.detail = strf(
      "50 random compact nonnegative runs: worst relative mass drift %.2e (<= 1e-10), "
      "worst minimum %.1e (>= -1e-14); 20 ordered pairs: worst comparison violation %.1e "
      "(<= 1e-12)",
      worst_drift, worst_min, worst_violation);
  return o;
}

// ---- 5: scaling transport -----------------------------------------------------

Outcome criterion5() {
  const BarenblattSolution sol(2.0, 1);
  const Field u256 = sol.sample(make_grid(1, 256, -5.0, 5.0, 1.0, 2.0, 65));
  const Field u512 = sol.sample(make_grid(1, 512, -5.0, 5.0, 1.0, 2.0, 129));
  const TestFunction phi = bump_test_function({0.0, 0.0}, 0.6, -0.45, 0.3);

  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> ux(-1.0, 1.0), ua(0.3, 0.8), ut(1.45, 2.0),
      upq(1.0, 6.0), uu(0.0, 1.0);
  int decreased = 0;
  double worst_factor = 0.0, worst_ratio = 0.0;
  for (int i = 0; i < 25; ++i) {
    ScalingParams s;
    s.x0 = {ux(rng), 0.0};
    s.t0 = ut(rng);
    s.a = ua(rng);
    s.b = 0.2 + (s.t0 - 1.05 - 0.2) * uu(rng);
    s.m = 2.0;
    const double r256 = std::abs(weak_residual(rescale_field(u256, s), 2.0, SpaceTimeFn{}, phi));
    const double r512 = std::abs(weak_residual(rescale_field(u512, s), 2.0, SpaceTimeFn{}, phi));
    if (r512 < r256) ++decreased;
    worst_ratio = std::max(worst_ratio, r512 / r256);

    const double p = uu(rng) < 0.2 ? kInf : upq(rng);
    const double q = uu(rng) < 0.2 ? kInf : upq(rng);
    const double jac_p = std::isinf(p) ? 1.0 : std::pow(s.a, -1.0 / p);
    const double jac_q = std::isinf(q) ? 1.0 : std::pow(s.b, -1.0 / q);
    const double want =
        std::pow(s.b, 2.0) / std::pow(s.a, 2.0) * jac_p * jac_q;  // m = 2, d = 1
    worst_factor =
        std::max(worst_factor, rel_dev(norm_transport_factor(s.a, s.b, 2.0, p, q, 1), want));
  }

  // realized transport on a constant source with cell-aligned geometry: the
  // rescaled source is b/gamma times the zoomed values and rescale_field
  // divides by gamma, so b * ||rescale_field(f)||(Q_1) = factor * ||f||(image)
  const Grid gf = make_grid(1, 64, -3.0, 3.0, 1.0, 2.0, 9);
  Field f(gf, linspace(1.0, 2.0, 9));
  for (int j = 0; j < gf.slices; ++j)
    for (auto& v : f.slice(j)) v = 0.7;
  ScalingParams s0;
  s0.x0 = {0.0, 0.0};
  s0.t0 = 2.0;
  s0.a = 3.0;
  s0.b = 0.5;
  s0.m = 2.0;
  const double p0 = 2.5, q0 = 3.0;
  const Field v0 = rescale_field(f, s0);
  const double lhs = s0.b * lpq_norm(v0, p0, q0, full_cylinder(v0));
  const Cylinder image{{0.0, 0.0}, s0.a, s0.t0 - s0.b, s0.t0};
  const double rhs =
      norm_transport_factor(s0.a, s0.b, s0.m, p0, q0, 1) * lpq_norm(f, p0, q0, image);
  const double realized = rel_dev(lhs, rhs);

  Outcome o;
  o.pass = decreased >= 23 && worst_factor <= 1e-12 && realized <= 1e-10;
  o.detail = strf(
      "25 random zooms of the exact field: residual decreased 256->512 in %d/25 "
      "(need >= 23, worst ratio %.2f); transport factor vs closed form worst rel dev "
      "%.1e (tol 1e-12); realized constant-source transport rel dev %.1e (tol 1e-10)",
      decreased, worst_ratio, worst_factor, realized);
  return o;
}

// ---- 6: estimator calibration --------------------------------------------------

Outcome criterion6() {
  const Grid g = make_grid(1, 4096, -1.0, 1.0, 0.0, 1.0, 3);
  const double star = g.center(0, g.n / 2);
  const auto radii = log_radii(0.015, 0.6, 10);
  double worst = 0.0;
  std::string per;
  for (double sexp : {0.25, 0.5, 0.75, 1.0}) {
    Field f(g, linspace(0.0, 1.0, 3));
    for (int j = 0; j < 3; ++j) {
      auto sl = f.slice(j);
      for (int c = 0; c < g.cells(); ++c)
        sl[c] = std::pow(std::abs(g.cell_center(c)[0] - star), sexp);
    }
    const auto rep = estimate_exponent(f, {star, 0.0}, 0.5, radii, 2.0, true);
    const double dev = std::abs(rep.alpha_hat_space - std::min(sexp, 1.0));
    worst = std::max(worst, dev);
    per += strf("%s%.2f->%.4f", per.empty() ? "" : ", ", sexp, rep.alpha_hat_space);
  }
  Outcome o;
  o.pass = worst <= 0.01;
  o.detail =
      strf("sampled |x|^s fields (n=4096): alpha_hat per s: %s; worst |dev| %.1e (tol 0.01)",
           per.c_str(), worst);
  return o;
}

// ---- 7: main-theorem shadow ------------------------------------------------------

Outcome criterion7() {
  double worst_space = 0.0, worst_time = 0.0;
  double min_near_heat = 1.0;
  std::string per;
  for (double m : {1.1, 1.5, 2.0, 3.0}) {
    const BarenblattSolution sol(m, 1);
    const double R = sol.support_radius(1.0);
    const Probe pr = make_probe(sol.centered({R, 0.0}, 1.0), 1, 1.0, 0.5, 0.5);
    const auto radii = m < 1.2 ? log_radii(9e-3, 0.3, 8) : log_radii(1e-3, 0.05, 8);
    const auto pass1 = estimate_exponent(pr, radii, 2.0, true);
    const double a1 = std::clamp(pass1.alpha_hat_space, 0.01, 0.99);
    const auto rep = estimate_exponent(pr, radii, sigma_of(m, a1), true);

    const double expected = std::min(1.0, 1.0 / (m - 1.0));
    worst_space = std::max(worst_space, std::abs(rep.alpha_hat_space - expected));
    worst_time = std::max(worst_time, std::abs(rep.alpha_hat_time - rep.alpha_hat_space));
    if (m <= 2.0) min_near_heat = std::min(min_near_heat, rep.alpha_hat_space);
    per += strf("%sm=%.1f:%.3f/%.3f", per.empty() ? "" : ", ", m, rep.alpha_hat_space,
                rep.alpha_hat_time);
  }
  Outcome o;
  o.pass = worst_space <= 0.05 && min_near_heat >= 0.95 && worst_time <= 0.1;
  o.detail = strf(
      "free-boundary probes (alpha_hat space/time): %s; worst |space dev from min(1,1/(m-1))| "
      "%.3f (tol 0.05), min alpha_hat for m<=2 %.3f (>= 0.95), worst |time-space| %.3f (tol 0.1)",
      per.c_str(), worst_space, min_near_heat, worst_time);
  return o;
}

// ---- 8: cascade -------------------------------------------------------------------

Outcome criterion8() {
  const double alpha = 0.9;
  const BarenblattSolution sol(1.1, 1);
  const double R = sol.support_radius(1.0);
  const Probe pr = make_probe(sol.centered({R, 0.0}, 1.0), 1, 1.0, 0.5, 0.5);
  const double sigma = sigma_of(1.1, alpha);
  const auto fit = estimate_exponent(pr, log_radii(9e-3, 0.3, 8), sigma, true);
  const double c_eff = std::max(1.0, fit.c_measured);
  const double rho = universal_rho_delta(c_eff, alpha).rho;
  const CascadeReport good = cascade_check(pr, rho, alpha, sigma, 5, false);

  SpaceTimeFn sub = [](const Point& xi, double) {
    return 5e-4 * std::pow(std::abs(xi[0]), 0.45);  // half the target exponent
  };
  const CascadeReport bad =
      cascade_check(make_probe(std::move(sub), 1, 1.0, 1.0, 1.0), rho, alpha, sigma, 5, false);

  Outcome o;
  o.pass = good.resolved >= 5 && good.pass() && !bad.pass() && bad.first_fail >= 1 &&
           bad.first_fail <= 4;
  o.detail = strf(
      "exact profile at the interface (m=1.1, alpha=0.9, c_measured %.1e -> C=%.1f, rho %.2e): "
      "%d/5 levels resolved, all pass; sub-Holder field fails at level %d (must be <= 4)",
      fit.c_measured, c_eff, rho, good.resolved, bad.first_fail);
  return o;
}

// ---- 9: caloric gap monotonicity ---------------------------------------------------

Outcome criterion9() {
  const Grid g = make_grid(1, 128, -1.0, 1.0, 0.0, 0.2, 17);
  double gaps[4];
  const double ms[4] = {1.5, 1.25, 1.1, 1.01};
  for (int i = 0; i < 4; ++i) {
    PMEProblem prob;
    prob.m = ms[i];
    prob.initial = [](const Point& x) { return 1.0 + 0.5 * std::cos(3.14159265358979323846 * x[0]); };
    prob.boundary.kind = BoundaryKind::Periodic;
    const SolveResult r = solve(prob, g);
    gaps[i] = caloric_gap(r.field, 1.0, BoundaryKind::Periodic, 4).gap;
  }
  Outcome o;
  o.pass = gaps[1] < gaps[0] && gaps[2] < gaps[1] && gaps[3] < gaps[2] &&
           gaps[3] <= 0.1 * gaps[0];
  o.detail = strf(
      "heat-flow distance for m=1.5/1.25/1.1/1.01: %.3e / %.3e / %.3e / %.3e; strictly "
      "decreasing and gap(1.01) <= 0.1 gap(1.5) (ratio %.3f)",
      gaps[0], gaps[1], gaps[2], gaps[3], gaps[3] / gaps[0]);
  return o;
}

// ---- 10: mixed norms and the gate ---------------------------------------------------

Outcome criterion10() {
  const Grid g = make_grid(1, 1024, -1.0, 1.0, 0.0, 1.0, 257);
  Field f(g, linspace(0.0, 1.0, 257));
  for (int j = 0; j < g.slices; ++j) {
    const double T = 3.0 + std::sin(2.0 * 3.14159265358979323846 * f.times()[j]);
    auto sl = f.slice(j);
    for (int c = 0; c < g.cells(); ++c)
      sl[c] = (2.0 + std::cos(3.14159265358979323846 * g.cell_center(c)[0])) * T;
  }
  const Cylinder full = full_cylinder(f);
  const double n24 = lpq_norm(f, 2.0, 4.0, full);
  const double n32 = lpq_norm(f, 3.0, 2.0, full);
  const double want24 = 3.0 * std::pow(867.0 / 8.0, 0.25);
  const double want32 = std::cbrt(22.0) * std::sqrt(9.5);
  const double dev_closed = std::max(rel_dev(n24, want24), rel_dev(n32, want32));

  // p = q must reduce to the plain space-time norm (same quadrature, flattened)
  double worst_pq = 0.0;
  for (double p : {1.0, 2.0, 3.5}) {
    const double mixed = lpq_norm(f, p, p, full);
    double acc = 0.0, comp = 0.0;
    for (int j = 0; j < g.slices; ++j) {
      const double tprev = j == 0 ? f.times().front() : f.times()[j - 1];
      const double tnext = j == g.slices - 1 ? f.times().back() : f.times()[j + 1];
      const double wj = 0.5 * (tnext - tprev);
      const auto sl = f.slice(j);
      for (int c = 0; c < g.cells(); ++c) {
        const double term = wj * g.h * std::pow(std::abs(sl[c]), p) - comp;
        const double tmp = acc + term;
        comp = (tmp - acc) - term;
        acc = tmp;
      }
    }
    worst_pq = std::max(worst_pq, rel_dev(mixed, std::pow(acc, 1.0 / p)));
  }

  const bool gate_true = check_admissibility(5.0, 30.0, 1.5, 2).admissible;
  const bool gate_q = check_admissibility(5.0, 29.9, 1.5, 2).admissible;
  const bool gate_p = check_admissibility(4.0, 30.0, 1.5, 2).admissible;

  Outcome o;
  o.pass = dev_closed <= 1e-8 && worst_pq <= 1e-10 && gate_true && !gate_q && !gate_p;
  o.detail = strf(
      "separable closed forms rel dev %.1e (tol 1e-8); p=q reduction worst rel dev %.1e "
      "(tol 1e-10); gate (p=5,q=30,m=1.5,d=2)=%s, q=29.9 -> %s, p=4 -> %s",
      dev_closed, worst_pq, gate_true ? "admissible" : "rejected",
      gate_q ? "admissible" : "rejected", gate_p ? "admissible" : "rejected");
  return o;
}

using CriterionFn = Outcome (*)();

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > 10) {
    std::fprintf(stderr, "criterion must be in 1..10\n");
    return 2;
  }

  const CriterionFn fns[10] = {criterion1, criterion2, criterion3, criterion4,
                               criterion5, criterion6, criterion7, criterion8,
                               criterion9, criterion10};
  bool all_pass = true;
  for (int k = 1; k <= 10; ++k) {
    if (only != 0 && k != only) continue;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = fns[k - 1]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = strf("exception: %s", e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", k,
                o.detail.c_str(), secs);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
