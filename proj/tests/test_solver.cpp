#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "pmelab/barenblatt.hpp"
#include "pmelab/errors.hpp"
#include "pmelab/solver.hpp"
#include "support.hpp"

using namespace pmelab;
using namespace pmelab::testsupport;

namespace {

PMEProblem bump_problem(double m, double amplitude, double width, BoundaryKind kind) {
  PMEProblem prob;
  prob.m = m;
  prob.initial = [amplitude, width](const Point& x) {
    const double s2 = (x[0] * x[0]) / (width * width);
    return s2 >= 1.0 ? 0.0 : amplitude * std::exp(1.0 - 1.0 / (1.0 - s2));
  };
  prob.boundary.kind = kind;
  return prob;
}

}  // namespace

TEST_CASE("mass is conserved with periodic boundaries") {
  PMEProblem prob;
  prob.m = 2.0;
  prob.initial = [](const Point& x) { return 1.0 + 0.5 * std::cos(3.14159265358979 * x[0]); };
  prob.boundary.kind = BoundaryKind::Periodic;
  const Grid g = grid1(64, -1.0, 1.0, 0.0, 0.1, 5);
  const SolveResult r = solve(prob, g);
  const double m0 = r.field.slice_mass(0);
  for (int j = 1; j < r.field.slice_count(); ++j)
    CHECK(r.field.slice_mass(j) == doctest::Approx(m0).epsilon(1e-12));
  CHECK(r.steps > 0);
  CHECK(r.dt_min > 0.0);
  CHECK(r.dt_min <= r.dt_max);
}

TEST_CASE("compactly supported data conserves mass and stays nonnegative") {
  const PMEProblem prob = bump_problem(2.0, 1.0, 0.3, BoundaryKind::DirichletZero);
  const Grid g = grid1(96, -1.0, 1.0, 0.0, 0.05, 6);
  const SolveResult r = solve(prob, g);
  const double m0 = r.field.slice_mass(0);
  CHECK(m0 > 0.0);
  for (int j = 0; j < r.field.slice_count(); ++j) {
    CHECK(r.field.slice_mass(j) == doctest::Approx(m0).epsilon(1e-11));
  }
  CHECK(r.field.min_value() >= -1e-15);
}

TEST_CASE("signed data uses the odd extension") {
  PMEProblem prob;
  prob.m = 2.0;
  prob.initial = [](const Point& x) { return std::sin(3.14159265358979 * x[0]); };
  prob.boundary.kind = BoundaryKind::Periodic;
  const Grid g = grid1(64, -1.0, 1.0, 0.0, 0.02, 3);
  const SolveResult r = solve(prob, g);
  // odd data stays odd: total mass remains zero
  CHECK(std::abs(r.field.slice_mass(r.field.slice_count() - 1)) < 1e-12);
  CHECK(r.field.min_value() < -0.1);
  CHECK(r.field.all_finite());
}

TEST_CASE("comparison principle under a shared step") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uamp(0.4, 1.0), uw(0.25, 0.45), uth(0.3, 0.9);
  for (int pair = 0; pair < 5; ++pair) {
    const double A = uamp(rng), w = uw(rng), theta = uth(rng);
    PMEProblem hi = bump_problem(2.0, A, w, BoundaryKind::DirichletZero);
    PMEProblem lo = hi;
    auto base = hi.initial;
    lo.initial = [base, theta](const Point& x) { return theta * base(x); };

    Grid g = grid1(48, -1.0, 1.0, 0.0, 0.05, 4);
    g.dt = 0.3 * g.h * g.h / (2.0 * 1.0 * 2.0 * A);  // below both stability gates
    const SolveResult rhi = solve(hi, g);
    const SolveResult rlo = solve(lo, g);
    for (int j = 0; j < rhi.field.slice_count(); ++j) {
      const auto a = rlo.field.slice(j), b = rhi.field.slice(j);
      for (int c = 0; c < g.cells(); ++c) CHECK(a[c] <= b[c] + 1e-12);
    }
  }
}

TEST_CASE("steps beyond the monotonicity limit are refused") {
  const Grid g = grid1(32, -1.0, 1.0, 0.0, 0.1, 3);
  Field u(g, linspace(0.0, 0.1, 3));
  for (auto& v : u.slice(0)) v = 1.0;
  PMEProblem prob;
  prob.m = 2.0;
  prob.boundary.kind = BoundaryKind::Periodic;
  std::vector<double> out(g.cells());
  const double limit = g.h * g.h / (2.0 * 1.0 * 2.0);
  CHECK_THROWS_AS(
      step_explicit(g, prob, u.slice(0), 0.0, 2.0 * limit, {out.data(), out.size()}),
      numerical_error);
  CHECK_NOTHROW(
      step_explicit(g, prob, u.slice(0), 0.0, 0.5 * limit, {out.data(), out.size()}));
}

TEST_CASE("cfl step tracks the degeneracy") {
  std::vector<double> u(16, 0.0);
  const double quiet = cfl_dt({u.data(), u.size()}, 2.0, 0.1, 1);
  u[3] = 2.0;
  const double active = cfl_dt({u.data(), u.size()}, 2.0, 0.1, 1);
  CHECK(active < quiet);
  CHECK(active == doctest::Approx(0.4 * 0.01 / (2.0 * 2.0 * 2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(cfl_dt({u.data(), u.size()}, 2.0, -0.1, 1), std::domain_error);
}

TEST_CASE("solver tracks the exact profile") {
  const BarenblattSolution sol(2.0, 1);
  PMEProblem prob;
  prob.m = 2.0;
  prob.initial = [&sol](const Point& x) { return sol(x, 1.0); };
  prob.boundary.kind = BoundaryKind::DirichletOracle;
  prob.boundary.oracle = [&sol](const Point& x, double t) { return sol(x, t); };
  const Grid g = grid1(256, -5.0, 5.0, 1.0, 1.5, 3);
  const SolveResult r = solve(prob, g);
  const Field ref = sol.sample(g);
  double l1 = 0.0, linf = 0.0;
  const int last = r.field.slice_count() - 1;
  for (int c = 0; c < g.cells(); ++c) {
    const double e = std::abs(r.field.at(last, c) - ref.at(last, c));
    l1 += e * g.h;
    linf = std::max(linf, e);
  }
  CHECK(l1 < 5e-3);
  CHECK(linf < 5e-2);
}

TEST_CASE("two dimensional step keeps symmetry") {
  PMEProblem prob;
  prob.m = 2.0;
  prob.initial = [](const Point& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    return r2 >= 0.25 ? 0.0 : std::exp(1.0 - 1.0 / (1.0 - 4.0 * r2));
  };
  prob.boundary.kind = BoundaryKind::DirichletZero;
  const Grid g = grid2(32, -1.0, 1.0, 0.0, 0.02, 3);
  const SolveResult r = solve(prob, g);
  CHECK(r.field.min_value() >= -1e-15);
  CHECK(r.field.slice_mass(2) == doctest::Approx(r.field.slice_mass(0)).epsilon(1e-11));
  // quadrant symmetry of the data survives the march
  const int n = g.n, last = r.field.slice_count() - 1;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const double a = r.field.at(last, ix + n * iy);
      const double b = r.field.at(last, (n - 1 - ix) + n * iy);
      const double c = r.field.at(last, ix + n * (n - 1 - iy));
      CHECK(a == doctest::Approx(b).epsilon(1e-12));
      CHECK(a == doctest::Approx(c).epsilon(1e-12));
    }
}

TEST_CASE("a constant source pumps mass at the exact rate") {
  PMEProblem prob;
  prob.m = 2.0;
  prob.initial = [](const Point&) { return 0.2; };
  prob.source = [](const Point&, double) { return 0.3; };
  prob.boundary.kind = BoundaryKind::Periodic;
  const Grid g = grid1(32, -1.0, 1.0, 0.0, 0.1, 5);
  const SolveResult r = solve(prob, g);
  // d/dt mass = 0.3 * |box| exactly for periodic boundaries
  const double expect = 0.2 * 2.0 + 0.3 * 2.0 * 0.1;
  CHECK(r.field.slice_mass(4) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("weak residual of the numerical solution shrinks under refinement") {
  auto run = [](int n, int slices) {
    PMEProblem prob;
    prob.m = 2.0;
    prob.initial = [](const Point& x) {
      const double s2 = x[0] * x[0] / 0.25;
      return s2 >= 1.0 ? 0.0 : std::exp(1.0 - 1.0 / (1.0 - s2));
    };
    prob.boundary.kind = BoundaryKind::DirichletZero;
    const Grid g = grid1(n, -1.0, 1.0, 0.0, 0.2, slices);
    const SolveResult r = solve(prob, g);
    const TestFunction phi = bump_test_function({0.0, 0.0}, 0.6, 0.1, 0.08);
    return std::abs(weak_residual(r.field, 2.0, {}, phi));
  };
  const double c64 = run(64, 33);
  const double c128 = run(128, 65);
  CHECK(c128 < 0.75 * c64);
  CHECK(c128 < 5e-3);
}

TEST_CASE("bump support must sit inside the sampled cylinder") {
  const Grid g = grid1(32, -1.0, 1.0, 0.0, 0.2, 5);
  Field u(g, linspace(0.0, 0.2, 5));
  const TestFunction wide = bump_test_function({0.0, 0.0}, 2.0, 0.1, 0.05);
  CHECK_THROWS_AS(weak_residual(u, 2.0, {}, wide), std::domain_error);
  const TestFunction late = bump_test_function({0.0, 0.0}, 0.5, 0.19, 0.05);
  CHECK_THROWS_AS(weak_residual(u, 2.0, {}, late), std::domain_error);
}
