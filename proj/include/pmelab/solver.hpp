#pragma once

#include <functional>
#include <span>

#include "pmelab/boundary.hpp"
#include "pmelab/field.hpp"

namespace pmelab {

/** u_t - Laplace(sign(u)|u|^m) = source, with initial data sampled at cell
 *  centers.  source may be empty (homogeneous).  The odd extension of the
 *  nonlinearity keeps the comparison principle available for signed data.
 */
struct PMEProblem {
  double m = 2.0;
  std::function<double(const Point&)> initial;
  SpaceTimeFn source;
  Boundary boundary;
};

struct SolveOptions {
  double cfl_safety = 0.4;
  double floor = 1e-8;           // degeneracy floor in step selection only
  long max_steps = 50'000'000;
};

struct SolveResult {
  Field field;
  long steps = 0;
  double dt_min = 0.0;
  double dt_max = 0.0;
};

double signed_pow(double u, double m);

/** Largest stable step for the explicit scheme on the current slice:
 *  safety * h^2 / (2 d m max(|u|^{m-1}, floor)).  The floor only guards the
 *  step-size selection against full degeneracy; the scheme itself is
 *  unregularized.
 */
double cfl_dt(std::span<const double> u, double m, double h, int d,
              double safety = 0.4, double floor = 1e-8);

/** One conservative explicit step of size dt at time t.  Refuses steps
 *  beyond the monotonicity limit h^2/(2 d m max|u|^{m-1}) and non-finite
 *  results (numerical_error).
 */
void step_explicit(const Grid& grid, const PMEProblem& problem,
                   std::span<const double> u, double t, double dt,
                   std::span<double> out);

/** March from grid.t0 to grid.T storing grid.slices evenly spaced slices.
 *  The step is min(grid.dt if positive, CFL gate, distance to the next
 *  stored slice).
 */
SolveResult solve(const PMEProblem& problem, const Grid& grid,
                  const SolveOptions& options = {});

/** Smooth compactly supported space-time test function
 *  phi(x,t) = B(|x-center|/rx) B((t-t_center)/rt),  B(s) = e^{1 - 1/(1-s^2)},
 *  with analytic time derivative and spatial gradient.
 */
struct TestFunction {
  SpaceTimeFn value;
  SpaceTimeFn time_derivative;
  std::function<Point(const Point&, double)> gradient;
  Point center{0.0, 0.0};
  double rx = 0.0;
  double t_center = 0.0;
  double rt = 0.0;
};

TestFunction bump_test_function(const Point& center, double rx, double t_center, double rt);

/** Discrete weak-form defect
 *  sum over slices of [ -u phi_t + grad(sign(u)|u|^m) . grad(phi) - f phi ]
 *  with face-based gradient pairing and midpoint time weights.  Requires the
 *  bump's support to sit strictly inside the sampled cylinder.
 */
double weak_residual(const Field& u, double m, const SpaceTimeFn& source,
                     const TestFunction& phi);

}  // namespace pmelab
