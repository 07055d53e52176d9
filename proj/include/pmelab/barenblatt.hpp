#pragma once

#include <cmath>
#include <functional>

#include "pmelab/boundary.hpp"
#include "pmelab/exponents.hpp"
#include "pmelab/field.hpp"

namespace pmelab {

/** Curvature coefficient of the self-similar profile:
 *  k(m,d) = (m-1) beta / (2m) with beta = 1/(d(m-1)+2).
 */
double barenblatt_curvature(double m, int d);

/** Parameters of the compactly supported self-similar solution
 *
 *      u(x,t) = t^{-alpha} (M - k |x|^2 / t^{time_exponent})_+^{1/(m-1)}.
 *
 *  The exact solution of u_t = Laplace(u^m) has time_exponent = 2*beta and
 *  k = barenblatt_curvature(m,d); both are kept as explicit parameters so
 *  that near-miss variants (wrong curvature, or the halved time exponent
 *  that circulates in parts of the literature) can be constructed and
 *  falsified by the residual tests.
 */
struct BarenblattParams {
  double m = 2.0;
  int d = 1;
  double M = 1.0;
  double k = 0.0;
  double time_exponent = 0.0;
};

class BarenblattSolution {
 public:
  /** Exact solution: k and time_exponent filled from (m,d). */
  BarenblattSolution(double m, int d, double M = 1.0);
  /** Custom variant; fields must all be set and positive. */
  explicit BarenblattSolution(const BarenblattParams& params);

  double operator()(const Point& x, double t) const;
  double radial(double r, double t) const;
  double support_radius(double t) const { return radius_scale_ * std::pow(t, 0.5 * params_.time_exponent); }

  /** Total integral at t = 1 in closed form (Euler beta function); for the
   *  exact time exponent the integral is time-invariant. */
  double mass() const;

  double alpha() const { return exps_.alpha; }
  double beta() const { return exps_.beta; }
  const BarenblattParams& params() const { return params_; }

  /** Evaluator in offset coordinates around (x0, t0):
   *  (xi, tau) -> u(x0 + xi, t0 + tau).  |x0 + xi|^2 is expanded as
   *  |x0|^2 + 2<x0,xi> + |xi|^2 so offsets far below the float spacing of
   *  |x0| still register; this keeps deep zoom levels honest.
   */
  SpaceTimeFn centered(const Point& x0, double t0) const;

  /** Sample onto a grid; time slices are linspace(t0, T, slices). */
  Field sample(const Grid& grid) const;

 private:
  BarenblattParams params_;
  BarenblattExponents exps_;
  double inv_m1_;
  double radius_scale_;
};

/** Heat-equation reference on the grid and time slices of `data`: starts
 *  from data's first slice, steps an explicit scheme on an `oversample`-times
 *  finer grid, and restricts back.  DirichletData takes boundary values from
 *  `data` itself (time-interpolated); DirichletZero and Periodic are
 *  self-explanatory.  Throws std::domain_error for DirichletOracle.
 */
Field heat_reference(const Field& data, BoundaryKind kind = BoundaryKind::DirichletData,
                     int oversample = 4);

}  // namespace pmelab
