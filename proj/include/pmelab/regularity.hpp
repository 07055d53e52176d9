#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pmelab/barenblatt.hpp"
#include "pmelab/field.hpp"
#include "pmelab/norms.hpp"

namespace pmelab {

/** Intrinsic cylinder around a probe point: spatial ball of radius r, time
 *  window of extent r^sigma, backward-only by default (two_sided adds the
 *  forward half, useful at points whose past is identically zero).
 */
struct IntrinsicCylinder {
  double r = 0.0;
  double sigma = 2.0;
  bool two_sided = false;
  double t_extent() const;
};

/** Points of the discrete zero level set that touch positivity: cells with
 *  |u| <= tol next to a cell with |u| > 10 tol, plus sign-change crossings
 *  located by linear interpolation.
 */
struct ZeroPoint {
  Point x{0.0, 0.0};
  double t = 0.0;
  double value = 0.0;
};

struct ZeroSet {
  std::vector<ZeroPoint> points;
  double tol = 0.0;
};

/** tol_zero < 0 picks the default 1e-3 * sup|u|. */
ZeroSet detect_zero_set(const Field& u, double tol_zero = -1.0);

/** Evaluator of u around a fixed base point in offset coordinates:
 *  eval(xi, tau) = u(x0 + xi, t0 + tau).  h_space/h_time > 0 mark sampled
 *  (grid) data and drive the sampling density (4 samples per cell); zero
 *  marks analytic data sampled at the default counts.
 */
struct Probe {
  std::function<double(const Point&, double)> eval;
  int d = 1;
  double max_r = 0.0;
  double max_back = 0.0;
  double max_fwd = 0.0;
  double h_space = 0.0;
  double h_time = 0.0;
  int default_samples = 129;
  int default_tsamples = 65;
};

Probe make_probe(const Field& u, const Point& x0, double t0);
Probe make_probe(SpaceTimeFn centered_eval, int d, double max_r, double max_back,
                 double max_fwd);

/** sup over the cylinder of |u - u(0,0)|, by dense lattice sampling
 *  (endpoints included). */
double oscillation(const Probe& u, const IntrinsicCylinder& cyl);
double oscillation(const Field& u, const Point& x0, double t0,
                   const IntrinsicCylinder& cyl);

/** Geometric oscillation cascade: at level n check
 *  sup_{cylinder(rho^n)} |u| <= rho^{n alpha}.  Levels whose cylinders fall
 *  outside the probe's domain, or below two grid cells/slices for sampled
 *  data, are Unresolved rather than failed.
 */
enum class LevelVerdict { Pass, Fail, Unresolved };

struct CascadeLevel {
  int level = 0;
  double r = 0.0;
  double t_extent = 0.0;
  double sup = 0.0;
  double bound = 0.0;
  LevelVerdict verdict = LevelVerdict::Unresolved;
};

struct CascadeReport {
  std::vector<CascadeLevel> levels;
  double rho = 0.0;
  double alpha = 0.0;
  double sigma = 0.0;
  bool two_sided = false;
  int resolved = 0;      // number of resolvable levels
  int first_fail = -1;   // level index of the first failure, -1 if none
  bool pass() const { return first_fail < 0 && resolved > 0; }
};

CascadeReport cascade_check(const Probe& u, double rho, double alpha, double sigma,
                            int n_levels, bool two_sided = false);
CascadeReport cascade_check(const Field& u, const Point& x0, double t0, double rho,
                            double alpha, double sigma, int n_levels,
                            bool two_sided = false);

/** Log-log oscillation decay fit around one probe point.
 *
 *  Three series over the given radii: spatial only (tau = 0), temporal only
 *  (xi = 0, window extent r^sigma), and the full backward intrinsic
 *  cylinder.  Radii whose oscillation sits within 10x float noise of the
 *  local scale are dropped from the fits; a series with fewer than two
 *  survivors is degenerate (slope NaN).  Fitted exponents are capped at 1
 *  (the Holder range); raw slopes are kept.  Requires >= 4 radii spanning
 *  >= 1.5 decades, all inside the probe's domain.
 */
struct FitSeries {
  std::vector<double> radii;
  std::vector<double> values;
  double slope = 0.0;
  double intercept = 0.0;
  int used = 0;
  bool degenerate = true;
};

struct ExponentReport {
  FitSeries space;
  FitSeries time;     // radii column holds the window extents r^sigma
  FitSeries cylinder;
  double sigma = 2.0;
  bool two_sided_time = true;
  double alpha_hat_space = 0.0;
  double alpha_hat_time = 0.0;
  double raw_slope_space = 0.0;
  double theta_time = 0.0;  // raw temporal slope vs window extent
  double c_measured = 0.0;  // max osc_cylinder / r^alpha_hat_space
  double noise_floor = 0.0;
  double u0 = 0.0;
};

ExponentReport estimate_exponent(const Probe& u, std::span<const double> radii,
                                 double sigma, bool two_sided_time = true);
ExponentReport estimate_exponent(const Field& u, const Point& x0, double t0,
                                 std::span<const double> radii, double sigma,
                                 bool two_sided_time = true);

/** Distance of u to its own heat-flow shadow on the inner nine-tenths
 *  cylinder (ball shrunk to 0.9 of the inscribed radius, first 19% of the
 *  time range discarded).  The reference run starts from u's first slice
 *  with the given boundary treatment.
 */
struct CaloricGapReport {
  Field h;
  double gap = 0.0;
  double delta_target = 0.0;
  bool within = false;
  Cylinder region;
};

CaloricGapReport caloric_gap(const Field& u, double delta_target,
                             BoundaryKind kind = BoundaryKind::DirichletData,
                             int oversample = 4);

/** Side-by-side exponent fits at a zero-set point and an interior point of
 *  the same field (same radii, same sigma). */
struct ContrastReport {
  ExponentReport at_zero;
  ExponentReport interior;
  Point x_zero{0.0, 0.0};
  Point x_interior{0.0, 0.0};
  double t = 0.0;
};

ContrastReport interior_vs_boundary_contrast(const Field& u, const Point& x_zero,
                                             const Point& x_interior, double t,
                                             std::span<const double> radii,
                                             double sigma);

}  // namespace pmelab
