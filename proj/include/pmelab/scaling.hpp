#pragma once

#include "pmelab/field.hpp"

namespace pmelab {

/** The zoom (x,t) -> (x0 + a x, t0 + b t), u -> u/gamma.  With
 *  gamma = (a^2/b)^{1/(m-1)} the rescaled field solves the same equation
 *  with source multiplied by rescaled_source_factor.
 */
struct ScalingParams {
  Point x0{0.0, 0.0};
  double t0 = 0.0;
  double a = 1.0;
  double b = 1.0;
  double m = 2.0;
};

/** (a^2/b)^{1/(m-1)}; m = 1 has no finite exponent and is rejected. */
double gamma_of(double a, double b, double m);

/** Multiplier on the source: b^{m/(m-1)} / a^{2/(m-1)} (== b/gamma). */
double rescaled_source_factor(double a, double b, double m);

/** Multiplier relating mixed norms: ||f_rescaled||_{p,q}(Q_1) equals
 *  norm_transport_factor * ||f||_{p,q}(image cylinder); combines the source
 *  factor with the Jacobians a^{-d/p} b^{-1/q}. */
double norm_transport_factor(double a, double b, double m, double p, double q, int d);

/** Parameters undoing a given zoom; rescaling twice composes to identity
 *  (and the gammas are reciprocal). */
ScalingParams inverse_scaling(const ScalingParams& s);

/** Materialize v(x,t) = u(x0 + a x, t0 + b t)/gamma on a fresh grid over
 *  the unit cylinder [-1,1]^d x [-1,0].  Resolution defaults to matching
 *  u's (h' ~ h/a, slice spacing ~ slice spacing/b), clamped to sane ranges;
 *  pass n_space/n_slices to override.  The image cylinder must lie inside
 *  u's sampled domain (std::domain_error otherwise).
 */
Field rescale_field(const Field& u, const ScalingParams& s, int n_space = 0,
                    int n_slices = 0);

/** Flatten data below the thresholds of the smallness regime:
 *  K = (1+margin) max((||f||_{p,q} + sup|u|)/eps, sup|u|, 1),
 *  v(x,t) = u(K^{(m-1)/2} x, t)/K,  f~(x,t) = f(K^{(m-1)/2} x, t)/K,
 *  so that sup|v| < 1 and ||f~||_{p,q} < eps strictly for every eps > 0.
 *  u's box must contain [-a,a]^d for a = K^{(m-1)/2}; the error message
 *  names the required box when it does not.
 */
struct NormalizeResult {
  Field v;
  Field f_tilde;
  double K = 1.0;
  double a = 1.0;
};

NormalizeResult normalize(const Field& u, const Field& f, double m, double eps,
                          double p, double q);

}  // namespace pmelab
