#pragma once

#include <string>

namespace pmelab {

/** Intrinsic time exponent sigma = 2 + (1 - m) * alpha.
 *
 *  For m > 1 this interpolates between the parabolic value 2 (alpha -> 0)
 *  and 3 - m (alpha -> 1).  Requires alpha in the open interval (0,1) and
 *  m >= 1; throws std::domain_error otherwise.
 */
double sigma_of(double m, double alpha);

/** Self-similarity exponents of the source-free point-mass solution:
 *  alpha = d / (d(m-1) + 2),  beta = 1 / (d(m-1) + 2).
 *  Requires m > 1, d >= 1.
 */
struct BarenblattExponents {
  double alpha;
  double beta;
};
BarenblattExponents barenblatt_exponents(double m, int d);

/** Exponent e(alpha) = (sigma*m - 2)/(m - 1) - d/p - sigma/q governing how
 *  the mixed norm of the rescaled source transports across one intrinsic
 *  zoom step: ||f_k|| ~ rho^{k e}.  Simplifies to 2 - alpha*m - d/p - sigma/q
 *  and is decreasing in alpha.  Infinite exponents are accepted (the
 *  corresponding term drops).
 */
double source_transport_exponent(double p, double q, double m, int d, double alpha);

/** Integrability gate on the source norm: p strictly above d/(2-m) and
 *  q at least 2(3-m)p / ((2-m)p - d).  Only meaningful for m in (1,2);
 *  other m (and p or q below 1) are rejected with std::domain_error.
 */
struct AdmissibilityReport {
  bool admissible = false;
  double p_min = 0.0;  // exclusive lower bound on p
  double q_min = 0.0;  // inclusive lower bound on q (valid once p > p_min)
  std::string reason;  // which inequality failed; empty when admissible
};
AdmissibilityReport check_admissibility(double p, double q, double m, int d);
bool admissible(double p, double q, double m, int d);

/** Constants of the one-step improvement argument:
 *  rho = (1/(2C))^{1/(1-alpha)}, delta = rho^alpha / 2, so that
 *  delta + C*rho = rho^alpha holds exactly.  eps defaults to delta (the
 *  proximity budget doubles as the smallness budget; callers may override).
 *  Requires C > 2^{-alpha}, the range where rho < 1/2; smaller C yields no
 *  contraction and is rejected with std::domain_error.
 */
struct UniversalConstants {
  double c_approx = 0.0;
  double alpha = 0.0;
  double rho = 0.0;
  double delta = 0.0;
  double eps = 0.0;
};
UniversalConstants universal_rho_delta(double c_approx, double alpha);

}  // namespace pmelab
