#include "pmelab/exponents.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pmelab {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::domain_error(msg);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

double sigma_of(double m, double alpha) {
  require(std::isfinite(m) && m >= 1.0, "sigma_of: m must satisfy m >= 1");
  require(alpha > 0.0 && alpha < 1.0, "sigma_of: alpha must lie in (0,1)");
  return 2.0 + (1.0 - m) * alpha;
}

BarenblattExponents barenblatt_exponents(double m, int d) {
  require(std::isfinite(m) && m > 1.0, "barenblatt_exponents: m must satisfy m > 1");
  require(d >= 1, "barenblatt_exponents: d must be a positive dimension");
  const double denom = d * (m - 1.0) + 2.0;
  return {static_cast<double>(d) / denom, 1.0 / denom};
}

double source_transport_exponent(double p, double q, double m, int d, double alpha) {
  require(std::isfinite(m) && m > 1.0, "source_transport_exponent: m must satisfy m > 1");
  require(d >= 1, "source_transport_exponent: d must be a positive dimension");
  require(p >= 1.0 && q >= 1.0, "source_transport_exponent: p, q must be >= 1");
  const double sigma = sigma_of(m, alpha);
  const double dp = std::isinf(p) ? 0.0 : static_cast<double>(d) / p;
  const double sq = std::isinf(q) ? 0.0 : sigma / q;
  // (sigma*m - 2)/(m - 1) == 2 - alpha*m identically; use the cancelled form.
  return 2.0 - alpha * m - dp - sq;
}

AdmissibilityReport check_admissibility(double p, double q, double m, int d) {
  require(std::isfinite(m) && m > 1.0 && m < 2.0,
          "check_admissibility: m must lie in (1,2)");
  require(d >= 1, "check_admissibility: d must be a positive dimension");
  require(p >= 1.0, "check_admissibility: p must be >= 1");
  require(q >= 1.0, "check_admissibility: q must be >= 1");

  AdmissibilityReport rep;
  rep.p_min = static_cast<double>(d) / (2.0 - m);
  if (!(p > rep.p_min)) {
    rep.q_min = std::numeric_limits<double>::infinity();
    std::ostringstream os;
    os << "p = " << p << " must exceed d/(2-m) = " << rep.p_min;
    rep.reason = os.str();
    return rep;
  }
  if (std::isinf(p)) {
    rep.q_min = 2.0 * (3.0 - m) / (2.0 - m);
  } else {
    rep.q_min = 2.0 * (3.0 - m) * p / ((2.0 - m) * p - d);
  }
  if (!(q >= rep.q_min)) {
    std::ostringstream os;
    os << "q = " << q << " must be at least 2(3-m)p/((2-m)p-d) = " << rep.q_min;
    rep.reason = os.str();
    return rep;
  }
  rep.admissible = true;

  // Cross-check: the source transport exponent stays nonnegative over the
  // whole alpha range.  It is decreasing in alpha, so alpha -> 1 is the
  // worst case; admissibility guarantees a margin of ((2-m) - d/p)/2 there.
  const double worst = source_transport_exponent(p, q, m, d, 1.0 - 1e-12);
  if (worst < -1e-9)
    throw std::logic_error("check_admissibility: transport exponent negative "
                           "despite admissible (p,q); internal inconsistency");
  return rep;
}

bool admissible(double p, double q, double m, int d) {
  return check_admissibility(p, q, m, d).admissible;
}

UniversalConstants universal_rho_delta(double c_approx, double alpha) {
  require(finite_positive(c_approx), "universal_rho_delta: C must be positive");
  require(alpha > 0.0 && alpha < 1.0, "universal_rho_delta: alpha must lie in (0,1)");
  UniversalConstants uc;
  uc.c_approx = c_approx;
  uc.alpha = alpha;
  uc.rho = std::pow(1.0 / (2.0 * c_approx), 1.0 / (1.0 - alpha));
  if (!(uc.rho > 0.0 && uc.rho < 0.5)) {
    std::ostringstream os;
    os << "universal_rho_delta: C = " << c_approx << " must exceed 2^(-alpha) = "
       << std::pow(2.0, -alpha) << " for the zoom factor to contract";
    throw std::domain_error(os.str());
  }
  uc.delta = 0.5 * std::pow(uc.rho, alpha);
  uc.eps = uc.delta;
  return uc;
}

}  // namespace pmelab
