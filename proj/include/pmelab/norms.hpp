#pragma once

#include <limits>

#include "pmelab/field.hpp"

namespace pmelab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/** Space-time cylinder: Euclidean ball of `radius` around `center` times
 *  the interval (t_begin, t_end]. */
struct Cylinder {
  Point center{0.0, 0.0};
  double radius = 0.0;
  double t_begin = 0.0;
  double t_end = 0.0;
};

/** The field's natural cylinder: inscribed ball of the box times the full
 *  sampled time range. */
Cylinder full_cylinder(const Field& f);

/** Mixed norm || ||f(.,t)||_{L^p(B)} ||_{L^q(t_begin, t_end)}.
 *
 *  Spatial integrals use midpoint quadrature over the cell centers inside
 *  the ball; the time integral partitions the window at midpoints between
 *  participating slices (exact for time-constant integrands).  p or q may
 *  be kInf (sup norm in that variable).  Throws std::domain_error when the
 *  region sticks out of the sampled cylinder, contains no cells, or when
 *  p, q < 1.
 */
double lpq_norm(const Field& f, double p, double q, const Cylinder& region);

}  // namespace pmelab
