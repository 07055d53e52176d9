#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pmelab {

/** Spatial point; only the first d components are meaningful. */
using Point = std::array<double, 2>;

/** Uniform cell-centered grid on a box [xlo, xlo + n*h]^d, d in {1,2},
 *  with a time interval [t0, T].  `dt` caps the solver step (0 = CFL only);
 *  `slices` is the number of stored time slices, endpoints included.
 */
struct Grid {
  int d = 1;
  int n = 0;
  double h = 0.0;
  Point xlo{0.0, 0.0};
  double t0 = 0.0;
  double T = 0.0;
  double dt = 0.0;
  int slices = 2;

  int cells() const { return d == 1 ? n : n * n; }
  double extent() const { return n * h; }
  double xhi(int axis) const { return xlo[axis] + extent(); }
  double center(int axis, int i) const { return xlo[axis] + (i + 0.5) * h; }
  Point cell_center(int flat) const;
  void validate() const;  // throws std::domain_error on nonsense
};

/** Space-time samples on a Grid: one value per cell per stored slice.
 *  Values are slice-major; within a slice, x runs fastest (flat = ix + n*iy).
 */
class Field {
 public:
  Field() = default;
  Field(Grid grid, std::vector<double> times);  // zero-filled

  const Grid& grid() const { return grid_; }
  const std::vector<double>& times() const { return times_; }
  int slice_count() const { return static_cast<int>(times_.size()); }
  int cells() const { return grid_.cells(); }

  std::span<double> slice(int j);
  std::span<const double> slice(int j) const;
  double& at(int j, int flat) { return values_[static_cast<size_t>(j) * cells() + flat]; }
  double at(int j, int flat) const { return values_[static_cast<size_t>(j) * cells() + flat]; }

  /** Multilinear in space between cell centers (constant in the outer
   *  half-cell), linear in time between slices.  `t` may exceed the sampled
   *  range by a relative 1e-9 slack, and `x` may leave the box by up to one
   *  cell (wall-adjacent ghost values need that); beyond either limit throws
   *  std::domain_error.
   */
  double interpolate(const Point& x, double t) const;

  double max_abs() const;
  double min_value() const;
  double max_value() const;
  double slice_mass(int j) const;  // h^d * sum of the slice

  bool all_finite() const;

 private:
  Grid grid_;
  std::vector<double> times_;
  std::vector<double> values_;
};

/** Snapshot file: magic line "PMESNAP1", one JSON header line (grid, times,
 *  exponent m), then the raw little-endian float64 payload, slice-major.
 *  Round-trips bit-exactly.
 */
struct Snapshot {
  Field field;
  double m = 2.0;
};

void write_snapshot(const Snapshot& snap, const std::string& path);
Snapshot read_snapshot(const std::string& path);

/** Evenly spaced values from a to b inclusive; count >= 2. */
std::vector<double> linspace(double a, double b, int count);

}  // namespace pmelab
