#pragma once

#include <functional>

#include "pmelab/field.hpp"

namespace pmelab {

using SpaceTimeFn = std::function<double(const Point&, double)>;

enum class BoundaryKind {
  DirichletZero,   // ghost = odd reflection, wall value 0
  Periodic,        // ghost = wrap-around
  DirichletOracle, // ghost = prescribed function sampled at ghost centers
  DirichletData,   // ghost = interpolated from a reference field (heat_reference)
};

struct Boundary {
  BoundaryKind kind = BoundaryKind::DirichletZero;
  SpaceTimeFn oracle;  // required iff kind == DirichletOracle
};

}  // namespace pmelab
