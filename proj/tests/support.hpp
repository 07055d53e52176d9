#pragma once

#include "pmelab/field.hpp"

namespace pmelab::testsupport {

inline Grid grid1(int n, double xlo, double xhi, double t0, double T, int slices) {
  Grid g;
  g.d = 1;
  g.n = n;
  g.xlo = {xlo, 0.0};
  g.h = (xhi - xlo) / n;
  g.t0 = t0;
  g.T = T;
  g.slices = slices;
  return g;
}

inline Grid grid2(int n, double xlo, double xhi, double t0, double T, int slices) {
  Grid g;
  g.d = 2;
  g.n = n;
  g.xlo = {xlo, xlo};
  g.h = (xhi - xlo) / n;
  g.t0 = t0;
  g.T = T;
  g.slices = slices;
  return g;
}

}  // namespace pmelab::testsupport
