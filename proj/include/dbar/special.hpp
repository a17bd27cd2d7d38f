#pragma once

// Cylinder functions used by the Green-function layer: J0, J1, Y0, Y1 and the
// outgoing Hankel combinations, plus K0 and general-order J_p.  Power series
// below the seam, Hankel asymptotic expansions above it; the seam continuity
// is part of the unit tests.

#include "dbar/types.hpp"

namespace dbar {

constexpr double bessel_seam = 12.0;

double bessel_j0(double x);
double bessel_j1(double x);
double bessel_y0(double x);  // x > 0
double bessel_y1(double x);  // x > 0
double bessel_k0(double x);  // x > 0

// first-kind Hankel functions, x > 0
cplx hankel0(double x);
cplx hankel1(double x);

// J_p for integer p >= 0 via the cosine integral representation (composite
// Gauss panels); accurate for moderate p and any x >= 0.
double bessel_jn(int p, double x);

}  // namespace dbar
