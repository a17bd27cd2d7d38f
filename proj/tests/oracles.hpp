#pragma once

// Test-side oracles, independent of the library's evaluation paths.

#include "dbar/types.hpp"

namespace dbar::oracle {

// J_n by the plain power series (small/moderate arguments only)
double bessel_j_series(int n, double x);

// Faddeev g by brute-force regularized quadrature of the defining Fourier
// integral: the symbol is shifted P -> P + i*eps, the two slowly-decaying
// reference terms with closed-form transforms are subtracted, and eps -> 0 is
// removed by fitting  g + b*eps*ln(1/eps) + c*eps  through three shifts.
cplx faddeev_g_bruteforce(cplx z, cplx lambda, Energy E, double eps0 = 0.08);

// k.x exponent assembled directly from k(lambda) (for phi0 cross-checks)
cplx plane_wave_from_k(cplx z, cplx lambda, Energy E);

}  // namespace dbar::oracle
