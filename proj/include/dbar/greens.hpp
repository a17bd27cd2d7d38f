#pragma once

// Faddeev Green function machinery at fixed positive energy.
//
//   G(z,k) = g(z,k) e^{ikx},   g(z,k) = -(2pi)^-2 int e^{i xi.x} / P d(xi),
//   P(eta) = |eta|^2 + sqrt(E) (lambda conj(eta) + eta/lambda),
//
// with the spectral parametrization k = k(lambda).  P vanishes at eta = 0 and
// eta0 = -sqrt(E)(lambda + 1/conj(lambda)).
//
// Two independent evaluation paths:
//  * fourier-split: the symbol is split by smooth cutoffs around the two
//    zeros of P; the local parts are integrable polar integrals, the bulk is
//    referenced against 1/(1+|xi|^2) (whose transform is K0) and the far tail
//    is summed analytically through Bessel moments.  Works for every
//    admissible (z, lambda), cost grows with |z| sqrt(E) |lambda|.
//  * spectral-rep: G - G+ is reconstructed from its lambda-gradient along a
//    radial path from the unit circle, giving a short list of plane-wave
//    nodes; cheap and spectrally accurate for moderate |z|, and the natural
//    tool for building convolution tables and single-layer kernels.
//
// The two paths cross-validate each other; a regularized brute-force
// quadrature oracle lives in the test tree.

#include <vector>

#include "dbar/special.hpp"
#include "dbar/types.hpp"

namespace dbar::greens {

inline cplx eta0_of(cplx lambda, Energy E) {
    return -E.sqrtE() * (lambda + 1.0 / std::conj(lambda));
}

inline cplx symbol_P(cplx eta, cplx lambda, Energy E) {
    return cplx(std::norm(eta), 0.0) +
           E.sqrtE() * (lambda * std::conj(eta) + eta / lambda);
}

// envelope profile: f = ln(1/tau) below 1/2, 1/tau above
inline double envelope_f(double tau) {
    return tau < 0.5 ? std::log(1.0 / tau) : 1.0 / tau;
}

void require_admissible(cplx lambda);  // throws DomainError on {0} or |lambda|=1

// classical outgoing Green function  G+ = -(i/4) H0^1(|z| sqrt(E))
cplx gplus(cplx z, Energy E);
cplx gplus_dz(cplx z, Energy E);     // d/dz
cplx gplus_dzbar(cplx z, Energy E);  // d/dzbar

// ---------------------------------------------------------------------------
// fourier-split evaluator

struct FaddeevPlan {
    cplx lambda;
    double E;
    double z_abs;
    double rho;    // cutoff radius around each zero of P
    double xi0;    // radial split between bulk quadrature and series tail
    int jmax;      // series depth of the tail
    int n_phi_disk;
    int n_panels_disk;
    int n_phi_bulk;
    double bulk_density;  // radial panels per unit length in the bulk region
    // shared tail grid: J_p sampled on GL panels of [X, U], X = xi0 * z_abs
    std::vector<double> tail_u, tail_w;
    std::vector<std::vector<double>> tail_jp;  // [p][node]
    double tail_X = 0.0, tail_U = 0.0;
};

// quality > 1 refines every quadrature component proportionally
FaddeevPlan make_faddeev_plan(cplx z, cplx lambda, Energy E, double quality = 1.0);

// g with the plan's frozen quadrature layout; lambda may differ slightly from
// plan.lambda (finite-difference stencils), |z| must match plan.z_abs.
cplx faddeev_g_planned(const FaddeevPlan& plan, cplx z, cplx lambda, Energy E);

// one-shot pointwise evaluation (fresh plan)
cplx faddeev_g(cplx z, cplx lambda, Energy E);

// limit of g(z) - ln|z|/(2 pi) as z -> 0
cplx faddeev_g_smooth_at_zero(cplx lambda, Energy E);

// ---------------------------------------------------------------------------
// spectral-rep evaluator:  (G - G+)(d) = sum_m w_m phi0(d, sigma_m)

struct PlaneWaveRep {
    cplx lambda;
    double E;
    double z_max;  // validity radius used to size the quadratures
    std::vector<cplx> sigma;
    std::vector<cplx> weight;
};

PlaneWaveRep make_plane_wave_rep(cplx lambda, Energy E, double z_max);

cplx eval_g_minus_gplus(const PlaneWaveRep& rep, cplx d);
// Wirtinger gradients of G - G+
void eval_g_minus_gplus_grad(const PlaneWaveRep& rep, cplx d, cplx& ddz, cplx& ddzbar);

cplx faddeev_g_spectral(cplx z, cplx lambda, Energy E);  // via a fresh rep
cplx faddeev_G(cplx z, cplx lambda, Energy E);           // G = g e^{ikx}, spectral path

// ---------------------------------------------------------------------------
// convolution table on the doubled difference grid

struct FaddeevTable {
    cplx lambda;
    double E;
    SpatialGrid grid;          // side 2n, same spacing as the spatial grid
    std::vector<cplx> values;  // g at difference nodes; center per offset policy
    cplx center_offset;        // where the z=0 value was actually sampled
};

FaddeevTable build_faddeev_table(cplx lambda, Energy E, const SpatialGrid& spatial);

// table for the classical kernel G+ (same layout, same center policy, but the
// smooth part at zero is known analytically and recorded)
struct GplusTable {
    double E;
    SpatialGrid grid;
    std::vector<cplx> values;
    cplx smooth_at_zero;  // lim G+ - ln|z|/(2 pi)
};

GplusTable build_gplus_table(Energy E, const SpatialGrid& spatial);

// ---------------------------------------------------------------------------
// executable identity checkers

// | FD_dbar G(z,k(lambda)) - sgn(|l|^2-1)/(4 pi conj(l)) e^{-i sqrt(E)/2 (conj(l) z + conj(z)/conj(l))} |
double check_dbar_identity(cplx z, cplx lambda, Energy E, double step);
// conjugate version (d/d lambda)
double check_dbar_identity_conj(cplx z, cplx lambda, Energy E, double step);

}  // namespace dbar::greens
