#include "dbar/greens.hpp"

#include <algorithm>
#include <cmath>

#include "dbar/util.hpp"

namespace dbar::greens {

void require_admissible(cplx lambda) {
    if (lambda == cplx(0, 0)) throw DomainError("lambda = 0 is not admissible");
    if (std::abs(std::abs(lambda) - 1.0) < 1e-12)
        throw DomainError("lambda on the unit circle is not admissible");
}

cplx gplus(cplx z, Energy E) {
    const double r = std::abs(z);
    if (r == 0.0) throw SingularPointError("gplus: z = 0");
    return cplx(0, -0.25) * hankel0(r * E.sqrtE());
}

cplx gplus_dz(cplx z, Energy E) {
    const double r = std::abs(z);
    if (r == 0.0) throw SingularPointError("gplus_dz: z = 0");
    const double k = E.sqrtE();
    // d/dr G+ = (i/4) k H1(kr),  dr/dz = conj(z)/(2r)
    return cplx(0, 0.25) * k * hankel1(k * r) * std::conj(z) / (2.0 * r);
}

cplx gplus_dzbar(cplx z, Energy E) {
    const double r = std::abs(z);
    if (r == 0.0) throw SingularPointError("gplus_dzbar: z = 0");
    const double k = E.sqrtE();
    return cplx(0, 0.25) * k * hankel1(k * r) * z / (2.0 * r);
}

// ---------------------------------------------------------------------------
// fourier-split evaluator

namespace {

// radial C^4 cutoff: 1 on [0, rho/2], 0 beyond rho (9th order smoothstep; the
// high smoothness keeps the Gauss panels that cross the cutoff rim accurate)
double cutoff_alpha(double s, double rho) {
    if (s <= 0.5 * rho) return 1.0;
    if (s >= rho) return 0.0;
    const double u = (s - 0.5 * rho) / (0.5 * rho);
    const double u4 = u * u * u * u;
    return 1.0 - u4 * u * (70.0 * u4 - 315.0 * u * u * u + 540.0 * u * u - 420.0 * u + 126.0);
}

int even_at_least(int n) { return n + (n & 1); }

// panels of a composite Gauss rule on [a,b]; boundaries must be increasing
void composite_nodes(const std::vector<double>& bounds, int order,
                     std::vector<double>& x, std::vector<double>& w) {
    const QuadRule& q = gauss_legendre(order);
    for (size_t p = 0; p + 1 < bounds.size(); ++p) {
        const double a = bounds[p], b = bounds[p + 1];
        if (!(b > a)) continue;
        const double c = 0.5 * (a + b), s = 0.5 * (b - a);
        for (size_t i = 0; i < q.x.size(); ++i) {
            x.push_back(c + s * q.x[i]);
            w.push_back(s * q.w[i]);
        }
    }
}

std::vector<double> split_interval(double a, double b, double density, int min_panels) {
    const int np = std::max(min_panels, static_cast<int>(std::ceil((b - a) * density)));
    std::vector<double> bounds(np + 1);
    for (int i = 0; i <= np; ++i) bounds[i] = a + (b - a) * i / np;
    return bounds;
}

//  E_nu(U) = int_U^inf u^{-nu} e^{iu} du, asymptotic series with optimal cut
cplx osc_moment(double nu, double U) {
    cplx term(0, 1);  // t_0 = i
    cplx sum = term;
    double prev = 1.0;
    for (int r = 0; r < 40; ++r) {
        term *= cplx(0, -1) * ((nu + r) / U);
        const double mag = std::abs(term);
        if (mag >= prev) break;
        sum += term;
        prev = mag;
        if (mag < 1e-16) break;
    }
    return std::exp(cplx(0, U)) * std::pow(U, -nu) * sum;
}

// remainder int_U^inf J_p(u) u^{1-m} du via the Hankel expansion of J_p
double tail_remainder(int p, int m, double U) {
    // J_p = Re[ sqrt(2/(pi u)) e^{i(u - p pi/2 - pi/4)} S_p(u) ]
    cplx acc(0, 0);
    double ak = 1.0, prev = 1e300;
    const double fourp2 = 4.0 * p * p;
    for (int k = 0; k < 30; ++k) {
        if (k > 0) {
            ak *= (fourp2 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k);
            const double mag = std::abs(ak) / std::pow(U, k);
            if (mag >= prev) break;
            prev = mag;
        }
        cplx ip(1, 0);
        for (int q = 0; q < k % 4; ++q) ip *= cplx(0, 1);
        acc += ip * ak * osc_moment(m - 0.5 + k, U);
    }
    const cplx phase = std::exp(cplx(0, -(0.5 * p * pi + 0.25 * pi)));
    return (std::sqrt(2.0 / pi) * phase * acc).real();
}

}  // namespace

FaddeevPlan make_faddeev_plan(cplx z, cplx lambda, Energy E, double quality) {
    require_admissible(lambda);
    FaddeevPlan plan;
    plan.lambda = lambda;
    plan.E = E.E;
    plan.z_abs = std::abs(z);

    const double r = std::abs(lambda);
    const double lam_plus = r + 1.0 / r;
    const double lam_minus = std::abs(r - 1.0 / r);
    const double s0 = E.sqrtE() * lam_plus;
    plan.rho = std::min(0.5 * s0, 1.0);
    plan.xi0 = 4.5 * (s0 + 1.0);
    plan.jmax = 14;

    const double za = std::max(plan.z_abs, 1e-12);
    const int dip = std::min(1024, static_cast<int>(36.0 / std::max(0.03, lam_minus / lam_plus)));
    plan.n_phi_disk = even_at_least(static_cast<int>(
        quality * (72 + 2 * static_cast<int>(std::ceil(plan.rho * za)) + dip)));
    plan.n_panels_disk = 2 * (2 + static_cast<int>(quality * std::ceil(plan.rho * std::max(za, 0.5) / 4.0)));
    // bulk angular bandwidth: the oscillation u = xi0 |z| plus the cutoff rim
    // around eta0 seen from the origin (width ~ rho/s0) plus the |D| dip
    const double u_bulk = plan.xi0 * za;
    plan.n_phi_bulk = even_at_least(static_cast<int>(
        quality * (80 + 2.0 * (u_bulk + 12.0 * std::cbrt(u_bulk + 1.0)) +
                   26.0 * std::ceil(s0 / plan.rho) + dip)));
    plan.bulk_density = quality * std::max(za, 0.4) / 2.2;

    // tail: Bessel moments Q_{p,m} = int_X^inf J_p(u) u^{1-m} du
    const int pmax = plan.jmax;
    const int mmax = plan.jmax + 2;
    plan.tail_X = plan.xi0 * plan.z_abs;
    if (plan.z_abs > 1e-300) {
        const double X = plan.tail_X;
        const double U = std::max({45.0, 0.9 * pmax * pmax, X});
        plan.tail_U = U;
        if (U > X) {
            std::vector<double> bounds{X};
            double lo = X;
            while (lo < U) {
                const double len = std::min(2.4, std::max(0.9 * lo, 1e-4));
                lo = std::min(U, lo + len);
                bounds.push_back(lo);
            }
            composite_nodes(bounds, 12, plan.tail_u, plan.tail_w);
        }
        plan.tail_jp.assign(pmax + 1, std::vector<double>(plan.tail_u.size(), 0.0));
        for (size_t i = 0; i < plan.tail_u.size(); ++i) {
            const double u = plan.tail_u[i];
            if (u >= 35.0) {
                double jm = bessel_j0(u), jc = bessel_j1(u);
                plan.tail_jp[0][i] = jm;
                if (pmax >= 1) plan.tail_jp[1][i] = jc;
                for (int p = 1; p < pmax; ++p) {
                    const double jn = (2.0 * p / u) * jc - jm;
                    jm = jc;
                    jc = jn;
                    plan.tail_jp[p + 1][i] = jn;
                }
            } else {
                for (int p = 0; p <= pmax; ++p) plan.tail_jp[p][i] = bessel_jn(p, u);
            }
        }
    }
    (void)mmax;
    return plan;
}

namespace {

// Q_{p,m}(X) from the plan's shared grid plus the asymptotic remainder
double tail_Q(const FaddeevPlan& plan, int p, int m) {
    double acc = 0.0;
    for (size_t i = 0; i < plan.tail_u.size(); ++i) {
        const double u = plan.tail_u[i];
        acc += plan.tail_w[i] * plan.tail_jp[p][i] * std::pow(u, 1 - m);
    }
    acc += tail_remainder(p, m, plan.tail_U);
    return acc;
}

struct DiskQuadrature {
    std::vector<double> s, ws;       // radial nodes/weights
    std::vector<double> phi, cphi;   // angular nodes and cos/sin helpers filled per z
};

}  // namespace

static cplx faddeev_eval_core(const FaddeevPlan& plan, cplx z, cplx lambda, Energy E,
                              bool regularized_at_zero) {
    require_admissible(lambda);
    const double sqE = E.sqrtE();
    const cplx eta0 = eta0_of(lambda, E);
    const double s0 = std::abs(eta0);
    const double rho = plan.rho;
    const double xi0 = plan.xi0;
    const double za = std::abs(z);
    const double zarg = (za > 0) ? std::arg(z) : 0.0;

    // angular tables
    const int NphiD = plan.n_phi_disk;
    const int NphiB = plan.n_phi_bulk;

    // --- the two cutoff disks -----------------------------------------------
    // combined integrand over each disk:
    //   -(2pi)^-2 * alpha(s) * [ 1/(s + sqrt(E) D(phi)) - s M ] e^{i s c(phi)}
    std::vector<double> sx, sw;
    {
        std::vector<double> bounds;
        const int half = std::max(2, plan.n_panels_disk / 2);
        for (int i = 0; i <= half; ++i) bounds.push_back(0.5 * rho * i / half);
        for (int i = 1; i <= half; ++i) bounds.push_back(0.5 * rho + 0.5 * rho * i / half);
        composite_nodes(bounds, 16, sx, sw);
    }

    cplx diskA(0, 0), diskB(0, 0);
    const double dphiD = 2.0 * pi / NphiD;
    for (int iphi = 0; iphi < NphiD; ++iphi) {
        const double phi = iphi * dphiD;
        const cplx eiphi = std::polar(1.0, phi);
        const cplx D = lambda * std::conj(eiphi) + eiphi / lambda;
        const cplx D1 = -(std::conj(eiphi) / std::conj(lambda) + std::conj(lambda) * eiphi);
        const double c = (za > 0) ? (eiphi * std::conj(z)).real() : 0.0;
        cplx accA(0, 0), accB(0, 0);
        for (size_t is = 0; is < sx.size(); ++is) {
            const double s = sx[is];
            const double a = cutoff_alpha(s, rho);
            if (a == 0.0) continue;
            const cplx osc = std::polar(1.0, s * c);
            const cplx brA = 1.0 / (s + sqE * D) - s / (1.0 + s * s);
            accA += sw[is] * a * brA * osc;
            const cplx etaB = eta0 + s * eiphi;
            const cplx brB = 1.0 / (s + sqE * D1) - s / (1.0 + std::norm(etaB));
            accB += sw[is] * a * brB * osc;
        }
        diskA += dphiD * accA;
        diskB += dphiD * accB;
    }
    const double inv4pi2 = 1.0 / (4.0 * pi * pi);
    const cplx osc0 = (za > 0) ? std::exp(cplx(0, (eta0 * std::conj(z)).real())) : cplx(1, 0);
    cplx g = -inv4pi2 * diskA - inv4pi2 * osc0 * diskB;

    // --- reference transform -------------------------------------------------
    if (regularized_at_zero)
        g += (euler_gamma - std::log(2.0)) / (2.0 * pi);
    else
        g += -bessel_k0(za) / (2.0 * pi);

    // --- bulk: beta (1/P - M) over s in [0, xi0] ------------------------------
    {
        std::vector<double> bounds{0.45 * rho};
        auto push_break = [&](double v) {
            if (v > bounds.front() && v < xi0) bounds.push_back(v);
        };
        push_break(rho);
        push_break(s0 - rho);
        push_break(s0 - 0.5 * rho);
        push_break(s0);
        push_break(s0 + 0.5 * rho);
        push_break(s0 + rho);
        bounds.push_back(xi0);
        std::sort(bounds.begin(), bounds.end());
        const double density = plan.bulk_density;
        std::vector<double> bx, bw;
        for (size_t i = 0; i + 1 < bounds.size(); ++i) {
            auto seg = split_interval(bounds[i], bounds[i + 1], density, 2);
            composite_nodes(seg, 16, bx, bw);
        }

        const double dphiB = 2.0 * pi / NphiB;
        cplx bulk(0, 0);
        std::vector<cplx> Dv(NphiB);
        std::vector<double> cv(NphiB), re_eta0(NphiB);
        for (int i = 0; i < NphiB; ++i) {
            const double phi = i * dphiB;
            const cplx eiphi = std::polar(1.0, phi);
            Dv[i] = lambda * std::conj(eiphi) + eiphi / lambda;
            cv[i] = (za > 0) ? (eiphi * std::conj(z)).real() : 0.0;
            re_eta0[i] = (eiphi * std::conj(eta0)).real();
        }
        for (size_t is = 0; is < bx.size(); ++is) {
            const double s = bx[is];
            const double a0 = cutoff_alpha(s, rho);
            cplx acc(0, 0);
            for (int i = 0; i < NphiB; ++i) {
                const double dist1_sq = s * s + s0 * s0 - 2.0 * s * re_eta0[i];
                const double beta =
                    1.0 - a0 - cutoff_alpha(std::sqrt(std::max(0.0, dist1_sq)), rho);
                if (beta == 0.0) continue;
                const cplx br = 1.0 / (s + sqE * Dv[i]) - s / (1.0 + s * s);
                acc += beta * br * std::polar(1.0, s * cv[i]);
            }
            bulk += bw[is] * dphiB * acc;
        }
        g += -inv4pi2 * bulk;
    }

    // --- analytic tail beyond xi0 --------------------------------------------
    {
        const int jmax = plan.jmax;
        cplx tail(0, 0);
        if (za > 1e-300) {
            // cache Q per (p,m)
            std::vector<std::vector<double>> Q(jmax + 1, std::vector<double>(jmax + 3, 0.0));
            for (int p = 0; p <= jmax; ++p)
                for (int m = 3; m <= jmax + 2; ++m) Q[p][m] = tail_Q(plan, p, m);

            double zpow = za;  // |z|^{m-2} starting at m=3
            for (int m = 3; m <= jmax + 2; ++m) {
                const int j = m - 2;
                cplx msum(0, 0);
                // (-sqrt(E) D)^j harmonics
                double binom = 1.0;
                for (int a = 0; a <= j; ++a) {
                    if (a > 0) binom = binom * (j - a + 1) / a;
                    const int p = j - 2 * a;
                    const cplx gamma = std::pow(cplx(-sqE, 0), j) * binom *
                                       std::pow(lambda, static_cast<double>(-p));
                    const int ap = std::abs(p);
                    cplx ip(1, 0);
                    for (int q = 0; q < ap % 4; ++q) ip *= cplx(0, 1);
                    msum += gamma * ip * std::polar(1.0, p * zarg) * Q[ap][m];
                }
                if (m % 2 == 0) {
                    const double gM = (m / 2) % 2 == 0 ? 1.0 : -1.0;
                    msum += gM * Q[0][m];
                }
                tail += zpow * msum;
                zpow *= za;
            }
        } else {
            for (int m = 3; m <= jmax + 2; ++m) {
                const int j = m - 2;
                cplx g0(0, 0);
                if (j % 2 == 0) {
                    double binom = 1.0;
                    const int a = j / 2;
                    for (int q = 1; q <= a; ++q) binom = binom * (j - q + 1) / q;
                    g0 += std::pow(cplx(-sqE, 0), j) * binom;
                }
                if (m % 2 == 0) g0 += ((m / 2) % 2 == 0 ? 1.0 : -1.0);
                tail += g0 * std::pow(xi0, 2.0 - m) / (m - 2.0);
            }
        }
        g += -(1.0 / (2.0 * pi)) * tail;
    }

    return g;
}

cplx faddeev_g_planned(const FaddeevPlan& plan, cplx z, cplx lambda, Energy E) {
    if (std::abs(z) == 0.0) throw SingularPointError("faddeev_g: z = 0");
    return faddeev_eval_core(plan, z, lambda, E, false);
}

cplx faddeev_g(cplx z, cplx lambda, Energy E) {
    if (std::abs(z) == 0.0) throw SingularPointError("faddeev_g: z = 0");
    const FaddeevPlan plan = make_faddeev_plan(z, lambda, E);
    return faddeev_eval_core(plan, z, lambda, E, false);
}

cplx faddeev_g_smooth_at_zero(cplx lambda, Energy E) {
    const FaddeevPlan plan = make_faddeev_plan(cplx(0, 0), lambda, E);
    return faddeev_eval_core(plan, cplx(0, 0), lambda, E, true);
}

// ---------------------------------------------------------------------------
// spectral-rep evaluator
//
// For fixed z, F(lambda) = (G - G+)(z, k(lambda)) has Wirtinger gradient
//   dF/dlambda = sgn(|l|^2-1)/(4 pi lambda) phi0(z,lambda)
// away from the unit circle, so F is recovered from its radial line integral
// anchored at the unit-circle limit
//   F(lambda0+-) = (i/4pi) int_{arc} phi0(z, e^{i phi}) dphi,
// where the half-arc is phi in (alpha-pi, alpha) outside the circle and
// (alpha, alpha+pi) inside, alpha = arg lambda.  Both pieces are superpositions
// of phi0(z, sigma) plane waves, which is what the table builders exploit.

PlaneWaveRep make_plane_wave_rep(cplx lambda, Energy E, double z_max) {
    require_admissible(lambda);
    PlaneWaveRep rep;
    rep.lambda = lambda;
    rep.E = E.E;
    rep.z_max = z_max;

    const double r = std::abs(lambda);
    const double alpha = std::arg(lambda);
    const int sgn = sign_ring(lambda);
    const double sqE = E.sqrtE();

    // unit-circle anchor arc
    {
        const double a = sgn > 0 ? alpha - pi : alpha;
        const double b = a + pi;
        const int panels = 2 + static_cast<int>(std::ceil(0.5 * sqE * z_max));
        std::vector<double> bounds = split_interval(a, b, panels / (b - a), panels);
        std::vector<double> px, pw;
        composite_nodes(bounds, 16, px, pw);
        for (size_t i = 0; i < px.size(); ++i) {
            rep.sigma.push_back(std::polar(1.0, px[i]));
            rep.weight.push_back(cplx(0, 1.0 / (4.0 * pi)) * pw[i]);
        }
    }

    // radial leg from the unit circle to |lambda|
    {
        const double lo = std::min(1.0, r), hi = std::max(1.0, r);
        if (hi - lo > 1e-14) {
            const double variation = 0.5 * sqE * z_max * ((hi - lo) + (1.0 / lo - 1.0 / hi));
            const int panels = 2 + static_cast<int>(std::ceil(variation / 3.0));
            std::vector<double> bounds = split_interval(lo, hi, panels / (hi - lo), panels);
            std::vector<double> px, pw;
            composite_nodes(bounds, 16, px, pw);
            const cplx eia = std::polar(1.0, alpha);
            for (size_t i = 0; i < px.size(); ++i) {
                const double t = px[i];
                const double w = pw[i] / (4.0 * pi * t);
                rep.sigma.push_back(t * eia);
                rep.weight.push_back(w);
                rep.sigma.push_back(-eia / t);
                rep.weight.push_back(w);
            }
        }
    }
    return rep;
}

cplx eval_g_minus_gplus(const PlaneWaveRep& rep, cplx d) {
    const Energy E(rep.E);
    cplx acc(0, 0);
    for (size_t m = 0; m < rep.sigma.size(); ++m)
        acc += rep.weight[m] * phi0(d, rep.sigma[m], E);
    return acc;
}

void eval_g_minus_gplus_grad(const PlaneWaveRep& rep, cplx d, cplx& ddz, cplx& ddzbar) {
    const Energy E(rep.E);
    const double sqE = E.sqrtE();
    ddz = ddzbar = cplx(0, 0);
    for (size_t m = 0; m < rep.sigma.size(); ++m) {
        const cplx ph = rep.weight[m] * phi0(d, rep.sigma[m], E);
        ddz += ph * cplx(0, 0.5 * sqE) / rep.sigma[m];
        ddzbar += ph * cplx(0, 0.5 * sqE) * rep.sigma[m];
    }
}

cplx faddeev_G(cplx z, cplx lambda, Energy E) {
    if (z == cplx(0, 0)) throw SingularPointError("faddeev_G: z = 0");
    const PlaneWaveRep rep = make_plane_wave_rep(lambda, E, std::abs(z) * 1.05);
    return eval_g_minus_gplus(rep, z) + gplus(z, E);
}

cplx faddeev_g_spectral(cplx z, cplx lambda, Energy E) {
    return faddeev_G(z, lambda, E) * phi0(z, -lambda, E);
}

// ---------------------------------------------------------------------------
// tables

namespace {

// accumulate w * phi0(d, sigma) over the tensor difference grid
void accumulate_plane_wave(const SpatialGrid& tg, Energy E, cplx sigma, cplx w,
                           std::vector<cplx>& out, std::vector<cplx>& colA,
                           std::vector<cplx>& colB) {
    const double sqE = E.sqrtE();
    const cplx u = cplx(0, 0.5 * sqE) * (sigma + 1.0 / sigma);
    const cplx v = -0.5 * sqE * (1.0 / sigma - sigma);
    const int N = tg.n;
    colA.resize(N);
    colB.resize(N);
    const double h = tg.h();
    for (int j = 0; j < N; ++j) {
        const double x = h * (j - N / 2);
        colA[j] = std::exp(u * x);
    }
    for (int k = 0; k < N; ++k) {
        const double y = h * (k - N / 2);
        colB[k] = w * std::exp(v * y);
    }
    for (int k = 0; k < N; ++k) {
        const cplx bk = colB[k];
        cplx* row = out.data() + static_cast<size_t>(k) * N;
        for (int j = 0; j < N; ++j) row[j] += bk * colA[j];
    }
}

}  // namespace

FaddeevTable build_faddeev_table(cplx lambda, Energy E, const SpatialGrid& spatial) {
    require_admissible(lambda);
    FaddeevTable tab;
    tab.lambda = lambda;
    tab.E = E.E;
    tab.grid = SpatialGrid(cplx(0, 0), 2.0 * spatial.half_width, 2 * spatial.n);
    tab.values.assign(tab.grid.size(), cplx(0, 0));

    const double z_max = 2.9 * spatial.half_width;
    const double r = std::abs(lambda);
    const double worst = 0.5 * E.sqrtE() * std::abs(r - 1.0 / r) * 1.45 * 2.0 * spatial.half_width;
    if (worst > 23.0)
        throw DomainError("faddeev table: cancellation budget exceeded; reduce |lambda| or grid extent");

    const PlaneWaveRep rep = make_plane_wave_rep(lambda, E, z_max);
    std::vector<cplx> colA, colB;
    for (size_t m = 0; m < rep.sigma.size(); ++m)
        accumulate_plane_wave(tab.grid, E, rep.sigma[m], rep.weight[m], tab.values, colA, colB);

    // add G+ and strip the e^{ikx} factor:  g = (G - G+ + G+) phi0(d, -lambda)
    const int N = tab.grid.n;
    const double sqE = E.sqrtE();
    const cplx um = cplx(0, 0.5 * sqE) * (-lambda - 1.0 / lambda);
    const cplx vm = -0.5 * sqE * (-1.0 / lambda + lambda);
    std::vector<cplx> Am(N), Bm(N);
    const double h = tab.grid.h();
    for (int j = 0; j < N; ++j) Am[j] = std::exp(um * (h * (j - N / 2)));
    for (int k = 0; k < N; ++k) Bm[k] = std::exp(vm * (h * (k - N / 2)));
    for (int k = 0; k < N; ++k) {
        for (int j = 0; j < N; ++j) {
            if (j == N / 2 && k == N / 2) continue;
            const cplx d = tab.grid.node(j, k);
            cplx& val = tab.values[tab.grid.index(j, k)];
            val = (val + gplus(d, E)) * (Am[j] * Bm[k]);
        }
    }

    // offset policy for the singular node
    tab.center_offset = cplx(0.5 * h, 0.5 * h);
    tab.values[tab.grid.index(N / 2, N / 2)] =
        eval_g_minus_gplus(rep, tab.center_offset) + gplus(tab.center_offset, E);
    tab.values[tab.grid.index(N / 2, N / 2)] *= phi0(tab.center_offset, -lambda, E);
    return tab;
}

GplusTable build_gplus_table(Energy E, const SpatialGrid& spatial) {
    GplusTable tab;
    tab.E = E.E;
    tab.grid = SpatialGrid(cplx(0, 0), 2.0 * spatial.half_width, 2 * spatial.n);
    tab.values.assign(tab.grid.size(), cplx(0, 0));
    const int N = tab.grid.n;
    for (int k = 0; k < N; ++k)
        for (int j = 0; j < N; ++j) {
            if (j == N / 2 && k == N / 2) continue;
            tab.values[tab.grid.index(j, k)] = gplus(tab.grid.node(j, k), E);
        }
    const double h = tab.grid.h();
    tab.values[tab.grid.index(N / 2, N / 2)] = gplus(cplx(0.5 * h, 0.5 * h), E);
    // lim G+ - ln/2pi:  -i/4 + (ln(sqrt(E)/2) + gamma)/(2 pi)
    tab.smooth_at_zero = cplx(0, -0.25) +
                         (std::log(0.5 * E.sqrtE()) + euler_gamma) / (2.0 * pi);
    return tab;
}

// ---------------------------------------------------------------------------
// identity checkers

namespace {

void require_stencil(cplx lambda, double step) {
    const cplx pts[4] = {lambda + step, lambda - step, lambda + cplx(0, step),
                         lambda - cplx(0, step)};
    const int side = sign_ring(lambda);
    for (const cplx& p : pts) {
        if (std::abs(p) < 1e-9) throw DomainError("dbar stencil touches lambda = 0");
        if (sign_ring(p) != side || std::abs(std::abs(p) - 1.0) < 1e-9)
            throw DomainError("dbar stencil crosses the unit circle");
    }
}

}  // namespace

double check_dbar_identity(cplx z, cplx lambda, Energy E, double step) {
    require_stencil(lambda, step);
    const FaddeevPlan plan = make_faddeev_plan(z, lambda, E, 2.0);
    auto G = [&](cplx lam) {
        return faddeev_g_planned(plan, z, lam, E) * phi0(z, lam, E);
    };
    const cplx fd = ((G(lambda + step) - G(lambda - step)) +
                     cplx(0, 1) * (G(lambda + cplx(0, step)) - G(lambda - cplx(0, step)))) /
                    (4.0 * step);
    const cplx rhs = double(sign_ring(lambda)) / (4.0 * pi * std::conj(lambda)) *
                     std::conj(phi0(z, lambda, E));
    return std::abs(fd - rhs);
}

double check_dbar_identity_conj(cplx z, cplx lambda, Energy E, double step) {
    require_stencil(lambda, step);
    const FaddeevPlan plan = make_faddeev_plan(z, lambda, E, 2.0);
    auto G = [&](cplx lam) {
        return faddeev_g_planned(plan, z, lam, E) * phi0(z, lam, E);
    };
    const cplx fd = ((G(lambda + step) - G(lambda - step)) -
                     cplx(0, 1) * (G(lambda + cplx(0, step)) - G(lambda - cplx(0, step)))) /
                    (4.0 * step);
    const cplx rhs = double(sign_ring(lambda)) / (4.0 * pi * lambda) * phi0(z, lambda, E);
    return std::abs(fd - rhs);
}

}  // namespace dbar::greens
