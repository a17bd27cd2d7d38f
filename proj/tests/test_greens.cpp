#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dbar/greens.hpp"
#include "dbar/special.hpp"
#include "oracles.hpp"

using namespace dbar;
using namespace dbar::greens;

TEST_CASE("symbol P vanishes exactly at eta0") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    for (int i = 0; i < 60; ++i) {
        cplx lam(u(rng), u(rng));
        const double r = std::abs(lam);
        if (r < 0.1 || std::abs(r - 1.0) < 0.05) continue;
        const Energy E(0.5 + std::abs(u(rng)));
        CHECK(std::abs(symbol_P(eta0_of(lam, E), lam, E)) < 1e-12);
        CHECK(std::abs(symbol_P(cplx(0, 0), lam, E)) < 1e-15);
    }
}

TEST_CASE("gplus small-argument log behavior and J0 imaginary part") {
    const Energy E(1);
    // Im G+ = -J0(|z| sqrt(E)) / 4, even and entire
    for (double r : {0.05, 0.4, 1.3, 3.7}) {
        const cplx g = gplus(cplx(r, 0), E);
        CHECK(std::abs(g.imag() + 0.25 * bessel_j0(r)) < 1e-13);
    }
    // G+ ~ ln|z|/(2 pi) + O(1) for small |z| sqrt(E)
    const double r1 = 1e-4, r2 = 2e-4;
    const cplx d = gplus(cplx(r2, 0), E) - gplus(cplx(r1, 0), E);
    CHECK(std::abs(d.real() - std::log(r2 / r1) / (2 * pi)) < 1e-7);
}

TEST_CASE("fourier-split vs spectral-rep agree pointwise") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    while (checked < 14) {
        const double r = u(rng) < 0.5 ? 0.15 + 0.3 * u(rng) : 2.2 + 3.0 * u(rng);
        const double a = 2 * pi * u(rng);
        const cplx lam = std::polar(r, a);
        const cplx z = std::polar(0.2 + 2.3 * u(rng), 2 * pi * u(rng));
        const Energy E(0.5 + 1.5 * u(rng));
        const cplx g1 = faddeev_g(z, lam, E);
        const cplx g2 = faddeev_g_spectral(z, lam, E);
        INFO("lam=", lam, " z=", z, " E=", E.E, " g1=", g1, " g2=", g2);
        CHECK(std::abs(g1 - g2) < 2e-7);
        ++checked;
    }
}

TEST_CASE("faddeev g matches the brute-force oracle at the reference point") {
    const Energy E(1);
    const cplx z(0.5, 0.0), lam(3.0, 0.0);
    const cplx ref = oracle::faddeev_g_bruteforce(z, lam, E);
    const cplx g1 = faddeev_g(z, lam, E);
    const cplx g2 = faddeev_g_spectral(z, lam, E);
    INFO("oracle=", ref, " fourier=", g1, " spectral=", g2);
    CHECK(std::abs(g1 - ref) < 5e-5);
    CHECK(std::abs(g2 - ref) < 5e-5);
}

TEST_CASE("faddeev g oracle agreement at a second admissible point") {
    const Energy E(2);
    const cplx z(0.8, 0.3), lam(0.25, -0.2);
    const cplx ref = oracle::faddeev_g_bruteforce(z, lam, E);
    const cplx g1 = faddeev_g(z, lam, E);
    INFO("oracle=", ref, " fourier=", g1);
    CHECK(std::abs(g1 - ref) < 5e-5);
}

TEST_CASE("scaling identity g(z,k) = g(z|k|, k/|k|)") {
    // |k|^2 = E/2 (|l|^2 + 1/|l|^2); rescaling sends (z, E) -> (z |k|, E/|k|^2)
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 8; ++i) {
        const double r = 2.3 + 2.0 * u(rng);
        const cplx lam = std::polar(r, 2 * pi * u(rng));
        const cplx z = std::polar(0.3 + 1.2 * u(rng), 2 * pi * u(rng));
        const Energy E(0.7 + u(rng));
        const double k2 = 0.5 * E.E * (r * r + 1.0 / (r * r));
        const double kn = std::sqrt(k2);
        const cplx a = faddeev_g(z, lam, E);
        const cplx b = faddeev_g(z * kn, lam, Energy(E.E / k2));
        INFO("lam=", lam, " z=", z, " E=", E.E, " a=", a, " b=", b);
        CHECK(std::abs(a - b) < 1e-6);
    }
}

TEST_CASE("green function symmetry G(z,k(lambda)) = G(z,k(-1/conj(lambda)))") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 8; ++i) {
        const double r = 2.0 + 3.0 * u(rng);
        const cplx lam = std::polar(r, 2 * pi * u(rng));
        const cplx z = std::polar(0.3 + 1.5 * u(rng), 2 * pi * u(rng));
        const Energy E(1);
        const cplx G1 = faddeev_g(z, lam, E) * phi0(z, lam, E);
        const cplx lam2 = -1.0 / std::conj(lam);
        const cplx G2 = faddeev_g(z, lam2, E) * phi0(z, lam2, E);
        INFO("lam=", lam, " z=", z, " G1=", G1, " G2=", G2);
        CHECK(std::abs(G1 - G2) < 1e-6);
    }
}

TEST_CASE("G is real valued") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        const double r = u(rng) < 0.5 ? 0.2 + 0.25 * u(rng) : 2.1 + 2.5 * u(rng);
        const cplx lam = std::polar(r, 2 * pi * u(rng));
        const cplx z = std::polar(0.2 + 1.6 * u(rng), 2 * pi * u(rng));
        const cplx G = faddeev_G(z, lam, Energy(1.3));
        CHECK(std::abs(G.imag()) < 2e-8);
    }
}

TEST_CASE("dbar identity in the spectral parameter") {
    const Energy E(1);
    // second-order convergence in the stencil width
    const cplx z(1.0, 0.4), lam(3.0, 0.0);
    const double r1 = check_dbar_identity(z, lam, E, 0.08);
    const double r2 = check_dbar_identity(z, lam, E, 0.04);
    const double r3 = check_dbar_identity(z, lam, E, 0.02);
    const double order12 = std::log2(r1 / r2);
    const double order23 = std::log2(r2 / r3);
    INFO("residuals ", r1, " ", r2, " ", r3, " orders ", order12, " ", order23);
    CHECK(order12 > 1.6);
    CHECK(order12 < 2.4);
    CHECK(order23 > 1.5);
    CHECK(order23 < 2.5);
    // small-step residual
    CHECK(check_dbar_identity(z, lam, E, 1e-3) < 1e-3);
    // conjugate identity at the same points
    CHECK(check_dbar_identity_conj(z, lam, E, 1e-3) < 1e-3);
    // inner ray
    CHECK(check_dbar_identity(cplx(0.7, -0.2), cplx(0.21, 0.21), E, 1e-3) < 1e-3);
    // stencil guards
    CHECK_THROWS_AS(check_dbar_identity(z, cplx(1.0005, 0), E, 1e-3), DomainError);
}

TEST_CASE("decay envelope with one fitted constant") {
    // spot version of the acceptance sweep: fit C on one sample set, verify on
    // another; tau = |z| sqrt(E) (|l| + 1/|l|)
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto sample = [&](int n, std::vector<std::pair<double, double>>& out) {
        for (int i = 0; i < n; ++i) {
            const double tau = std::exp(std::log(0.02) + u(rng) * std::log(60.0 / 0.02));
            const double r = 2.05 + 3.0 * u(rng);
            const Energy E(1);
            const double lp = r + 1.0 / r;
            const double za = tau / lp;
            const cplx lam = std::polar(r, 2 * pi * u(rng));
            const cplx z = std::polar(za, 2 * pi * u(rng));
            const double mag = std::abs(faddeev_g(z, lam, E));
            out.emplace_back(tau, mag);
        }
    };
    std::vector<std::pair<double, double>> cal, ver;
    sample(25, cal);
    sample(25, ver);
    double C = 0;
    for (auto& [tau, mag] : cal) C = std::max(C, mag / envelope_f(tau));
    C *= 1.05;
    for (auto& [tau, mag] : ver) CHECK(mag <= C * envelope_f(tau));
    CHECK(C < 10.0);
}

TEST_CASE("faddeev table matches pointwise evaluation") {
    const SpatialGrid grid(cplx(0, 0), 1.2, 16);
    const Energy E(1);
    const cplx lam(2.5, 1.1);
    const FaddeevTable tab = build_faddeev_table(lam, E, grid);
    REQUIRE(tab.grid.n == 32);
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<int> pick(0, 31);
    for (int t = 0; t < 12; ++t) {
        const int j = pick(rng), k = pick(rng);
        if (j == 16 && k == 16) continue;
        const cplx d = tab.grid.node(j, k);
        const cplx direct = faddeev_g(d, lam, E);
        CHECK(std::abs(tab.values[tab.grid.index(j, k)] - direct) < 3e-7);
    }
    // center node carries the half-offset sample
    const cplx off = tab.center_offset;
    CHECK(std::abs(tab.values[tab.grid.index(16, 16)] - faddeev_g(off, lam, E)) < 5e-8);
}

TEST_CASE("table respects conjugation symmetry for real lambda") {
    // for real lambda, eta -> conj(eta) in the defining integral gives
    // g(conj d) = conj(g(-d)); checked here at mirrored table nodes and once
    // against the brute-force oracle
    const SpatialGrid grid(cplx(0, 0), 1.0, 16);
    const Energy E(1);
    const cplx lam(2.7, 0);
    const FaddeevTable tab = build_faddeev_table(lam, E, grid);
    const int N = tab.grid.n;
    for (int k = 1; k < N; ++k)
        for (int j = 1; j < N; ++j) {
            if ((j == N / 2 && k == N / 2) || (N - j == N / 2 && N - k == N / 2)) continue;
            const cplx at_conj_d = tab.values[tab.grid.index(j, N - k)];
            const cplx at_minus_d = tab.values[tab.grid.index(N - j, N - k)];
            CHECK(std::abs(at_conj_d - std::conj(at_minus_d)) < 1e-12);
        }
    const cplx d(0.35, 0.15);
    const cplx g1 = faddeev_g(std::conj(d), lam, E);
    const cplx g2 = oracle::faddeev_g_bruteforce(-d, lam, E);
    CHECK(std::abs(g1 - std::conj(g2)) < 5e-5);
}

TEST_CASE("envelope scale drops when |lambda|+1/|lambda| doubles") {
    const SpatialGrid grid(cplx(0, 0), 1.0, 16);
    const Energy E(1);
    auto sup_on_annulus = [&](cplx lam) {
        const FaddeevTable tab = build_faddeev_table(lam, E, grid);
        double s = 0;
        for (int k = 0; k < tab.grid.n; ++k)
            for (int j = 0; j < tab.grid.n; ++j) {
                const cplx d = tab.grid.node(j, k);
                const double r = std::abs(d);
                if (r > 0.7 && r < 1.4) s = std::max(s, std::abs(tab.values[tab.grid.index(j, k)]));
            }
        return s;
    };
    const double s1 = sup_on_annulus(cplx(2.5, 0));
    const double s2 = sup_on_annulus(cplx(5.1, 0));  // |l|+1/|l| roughly doubles
    CHECK(s2 < s1);
}

TEST_CASE("smooth part of g at zero ties the two engines together") {
    const Energy E(1);
    const cplx lam(2.2, -0.7);
    const cplx s0 = faddeev_g_smooth_at_zero(lam, E);
    // compare against g(z) - ln|z|/2pi at a small z (finite-size error ~ |z| ln)
    const cplx z(3e-4, 2e-4);
    const cplx approx = faddeev_g_spectral(z, lam, E) - std::log(std::abs(z)) / (2 * pi);
    CHECK(std::abs(s0 - approx) < 5e-3);
}
