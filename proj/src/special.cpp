#include "dbar/special.hpp"

#include <cmath>

#include "dbar/util.hpp"

namespace dbar {

namespace {

// Hankel asymptotic sum S_n(x) = sum_k i^k a_k(n) / x^k with
// a_k(n) = prod_{j<=k} (4n^2 - (2j-1)^2) / (k! 8^k), truncated at the
// smallest term.
cplx hankel_asymptotic_sum(int n, double x) {
    const double fourn2 = 4.0 * n * n;
    cplx sum(1.0, 0.0);
    double ak = 1.0;
    cplx ipow(1.0, 0.0);
    double prev = 1e300;
    for (int k = 1; k < 60; ++k) {
        const double num = fourn2 - (2.0 * k - 1.0) * (2.0 * k - 1.0);
        ak *= num / (8.0 * k);
        ipow *= cplx(0.0, 1.0);
        const double mag = std::abs(ak) / std::pow(x, k);
        if (mag >= prev || mag < 1e-18) break;
        sum += ipow * ak / std::pow(x, k);
        prev = mag;
    }
    return sum;
}

cplx hankel_asymptotic(int n, double x) {
    const double phase = x - 0.5 * n * pi - 0.25 * pi;
    return std::sqrt(2.0 / (pi * x)) * std::exp(cplx(0.0, phase)) *
           hankel_asymptotic_sum(n, x);
}

}  // namespace

double bessel_j0(double x) {
    x = std::abs(x);
    if (x >= bessel_seam) return hankel_asymptotic(0, x).real();
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int m = 1; m < 80; ++m) {
        term *= -q / (static_cast<double>(m) * m);
        sum += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

double bessel_j1(double x) {
    const double ax = std::abs(x);
    if (ax >= bessel_seam) {
        const double v = hankel_asymptotic(1, ax).real();
        return x < 0 ? -v : v;
    }
    const double q = 0.25 * x * x;
    double term = 0.5 * x, sum = term;
    for (int m = 1; m < 80; ++m) {
        term *= -q / (static_cast<double>(m) * (m + 1));
        sum += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

double bessel_y0(double x) {
    if (!(x > 0)) throw DomainError("bessel_y0: x must be positive");
    if (x >= bessel_seam) return hankel_asymptotic(0, x).imag();
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 0.0, harmonic = 0.0;
    for (int m = 1; m < 80; ++m) {
        term *= -q / (static_cast<double>(m) * m);
        harmonic += 1.0 / m;
        sum += -term * harmonic;  // (-1)^{m+1} H_m q^m/(m!)^2
        if (std::abs(term) < 1e-18) break;
    }
    return (2.0 / pi) * ((std::log(0.5 * x) + euler_gamma) * bessel_j0(x) + sum);
}

double bessel_y1(double x) {
    if (!(x > 0)) throw DomainError("bessel_y1: x must be positive");
    if (x >= bessel_seam) return hankel_asymptotic(1, x).imag();
    const double q = 0.25 * x * x;
    // sum_k (-1)^k (H_k + H_{k+1}) q^k / (k!(k+1)!) * (x/2)
    double term = 0.5 * x, hk = 0.0, hk1 = 1.0, sum = term * (hk + hk1);
    for (int k = 1; k < 80; ++k) {
        term *= -q / (static_cast<double>(k) * (k + 1));
        hk += 1.0 / k;
        hk1 += 1.0 / (k + 1);
        sum += term * (hk + hk1);
        if (std::abs(term) < 1e-18) break;
    }
    return (2.0 / pi) * (std::log(0.5 * x) + euler_gamma) * bessel_j1(x) -
           2.0 / (pi * x) - sum / pi;
}

double bessel_k0(double x) {
    if (!(x > 0)) throw DomainError("bessel_k0: x must be positive");
    if (x >= 9.0) {
        // K0 ~ sqrt(pi/2x) e^{-x} [1 - 1/(8x) + 9/(2!(8x)^2) - ...]
        double term = 1.0, sum = 1.0, prev = 1e300;
        for (int k = 1; k < 40; ++k) {
            term *= -((2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * x * k);
            if (std::abs(term) >= prev || std::abs(term) < 1e-18) break;
            sum += term;
            prev = std::abs(term);
        }
        return std::sqrt(0.5 * pi / x) * std::exp(-x) * sum;
    }
    const double q = 0.25 * x * x;
    double term = 1.0, i0 = 1.0, harmonic = 0.0, sum = 0.0;
    for (int m = 1; m < 80; ++m) {
        term *= q / (static_cast<double>(m) * m);
        i0 += term;
        harmonic += 1.0 / m;
        sum += term * harmonic;
        if (term < 1e-18 * i0) break;
    }
    return -(std::log(0.5 * x) + euler_gamma) * i0 + sum;
}

cplx hankel0(double x) {
    if (!(x > 0)) throw SingularPointError("hankel0: x must be positive");
    if (x >= bessel_seam) return hankel_asymptotic(0, x);
    return cplx(bessel_j0(x), bessel_y0(x));
}

cplx hankel1(double x) {
    if (!(x > 0)) throw SingularPointError("hankel1: x must be positive");
    if (x >= bessel_seam) return hankel_asymptotic(1, x);
    return cplx(bessel_j1(x), bessel_y1(x));
}

double bessel_jn(int p, double x) {
    if (p < 0) throw DomainError("bessel_jn: order must be >= 0");
    if (p == 0) return bessel_j0(x);
    if (p == 1) return bessel_j1(x);
    // (1/pi) int_0^pi cos(p t - x sin t) dt, composite 16-point Gauss panels
    const int panels = 2 + static_cast<int>((p + std::abs(x)) / 5.0);
    const QuadRule& q = gauss_legendre(16);
    double acc = 0.0;
    for (int pn = 0; pn < panels; ++pn) {
        const double a = pi * pn / panels, b = pi * (pn + 1) / panels;
        const double c = 0.5 * (a + b), s = 0.5 * (b - a);
        for (size_t i = 0; i < q.x.size(); ++i) {
            const double t = c + s * q.x[i];
            acc += s * q.w[i] * std::cos(p * t - x * std::sin(t));
        }
    }
    return acc / pi;
}

}  // namespace dbar
