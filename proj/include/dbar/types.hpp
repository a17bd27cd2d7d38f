#pragma once

// Core domain types shared by every stage of the pipeline: spatial grids and
// fields for functions of z, the spectral (lambda-plane) grid with the ring
// mask, boundary traces on circles, and the basic exponentials phi0 / e0 of
// the scattering problem at fixed positive energy E.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dbar {

using cplx = std::complex<double>;
using std::size_t;

constexpr double pi = 3.14159265358979323846;
constexpr double euler_gamma = 0.57721566490153286061;

// ---------------------------------------------------------------------------
// errors

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct SingularPointError : std::domain_error {
    using std::domain_error::domain_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BranchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Lippmann-Schwinger system numerically singular at some lambda.
struct ExceptionalPointError : std::runtime_error {
    cplx lambda;
    double sigma_min;
    ExceptionalPointError(cplx lam, double smin, const std::string& what)
        : std::runtime_error(what), lambda(lam), sigma_min(smin) {}
};

// Discretized I + T_z singular or badly conditioned (thin non-generic set).
struct NonGenericError : std::runtime_error {
    double cond_estimate;
    NonGenericError(double cond, const std::string& what)
        : std::runtime_error(what), cond_estimate(cond) {}
};

struct EigenvalueCollisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnstableQuotientError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// energy

struct Energy {
    double E = 1.0;
    explicit Energy(double e) : E(e) {
        if (!(e > 0.0)) throw DomainError("Energy must be positive");
    }
    double sqrtE() const { return std::sqrt(E); }
};

// ---------------------------------------------------------------------------
// spatial grid: n x n nodes z_{jk} = center + h*(j - n/2) + i*h*(k - n/2),
// h = 2*half_width/n.  Row-major storage with index = k*n + j.

struct SpatialGrid {
    cplx center{0.0, 0.0};
    double half_width = 1.0;
    int n = 64;

    SpatialGrid() = default;
    SpatialGrid(cplx c, double hw, int n_) : center(c), half_width(hw), n(n_) {
        if (n < 8 || (n & (n - 1)) != 0)
            throw DomainError("SpatialGrid: n must be a power of two, n >= 8");
        if (!(hw > 0.0)) throw DomainError("SpatialGrid: half_width must be positive");
    }

    double h() const { return 2.0 * half_width / n; }
    size_t size() const { return static_cast<size_t>(n) * n; }
    size_t index(int j, int k) const { return static_cast<size_t>(k) * n + j; }
    cplx node(int j, int k) const {
        const double hh = h();
        return center + cplx(hh * (j - n / 2), hh * (k - n / 2));
    }
    bool same_as(const SpatialGrid& o) const {
        return n == o.n && center == o.center && half_width == o.half_width;
    }
};

struct SpatialField {
    SpatialGrid grid;
    std::vector<cplx> values;

    SpatialField() = default;
    explicit SpatialField(const SpatialGrid& g, cplx fill = cplx(0, 0))
        : grid(g), values(g.size(), fill) {}

    cplx& at(int j, int k) { return values[grid.index(j, k)]; }
    const cplx& at(int j, int k) const { return values[grid.index(j, k)]; }
};

bool all_finite(const std::vector<cplx>& v);

// Real potential with compact support: imaginary parts identically zero,
// values vanish outside |z - grid.center-ish support disk|.  p is the
// Lebesgue exponent used for norm reporting only.
struct Potential {
    SpatialField field;
    double support_radius = 1.0;
    cplx support_center{0.0, 0.0};
    double p = 2.0;

    double lp_norm() const;      // (sum h^2 |v|^p)^(1/p)
    double linf_norm() const;
    bool is_zero() const;
};

// ---------------------------------------------------------------------------
// circle + boundary trace

struct Circle {
    cplx center{0.0, 0.0};
    double radius = 1.0;
    int orientation = +1;  // +1 counterclockwise, -1 clockwise
    int n_nodes = 128;

    double theta(int j) const { return 2.0 * pi * j / n_nodes; }
    cplx node(int j) const {
        const double t = theta(j);
        return center + radius * cplx(std::cos(t), std::sin(t));
    }
    // complex line element d(varsigma) at node j for the trapezoid rule
    cplx dnode(int j) const {
        const double t = theta(j);
        const double dt = 2.0 * pi / n_nodes;
        return cplx(0, 1) * radius * cplx(std::cos(t), std::sin(t)) *
               (orientation > 0 ? dt : -dt);
    }
    double dl() const { return 2.0 * pi * radius / n_nodes; }
    cplx unit_normal(int j) const {  // outward from the circle's center
        const double t = theta(j);
        return cplx(std::cos(t), std::sin(t));
    }
    bool same_as(const Circle& o) const {
        return center == o.center && radius == o.radius &&
               orientation == o.orientation && n_nodes == o.n_nodes;
    }
};

struct BoundaryTrace {
    Circle circle;
    std::vector<cplx> values;

    BoundaryTrace() = default;
    explicit BoundaryTrace(const Circle& c, cplx fill = cplx(0, 0))
        : circle(c), values(c.n_nodes, fill) {}
};

// ---------------------------------------------------------------------------
// spectral grid on the lambda plane.
//
// Square grid of cell centers on [-R_max, R_max]^2 with three masks: the ring
// D = { 1/A < |lambda| < A } (no solvability guarantee there), the punctured
// origin |lambda| < lambda_min = 1/R_max, and the outer cut |lambda| > R_max.
// Plus 2*n_ring quadrature nodes on the two circles of dD, oriented so that D
// stays on the left (outer CCW, inner CW).

struct LambdaGrid {
    double A = 1.5;
    double R_max = 6.0;
    double lambda_min = 1.0 / 6.0;
    int n_plane = 64;
    int n_ring = 64;

    std::vector<cplx> nodes;       // all n_plane^2 cell centers
    std::vector<uint8_t> active;   // 1 if node participates (outside masks)
    std::vector<size_t> active_idx;

    Circle outer;  // radius A, CCW
    Circle inner;  // radius 1/A, CW

    LambdaGrid() = default;
    LambdaGrid(double A_, double Rmax, int nplane, int nring);

    double h() const { return 2.0 * R_max / n_plane; }
    size_t plane_size() const { return static_cast<size_t>(n_plane) * n_plane; }
    int ring_size() const { return 2 * n_ring; }  // outer nodes then inner nodes

    cplx ring_node(int m) const {
        return m < n_ring ? outer.node(m) : inner.node(m - n_ring);
    }
    // complex measure d(varsigma) with the D-on-the-left orientation
    cplx ring_dnode(int m) const {
        return m < n_ring ? outer.dnode(m) : inner.dnode(m - n_ring);
    }
    bool in_ring_closure(cplx lam, double pad = 0.0) const {
        const double r = std::abs(lam);
        return r > 1.0 / A - pad && r < A + pad;
    }
};

// ---------------------------------------------------------------------------
// fixed-energy exponentials
//
//   phi0(z,lambda) = exp(i*sqrt(E)/2 * (lambda*conj(z) + z/lambda)) = e^{ikx}
//   e0(z,lambda)   = phi0(z,-lambda) * phi0(z,-1/conj(lambda)),  |e0| = 1

inline cplx phi0(cplx z, cplx lambda, Energy E) {
    if (lambda == cplx(0, 0)) throw DomainError("phi0: lambda = 0");
    const cplx arg = cplx(0, 0.5 * E.sqrtE()) * (lambda * std::conj(z) + z / lambda);
    return std::exp(arg);
}

inline cplx e0(cplx z, cplx lambda, Energy E) {
    if (lambda == cplx(0, 0)) throw DomainError("e0: lambda = 0");
    return phi0(z, -lambda, E) * phi0(z, -1.0 / std::conj(lambda), E);
}

// k(lambda): lambda = (k1 + i k2)/sqrt(E), k1^2 + k2^2 = E
inline std::pair<cplx, cplx> k_of_lambda(cplx lambda, Energy E) {
    if (lambda == cplx(0, 0)) throw DomainError("k_of_lambda: lambda = 0");
    const double s = 0.5 * E.sqrtE();
    return {s * (lambda + 1.0 / lambda), cplx(0, 1) * s * (1.0 / lambda - lambda)};
}

inline int sign_ring(cplx lambda) {  // sgn(|lambda|^2 - 1)
    return std::norm(lambda) > 1.0 ? +1 : -1;
}

}  // namespace dbar
