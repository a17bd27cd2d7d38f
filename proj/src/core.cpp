#include <cmath>

#include "dbar/types.hpp"

namespace dbar {

bool all_finite(const std::vector<cplx>& v) {
    for (const auto& x : v)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
}

double Potential::lp_norm() const {
    const double h2 = field.grid.h() * field.grid.h();
    double acc = 0.0;
    for (const auto& x : field.values) acc += std::pow(std::abs(x.real()), p);
    return std::pow(h2 * acc, 1.0 / p);
}

double Potential::linf_norm() const {
    double m = 0.0;
    for (const auto& x : field.values) m = std::max(m, std::abs(x.real()));
    return m;
}

bool Potential::is_zero() const {
    for (const auto& x : field.values)
        if (x.real() != 0.0) return false;
    return true;
}

LambdaGrid::LambdaGrid(double A_, double Rmax, int nplane, int nring)
    : A(A_), R_max(Rmax), lambda_min(1.0 / Rmax), n_plane(nplane), n_ring(nring) {
    if (!(A > 1.0)) throw DomainError("LambdaGrid: A must exceed 1");
    if (!(R_max >= 2.0 * A)) throw DomainError("LambdaGrid: R_max must be at least 2A");
    if (n_ring % 2 != 0) throw DomainError("LambdaGrid: ring node count must be even");

    outer = Circle{cplx(0, 0), A, +1, n_ring};
    inner = Circle{cplx(0, 0), 1.0 / A, -1, n_ring};

    nodes.resize(plane_size());
    active.assign(plane_size(), 0);
    const double hh = h();
    for (int k = 0; k < n_plane; ++k) {
        for (int j = 0; j < n_plane; ++j) {
            const cplx lam(hh * (j - n_plane / 2 + 0.5), hh * (k - n_plane / 2 + 0.5));
            const size_t idx = static_cast<size_t>(k) * n_plane + j;
            nodes[idx] = lam;
            const double r = std::abs(lam);
            const bool masked = r < lambda_min || r > R_max || (r > 1.0 / A && r < A);
            active[idx] = masked ? 0 : 1;
            if (!masked) active_idx.push_back(idx);
        }
    }
}

}  // namespace dbar
