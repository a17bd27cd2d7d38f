#pragma once

// Small numeric utilities: deterministic parallel map, Gauss-Legendre rules,
// matrix-free GMRES over real or complex vectors.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "dbar/types.hpp"

namespace dbar {

// Deterministic parallel loop: each index writes only its own outputs, chunks
// are contiguous, so results are identical for any thread count.
void parallel_for(size_t n, const std::function<void(size_t)>& body);
void set_thread_count(int threads);  // 0 = hardware concurrency
int thread_count();

// Gauss-Legendre nodes/weights on [-1,1], cached per order.
struct QuadRule {
    std::vector<double> x, w;
};
const QuadRule& gauss_legendre(int order);

// map a rule to [a,b]
inline void gl_map(const QuadRule& q, double a, double b,
                   std::vector<double>& x, std::vector<double>& w) {
    const double c = 0.5 * (a + b), s = 0.5 * (b - a);
    x.resize(q.x.size());
    w.resize(q.w.size());
    for (size_t i = 0; i < q.x.size(); ++i) {
        x[i] = c + s * q.x[i];
        w[i] = s * q.w[i];
    }
}

// integral of ln|z| over the square cell [-h/2,h/2]^2
double cell_log_integral(double h);

// upper incomplete gamma Gamma(s, x), s > 0, x >= 0
double upper_incomplete_gamma(double s, double x);

// ---------------------------------------------------------------------------
// GMRES, matrix-free, modified Gram-Schmidt, restarted.

struct GmresResult {
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;   // relative to |b|
};

template <class Vec>
struct GmresOps;  // dot, axpy, scale, norm per vector flavour

GmresResult gmres_complex(const std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>& apply,
                          const std::vector<cplx>& b, std::vector<cplx>& x,
                          int restart, int max_iter, double tol);

GmresResult gmres_real(const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
                       const std::vector<double>& b, std::vector<double>& x,
                       int restart, int max_iter, double tol);

// Smallest-singular-value estimate of the matrix-free operator A (square,
// complex) by a few rounds of inverse power iteration on A^H A executed with
// inner GMRES solves.  Rough (one digit) but cheap; used for diagnostics.
double estimate_sigma_min(const std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>& apply,
                          const std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>& apply_adj,
                          size_t dim, int rounds = 3, unsigned seed = 7);

}  // namespace dbar
