#include "dbar/util.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <random>
#include <thread>

namespace dbar {

namespace {
int g_threads = 0;
}

void set_thread_count(int threads) { g_threads = threads; }

int thread_count() {
    if (g_threads > 0) return g_threads;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(size_t n, const std::function<void(size_t)>& body) {
    const int nt = std::min<size_t>(thread_count(), n);
    if (nt <= 1) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const size_t chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        const size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------

namespace {

QuadRule make_gl(int order) {
    // Newton on Legendre polynomials, standard.
    QuadRule q;
    q.x.resize(order);
    q.w.resize(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(pi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.x[i] = -x;
        q.x[order - 1 - i] = x;
        q.w[i] = q.w[order - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return q;
}

std::mutex g_gl_mutex;
std::map<int, QuadRule> g_gl_cache;

}  // namespace

const QuadRule& gauss_legendre(int order) {
    std::lock_guard<std::mutex> lock(g_gl_mutex);
    auto it = g_gl_cache.find(order);
    if (it == g_gl_cache.end()) it = g_gl_cache.emplace(order, make_gl(order)).first;
    return it->second;
}

double cell_log_integral(double h) {
    // By 8-fold symmetry reduce to the wedge |y| <= x, x in [0, 1/2] where the
    // radial part has the closed form  int_0^R ln(r) r dr = R^2/2 (ln R - 1/2).
    static const double c0 = [] {
        const QuadRule& q = gauss_legendre(48);
        double acc = 0.0;
        for (size_t i = 0; i < q.x.size(); ++i) {
            const double phi = 0.25 * pi * (0.5 * (q.x[i] + 1.0));
            const double R = 0.5 / std::cos(phi);
            acc += 0.25 * pi * 0.5 * q.w[i] * (0.5 * R * R * (std::log(R) - 0.5));
        }
        return 8.0 * acc;
    }();
    return h * h * (std::log(h) + c0);
}

double upper_incomplete_gamma(double s, double x) {
    if (x < 0.0 || s <= 0.0) throw DomainError("upper_incomplete_gamma: bad arguments");
    if (x == 0.0) return std::tgamma(s);
    if (x < s + 1.0) {
        // lower series, subtract from Gamma(s)
        double sum = 1.0 / s, term = sum;
        for (int k = 1; k < 500; ++k) {
            term *= x / (s + k);
            sum += term;
            if (std::abs(term) < 1e-16 * std::abs(sum)) break;
        }
        return std::tgamma(s) - sum * std::exp(-x + s * std::log(x));
    }
    // Lentz continued fraction
    const double tiny = 1e-300;
    double b = x + 1.0 - s, c = 1.0 / tiny, d = 1.0 / b, f = d;
    for (int k = 1; k < 500; ++k) {
        const double an = -k * (k - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + s * std::log(x)) * f;
}

// ---------------------------------------------------------------------------
// GMRES over a generic field with dot/norm helpers

namespace {

template <class T>
struct VecOps;

template <>
struct VecOps<cplx> {
    static cplx dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
        cplx s(0, 0);
        for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
        return s;
    }
    static double abs2(cplx v) { return std::norm(v); }
    static cplx conj_of(cplx v) { return std::conj(v); }
};

template <>
struct VecOps<double> {
    static double dot(const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0;
        for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    }
    static double abs2(double v) { return v * v; }
    static double conj_of(double v) { return v; }
};

template <class T>
GmresResult gmres_impl(const std::function<void(const std::vector<T>&, std::vector<T>&)>& apply,
                       const std::vector<T>& b, std::vector<T>& x,
                       int restart, int max_iter, double tol) {
    using Ops = VecOps<T>;
    const size_t n = b.size();
    GmresResult res;
    if (x.size() != n) x.assign(n, T(0));

    double bnorm = 0;
    for (auto& v : b) bnorm += Ops::abs2(v);
    bnorm = std::sqrt(bnorm);
    if (bnorm == 0.0) {
        x.assign(n, T(0));
        res.converged = true;
        return res;
    }

    std::vector<T> r(n), w(n);
    int total_it = 0;
    while (total_it < max_iter) {
        // r = b - A x
        apply(x, r);
        for (size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
        double beta = 0;
        for (auto& v : r) beta += Ops::abs2(v);
        beta = std::sqrt(beta);
        res.residual = beta / bnorm;
        if (res.residual < tol) {
            res.converged = true;
            return res;
        }

        const int m = std::min<int>(restart, max_iter - total_it);
        std::vector<std::vector<T>> V;
        V.reserve(m + 1);
        std::vector<std::vector<T>> H(m + 1, std::vector<T>(m, T(0)));
        std::vector<T> cs(m, T(0)), sn(m, T(0)), g(m + 1, T(0));
        V.push_back(r);
        for (auto& v : V[0]) v /= beta;
        g[0] = T(beta);

        int k = 0;
        for (; k < m; ++k) {
            apply(V[k], w);
            for (int j = 0; j <= k; ++j) {
                const T hjk = Ops::dot(V[j], w);
                H[j][k] = hjk;
                for (size_t i = 0; i < n; ++i) w[i] -= hjk * V[j][i];
            }
            double hn = 0;
            for (auto& v : w) hn += Ops::abs2(v);
            hn = std::sqrt(hn);
            H[k + 1][k] = T(hn);

            // apply stored Givens rotations to the new column
            for (int j = 0; j < k; ++j) {
                const T t = cs[j] * H[j][k] + sn[j] * H[j + 1][k];
                H[j + 1][k] = -Ops::conj_of(sn[j]) * H[j][k] + cs[j] * H[j + 1][k];
                H[j][k] = t;
            }
            // new rotation (c real >= 0) zeroing the subdiagonal entry:
            //   c = |a|/rho, s = (a/|a|) conj(b) / rho, rho = sqrt(|a|^2+|b|^2)
            {
                const T a = H[k][k], b2 = H[k + 1][k];
                const double aa = std::sqrt(Ops::abs2(a));
                const double bb = std::sqrt(Ops::abs2(b2));
                const double rho = std::hypot(aa, bb);
                if (rho == 0.0) {
                    cs[k] = T(1);
                    sn[k] = T(0);
                } else if (aa == 0.0) {
                    cs[k] = T(0);
                    sn[k] = Ops::conj_of(b2) / T(bb);
                } else {
                    cs[k] = T(aa / rho);
                    sn[k] = (a / T(aa)) * Ops::conj_of(b2) / T(rho);
                }
                H[k][k] = cs[k] * a + sn[k] * b2;
                H[k + 1][k] = T(0);
                const T gk = g[k];
                g[k] = cs[k] * gk;
                g[k + 1] = -Ops::conj_of(sn[k]) * gk;
            }

            total_it++;
            const double rel = std::sqrt(Ops::abs2(g[k + 1])) / bnorm;
            if (hn > 0) {
                V.push_back(w);
                for (auto& v : V[k + 1]) v /= hn;
            }
            if (rel < tol || hn == 0.0) {
                k++;
                break;
            }
        }

        // back substitution
        std::vector<T> y(k, T(0));
        for (int i = k - 1; i >= 0; --i) {
            T s = g[i];
            for (int j = i + 1; j < k; ++j) s -= H[i][j] * y[j];
            y[i] = s / H[i][i];
        }
        for (int j = 0; j < k; ++j)
            for (size_t i = 0; i < n; ++i) x[i] += y[j] * V[j][i];

        apply(x, r);
        for (size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
        double rn = 0;
        for (auto& v : r) rn += Ops::abs2(v);
        res.residual = std::sqrt(rn) / bnorm;
        res.iterations = total_it;
        if (res.residual < tol) {
            res.converged = true;
            return res;
        }
    }
    return res;
}

}  // namespace

GmresResult gmres_complex(const std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>& apply,
                          const std::vector<cplx>& b, std::vector<cplx>& x,
                          int restart, int max_iter, double tol) {
    return gmres_impl<cplx>(apply, b, x, restart, max_iter, tol);
}

GmresResult gmres_real(const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
                       const std::vector<double>& b, std::vector<double>& x,
                       int restart, int max_iter, double tol) {
    return gmres_impl<double>(apply, b, x, restart, max_iter, tol);
}

double estimate_sigma_min(const std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>& apply,
                          const std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>& apply_adj,
                          size_t dim, int rounds, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> v(dim), t(dim), s(dim);
    for (auto& x : v) x = cplx(gauss(rng), gauss(rng));
    double nv = 0;
    for (auto& x : v) nv += std::norm(x);
    nv = std::sqrt(nv);
    for (auto& x : v) x /= nv;

    double sigma = 0.0;
    for (int it = 0; it < rounds; ++it) {
        // solve A^H A s = v by CG-like GMRES on the normal operator
        auto normal_op = [&](const std::vector<cplx>& in, std::vector<cplx>& out) {
            apply(in, t);
            apply_adj(t, out);
        };
        s.assign(dim, cplx(0, 0));
        gmres_complex(normal_op, v, s, 60, 200, 1e-8);
        double ns = 0;
        for (auto& x : s) ns += std::norm(x);
        ns = std::sqrt(ns);
        if (ns == 0) return 0.0;
        sigma = 1.0 / std::sqrt(ns);
        for (size_t i = 0; i < dim; ++i) v[i] = s[i] / ns;
    }
    return sigma;
}

}  // namespace dbar
