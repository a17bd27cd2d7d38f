#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <random>

#include "dbar/field_io.hpp"
#include "dbar/types.hpp"
#include "dbar/util.hpp"
#include "oracles.hpp"

using namespace dbar;

TEST_CASE("phi0 basic values") {
    CHECK(phi0(cplx(0, 0), cplx(2, 0), Energy(1)) == cplx(1, 0));

    // |lambda| = 1 gives a plane wave with real k: unit modulus
    const cplx v = phi0(cplx(1, 0), cplx(1, 0), Energy(4));
    CHECK(std::abs(v - std::exp(cplx(0, 2))) < 1e-14);

    // against e^{ikx} with k assembled from the spectral parametrization
    const cplx z(0, 1), lam(2, 0);
    CHECK(std::abs(phi0(z, lam, Energy(1)) - oracle::plane_wave_from_k(z, lam, Energy(1))) < 1e-14);

    CHECK_THROWS_AS(phi0(cplx(1, 1), cplx(0, 0), Energy(1)), DomainError);
}

TEST_CASE("phi0 reciprocal identity") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const cplx z(u(rng), u(rng));
        cplx lam(u(rng), u(rng));
        if (std::abs(lam) < 0.05) lam += 1.0;
        const cplx prod = phi0(z, lam, Energy(1.7)) * phi0(z, -lam, Energy(1.7));
        CHECK(std::abs(prod - 1.0) < 1e-12);
    }
}

TEST_CASE("e0 has unit modulus and value 1 at z=0") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const cplx z(u(rng), u(rng));
        cplx lam(u(rng), u(rng));
        if (std::abs(lam) < 0.05) lam += 1.0;
        CHECK(std::abs(std::abs(e0(z, lam, Energy(2))) - 1.0) < 1e-12);
    }
    CHECK(std::abs(e0(cplx(0, 0), cplx(0.3, -0.4), Energy(2)) - 1.0) < 1e-14);

    // composition against the two phi0 factors
    const cplx z(1, 1), lam(0.3, -0.4);
    const cplx expect = phi0(z, -lam, Energy(2)) * phi0(z, -1.0 / std::conj(lam), Energy(2));
    CHECK(std::abs(e0(z, lam, Energy(2)) - expect) < 1e-14);
}

TEST_CASE("k_of_lambda satisfies k1^2+k2^2 = E and inverts") {
    {
        const auto [k1, k2] = k_of_lambda(cplx(1, 0), Energy(1));
        CHECK(std::abs(k1 - 1.0) < 1e-15);
        CHECK(std::abs(k2) < 1e-15);
    }
    {
        const auto [k1, k2] = k_of_lambda(cplx(0, 1), Energy(1));
        CHECK(std::abs(k1) < 1e-15);
        CHECK(std::abs(k2 - 1.0) < 1e-15);
    }
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 40; ++i) {
        cplx lam(u(rng), u(rng));
        if (std::abs(lam) < 0.05) lam += 2.0;
        const Energy E(4);
        const auto [k1, k2] = k_of_lambda(lam, E);
        CHECK(std::abs(k1 * k1 + k2 * k2 - E.E) < 1e-12);
        CHECK(std::abs((k1 + cplx(0, 1) * k2) / E.sqrtE() - lam) < 1e-12);
    }
}

TEST_CASE("spatial grid nesting and layout") {
    SpatialGrid g(cplx(0.1, -0.2), 1.5, 16);
    SpatialGrid g2(cplx(0.1, -0.2), 1.5, 32);
    for (int k = 0; k < 16; ++k)
        for (int j = 0; j < 16; ++j)
            CHECK(std::abs(g.node(j, k) - g2.node(2 * j, 2 * k)) < 1e-15);
    CHECK_THROWS_AS(SpatialGrid(cplx(0, 0), 1.0, 12), DomainError);
    CHECK_THROWS_AS(SpatialGrid(cplx(0, 0), 1.0, 4), DomainError);
}

TEST_CASE("field file round trip is bit exact") {
    SpatialGrid g(cplx(0.25, 0.5), 2.0, 16);
    SpatialField f(g);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n(0, 1);
    for (auto& v : f.values) v = cplx(n(rng), n(rng));

    const std::string path = "/tmp/dbar_test_field.bin";
    write_field(f, path);
    const SpatialField f2 = read_field(path);
    REQUIRE(f2.values.size() == f.values.size());
    for (size_t i = 0; i < f.values.size(); ++i) {
        CHECK(f.values[i].real() == f2.values[i].real());
        CHECK(f.values[i].imag() == f2.values[i].imag());
    }
    CHECK(f2.grid.same_as(g));
    std::remove(path.c_str());
}

TEST_CASE("field file error paths") {
    SpatialGrid g(cplx(0, 0), 1.0, 8);
    SpatialField f(g);  // zero field: 8^2 nodes, 128 scalars in the payload
    const std::string path = "/tmp/dbar_test_field2.bin";
    write_field(f, path);

    // truncate the payload
    {
        std::ifstream is(path, std::ios::binary);
        std::string all((std::istreambuf_iterator<char>(is)), {});
        std::ofstream os(path, std::ios::binary);
        os.write(all.data(), static_cast<std::streamsize>(all.size() - 16));
    }
    CHECK_THROWS_AS(read_field(path), IoError);

    // malformed header
    {
        std::ofstream os(path, std::ios::binary);
        os << "{not json\n";
    }
    CHECK_THROWS_AS(read_field(path), IoError);
    std::remove(path.c_str());
}

TEST_CASE("lambda grid masks ring, origin and outer radius") {
    LambdaGrid lg(1.5, 6.0, 32, 16);
    CHECK(lg.ring_size() == 32);
    for (size_t i = 0; i < lg.plane_size(); ++i) {
        const double r = std::abs(lg.nodes[i]);
        if (lg.active[i]) {
            CHECK(r >= lg.lambda_min);
            CHECK(r <= lg.R_max);
            CHECK(!(r > 1.0 / lg.A && r < lg.A));
        }
    }
    // ring orientation: D stays on the left
    CHECK(lg.outer.orientation == +1);
    CHECK(lg.inner.orientation == -1);
    // dnode direction on the outer circle at theta=0 is +i * A * dtheta
    CHECK(std::abs(lg.outer.dnode(0) - cplx(0, 1.5 * 2 * pi / 16)) < 1e-14);
    CHECK(std::abs(lg.inner.dnode(0) + cplx(0, (1 / 1.5) * 2 * pi / 16)) < 1e-14);
}

TEST_CASE("gmres solves a small complex system") {
    const int n = 24;
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g(0, 1);
    std::vector<cplx> A(n * n);
    for (auto& a : A) a = cplx(g(rng), g(rng)) * 0.1;
    for (int i = 0; i < n; ++i) A[i * n + i] += 1.0;
    std::vector<cplx> xtrue(n), b(n, cplx(0, 0));
    for (auto& x : xtrue) x = cplx(g(rng), g(rng));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b[i] += A[i * n + j] * xtrue[j];

    auto apply = [&](const std::vector<cplx>& in, std::vector<cplx>& out) {
        out.assign(n, cplx(0, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out[i] += A[i * n + j] * in[j];
    };
    std::vector<cplx> x;
    const GmresResult res = gmres_complex(apply, b, x, 30, 100, 1e-12);
    CHECK(res.converged);
    for (int i = 0; i < n; ++i) CHECK(std::abs(x[i] - xtrue[i]) < 1e-9);
}

TEST_CASE("parallel_for is deterministic and covers all indices") {
    std::vector<int> hits(1000, 0);
    set_thread_count(3);
    parallel_for(hits.size(), [&](size_t i) { hits[i] += static_cast<int>(i); });
    set_thread_count(0);
    for (size_t i = 0; i < hits.size(); ++i) CHECK(hits[i] == static_cast<int>(i));
}

TEST_CASE("cell log integral matches adaptive reference") {
    // int over [-1/2,1/2]^2 of ln|z| computed by a fine midpoint rule
    const int N = 400;
    double acc = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            const double x = (i + 0.5) / N - 0.5, y = (j + 0.5) / N - 0.5;
            acc += std::log(std::hypot(x, y));
        }
    acc /= N * N;
    CHECK(std::abs(cell_log_integral(1.0) - acc) < 2e-5);
    // scaling law: integral(h) = h^2 (log h + c0)
    const double c0 = cell_log_integral(1.0);
    CHECK(std::abs(cell_log_integral(0.25) - 0.0625 * (std::log(0.25) + c0)) < 1e-15);
}
