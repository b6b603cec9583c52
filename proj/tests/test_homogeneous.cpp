#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cayley/analysis.hpp"
#include "cayley/homogeneous.hpp"
#include "cayley/oracles.hpp"

using cayley::DiagonalOperator;
using cayley::Error;
using cayley::Vector;

namespace {

const cayley::VSequence& shared_vseq() {
    static cayley::VSequence vseq(200, 20000);
    return vseq;
}

double max_err(const cayley::SolutionField& a, const cayley::SolutionField& b) {
    return cayley::plain_error(a, b, cayley::NormKind::Max);
}

} // namespace

TEST_CASE("cayley_iterates pinned scalar and componentwise values") {
    DiagonalOperator one({1.0});
    const auto y = cayley::cayley_iterates(one, {1.0}, 3);
    REQUIRE(y.size() == 4);
    CHECK(y[0][0] == 1.0);
    CHECK(y[1][0] == 0.5);
    CHECK(y[2][0] == 0.25);
    CHECK(y[3][0] == 0.125);

    DiagonalOperator two({4.0, 9.0});
    const auto z = cayley::cayley_iterates(two, {1.0, 1.0}, 1);
    REQUIRE(z.size() == 2);
    CHECK(z[1][0] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(z[1][1] == doctest::Approx(0.9).epsilon(1e-15));

    const auto zero = cayley::cayley_iterates(two, {0.0, 0.0}, 5);
    for (const auto& v : zero)
        for (double c : v) CHECK(c == 0.0);

    CHECK_THROWS_WITH_AS(cayley::cayley_iterates(one, {1.0, 2.0}, 1),
                         doctest::Contains("dim_mismatch"), Error);
    CHECK_THROWS_WITH_AS(cayley::cayley_iterates(one, {1.0}, -1),
                         doctest::Contains("invalid_index"), Error);
}

TEST_CASE("scalar series converges to the sinh ratio") {
    DiagonalOperator op({4.0});
    const auto u = cayley::solve_homogeneous(op, {1.0}, 200, {0.5}, shared_vseq());
    // sinh(1)/sinh(2), frozen independently; the geometric factor (4/5)^k
    // makes N = 200 sufficient for 1e-12.
    CHECK(std::fabs(u.values[0][0] - 0.3240271368319427) <= 1e-12);
}

TEST_CASE("boundary values are exact at every truncation") {
    DiagonalOperator op({4.0, 9.0});
    const Vector u1 = {1.25, -0.5};
    for (int N : {0, 1, 7, 50}) {
        const auto u = cayley::solve_homogeneous(op, u1, N, {0.0, 0.5, 1.0}, shared_vseq());
        CHECK(u.values[0][0] == 0.0);
        CHECK(u.values[0][1] == 0.0);
        CHECK(u.values[2] == u1); // v_0(1) = 1 and v_k(1) = 0 for k >= 1, exactly
        CHECK(u.N == N);
    }
}

TEST_CASE("eigenvector data reduces to the scalar series") {
    DiagonalOperator op({4.0, 9.0});
    const auto& vseq = shared_vseq();
    const int N = 40;
    const double x = 0.375;

    const auto field = cayley::solve_homogeneous(op, {1.0, 1.0}, N, {x}, vseq);
    for (int j = 0; j < 2; ++j) {
        const double lam = (j == 0) ? 4.0 : 9.0;
        const double q = lam / (1.0 + lam);
        double scalar = 0.0, qk = 1.0;
        for (int k = 0; k <= N; ++k, qk *= q) scalar += vseq.value(k, x) * qk;
        CHECK(field.values[0][j] == doctest::Approx(scalar).epsilon(1e-12));
    }
}

TEST_CASE("residual against the exact field shrinks monotonically in N") {
    const auto grid = cayley::interior_grid(16);
    // The geometric tail sets in around N ~ lambda: lambda = 4 is fully
    // converged by N = 128 (measured 2.7e-15) while lambda = 25 has dropped
    // three decades to 2.3e-4.  The floors pin those measured regimes.
    for (const auto [lam, floor] : {std::pair{4.0, 1e-12}, std::pair{25.0, 1e-3}}) {
        DiagonalOperator op({lam});
        const auto exact = cayley::exact_homogeneous_field(op, {1.0}, grid);
        double prev = -1.0;
        for (int N : {4, 8, 16, 32, 64, 128}) {
            const auto approx = cayley::solve_homogeneous(op, {1.0}, N, grid, shared_vseq());
            const double err = max_err(exact, approx);
            if (prev >= 0.0) CHECK(err <= prev * (1.0 + 1e-12));
            prev = err;
        }
        CHECK(prev <= floor);
    }
}

TEST_CASE("iterate decay envelope for smoothed data") {
    // u1 = A^{-sigma} g keeps ||y_k|| k^{(sigma-eps2)/2} below C2(sigma, eps2, L) ||g||.
    const int J = 200;
    const double pi = 3.14159265358979323846;
    Vector lams(J);
    for (int j = 1; j <= J; ++j) lams[j - 1] = (j * pi) * (j * pi);
    DiagonalOperator op(lams);

    const double sigma = 2.5, eps2 = 0.25;
    Vector g(J, 1.0 / std::sqrt(static_cast<double>(J)));
    const Vector u1 = op.power_apply(-sigma, g);
    const double L = op.sector_params().L;
    const double envelope = cayley::constant_C2(sigma, eps2, L) * cayley::norm(g);

    const auto y = cayley::cayley_iterates(op, u1, 500);
    for (int k = 1; k <= 500; ++k) {
        const double lhs = cayley::norm(y[k]) * std::pow(k, (sigma - eps2) / 2.0);
        CHECK(lhs <= envelope);
    }
}

TEST_CASE("grid validation") {
    DiagonalOperator op({4.0});
    CHECK_THROWS_WITH_AS(cayley::solve_homogeneous(op, {1.0}, 3, {}, shared_vseq()),
                         doctest::Contains("empty_grid"), Error);
    CHECK_THROWS_WITH_AS(cayley::solve_homogeneous(op, {1.0}, 3, {1.5}, shared_vseq()),
                         doctest::Contains("empty_grid"), Error);
}
