#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <thread>

#include "cayley/operators.hpp"

using cayley::DenseOperator;
using cayley::DiagonalOperator;
using cayley::Error;
using cayley::Vector;

namespace {

Eigen::MatrixXd tridiag(double d, double lo, double hi, int n) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = d;
        if (i + 1 < n) {
            m(i + 1, i) = lo;
            m(i, i + 1) = hi;
        }
    }
    return m;
}

} // namespace

TEST_CASE("apply acts as the underlying matrix") {
    DiagonalOperator diag({1.0, 4.0, 9.0});
    const Vector r = diag.apply({1.0, 1.0, 1.0});
    CHECK(r == Vector{1.0, 4.0, 9.0});

    DiagonalOperator single({2.0});
    CHECK(single.apply({0.0}) == Vector{0.0});

    Eigen::MatrixXd m(2, 2);
    m << 2.0, -1.0, -1.0, 2.0;
    DenseOperator dense(m);
    const Vector d = dense.apply({1.0, 0.0});
    CHECK(d[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(d[1] == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("shift_solve pinned scalar values") {
    DiagonalOperator one({1.0});
    CHECK(one.shift_solve(1.0, {1.0})[0] == 0.5);

    const double twopi_sq = 4.0 * 3.14159265358979323846 * 3.14159265358979323846;
    // 1 / (1 + 4 pi^2), frozen independently
    CHECK(one.shift_solve(twopi_sq, {1.0})[0] ==
          doctest::Approx(0.02470452303185764).epsilon(1e-15));

    DiagonalOperator two({2.0, 3.0});
    const Vector r = two.shift_solve(0.0, {2.0, 3.0});
    CHECK(r[0] == 1.0);
    CHECK(r[1] == 1.0);
}

TEST_CASE("shift identity (A + cI) shift_solve(c, b) == b across realizations") {
    auto check_identity = [](const cayley::SectorialOperator& op, const Vector& b) {
        for (double c : {0.0, 1.0, 39.478417604357434}) {
            const Vector u = op.shift_solve(c, b);
            Vector back = op.apply(u);
            for (std::size_t i = 0; i < back.size(); ++i) back[i] += c * u[i];
            for (std::size_t i = 0; i < back.size(); ++i)
                CHECK(back[i] == doctest::Approx(b[i]).epsilon(1e-9));
        }
    };
    check_identity(DiagonalOperator({1.0, 4.0, 9.0}), {1.0, -2.0, 0.5});
    check_identity(DenseOperator(tridiag(2.0, -1.0, -1.0, 8)), Vector(8, 1.0));
    // Nonsymmetric (convection) realization.
    check_identity(DenseOperator(cayley::make_fd_laplacian(8, 3.0)), Vector(8, 0.25));
}

TEST_CASE("power_apply pinned values and composition") {
    DiagonalOperator op({4.0, 9.0});
    const Vector sqrtv = op.power_apply(0.5, {1.0, 1.0});
    CHECK(sqrtv[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(sqrtv[1] == doctest::Approx(3.0).epsilon(1e-15));

    DiagonalOperator four({4.0});
    CHECK(four.power_apply(-1.0, {8.0})[0] == doctest::Approx(2.0).epsilon(1e-15));

    DiagonalOperator pisq({9.869604401089358});
    CHECK(pisq.power_apply(2.0, {1.0})[0] ==
          doctest::Approx(97.40909103400242).epsilon(1e-13));

    // A^s then A^{-s} returns the input.
    DiagonalOperator mix({1.0, 3.0, 17.0});
    const Vector v0 = {0.3, -1.2, 5.0};
    const Vector round = mix.power_apply(-1.7, mix.power_apply(1.7, v0));
    for (std::size_t i = 0; i < v0.size(); ++i)
        CHECK(round[i] == doctest::Approx(v0[i]).epsilon(1e-10));
}

TEST_CASE("dense symmetric power matches the diagonal route") {
    // Q diag(1,4) Q^T for a rotation Q.
    const double c = std::cos(0.3), s = std::sin(0.3);
    Eigen::MatrixXd q(2, 2);
    q << c, -s, s, c;
    Eigen::MatrixXd lam = Eigen::MatrixXd::Zero(2, 2);
    lam(0, 0) = 1.0;
    lam(1, 1) = 4.0;
    DenseOperator dense(q * lam * q.transpose());
    DiagonalOperator diag({1.0, 4.0});

    const Vector w = {0.7, -0.1};                    // coefficients in the eigenbasis
    const Vector x = {c * w[0] - s * w[1], s * w[0] + c * w[1]};
    const Vector dw = diag.power_apply(0.5, w);
    const Vector expect = {c * dw[0] - s * dw[1], s * dw[0] + c * dw[1]};
    const Vector got = dense.power_apply(0.5, x);
    for (int i = 0; i < 2; ++i) CHECK(got[i] == doctest::Approx(expect[i]).epsilon(1e-12));

    // Nonsymmetric dense operators advertise no fractional powers.
    DenseOperator skew(cayley::make_fd_laplacian(4, 2.0));
    CHECK_FALSE(skew.can_power());
    CHECK_THROWS_WITH_AS(skew.power_apply(0.5, Vector(4, 1.0)),
                         doctest::Contains("power_unsupported"), Error);
}

TEST_CASE("sector parameters") {
    DiagonalOperator op({1.0, 4.0});
    const cayley::SectorParams p = op.sector_params();
    CHECK(p.gamma == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.L >= 1.0);
    CHECK(p.phi >= 0.0);
    CHECK(p.phi < 1.5707963267948966);

    DiagonalOperator single({10.0});
    CHECK(single.sector_params().gamma == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("finite-difference Laplacian spectrum approaches pi^2") {
    DenseOperator fd(cayley::make_fd_laplacian(32));
    const double gamma = fd.sector_params().gamma;
    // Frozen smallest eigenvalue 4 (n+1)^2 sin^2(pi / (2 (n+1))) at n = 32.
    CHECK(gamma == doctest::Approx(9.86215263582173).epsilon(1e-9));
    CHECK(std::fabs(gamma - 9.869604401089358) / 9.869604401089358 < 0.05);

    // Stencil spot check: interior row is (n+1)^2 [-1, 2, -1].
    const double h2 = 33.0 * 33.0;
    const Eigen::MatrixXd& m = fd.matrix();
    CHECK(m(5, 5) == doctest::Approx(2.0 * h2).epsilon(1e-15));
    CHECK(m(5, 4) == doctest::Approx(-h2).epsilon(1e-15));
    CHECK(m(5, 6) == doctest::Approx(-h2).epsilon(1e-15));

    // Convection term perturbs the off-diagonals by -+ b (n+1) / 2.
    DenseOperator conv(cayley::make_fd_laplacian(32, 2.0));
    CHECK(conv.matrix()(5, 4) == doctest::Approx(-h2 - 33.0).epsilon(1e-15));
    CHECK(conv.matrix()(5, 6) == doctest::Approx(-h2 + 33.0).epsilon(1e-15));
}

TEST_CASE("solve counters track shifted solves per shift") {
    DiagonalOperator op({1.0, 2.0});
    op.reset_solve_counts();
    (void)op.shift_solve(1.0, {1.0, 1.0});
    (void)op.shift_solve(1.0, {2.0, 0.0});
    (void)op.shift_solve(0.0, {1.0, 1.0});
    CHECK(op.solve_count(1.0) == 2);
    CHECK(op.solve_count(0.0) == 1);
    CHECK(op.total_solve_count() == 3);
    op.reset_solve_counts();
    CHECK(op.total_solve_count() == 0);
}

TEST_CASE("repeated and concurrent solves are bitwise reproducible") {
    DenseOperator op(tridiag(2.5, -1.0, -1.0, 16));
    Vector b(16);
    for (int i = 0; i < 16; ++i) b[i] = std::sin(1.0 + i);

    const Vector first = op.shift_solve(1.0, b);
    const Vector second = op.shift_solve(1.0, b);
    CHECK(first == second);

    std::vector<Vector> results(4);
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&, t] { results[t] = op.shift_solve(39.478417604357434, b); });
    for (auto& th : pool) th.join();
    for (int t = 1; t < 4; ++t) CHECK(results[t] == results[0]);
}

TEST_CASE("spectrum accessors") {
    DiagonalOperator diag({3.0, 7.0});
    const auto spec = diag.spectrum();
    REQUIRE(spec.size() == 2);
    CHECK(spec[0] == std::complex<double>(3.0, 0.0));
    CHECK(spec[1] == std::complex<double>(7.0, 0.0));

    DenseOperator sym(tridiag(2.0, -1.0, -1.0, 4));
    auto dense_spec = sym.spectrum();
    REQUIRE(dense_spec.size() == 4);
    for (const auto& z : dense_spec) {
        CHECK(z.imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(z.real() > 0.0);
    }
}

TEST_CASE("validation errors carry stable codes") {
    CHECK_THROWS_WITH_AS(DiagonalOperator({}), doctest::Contains("invalid_dimension"), Error);
    CHECK_THROWS_WITH_AS(DiagonalOperator({1.0, -2.0}),
                         doctest::Contains("nonpositive_spectrum"), Error);
    CHECK_THROWS_WITH_AS(DiagonalOperator({0.0}), doctest::Contains("nonpositive_spectrum"),
                         Error);

    DiagonalOperator op({1.0, 2.0});
    CHECK_THROWS_WITH_AS(op.shift_solve(-1.0, {1.0, 1.0}), doctest::Contains("invalid_shift"),
                         Error);
    CHECK_THROWS_WITH_AS(op.shift_solve(1.0, {1.0}), doctest::Contains("dim_mismatch"), Error);
    CHECK_THROWS_WITH_AS(op.apply({1.0}), doctest::Contains("dim_mismatch"), Error);

    Eigen::MatrixXd rect(2, 3);
    rect.setZero();
    CHECK_THROWS_WITH_AS(DenseOperator{rect}, doctest::Contains("invalid_dimension"), Error);
    CHECK_THROWS_WITH_AS(cayley::make_fd_laplacian(0), doctest::Contains("invalid_dimension"),
                         Error);
    CHECK_THROWS_WITH_AS(cayley::load_dense_matrix("/nonexistent/matrix.txt"),
                         doctest::Contains("matrix_unreadable"), Error);
}
