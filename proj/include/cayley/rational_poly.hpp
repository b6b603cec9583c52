#pragma once

#include <atomic>
#include <mutex>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "cayley/error.hpp"

namespace cayley {

/// Exact rational scalar (GMP-backed).  The polynomial recurrence below is
/// carried out entirely in this type so that boundary zeros, degrees and
/// low-order values are exact, not floating-point approximations.
using Rational = boost::multiprecision::mpq_rational;

/// Dense univariate polynomial with exact rational coefficients, ascending
/// order.  Immutable value type; trailing zero coefficients are trimmed.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);

    /// degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

    Rational eval(const Rational& x) const;
    double eval_double(double x) const;
    Polynomial derivative() const;

    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator-() const;
    bool operator==(const Polynomial& other) const = default;

private:
    std::vector<Rational> coeffs_;
};

/// Apply the Green operator of -d^2/dx^2 with zero Dirichlet data: returns
/// the unique w with -w'' = p, w(0) = w(1) = 0.  Exact in rationals.
Polynomial green_apply(const Polynomial& p);

/// The polynomial family v_0(x) = x, v_1(x) = -x(1-x^2)/6,
/// v_k = v_{k-1} - green_apply(v_{k-1}) for k >= 2; deg v_k = 2k+1.
/// Returns v_0..v_K.  K beyond the exact-arithmetic cap raises
/// "recurrence_cap".
std::vector<Polynomial> v_sequence(int K, int cap = 200);

/// Sine-expansion coefficient a_p^{(k)} of v_k:
///   a_p^{(k)} = sqrt(2) (-1)^p (p pi)^{-3} (1 - (p pi)^{-2})^{k-1},
/// so that v_k(x) = sum_p sqrt(2) a_p^{(k)} sin(p pi x).
double fourier_coeff(int k, int p);

/// Evaluate v_k(x) through its sine expansion truncated at P terms.  The
/// dropped tail is below 1/(pi^3 P^2) uniformly in k and x.
double eval_fourier(int k, double x, int terms = 20000);

/// v(x) / min(x, 1-x) with the endpoint values filled in by the exact
/// one-sided derivatives: v'(0) at x = 0 and -v'(1) at x = 1.  Requires
/// v(0) = v(1) = 0 exactly; otherwise "ratio_undefined".
double weighted_ratio(const Polynomial& v, double x);

/// Cached evaluator for the v_k family.  Builds the exact polynomials up to
/// `rational_cap` on demand (thread-safe) and serves values via a cached
/// double-precision Horner; indices beyond the cap fall back to the sine
/// expansion.  Endpoint values are exact: v_k(0) = 0, v_k(1) = [k == 0].
class VSequence {
public:
    explicit VSequence(int rational_cap = 200, int fourier_terms = 20000);

    int rational_cap() const { return cap_; }
    int fourier_terms() const { return fourier_terms_; }

    /// Pre-build exact polynomials v_0..v_min(k, cap).
    void ensure(int k) const;

    double value(int k, double x) const;

    /// Exact polynomial v_k; requires k <= rational_cap.
    const Polynomial& poly(int k) const;

private:
    void build_to(int upto) const; // caller holds mu_

    int cap_;
    int fourier_terms_;
    mutable std::mutex mu_;
    mutable std::vector<Polynomial> polys_;
    mutable std::vector<std::vector<double>> double_coeffs_;
    mutable std::atomic<int> built_{-1};
};

} // namespace cayley
