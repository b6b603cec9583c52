#pragma once

#include <functional>
#include <string>

#include "cayley/field.hpp"
#include "cayley/fourier_rhs.hpp"
#include "cayley/operators.hpp"

namespace cayley {

/// sinh(a x)/sinh(a) evaluated as exp(a(x-1)) expm1(-2ax)/expm1(-2a):
/// overflow-safe for a up to 1e6 and monotone in x on [0,1].
double sinh_ratio(double a, double x);

/// Exact solution of u'' - A u = 0, u(0) = 0, u(1) = u1 for diagonal A:
/// component j is sinh_ratio(sqrt(lambda_j), x) u1_j.
Vector exact_homogeneous_diagonal(const Vector& lams, const Vector& u1, double x);

/// Exact solution of u'' - A u = -f, u(0) = u(1) = 0 for diagonal A and
/// Fourier data f: per eigenvalue, sine modes via ((2k pi)^2 + lambda)^{-1}
/// and zero/cosine modes via the sinh bracket
///   (sinh(a(1-x)) + sinh(a x))/sinh(a),  a = sqrt(lambda).
Vector exact_inhomogeneous_diagonal(const Vector& lams, const FourierData& data, double x);

/// Method-of-manufactured-solutions pair: a closed-form field u together
/// with Fourier data whose exact solution is u.
struct ManufacturedPair {
    std::function<Vector(double)> u;
    FourierData data;
};

/// kind "one_sine": u(x) = sqrt(2) sin(2k pi x) w, data carries the single
/// coefficient fs_k = ((2k pi)^2 I + A) w; works for every realization.
/// kind "one_cosine_bracket": data carries fc_k = w with u given by the
/// diagonal sinh oracle; diagonal operators only.
ManufacturedPair manufactured_pair(const std::string& kind, int k, const SectorialOperator& op,
                                   const Vector& w);

/// Reference solution on a grid from the spectral decomposition: diagonal
/// operators directly, dense symmetric ones through their eigenbasis.
/// Other realizations raise "oracle_unsupported".
SolutionField exact_homogeneous_field(const SectorialOperator& op, const Vector& u1,
                                      const std::vector<double>& grid);
SolutionField exact_inhomogeneous_field(const SectorialOperator& op, const FourierData& data,
                                        const std::vector<double>& grid);

} // namespace cayley
