#pragma once

#include <vector>

#include "cayley/field.hpp"
#include "cayley/operators.hpp"
#include "cayley/rational_poly.hpp"

namespace cayley {

/// Cayley iterates y_0 = seed, y_k = C y_{k-1} with C = (I+A)^{-1} A,
/// computed through the identity C = I - (I+A)^{-1}: one shifted solve per
/// step against the cached c = 1 factorization.
std::vector<Vector> cayley_iterates(const SectorialOperator& op, const Vector& seed, int count);

/// Truncated series u_N(x_i) = sum_{k=0}^{N} v_k(x_i) y_k for the problem
/// u'' - A u = 0, u(0) = 0, u(1) = u1.  Summation order is fixed (ascending
/// k) so repeated runs are bit-identical.
SolutionField solve_homogeneous(const SectorialOperator& op, const Vector& u1, int N,
                                const std::vector<double>& grid, const VSequence& vseq);

} // namespace cayley
