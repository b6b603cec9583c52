#pragma once

#include "cayley/field.hpp"
#include "cayley/fourier_rhs.hpp"
#include "cayley/operators.hpp"
#include "cayley/rational_poly.hpp"

namespace cayley {

/// One sine-mode contribution: sqrt(2) sin(2k pi x) (((2k pi)^2 I + A)^{-1} fsk).
Vector sine_mode_term(const SectorialOperator& op, int k, const Vector& fsk, double x);

/// Mean contribution A^{-1} { f0 - sum_{j=0}^{M} [v_j(1-x) + v_j(x)] w_j }
/// with w_j the Cayley iterates of f0.
Vector zero_mode_term(const SectorialOperator& op, const Vector& f0, int M, double x,
                      const VSequence& vseq);

/// Cosine-mode contribution
///   sqrt(2) ((2k pi)^2 I + A)^{-1} { cos(2k pi x) fck - sum_{j=0}^{M} [v_j(1-x)+v_j(x)] w_j }
/// with w_j the Cayley iterates of fck.
Vector cosine_mode_term(const SectorialOperator& op, int k, const Vector& fck, int M, double x,
                        const VSequence& vseq);

/// Truncated approximation for u'' - A u = -f, u(0) = u(1) = 0: the sine
/// block (k = 1..N), then the mean block, then the cosine block (k = 1..N),
/// in that fixed order.  Cayley iterates for f0 and each fc_k are computed
/// once and shared across grid points; exactly M solves with shift 1 are
/// spent per distinct coefficient vector.
SolutionField solve_inhomogeneous(const SectorialOperator& op, const FourierData& data, int N,
                                  int M, const std::vector<double>& grid, const VSequence& vseq);

} // namespace cayley
