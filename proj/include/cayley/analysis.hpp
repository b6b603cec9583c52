#pragma once

#include <vector>

#include "cayley/field.hpp"
#include "cayley/operators.hpp"

namespace cayley {

/// sup over the grid of ||exact(x) - approx(x)|| / min(x, 1-x).  Grids must
/// be bitwise identical.
double weighted_error(const SolutionField& exact, const SolutionField& approx, NormKind kind);

/// sup over the grid of ||exact(x) - approx(x)||.
double plain_error(const SolutionField& exact, const SolutionField& approx, NormKind kind);

struct ConvergenceRecord {
    int N = 0;
    double weighted_error = 0.0;
    double plain_error = 0.0;
};

struct RateFit {
    double rate = 0.0; ///< negated regression slope
    double r2 = 0.0;
    int points_used = 0;
};

/// Least-squares fit of log(weighted_error) against log(N); rate = -slope.
/// Records with nonpositive error are filtered; fewer than 3 survivors raise
/// "insufficient_points".
RateFit fit_algebraic_rate(const std::vector<ConvergenceRecord>& records);

/// Least-squares fit of log(weighted_error) against sqrt(N); rate = -slope.
RateFit fit_exponential_rate(const std::vector<ConvergenceRecord>& records);

/// Riemann zeta for s > 1 by Euler-Maclaurin; absolute error below 1e-12 on
/// (1, 10].  s <= 1 raises "divergent".
double zeta(double s);

struct SeriesConstants {
    double S = 0.0;       ///< sum_{k>=1} e^{-sqrt k} (sqrt k + 1)^2 / sqrt k
    double S_tilde = 0.0; ///< sum_{k>=1} e^{-sqrt k}
};
SeriesConstants series_constants();

/// C1(eps1) = ((1-eps1)/e)^{(1-eps1)/2} (2/pi^{1+eps1}) zeta(1+eps1),
/// the weighted polynomial-ratio envelope constant.
double constant_C1(double eps1);

/// C2(sigma, eps2, L) = (L / sin(pi eps2)) (sigma-eps2)^{(sigma-eps2)/2},
/// the iterate-decay envelope constant.
double constant_C2(double sigma, double eps2, double L);

/// C3(sigma, eps1, eps3, L) = 4 C1(eps1) L / (sin(pi eps3)(sigma-eps1-eps3))
///                             * (1+sigma-eps3)^{(1+sigma-eps3)/2}.
double constant_C3(double sigma, double eps1, double eps3, double L);

/// Exponential-decay parameter nu = cos(phi) / (L + 1).
double constant_nu(double phi, double L);

/// Bundle of the envelope constants for one experiment configuration.
struct BoundConstants {
    double eps1 = 0.25, eps2 = 0.25, eps3 = 0.25;
    double sigma = 0.0;
    double L = 0.0;
    double C1 = 0.0, C2 = 0.0, C3 = 0.0;
    double S = 0.0, S_tilde = 0.0;
    double nu = 0.0;
};
BoundConstants bound_constants(double sigma, const SectorParams& sector, double eps1 = 0.25,
                               double eps2 = 0.25, double eps3 = 0.25);

enum class LemmaKind { L0, L1, L2, L3 };

struct LemmaParams {
    double n = 0.0;                      ///< L1, L2
    double alpha = 0.0;                  ///< L1, L2
    long k = 0;                          ///< L3
    int j = 0;                           ///< L0
    const SectorialOperator* op = nullptr; ///< L0
};

struct LemmaResult {
    double lhs_max = 0.0;
    double bound = 0.0;
    double argmax = 0.0;
};

/// Executable one-sided inequalities:
///   L1: max_{t>=1} (1-1/t)^n t^-a            <= (a/e)^a n^-a
///   L2: max_{t>0}  (t/(t+1))^n t^-a          <= a^a n^-a        (n > a)
///   L3: max_{t>=0} [t/((t/k+1)(t+1))]^k      <= e e^{-2 sqrt k}
///   L0: max_spec   ((1/lambda + 1/j))^j      <= (L+1)^j         (diagonal spectrum)
/// The maxima come from a 1e4-point log grid refined by golden-section
/// search.  Domain violations raise "lemma_domain"; a computed lhs above
/// bound*(1+1e-9) raises "lemma_violation".
LemmaResult lemma_check(LemmaKind kind, const LemmaParams& params);

} // namespace cayley
