#pragma once

#include <functional>
#include <vector>

#include "cayley/vector_ops.hpp"

namespace cayley {

/// sin(2 k pi x) and cos(2 k pi x) with the argument folded to min(x, 1-x).
/// The fold is exact (sin is antisymmetric, cos symmetric about x = 1/2 at
/// these frequencies) and makes values at x and 1-x bitwise consistent, which
/// the solvers rely on for their symmetry guarantee.
double sin2kpi(int k, double x);
double cos2kpi(int k, double x);

/// Mean / sine / cosine coefficient families of the periodic expansion
///   f(x) = f0 + sum_k sqrt(2) sin(2 k pi x) fs_k + sum_k sqrt(2) cos(2 k pi x) fc_k
/// (orthonormal convention: the sqrt(2) factors appear in both sums).
struct FourierData {
    Vector f0;
    std::vector<Vector> fs;
    std::vector<Vector> fc;

    int modes() const { return static_cast<int>(fs.size()); }
    std::size_t dim() const { return f0.size(); }
    void validate() const;
};

struct QuadratureSpec {
    int panels = 64;
    int nodes_per_panel = 8;
};

/// Gauss-Legendre nodes and weights on [-1,1], computed by Newton iteration
/// on the Legendre recurrence from Chebyshev initial guesses.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

using VectorField = std::function<Vector(double)>;

/// Project a sampled right-hand side onto K modes by composite
/// Gauss-Legendre quadrature:
///   f0 = int f,  fs_k = int f sqrt(2) sin(2k pi x),  fc_k likewise with cos.
FourierData decompose(const VectorField& f, std::size_t dim, int K, const QuadratureSpec& quad);

/// Pass-through for explicitly given coefficients, truncated to K modes.
/// K beyond the stored length raises "coeff_out_of_range".
FourierData truncate_data(const FourierData& data, int K);

/// Diagnostic round-trip: evaluate the expansion at x.
Vector resynthesize(const FourierData& data, double x);

} // namespace cayley
