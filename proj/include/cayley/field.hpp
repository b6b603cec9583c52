#pragma once

#include <vector>

#include "cayley/vector_ops.hpp"

namespace cayley {

/// Sampled solution u(x_i) on an ascending grid in [0,1]; one state vector
/// per grid point.  N is the series truncation; M (when >= 0) the Cayley
/// truncation of the inhomogeneous bracket.
struct SolutionField {
    std::vector<double> grid;
    std::vector<Vector> values;
    int N = 0;
    int M = -1;
    NormKind norm = NormKind::L2;
};

/// Interior dyadic grid x_i = i/m, i = 1..m-1.
inline std::vector<double> interior_grid(int m = 64) {
    if (m < 2) throw Error("empty_grid", "grid parameter m must be >= 2");
    std::vector<double> g(m - 1);
    for (int i = 1; i < m; ++i) g[i - 1] = static_cast<double>(i) / m;
    return g;
}

} // namespace cayley
