#include "cayley/inhomogeneous.hpp"

#include <cmath>

#include "cayley/homogeneous.hpp"

namespace cayley {

namespace {

const double kPi = 3.14159265358979323846;

double mode_shift(int k) { return (2.0 * k * kPi) * (2.0 * k * kPi); }

/// v_j(1-x) + v_j(x), the symmetric polynomial weight of the Cayley bracket.
double symmetric_weight(const VSequence& vseq, int j, double x) {
    return vseq.value(j, 1.0 - x) + vseq.value(j, x);
}

/// bracket = lead * seed - sum_{j=0}^{M} weights[j] w_j
Vector bracket_weighted(const Vector& seed, double lead, const std::vector<Vector>& iterates,
                        const std::vector<double>& weights) {
    Vector b = scaled(seed, lead);
    for (std::size_t j = 0; j < weights.size(); ++j) axpy(-weights[j], iterates[j], b);
    return b;
}

Vector bracket_at(const Vector& seed, double lead, const std::vector<Vector>& iterates, int M,
                  double x, const VSequence& vseq) {
    std::vector<double> weights(M + 1);
    for (int j = 0; j <= M; ++j) weights[j] = symmetric_weight(vseq, j, x);
    return bracket_weighted(seed, lead, iterates, weights);
}

} // namespace

Vector sine_mode_term(const SectorialOperator& op, int k, const Vector& fsk, double x) {
    if (k < 1) throw Error("invalid_index", "sine_mode_term needs k >= 1");
    Vector solved = op.shift_solve(mode_shift(k), fsk);
    return scaled(solved, std::sqrt(2.0) * sin2kpi(k, x));
}

Vector zero_mode_term(const SectorialOperator& op, const Vector& f0, int M, double x,
                      const VSequence& vseq) {
    if (M < 0) throw Error("invalid_index", "zero_mode_term needs M >= 0");
    const std::vector<Vector> w = cayley_iterates(op, f0, M);
    vseq.ensure(M);
    return op.shift_solve(0.0, bracket_at(f0, 1.0, w, M, x, vseq));
}

Vector cosine_mode_term(const SectorialOperator& op, int k, const Vector& fck, int M, double x,
                        const VSequence& vseq) {
    if (k < 1) throw Error("invalid_index", "cosine_mode_term needs k >= 1");
    if (M < 0) throw Error("invalid_index", "cosine_mode_term needs M >= 0");
    const std::vector<Vector> w = cayley_iterates(op, fck, M);
    vseq.ensure(M);
    Vector solved = op.shift_solve(mode_shift(k), bracket_at(fck, cos2kpi(k, x), w, M, x, vseq));
    return scaled(solved, std::sqrt(2.0));
}

SolutionField solve_inhomogeneous(const SectorialOperator& op, const FourierData& data, int N,
                                  int M, const std::vector<double>& grid, const VSequence& vseq) {
    data.validate();
    if (data.dim() != op.dim())
        throw Error("dim_mismatch", "rhs data dim " + std::to_string(data.dim()) +
                                        ", operator dim " + std::to_string(op.dim()));
    if (N < 0 || M < 0) throw Error("invalid_index", "solve_inhomogeneous needs N, M >= 0");
    if (N > data.modes())
        throw Error("coeff_out_of_range", "N = " + std::to_string(N) + " exceeds stored modes " +
                                              std::to_string(data.modes()));
    if (grid.empty()) throw Error("empty_grid", "solve_inhomogeneous needs at least one grid point");
    for (double x : grid)
        if (!(x >= 0.0 && x <= 1.0))
            throw Error("empty_grid", "grid point outside [0,1]: " + std::to_string(x));

    vseq.ensure(M);
    const double sqrt2 = std::sqrt(2.0);
    const std::size_t dim = op.dim();
    const std::size_t points = grid.size();

    // The symmetric weights are shared by the mean and every cosine bracket;
    // evaluate each polynomial once per grid point.
    std::vector<std::vector<double>> weights(points, std::vector<double>(M + 1));
    for (std::size_t i = 0; i < points; ++i)
        for (int j = 0; j <= M; ++j) weights[i][j] = symmetric_weight(vseq, j, grid[i]);

    SolutionField field;
    field.grid = grid;
    field.N = N;
    field.M = M;
    field.values.assign(points, Vector(dim, 0.0));

    // Sine block: the solve is x-independent, one per mode.
    for (int k = 1; k <= N; ++k) {
        const Vector solved = op.shift_solve(mode_shift(k), data.fs[k - 1]);
        for (std::size_t i = 0; i < points; ++i)
            axpy(sqrt2 * sin2kpi(k, grid[i]), solved, field.values[i]);
    }

    // Mean block: Cayley iterates of f0 once, one zero-shift solve per point.
    {
        const std::vector<Vector> w = cayley_iterates(op, data.f0, M);
        for (std::size_t i = 0; i < points; ++i) {
            Vector term = op.shift_solve(0.0, bracket_weighted(data.f0, 1.0, w, weights[i]));
            axpy(1.0, term, field.values[i]);
        }
    }

    // Cosine block: iterates of fc_k once per mode, one solve per (mode, point).
    for (int k = 1; k <= N; ++k) {
        const std::vector<Vector> w = cayley_iterates(op, data.fc[k - 1], M);
        for (std::size_t i = 0; i < points; ++i) {
            Vector term = op.shift_solve(
                mode_shift(k), bracket_weighted(data.fc[k - 1], cos2kpi(k, grid[i]), w, weights[i]));
            axpy(sqrt2, term, field.values[i]);
        }
    }
    return field;
}

} // namespace cayley
