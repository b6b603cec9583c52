#include "cayley/homogeneous.hpp"

namespace cayley {

std::vector<Vector> cayley_iterates(const SectorialOperator& op, const Vector& seed, int count) {
    if (seed.size() != op.dim())
        throw Error("dim_mismatch", "seed has dim " + std::to_string(seed.size()) +
                                        ", operator has " + std::to_string(op.dim()));
    if (count < 0) throw Error("invalid_index", "iterate count must be >= 0");
    std::vector<Vector> iterates;
    iterates.reserve(count + 1);
    iterates.push_back(seed);
    for (int k = 1; k <= count; ++k) {
        const Vector& prev = iterates.back();
        Vector step = op.shift_solve(1.0, prev);
        Vector next(prev.size());
        for (std::size_t i = 0; i < prev.size(); ++i) next[i] = prev[i] - step[i];
        iterates.push_back(std::move(next));
    }
    return iterates;
}

SolutionField solve_homogeneous(const SectorialOperator& op, const Vector& u1, int N,
                                const std::vector<double>& grid, const VSequence& vseq) {
    if (grid.empty()) throw Error("empty_grid", "solve_homogeneous needs at least one grid point");
    for (double x : grid)
        if (!(x >= 0.0 && x <= 1.0))
            throw Error("empty_grid", "grid point outside [0,1]: " + std::to_string(x));
    const std::vector<Vector> y = cayley_iterates(op, u1, N);
    vseq.ensure(N);

    SolutionField field;
    field.grid = grid;
    field.N = N;
    field.values.reserve(grid.size());
    for (double x : grid) {
        Vector u(op.dim(), 0.0);
        for (int k = 0; k <= N; ++k) axpy(vseq.value(k, x), y[k], u);
        field.values.push_back(std::move(u));
    }
    return field;
}

} // namespace cayley
