#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "cayley/error.hpp"

namespace cayley {

/// Element of the state space E.  Plain contiguous doubles; operators and
/// solvers enforce dimension agreement at their boundaries.
using Vector = std::vector<double>;

enum class NormKind { L2, Max, L1 };

inline NormKind parse_norm(const std::string& name) {
    if (name == "l2") return NormKind::L2;
    if (name == "max") return NormKind::Max;
    if (name == "l1") return NormKind::L1;
    throw Error("unknown_norm", "norm must be one of l2, max, l1; got '" + name + "'");
}

inline std::string norm_name(NormKind kind) {
    switch (kind) {
    case NormKind::L2: return "l2";
    case NormKind::Max: return "max";
    case NormKind::L1: return "l1";
    }
    return "l2";
}

inline void check_same_dim(const Vector& a, const Vector& b, const char* where) {
    if (a.size() != b.size())
        throw Error("dim_mismatch", std::string(where) + ": " + std::to_string(a.size()) +
                                        " vs " + std::to_string(b.size()));
}

inline double norm(const Vector& v, NormKind kind = NormKind::L2) {
    double acc = 0.0;
    switch (kind) {
    case NormKind::L2:
        for (double x : v) acc += x * x;
        return std::sqrt(acc);
    case NormKind::Max:
        for (double x : v) acc = std::max(acc, std::fabs(x));
        return acc;
    case NormKind::L1:
        for (double x : v) acc += std::fabs(x);
        return acc;
    }
    return acc;
}

/// y += a*x
inline void axpy(double a, const Vector& x, Vector& y) {
    check_same_dim(x, y, "axpy");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

inline Vector scaled(const Vector& x, double a) {
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i];
    return r;
}

inline Vector diff(const Vector& a, const Vector& b) {
    check_same_dim(a, b, "diff");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

} // namespace cayley
