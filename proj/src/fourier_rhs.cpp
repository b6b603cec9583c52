#include "cayley/fourier_rhs.hpp"

#include <cmath>

#include "cayley/error.hpp"

namespace cayley {

namespace {
const double kPi = 3.14159265358979323846;
}

double sin2kpi(int k, double x) {
    if (x > 0.5) return -std::sin(2.0 * kPi * k * (1.0 - x));
    return std::sin(2.0 * kPi * k * x);
}

double cos2kpi(int k, double x) {
    return std::cos(2.0 * kPi * k * std::min(x, 1.0 - x));
}

void FourierData::validate() const {
    if (f0.empty()) throw Error("invalid_dimension", "f0 must have dim >= 1");
    if (fs.size() != fc.size())
        throw Error("coeff_out_of_range", "fs and fc must have the same mode count");
    for (const auto& v : fs) check_same_dim(v, f0, "FourierData fs");
    for (const auto& v : fc) check_same_dim(v, f0, "FourierData fc");
}

GaussRule gauss_legendre(int n) {
    if (n < 1) throw Error("invalid_index", "gauss_legendre needs n >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess, then Newton on P_n.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

FourierData decompose(const VectorField& f, std::size_t dim, int K, const QuadratureSpec& quad) {
    if (K < 0) throw Error("invalid_index", "mode count K must be >= 0");
    if (quad.panels < 1 || quad.nodes_per_panel < 1)
        throw Error("invalid_index", "quadrature needs panels >= 1 and nodes >= 1");

    const GaussRule rule = gauss_legendre(quad.nodes_per_panel);
    FourierData data;
    data.f0.assign(dim, 0.0);
    data.fs.assign(K, Vector(dim, 0.0));
    data.fc.assign(K, Vector(dim, 0.0));

    const double h = 1.0 / quad.panels;
    const double sqrt2 = std::sqrt(2.0);
    for (int panel = 0; panel < quad.panels; ++panel) {
        const double a = panel * h;
        for (int q = 0; q < quad.nodes_per_panel; ++q) {
            const double x = a + 0.5 * h * (rule.nodes[q] + 1.0);
            const double w = 0.5 * h * rule.weights[q];
            const Vector sample = f(x);
            if (sample.size() != dim)
                throw Error("dim_mismatch", "sampled rhs has dim " + std::to_string(sample.size()));
            axpy(w, sample, data.f0);
            for (int k = 1; k <= K; ++k) {
                axpy(w * sqrt2 * sin2kpi(k, x), sample, data.fs[k - 1]);
                axpy(w * sqrt2 * cos2kpi(k, x), sample, data.fc[k - 1]);
            }
        }
    }
    return data;
}

FourierData truncate_data(const FourierData& data, int K) {
    data.validate();
    if (K < 0 || K > data.modes())
        throw Error("coeff_out_of_range", "requested " + std::to_string(K) + " modes, stored " +
                                              std::to_string(data.modes()));
    FourierData out;
    out.f0 = data.f0;
    out.fs.assign(data.fs.begin(), data.fs.begin() + K);
    out.fc.assign(data.fc.begin(), data.fc.begin() + K);
    return out;
}

Vector resynthesize(const FourierData& data, double x) {
    data.validate();
    if (!(x >= 0.0 && x <= 1.0)) throw Error("empty_grid", "resynthesize needs x in [0,1]");
    Vector r = data.f0;
    const double sqrt2 = std::sqrt(2.0);
    for (int k = 1; k <= data.modes(); ++k) axpy(sqrt2 * sin2kpi(k, x), data.fs[k - 1], r);
    for (int k = 1; k <= data.modes(); ++k) axpy(sqrt2 * cos2kpi(k, x), data.fc[k - 1], r);
    return r;
}

} // namespace cayley
