#include "cayley/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace cayley {

namespace {

const double kPi = 3.14159265358979323846;

void check_fields(const SolutionField& exact, const SolutionField& approx) {
    if (exact.grid.size() != approx.grid.size())
        throw Error("grid_mismatch", "grids have different sizes");
    for (std::size_t i = 0; i < exact.grid.size(); ++i)
        if (exact.grid[i] != approx.grid[i])
            throw Error("grid_mismatch", "grids differ at index " + std::to_string(i));
    if (exact.grid.empty()) throw Error("empty_grid", "error norms need at least one point");
    for (std::size_t i = 0; i < exact.values.size(); ++i)
        check_same_dim(exact.values[i], approx.values[i], "error norm");
}

struct RegressionInput {
    std::vector<double> t;
    std::vector<double> y;
};

RegressionInput regression_input(const std::vector<ConvergenceRecord>& records,
                                 const std::function<double(int)>& abscissa) {
    RegressionInput in;
    for (const auto& rec : records) {
        if (!(rec.weighted_error > 0.0)) continue; // exact hits carry no slope information
        in.t.push_back(abscissa(rec.N));
        in.y.push_back(std::log(rec.weighted_error));
    }
    if (in.t.size() < 3)
        throw Error("insufficient_points",
                    "need >= 3 positive-error records, have " + std::to_string(in.t.size()));
    return in;
}

RateFit least_squares(const RegressionInput& in) {
    const std::size_t n = in.t.size();
    double mt = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mt += in.t[i];
        my += in.y[i];
    }
    mt /= n;
    my /= n;
    double stt = 0.0, sty = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dt = in.t[i] - mt, dy = in.y[i] - my;
        stt += dt * dt;
        sty += dt * dy;
        syy += dy * dy;
    }
    if (stt == 0.0) throw Error("insufficient_points", "degenerate abscissae");
    const double slope = sty / stt;
    RateFit fit;
    fit.rate = -slope;
    fit.points_used = static_cast<int>(n);
    const double ss_res = syy - slope * sty;
    fit.r2 = (syy == 0.0) ? 1.0 : 1.0 - std::max(0.0, ss_res) / syy;
    return fit;
}

/// Golden-section refinement of a unimodal-enough objective around a bracket.
double golden_max(const std::function<double(double)>& f, double lo, double hi, double& arg) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int iter = 0; iter < 200 && (b - a) > 1e-14 * std::max(1.0, std::fabs(a)); ++iter) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    arg = 0.5 * (a + b);
    return f(arg);
}

/// Maximize f over [lo, hi] on a log-spaced grid, then golden-section refine
/// around the best grid point.
double grid_max(const std::function<double(double)>& f, double lo, double hi, double& arg) {
    const int points = 10000;
    double best = -std::numeric_limits<double>::infinity();
    int best_i = 0;
    const double ratio = hi / lo;
    for (int i = 0; i < points; ++i) {
        const double t = lo * std::pow(ratio, static_cast<double>(i) / (points - 1));
        const double v = f(t);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    const double t_lo =
        lo * std::pow(ratio, static_cast<double>(std::max(0, best_i - 1)) / (points - 1));
    const double t_hi =
        lo * std::pow(ratio, static_cast<double>(std::min(points - 1, best_i + 1)) / (points - 1));
    double refined_arg = 0.0;
    const double refined = golden_max(f, t_lo, t_hi, refined_arg);
    if (refined >= best) {
        arg = refined_arg;
        return refined;
    }
    arg = lo * std::pow(ratio, static_cast<double>(best_i) / (points - 1));
    return best;
}

void assert_within_bound(LemmaResult& r, const char* name) {
    if (!(r.lhs_max <= r.bound * (1.0 + 1e-9)))
        throw Error("lemma_violation", std::string(name) + ": lhs " + std::to_string(r.lhs_max) +
                                           " exceeds bound " + std::to_string(r.bound));
}

} // namespace

double weighted_error(const SolutionField& exact, const SolutionField& approx, NormKind kind) {
    check_fields(exact, approx);
    double worst = 0.0;
    for (std::size_t i = 0; i < exact.grid.size(); ++i) {
        const double x = exact.grid[i];
        const double weight = std::min(x, 1.0 - x);
        if (weight <= 0.0)
            throw Error("weight_zero", "weighted error undefined at grid endpoint x = " +
                                           std::to_string(x));
        worst = std::max(worst, norm(diff(exact.values[i], approx.values[i]), kind) / weight);
    }
    return worst;
}

double plain_error(const SolutionField& exact, const SolutionField& approx, NormKind kind) {
    check_fields(exact, approx);
    double worst = 0.0;
    for (std::size_t i = 0; i < exact.grid.size(); ++i)
        worst = std::max(worst, norm(diff(exact.values[i], approx.values[i]), kind));
    return worst;
}

RateFit fit_algebraic_rate(const std::vector<ConvergenceRecord>& records) {
    return least_squares(
        regression_input(records, [](int N) { return std::log(static_cast<double>(N)); }));
}

RateFit fit_exponential_rate(const std::vector<ConvergenceRecord>& records) {
    return least_squares(
        regression_input(records, [](int N) { return std::sqrt(static_cast<double>(N)); }));
}

double zeta(double s) {
    if (!(s > 1.0)) throw Error("divergent", "zeta needs s > 1");
    // Euler-Maclaurin: direct sum to N-1, integral tail, trapezoid correction,
    // Bernoulli corrections B2..B12.
    const int N = 32;
    double sum = 0.0;
    for (int n = 1; n < N; ++n) sum += std::pow(static_cast<double>(n), -s);
    const double Nd = static_cast<double>(N);
    sum += std::pow(Nd, 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(Nd, -s);
    static const double bernoulli[] = {1.0 / 6.0,  -1.0 / 30.0, 1.0 / 42.0,
                                       -1.0 / 30.0, 5.0 / 66.0,  -691.0 / 2730.0};
    double rising = s;                    // s (s+1) ... (s+2i-2)
    double power = std::pow(Nd, -s - 1.0); // N^{-s-2i+1}
    double factorial = 2.0;               // (2i)!
    for (int i = 1; i <= 6; ++i) {
        sum += bernoulli[i - 1] / factorial * rising * power;
        rising *= (s + 2.0 * i - 1.0) * (s + 2.0 * i);
        power /= Nd * Nd;
        factorial *= (2.0 * i + 1.0) * (2.0 * i + 2.0);
    }
    return sum;
}

SeriesConstants series_constants() {
    SeriesConstants out;
    for (long k = 1;; ++k) {
        const double rk = std::sqrt(static_cast<double>(k));
        const double term = std::exp(-rk) * (rk + 1.0) * (rk + 1.0) / rk;
        out.S += term;
        if (term < 1e-14) break;
    }
    for (long k = 1;; ++k) {
        const double term = std::exp(-std::sqrt(static_cast<double>(k)));
        out.S_tilde += term;
        if (term < 1e-14) break;
    }
    return out;
}

double constant_C1(double eps1) {
    if (!(eps1 > 0.0 && eps1 < 1.0)) throw Error("parameter_domain", "C1 needs eps1 in (0,1)");
    return std::pow((1.0 - eps1) / std::exp(1.0), (1.0 - eps1) / 2.0) * 2.0 /
           std::pow(kPi, 1.0 + eps1) * zeta(1.0 + eps1);
}

double constant_C2(double sigma, double eps2, double L) {
    if (!(eps2 > 0.0 && eps2 < std::min(1.0, sigma)))
        throw Error("parameter_domain", "C2 needs 0 < eps2 < min(1, sigma)");
    return L / std::sin(kPi * eps2) * std::pow(sigma - eps2, (sigma - eps2) / 2.0);
}

double constant_C3(double sigma, double eps1, double eps3, double L) {
    if (!(eps1 > 0.0 && eps1 < 1.0 && eps3 > 0.0 && eps3 < 1.0 && sigma > eps1 + eps3))
        throw Error("parameter_domain", "C3 needs eps1, eps3 in (0,1) and sigma > eps1 + eps3");
    return 4.0 * constant_C1(eps1) * L / (std::sin(kPi * eps3) * (sigma - eps1 - eps3)) *
           std::pow(1.0 + sigma - eps3, (1.0 + sigma - eps3) / 2.0);
}

double constant_nu(double phi, double L) {
    if (!(phi >= 0.0 && phi < kPi / 2.0 && L > 0.0))
        throw Error("parameter_domain", "nu needs phi in [0, pi/2) and L > 0");
    return std::cos(phi) / (L + 1.0);
}

BoundConstants bound_constants(double sigma, const SectorParams& sector, double eps1, double eps2,
                               double eps3) {
    BoundConstants b;
    b.eps1 = eps1;
    b.eps2 = eps2;
    b.eps3 = eps3;
    b.sigma = sigma;
    b.L = sector.L;
    b.C1 = constant_C1(eps1);
    b.C2 = constant_C2(sigma, eps2, sector.L);
    b.C3 = constant_C3(sigma, eps1, eps3, sector.L);
    const SeriesConstants s = series_constants();
    b.S = s.S;
    b.S_tilde = s.S_tilde;
    b.nu = constant_nu(sector.phi, sector.L);
    return b;
}

LemmaResult lemma_check(LemmaKind kind, const LemmaParams& params) {
    LemmaResult r;
    switch (kind) {
    case LemmaKind::L1: {
        const double n = params.n, a = params.alpha;
        if (!(n > 0.0 && a > 0.0)) throw Error("lemma_domain", "L1 needs n > 0 and alpha > 0");
        auto f = [n, a](double t) {
            return std::exp(n * std::log1p(-1.0 / t) - a * std::log(t));
        };
        // value at t=1 is 0, approach from slightly inside
        r.lhs_max = grid_max(f, 1.0 + 1e-12, 1e6, r.argmax);
        r.bound = std::pow(a / std::exp(1.0), a) * std::pow(n, -a);
        assert_within_bound(r, "L1");
        return r;
    }
    case LemmaKind::L2: {
        const double n = params.n, a = params.alpha;
        if (!(n > a && a > 0.0)) throw Error("lemma_domain", "L2 needs n > alpha > 0");
        auto f = [n, a](double t) {
            return std::exp(n * (std::log(t) - std::log1p(t)) - a * std::log(t));
        };
        r.lhs_max = grid_max(f, 1e-6, 1e6, r.argmax);
        r.bound = std::pow(a, a) * std::pow(n, -a);
        assert_within_bound(r, "L2");
        return r;
    }
    case LemmaKind::L3: {
        const long k = params.k;
        if (k < 1) throw Error("lemma_domain", "L3 needs integer k >= 1");
        const double kd = static_cast<double>(k);
        auto f = [kd](double t) {
            return std::exp(kd * (std::log(t) - std::log1p(t / kd) - std::log1p(t)));
        };
        r.lhs_max = grid_max(f, 1e-6, 1e6, r.argmax);
        r.bound = std::exp(1.0) * std::exp(-2.0 * std::sqrt(kd));
        assert_within_bound(r, "L3");
        return r;
    }
    case LemmaKind::L0: {
        if (params.op == nullptr || params.j < 1)
            throw Error("lemma_domain", "L0 needs an operator and integer j >= 1");
        const auto spec = params.op->spectrum();
        for (const auto& z : spec)
            if (z.imag() != 0.0)
                throw Error("lemma_domain", "L0 check needs a real (diagonal) spectrum");
        const double j = params.j;
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& z : spec) {
            const double lam = z.real();
            const double v = j * std::log(1.0 / lam + 1.0 / j); // log ((1+lam/j)^j lam^-j)
            if (v > best) {
                best = v;
                r.argmax = lam;
            }
        }
        r.lhs_max = std::exp(best);
        const double L = params.op->sector_params().L;
        r.bound = std::pow(L + 1.0, j);
        assert_within_bound(r, "L0");
        return r;
    }
    }
    throw Error("lemma_domain", "unknown lemma kind");
}

} // namespace cayley
