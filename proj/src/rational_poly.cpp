#include "cayley/rational_poly.hpp"

#include <cmath>

namespace cayley {

namespace {

const double kPi = 3.14159265358979323846;

Polynomial closed_form_v1() {
    // -x(1 - x^2)/6 = -x/6 + x^3/6
    return Polynomial({Rational(0), Rational(-1, 6), Rational(0), Rational(1, 6)});
}

} // namespace

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Polynomial::eval_double(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + static_cast<double>(*it);
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial();
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rational(i);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    std::vector<Rational> sum(std::max(coeffs_.size(), other.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) sum[i] += coeffs_[i];
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) sum[i] += other.coeffs_[i];
    return Polynomial(std::move(sum));
}

Polynomial Polynomial::operator-(const Polynomial& other) const { return *this + (-other); }

Polynomial Polynomial::operator-() const {
    std::vector<Rational> neg(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) neg[i] = -coeffs_[i];
    return Polynomial(std::move(neg));
}

Polynomial green_apply(const Polynomial& p) {
    // Particular solution q of q'' = -p with q(0) = 0, then a linear
    // correction enforcing the second boundary value:
    //   q_{i+2} = -p_i / ((i+1)(i+2)),   w = q - q(1) x.
    const auto& pc = p.coeffs();
    std::vector<Rational> q(pc.size() + 2, Rational(0));
    for (std::size_t i = 0; i < pc.size(); ++i)
        q[i + 2] = -pc[i] / Rational((i + 1) * (i + 2));
    Rational q_at_one(0);
    for (const auto& c : q) q_at_one += c;
    q[1] -= q_at_one;
    return Polynomial(std::move(q));
}

std::vector<Polynomial> v_sequence(int K, int cap) {
    if (K < 0) throw Error("invalid_index", "v_sequence needs K >= 0");
    if (K > cap)
        throw Error("recurrence_cap", "K = " + std::to_string(K) +
                                          " exceeds the exact-arithmetic cap " + std::to_string(cap));
    std::vector<Polynomial> seq;
    seq.reserve(K + 1);
    seq.push_back(Polynomial({Rational(0), Rational(1)})); // v_0(x) = x
    if (K == 0) return seq;

    Polynomial v1 = -green_apply(seq[0]);
    if (v1 != closed_form_v1())
        throw Error("recurrence_broken", "v_1 does not match -x(1-x^2)/6");
    seq.push_back(std::move(v1));

    for (int k = 2; k <= K; ++k) {
        Polynomial next = seq.back() - green_apply(seq.back());
        if (next.degree() != 2 * k + 1)
            throw Error("recurrence_broken", "deg v_" + std::to_string(k) + " != 2k+1");
        if (next.coeff(0) != 0 || next.eval(Rational(1)) != 0)
            throw Error("recurrence_broken", "v_" + std::to_string(k) + " boundary values nonzero");
        seq.push_back(std::move(next));
    }
    return seq;
}

double fourier_coeff(int k, int p) {
    if (k < 1 || p < 1) throw Error("invalid_index", "fourier_coeff needs k >= 1, p >= 1");
    const double pp = p * kPi;
    const double sign = (p % 2 == 0) ? 1.0 : -1.0;
    return std::sqrt(2.0) * sign / (pp * pp * pp) * std::pow(1.0 - 1.0 / (pp * pp), k - 1);
}

double eval_fourier(int k, double x, int terms) {
    if (k < 1) throw Error("invalid_index", "eval_fourier needs k >= 1");
    if (terms < 1) throw Error("invalid_index", "eval_fourier needs terms >= 1");
    double acc = 0.0;
    const double sqrt2 = std::sqrt(2.0);
    for (int p = 1; p <= terms; ++p)
        acc += sqrt2 * fourier_coeff(k, p) * std::sin(p * kPi * x);
    return acc;
}

double weighted_ratio(const Polynomial& v, double x) {
    if (v.coeff(0) != 0 || v.eval(Rational(1)) != 0)
        throw Error("ratio_undefined", "polynomial must vanish at both endpoints");
    if (!(x >= 0.0 && x <= 1.0))
        throw Error("ratio_undefined", "x outside [0,1]");
    if (x == 0.0) return static_cast<double>(v.derivative().eval(Rational(0)));
    if (x == 1.0) return -static_cast<double>(v.derivative().eval(Rational(1)));
    return v.eval_double(x) / std::min(x, 1.0 - x);
}

// ---------------------------------------------------------------------------
// VSequence

VSequence::VSequence(int rational_cap, int fourier_terms)
    : cap_(rational_cap), fourier_terms_(fourier_terms) {
    if (cap_ < 1) throw Error("invalid_index", "rational_cap must be >= 1");
    if (fourier_terms_ < 1) throw Error("invalid_index", "fourier_terms must be >= 1");
    // Fixed capacity keeps element addresses stable, so value() can read
    // published entries without holding the lock.
    polys_.reserve(cap_ + 1);
    double_coeffs_.reserve(cap_ + 1);
}

void VSequence::build_to(int upto) const {
    if (polys_.empty()) {
        polys_.push_back(Polynomial({Rational(0), Rational(1)}));
        double_coeffs_.push_back({0.0, 1.0});
        built_.store(0, std::memory_order_release);
    }
    while (static_cast<int>(polys_.size()) <= upto) {
        const Polynomial& prev = polys_.back();
        Polynomial next =
            polys_.size() == 1 ? -green_apply(prev) : prev - green_apply(prev);
        const int k = static_cast<int>(polys_.size());
        if (k == 1 && next != closed_form_v1())
            throw Error("recurrence_broken", "v_1 does not match -x(1-x^2)/6");
        if (next.coeff(0) != 0 || next.eval(Rational(1)) != 0)
            throw Error("recurrence_broken", "v_" + std::to_string(k) + " boundary values nonzero");
        std::vector<double> dc(next.coeffs().size());
        for (std::size_t i = 0; i < dc.size(); ++i) dc[i] = static_cast<double>(next.coeffs()[i]);
        polys_.push_back(std::move(next));
        double_coeffs_.push_back(std::move(dc));
        built_.store(k, std::memory_order_release);
    }
}

void VSequence::ensure(int k) const {
    const int target = std::min(k, cap_);
    if (built_.load(std::memory_order_acquire) >= target) return;
    std::lock_guard<std::mutex> lock(mu_);
    build_to(target);
}

const Polynomial& VSequence::poly(int k) const {
    if (k < 0 || k > cap_)
        throw Error("recurrence_cap", "exact polynomial only for 0 <= k <= cap");
    ensure(k);
    return polys_[k];
}

double VSequence::value(int k, double x) const {
    if (k < 0) throw Error("invalid_index", "v_k needs k >= 0");
    // Exact endpoint values of the family.
    if (x == 0.0) return 0.0;
    if (x == 1.0) return k == 0 ? 1.0 : 0.0;
    if (k > cap_) return eval_fourier(k, x, fourier_terms_);
    if (built_.load(std::memory_order_acquire) < k) ensure(k);
    const std::vector<double>& dc = double_coeffs_[k];
    double acc = 0.0;
    for (auto it = dc.rbegin(); it != dc.rend(); ++it) acc = acc * x + *it;
    return acc;
}

} // namespace cayley
