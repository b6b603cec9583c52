#include "cayley/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cayley {

namespace {

std::uint64_t shift_key(double c) { return std::bit_cast<std::uint64_t>(c); }

void require_positive_spectrum(const std::vector<std::complex<double>>& spec) {
    if (spec.empty()) throw Error("invalid_dimension", "operator must have dimension >= 1");
    for (const auto& z : spec)
        if (!(z.real() > 0.0))
            throw Error("nonpositive_spectrum",
                        "eigenvalue with nonpositive real part: " + std::to_string(z.real()));
}

} // namespace

// ---------------------------------------------------------------------------
// SectorialOperator base

Vector SectorialOperator::shift_solve(double c, const Vector& b) const {
    if (!(c >= 0.0)) throw Error("invalid_shift", "shift must be >= 0, got " + std::to_string(c));
    if (b.size() != dim())
        throw Error("dim_mismatch", "shift_solve rhs has dim " + std::to_string(b.size()) +
                                        ", operator has " + std::to_string(dim()));
    {
        std::lock_guard<std::mutex> lock(stats_mu_);
        ++solves_by_shift_[shift_key(c)];
    }
    return do_shift_solve(c, b);
}

long SectorialOperator::solve_count(double c) const {
    std::lock_guard<std::mutex> lock(stats_mu_);
    auto it = solves_by_shift_.find(shift_key(c));
    return it == solves_by_shift_.end() ? 0 : it->second;
}

long SectorialOperator::total_solve_count() const {
    std::lock_guard<std::mutex> lock(stats_mu_);
    long total = 0;
    for (const auto& [key, count] : solves_by_shift_) total += count;
    return total;
}

void SectorialOperator::reset_solve_counts() const {
    std::lock_guard<std::mutex> lock(stats_mu_);
    solves_by_shift_.clear();
}

SectorParams SectorialOperator::sector_params() const {
    std::lock_guard<std::mutex> lock(sector_mu_);
    if (sector_cache_) return *sector_cache_;

    const auto spec = spectrum();
    SectorParams p;
    p.gamma = std::abs(spec.front());
    double max_arg = 0.0;
    for (const auto& z : spec) {
        p.gamma = std::min(p.gamma, std::abs(z));
        max_arg = std::max(max_arg, std::abs(std::arg(z)));
    }
    p.phi = max_arg + 0.01; // margin keeps the boundary rays off the spectrum

    // Sample (1+|z|)||(zI-A)^-1|| along both boundary rays, log-spaced moduli.
    const int samples = 64;
    const double lo = 1e-3, hi = 1e6;
    double L = 0.0;
    for (int i = 0; i < samples; ++i) {
        double t = static_cast<double>(i) / (samples - 1);
        double rho = lo * std::pow(hi / lo, t);
        for (double sign : {1.0, -1.0}) {
            std::complex<double> z = std::polar(rho, sign * p.phi);
            L = std::max(L, (1.0 + rho) * resolvent_norm(z));
        }
    }
    p.L = L;
    sector_cache_ = p;
    return p;
}

// ---------------------------------------------------------------------------
// DiagonalOperator

DiagonalOperator::DiagonalOperator(Vector eigenvalues) : eigenvalues_(std::move(eigenvalues)) {
    std::vector<std::complex<double>> spec(eigenvalues_.begin(), eigenvalues_.end());
    require_positive_spectrum(spec);
    for (double lam : eigenvalues_)
        if (!std::isfinite(lam)) throw Error("nonpositive_spectrum", "eigenvalue not finite");
}

Vector DiagonalOperator::apply(const Vector& v) const {
    check_same_dim(v, eigenvalues_, "DiagonalOperator::apply");
    Vector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = eigenvalues_[i] * v[i];
    return r;
}

const Vector* DiagonalOperator::shifted_diagonal(double c) const {
    const std::uint64_t key = shift_key(c);
    {
        std::shared_lock<std::shared_mutex> lock(cache_mu_);
        auto it = shift_cache_.find(key);
        if (it != shift_cache_.end()) return it->second.get();
    }
    auto denom = std::make_shared<Vector>(eigenvalues_.size());
    for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
        (*denom)[i] = c + eigenvalues_[i];
        if ((*denom)[i] == 0.0) throw Error("singular_shift", "c + lambda vanishes");
    }
    std::unique_lock<std::shared_mutex> lock(cache_mu_);
    auto [it, inserted] = shift_cache_.try_emplace(key, std::move(denom));
    return it->second.get();
}

Vector DiagonalOperator::do_shift_solve(double c, const Vector& b) const {
    const Vector& denom = *shifted_diagonal(c);
    Vector x(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) x[i] = b[i] / denom[i];
    return x;
}

Vector DiagonalOperator::power_apply(double s, const Vector& v) const {
    check_same_dim(v, eigenvalues_, "DiagonalOperator::power_apply");
    if (!std::isfinite(s)) throw Error("power_unsupported", "exponent must be finite");
    Vector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = std::pow(eigenvalues_[i], s) * v[i];
    return r;
}

std::vector<std::complex<double>> DiagonalOperator::spectrum() const {
    return {eigenvalues_.begin(), eigenvalues_.end()};
}

double DiagonalOperator::resolvent_norm(std::complex<double> z) const {
    double worst = 0.0;
    for (double lam : eigenvalues_) worst = std::max(worst, 1.0 / std::abs(z - lam));
    return worst;
}

// ---------------------------------------------------------------------------
// DenseOperator

DenseOperator::DenseOperator(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols())
        throw Error("invalid_dimension", "dense operator matrix must be square");
    if (matrix_.rows() < 1) throw Error("invalid_dimension", "operator must have dimension >= 1");

    const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
    symmetric_ = (matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff() <= 1e-13 * scale;

    if (symmetric_) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix_);
        if (es.info() != Eigen::Success)
            throw Error("spectrum_unavailable", "symmetric eigendecomposition failed");
        eigvals_ = es.eigenvalues();
        eigvecs_ = es.eigenvectors();
        spectrum_.reserve(eigvals_.size());
        for (Eigen::Index i = 0; i < eigvals_.size(); ++i) spectrum_.emplace_back(eigvals_[i], 0.0);
    } else {
        Eigen::EigenSolver<Eigen::MatrixXd> es(matrix_);
        if (es.info() != Eigen::Success)
            throw Error("spectrum_unavailable", "eigendecomposition failed");
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            spectrum_.push_back(es.eigenvalues()[i]);
    }
    require_positive_spectrum(spectrum_);
}

Vector DenseOperator::apply(const Vector& v) const {
    if (v.size() != dim())
        throw Error("dim_mismatch", "apply argument has dim " + std::to_string(v.size()));
    Eigen::Map<const Eigen::VectorXd> vm(v.data(), static_cast<Eigen::Index>(v.size()));
    Eigen::VectorXd r = matrix_ * vm;
    return {r.data(), r.data() + r.size()};
}

const DenseOperator::Factorization* DenseOperator::factorization(double c) const {
    const std::uint64_t key = shift_key(c);
    {
        std::shared_lock<std::shared_mutex> lock(cache_mu_);
        auto it = lu_cache_.find(key);
        if (it != lu_cache_.end()) return it->second.get();
    }
    Eigen::MatrixXd shifted = matrix_;
    shifted.diagonal().array() += c;
    auto lu = std::make_shared<const Factorization>(shifted);
    if (lu->matrixLU().diagonal().cwiseAbs().minCoeff() == 0.0)
        throw Error("singular_shift", "shifted matrix is singular");
    std::unique_lock<std::shared_mutex> lock(cache_mu_);
    auto [it, inserted] = lu_cache_.try_emplace(key, std::move(lu));
    return it->second.get();
}

Vector DenseOperator::do_shift_solve(double c, const Vector& b) const {
    const Factorization* lu = factorization(c);
    Eigen::Map<const Eigen::VectorXd> bm(b.data(), static_cast<Eigen::Index>(b.size()));
    Eigen::VectorXd x = lu->solve(bm);
    Eigen::MatrixXd shifted = matrix_;
    shifted.diagonal().array() += c;
    const double residual = (shifted * x - bm).norm();
    if (residual > 1e-10 * bm.norm() && bm.norm() > 0.0)
        throw Error("singular_shift", "shifted solve residual " + std::to_string(residual));
    return {x.data(), x.data() + x.size()};
}

Vector DenseOperator::power_apply(double s, const Vector& v) const {
    if (!symmetric_)
        throw Error("power_unsupported", "fractional powers need a symmetric dense operator");
    if (v.size() != dim())
        throw Error("dim_mismatch", "power_apply argument has dim " + std::to_string(v.size()));
    if (!std::isfinite(s)) throw Error("power_unsupported", "exponent must be finite");
    Eigen::Map<const Eigen::VectorXd> vm(v.data(), static_cast<Eigen::Index>(v.size()));
    Eigen::VectorXd coeffs = eigvecs_.transpose() * vm;
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs[i] *= std::pow(eigvals_[i], s);
    Eigen::VectorXd r = eigvecs_ * coeffs;
    return {r.data(), r.data() + r.size()};
}

std::vector<std::complex<double>> DenseOperator::spectrum() const { return spectrum_; }

double DenseOperator::resolvent_norm(std::complex<double> z) const {
    Eigen::MatrixXcd shifted = (-matrix_).cast<std::complex<double>>();
    shifted.diagonal().array() += z;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted);
    const double smin = svd.singularValues().minCoeff();
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / smin;
}

// ---------------------------------------------------------------------------

Eigen::MatrixXd make_fd_laplacian(int n, double convection) {
    if (n < 1) throw Error("invalid_dimension", "fd_laplacian needs n >= 1");
    const double diffusion = static_cast<double>(n + 1) * (n + 1);
    const double drift = convection * (n + 1) / 2.0;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        A(i, i) = 2.0 * diffusion;
        if (i > 0) A(i, i - 1) = -diffusion - drift;
        if (i + 1 < n) A(i, i + 1) = -diffusion + drift;
    }
    return A;
}

Eigen::MatrixXd load_dense_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("matrix_unreadable", "cannot open " + path);
    std::vector<double> entries;
    double value;
    while (in >> value) entries.push_back(value);
    if (!in.eof())
        throw Error("malformed_matrix", path + ": non-numeric token");
    const auto count = entries.size();
    const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(count))));
    if (count == 0 || n * n != count)
        throw Error("malformed_matrix", path + ": " + std::to_string(count) +
                                            " entries do not form a square matrix");
    Eigen::MatrixXd A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = entries[i * n + j];
    return A;
}

} // namespace cayley
