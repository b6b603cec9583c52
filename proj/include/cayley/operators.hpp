#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "cayley/error.hpp"
#include "cayley/vector_ops.hpp"

namespace cayley {

/// Sector description of a strongly positive operator: the spectrum lies in
/// { |arg z| <= phi } at distance >= gamma from the origin, and the resolvent
/// obeys ||(zI - A)^-1|| <= L / (1 + |z|) outside the sector.  gamma and phi
/// are exact for the realizations here (finite spectra); L is a sampled
/// estimate along the sector boundary rays, not a proven optimum.
struct SectorParams {
    double gamma = 0.0;
    double phi = 0.0;
    double L = 0.0;
};

/// Abstract strongly positive (sectorial) operator A on E = R^dim.
///
/// shift_solve(c, b) solves (cI + A) x = b and is the workhorse of the Cayley
/// iteration; implementations cache one factorization per distinct shift and
/// reuse it, so repeated solves with the same shift are cheap and
/// bit-identical.  The base class keeps a per-shift solve counter so tests
/// can assert how many solves an algorithm performed.
class SectorialOperator {
public:
    virtual ~SectorialOperator() = default;

    virtual std::size_t dim() const = 0;

    /// True when fractional powers A^s are available (diagonal, or dense
    /// symmetric via its eigendecomposition).
    virtual bool can_power() const = 0;

    virtual Vector apply(const Vector& v) const = 0;

    /// Solve (cI + A) x = b for c >= 0.  Residual is guaranteed below
    /// 1e-10 * ||b||; violations raise "singular_shift".
    Vector shift_solve(double c, const Vector& b) const;

    /// A^s v for real s (negative s gives the smoothing A^-sigma used to
    /// construct boundary data of prescribed regularity).
    virtual Vector power_apply(double s, const Vector& v) const = 0;

    /// Finite spectrum of the realization, for diagnostics and spectral
    /// envelope checks.
    virtual std::vector<std::complex<double>> spectrum() const = 0;

    /// Sampled sector parameters; computed once and cached.
    SectorParams sector_params() const;

    long solve_count(double c) const;
    long total_solve_count() const;
    void reset_solve_counts() const;

protected:
    virtual Vector do_shift_solve(double c, const Vector& b) const = 0;

    /// ||(zI - A)^-1|| in the Euclidean operator norm, used by the sector
    /// parameter sampler.
    virtual double resolvent_norm(std::complex<double> z) const = 0;

private:
    mutable std::mutex stats_mu_;
    mutable std::unordered_map<std::uint64_t, long> solves_by_shift_;
    mutable std::mutex sector_mu_;
    mutable std::optional<SectorParams> sector_cache_;
};

/// Diagonal realization: A = diag(lambda_1..lambda_n) with lambda_j > 0.
/// Emulates an unbounded operator through its eigenvalue growth (e.g.
/// lambda_j = (j pi)^2).
class DiagonalOperator final : public SectorialOperator {
public:
    explicit DiagonalOperator(Vector eigenvalues);

    std::size_t dim() const override { return eigenvalues_.size(); }
    bool can_power() const override { return true; }
    Vector apply(const Vector& v) const override;
    Vector power_apply(double s, const Vector& v) const override;
    std::vector<std::complex<double>> spectrum() const override;
    const Vector& eigenvalues() const { return eigenvalues_; }

protected:
    Vector do_shift_solve(double c, const Vector& b) const override;
    double resolvent_norm(std::complex<double> z) const override;

private:
    const Vector* shifted_diagonal(double c) const;

    Vector eigenvalues_;
    mutable std::shared_mutex cache_mu_;
    mutable std::unordered_map<std::uint64_t, std::shared_ptr<const Vector>> shift_cache_;
};

/// Dense realization backed by Eigen: LU per shift (cached), full
/// eigendecomposition at construction for spectrum validation, and fractional
/// powers through the symmetric eigendecomposition when A = A^T.
class DenseOperator final : public SectorialOperator {
public:
    explicit DenseOperator(Eigen::MatrixXd matrix);

    std::size_t dim() const override { return static_cast<std::size_t>(matrix_.rows()); }
    bool can_power() const override { return symmetric_; }
    Vector apply(const Vector& v) const override;
    Vector power_apply(double s, const Vector& v) const override;
    std::vector<std::complex<double>> spectrum() const override;
    const Eigen::MatrixXd& matrix() const { return matrix_; }

protected:
    Vector do_shift_solve(double c, const Vector& b) const override;
    double resolvent_norm(std::complex<double> z) const override;

private:
    using Factorization = Eigen::PartialPivLU<Eigen::MatrixXd>;
    const Factorization* factorization(double c) const;

    Eigen::MatrixXd matrix_;
    bool symmetric_ = false;
    std::vector<std::complex<double>> spectrum_;
    // symmetric eigendecomposition (only filled when symmetric_)
    Eigen::MatrixXd eigvecs_;
    Eigen::VectorXd eigvals_;
    mutable std::shared_mutex cache_mu_;
    mutable std::unordered_map<std::uint64_t, std::shared_ptr<const Factorization>> lu_cache_;
};

/// Standard second-difference Laplacian on (0,1) with n interior points,
/// stencil (n+1)^2 [-1, 2, -1], plus optional central-difference convection
/// b (n+1)/2 [-1, 0, 1].  Nonzero b makes the matrix nonsymmetric.
Eigen::MatrixXd make_fd_laplacian(int n, double convection = 0.0);

/// Read a whitespace-separated row-major square matrix from a text file.
Eigen::MatrixXd load_dense_matrix(const std::string& path);

} // namespace cayley
