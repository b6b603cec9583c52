#include "cayley/oracles.hpp"

#include <cmath>

namespace cayley {

namespace {
const double kPi = 3.14159265358979323846;
}

double sinh_ratio(double a, double x) {
    if (!(a > 0.0)) throw Error("nonpositive_parameter", "sinh_ratio needs a > 0");
    if (!(x >= 0.0 && x <= 1.0)) throw Error("out_of_domain", "sinh_ratio needs x in [0,1]");
    return std::exp(a * (x - 1.0)) * std::expm1(-2.0 * a * x) / std::expm1(-2.0 * a);
}

Vector exact_homogeneous_diagonal(const Vector& lams, const Vector& u1, double x) {
    check_same_dim(lams, u1, "exact_homogeneous_diagonal");
    Vector r(lams.size());
    for (std::size_t j = 0; j < lams.size(); ++j)
        r[j] = sinh_ratio(std::sqrt(lams[j]), x) * u1[j];
    return r;
}

Vector exact_inhomogeneous_diagonal(const Vector& lams, const FourierData& data, double x) {
    data.validate();
    check_same_dim(lams, data.f0, "exact_inhomogeneous_diagonal");
    const double sqrt2 = std::sqrt(2.0);
    Vector r(lams.size(), 0.0);
    for (std::size_t j = 0; j < lams.size(); ++j) {
        const double lam = lams[j];
        const double a = std::sqrt(lam);
        // (sinh(a(1-x)) + sinh(ax))/sinh(a)
        const double bracket = sinh_ratio(a, 1.0 - x) + sinh_ratio(a, x);
        double acc = 0.0;
        for (int k = 1; k <= data.modes(); ++k) {
            const double denom = (2.0 * k * kPi) * (2.0 * k * kPi) + lam;
            acc += sqrt2 * sin2kpi(k, x) * data.fs[k - 1][j] / denom;
        }
        acc += (1.0 - bracket) * data.f0[j] / lam;
        for (int k = 1; k <= data.modes(); ++k) {
            const double denom = (2.0 * k * kPi) * (2.0 * k * kPi) + lam;
            acc += sqrt2 * (cos2kpi(k, x) - bracket) * data.fc[k - 1][j] / denom;
        }
        r[j] = acc;
    }
    return r;
}

ManufacturedPair manufactured_pair(const std::string& kind, int k, const SectorialOperator& op,
                                   const Vector& w) {
    if (k < 1) throw Error("invalid_index", "manufactured_pair needs mode k >= 1");
    if (w.size() != op.dim())
        throw Error("dim_mismatch", "w has dim " + std::to_string(w.size()));
    const std::size_t dim = op.dim();

    if (kind == "one_sine") {
        // u = sqrt(2) sin(2k pi x) w  =>  f = -u'' + A u has the single sine
        // coefficient ((2k pi)^2 I + A) w.
        FourierData data;
        data.f0.assign(dim, 0.0);
        data.fs.assign(k, Vector(dim, 0.0));
        data.fc.assign(k, Vector(dim, 0.0));
        Vector coeff = op.apply(w);
        const double freq2 = (2.0 * k * kPi) * (2.0 * k * kPi);
        for (std::size_t j = 0; j < dim; ++j) coeff[j] += freq2 * w[j];
        data.fs[k - 1] = std::move(coeff);
        auto u = [k, w](double x) {
            return scaled(w, std::sqrt(2.0) * sin2kpi(k, x));
        };
        return {std::move(u), std::move(data)};
    }

    if (kind == "one_cosine_bracket") {
        const auto* diag = dynamic_cast<const DiagonalOperator*>(&op);
        if (diag == nullptr)
            throw Error("oracle_unsupported",
                        "one_cosine_bracket needs a diagonal operator for its sinh oracle");
        FourierData data;
        data.f0.assign(dim, 0.0);
        data.fs.assign(k, Vector(dim, 0.0));
        data.fc.assign(k, Vector(dim, 0.0));
        data.fc[k - 1] = w;
        Vector lams = diag->eigenvalues();
        FourierData captured = data;
        auto u = [lams = std::move(lams), captured = std::move(captured)](double x) {
            return exact_inhomogeneous_diagonal(lams, captured, x);
        };
        return {std::move(u), std::move(data)};
    }

    throw Error("unknown_manufactured", "kind '" + kind + "' not in {one_sine, one_cosine_bracket}");
}

namespace {

/// Spectral view of a realization: eigenvalues plus (for dense symmetric
/// operators) the orthogonal change of basis that diagonalizes it.
struct SpectralView {
    Vector lams;
    bool rotated = false;
    Eigen::MatrixXd Q;
};

SpectralView spectral_view(const SectorialOperator& op) {
    if (const auto* diag = dynamic_cast<const DiagonalOperator*>(&op)) {
        SpectralView view;
        view.lams = diag->eigenvalues();
        return view;
    }
    if (const auto* dense = dynamic_cast<const DenseOperator*>(&op); dense && dense->can_power()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense->matrix());
        if (es.info() != Eigen::Success)
            throw Error("spectrum_unavailable", "eigendecomposition failed");
        SpectralView view;
        view.lams.assign(es.eigenvalues().data(),
                         es.eigenvalues().data() + es.eigenvalues().size());
        view.rotated = true;
        view.Q = es.eigenvectors();
        return view;
    }
    throw Error("oracle_unsupported",
                "exact fields need a diagonal or symmetric dense operator");
}

Vector to_eigen_basis(const SpectralView& view, const Vector& x) {
    if (!view.rotated) return x;
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    const Eigen::VectorXd c = view.Q.transpose() * xv;
    return Vector(c.data(), c.data() + c.size());
}

Vector from_eigen_basis(const SpectralView& view, const Vector& c) {
    if (!view.rotated) return c;
    Eigen::Map<const Eigen::VectorXd> cv(c.data(), static_cast<Eigen::Index>(c.size()));
    const Eigen::VectorXd x = view.Q * cv;
    return Vector(x.data(), x.data() + x.size());
}

void check_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw Error("empty_grid", "exact field needs at least one point");
    for (double x : grid)
        if (!(x >= 0.0 && x <= 1.0))
            throw Error("empty_grid", "grid point outside [0,1]: " + std::to_string(x));
}

} // namespace

SolutionField exact_homogeneous_field(const SectorialOperator& op, const Vector& u1,
                                      const std::vector<double>& grid) {
    if (u1.size() != op.dim())
        throw Error("dim_mismatch", "u1 has dim " + std::to_string(u1.size()));
    check_grid(grid);
    const SpectralView view = spectral_view(op);
    const Vector c = to_eigen_basis(view, u1);
    SolutionField field;
    field.grid = grid;
    field.values.reserve(grid.size());
    for (double x : grid)
        field.values.push_back(from_eigen_basis(view, exact_homogeneous_diagonal(view.lams, c, x)));
    return field;
}

SolutionField exact_inhomogeneous_field(const SectorialOperator& op, const FourierData& data,
                                        const std::vector<double>& grid) {
    data.validate();
    if (data.dim() != op.dim())
        throw Error("dim_mismatch", "data has dim " + std::to_string(data.dim()));
    check_grid(grid);
    const SpectralView view = spectral_view(op);
    FourierData rotated;
    rotated.f0 = to_eigen_basis(view, data.f0);
    rotated.fs.reserve(data.fs.size());
    rotated.fc.reserve(data.fc.size());
    for (const Vector& v : data.fs) rotated.fs.push_back(to_eigen_basis(view, v));
    for (const Vector& v : data.fc) rotated.fc.push_back(to_eigen_basis(view, v));
    SolutionField field;
    field.grid = grid;
    field.values.reserve(grid.size());
    for (double x : grid)
        field.values.push_back(
            from_eigen_basis(view, exact_inhomogeneous_diagonal(view.lams, rotated, x)));
    return field;
}

} // namespace cayley
