#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cayley/error.hpp"
#include "cayley/fourier_rhs.hpp"
#include "cayley/operators.hpp"
#include "cayley/vector_ops.hpp"

namespace cayley {

/// Operator construction recipe parsed from the config file.
struct OperatorSpec {
    std::string kind = "diagonal"; // diagonal | dense | fd_laplacian
    std::vector<double> eigenvalues = {4.0}; // diagonal, explicit list
    std::string generator_rule;           // diagonal, e.g. "jpi_squared"
    int generator_count = 0;              // diagonal, J for the generator rule
    std::string matrix_path;              // dense
    int fd_n = 0;                         // fd_laplacian
    double fd_convection = 0.0;           // fd_laplacian
};

/// Boundary-value construction recipe (the data at x = 1).
struct BoundarySpec {
    std::string kind = "explicit"; // explicit | a_power_uniform | a_power_seeded | low_modes
    std::vector<double> values = {1.0}; // explicit
    int low_mode_count = 3;        // low_modes: ones on the first few components
    unsigned seed = 12345;         // a_power_seeded
};

/// Right-hand-side construction recipe.
struct RhsSpec {
    std::string kind = "constant"; // explicit | constant | one_sine | one_cosine | smooth_decay
    double amplitude = 1.0;        // constant / one_sine / one_cosine weight scale
    int mode = 1;                  // one_sine / one_cosine
    std::vector<double> f0;                // explicit
    std::vector<std::vector<double>> fs;   // explicit
    std::vector<std::vector<double>> fc;   // explicit
    int modes = 0;                         // smooth_decay: number of cosine modes
};

/// Full experiment configuration: defaults here are the documented defaults.
struct Config {
    std::string problem = "homogeneous"; // homogeneous | inhomogeneous
    OperatorSpec op;
    BoundarySpec u1;
    RhsSpec rhs;
    double sigma = 2.5;
    int grid_m = 64;
    std::vector<int> sweep_N = {8, 16, 32, 64, 128, 256};
    std::optional<int> N;    // single-solve truncation order
    std::optional<int> M;    // inhomogeneous second order (defaults to N)
    NormKind norm = NormKind::L2;
    QuadratureSpec quad;
    long fourier_terms = 20000;
    int rational_cap = 200;
};

/// Parse a JSON config file. Unknown fields are rejected so typos surface
/// immediately. Throws Error("config_unreadable") / Error("malformed_config").
Config load_config(const std::string& path);

/// Read the raw JSON document (for override application before parsing).
nlohmann::json load_config_json(const std::string& path);

/// Parse config from an already-loaded JSON document (same validation).
Config parse_config(const nlohmann::json& doc);

/// Apply one dotted-path override, e.g. "sigma=1.5", "operator.kind=diagonal",
/// "sweep.N_list=[8,16,32]". Throws Error("malformed_config") on unknown paths
/// or unparsable values.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Effective config echoed back as JSON (defaults filled in).
nlohmann::json config_to_json(const Config& cfg);

/// Build the operator described by the spec.
std::shared_ptr<SectorialOperator> make_operator(const OperatorSpec& spec);

/// Build the boundary value u1 for the given operator; `sigma` is used by the
/// a_power_* kinds (u1 = A^{-sigma} g with g uniform or seed-generated).
Vector make_boundary_value(const BoundarySpec& spec, const SectorialOperator& op, double sigma);

/// Build right-hand-side data with K retained modes for the given operator.
FourierData make_rhs(const RhsSpec& spec, const SectorialOperator& op, double sigma, int K);

} // namespace cayley
