#include "cayley/config.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <random>

namespace cayley {

namespace {

using nlohmann::json;

const double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error("malformed_config", where + ": " + what);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            if (it.key() == key) {
                known = true;
                break;
            }
        if (!known) fail(where, "unknown field \"" + it.key() + "\"");
    }
}

const json* maybe(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double as_double(const json& v, const std::string& where) {
    if (!v.is_number()) fail(where, "expected a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where, "expected an integer");
    return v.get<int>();
}

std::string as_string(const json& v, const std::string& where) {
    if (!v.is_string()) fail(where, "expected a string");
    return v.get<std::string>();
}

Vector as_vector(const json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array of numbers");
    Vector out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(as_double(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<Vector> as_vector_list(const json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array of vectors");
    std::vector<Vector> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(as_vector(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

OperatorSpec parse_operator(const json& obj) {
    OperatorSpec spec;
    if (!obj.is_object()) fail("operator", "expected an object");
    check_keys(obj, "operator", {"kind", "eigenvalues", "generator", "path", "n", "b"});
    if (const json* v = maybe(obj, "kind")) spec.kind = as_string(*v, "operator.kind");
    if (spec.kind == "diagonal") {
        const json* eig = maybe(obj, "eigenvalues");
        const json* gen = maybe(obj, "generator");
        if (eig && gen) fail("operator", "give either eigenvalues or generator, not both");
        if (eig) {
            spec.eigenvalues = as_vector(*eig, "operator.eigenvalues");
            if (spec.eigenvalues.empty()) fail("operator.eigenvalues", "empty list");
        } else if (gen) {
            spec.eigenvalues.clear(); // the generator replaces the default list
            if (!gen->is_object()) fail("operator.generator", "expected an object");
            check_keys(*gen, "operator.generator", {"rule", "J"});
            spec.generator_rule =
                maybe(*gen, "rule") ? as_string((*gen)["rule"], "operator.generator.rule")
                                    : std::string("jpi_squared");
            if (spec.generator_rule != "jpi_squared")
                fail("operator.generator.rule", "unknown rule \"" + spec.generator_rule + "\"");
            const json* J = maybe(*gen, "J");
            if (J == nullptr) fail("operator.generator", "missing J");
            spec.generator_count = as_int(*J, "operator.generator.J");
            if (spec.generator_count < 1) fail("operator.generator.J", "needs J >= 1");
        } else {
            fail("operator", "diagonal kind needs eigenvalues or generator");
        }
    } else if (spec.kind == "dense") {
        const json* path = maybe(obj, "path");
        if (path == nullptr) fail("operator", "dense kind needs a path");
        spec.matrix_path = as_string(*path, "operator.path");
    } else if (spec.kind == "fd_laplacian") {
        const json* n = maybe(obj, "n");
        if (n == nullptr) fail("operator", "fd_laplacian kind needs n");
        spec.fd_n = as_int(*n, "operator.n");
        if (spec.fd_n < 1) fail("operator.n", "needs n >= 1");
        if (const json* b = maybe(obj, "b")) spec.fd_convection = as_double(*b, "operator.b");
    } else {
        fail("operator.kind", "unknown kind \"" + spec.kind + "\"");
    }
    return spec;
}

BoundarySpec parse_u1(const json& obj) {
    BoundarySpec spec;
    if (!obj.is_object()) fail("u1", "expected an object");
    check_keys(obj, "u1", {"kind", "values", "count", "seed"});
    if (const json* v = maybe(obj, "kind")) spec.kind = as_string(*v, "u1.kind");
    if (spec.kind == "explicit") {
        const json* values = maybe(obj, "values");
        if (values == nullptr) fail("u1", "explicit kind needs values");
        spec.values = as_vector(*values, "u1.values");
    } else if (spec.kind == "a_power_uniform") {
        // nothing else
    } else if (spec.kind == "a_power_seeded") {
        if (const json* v = maybe(obj, "seed"))
            spec.seed = static_cast<unsigned>(as_int(*v, "u1.seed"));
    } else if (spec.kind == "low_modes") {
        if (const json* v = maybe(obj, "count")) {
            spec.low_mode_count = as_int(*v, "u1.count");
            if (spec.low_mode_count < 1) fail("u1.count", "needs count >= 1");
        }
    } else {
        fail("u1.kind", "unknown kind \"" + spec.kind + "\"");
    }
    return spec;
}

RhsSpec parse_rhs(const json& obj) {
    RhsSpec spec;
    if (!obj.is_object()) fail("rhs", "expected an object");
    check_keys(obj, "rhs", {"kind", "amplitude", "mode", "modes", "f0", "fs", "fc"});
    if (const json* v = maybe(obj, "kind")) spec.kind = as_string(*v, "rhs.kind");
    if (spec.kind == "explicit") {
        if (const json* v = maybe(obj, "f0")) spec.f0 = as_vector(*v, "rhs.f0");
        if (const json* v = maybe(obj, "fs")) spec.fs = as_vector_list(*v, "rhs.fs");
        if (const json* v = maybe(obj, "fc")) spec.fc = as_vector_list(*v, "rhs.fc");
        if (spec.f0.empty() && spec.fs.empty() && spec.fc.empty())
            fail("rhs", "explicit kind needs at least one of f0, fs, fc");
    } else if (spec.kind == "constant") {
        if (const json* v = maybe(obj, "amplitude"))
            spec.amplitude = as_double(*v, "rhs.amplitude");
    } else if (spec.kind == "one_sine" || spec.kind == "one_cosine") {
        if (const json* v = maybe(obj, "amplitude"))
            spec.amplitude = as_double(*v, "rhs.amplitude");
        if (const json* v = maybe(obj, "mode")) {
            spec.mode = as_int(*v, "rhs.mode");
            if (spec.mode < 1) fail("rhs.mode", "needs mode >= 1");
        }
    } else if (spec.kind == "smooth_decay") {
        if (const json* v = maybe(obj, "modes")) {
            spec.modes = as_int(*v, "rhs.modes");
            if (spec.modes < 1) fail("rhs.modes", "needs modes >= 1");
        }
    } else {
        fail("rhs.kind", "unknown kind \"" + spec.kind + "\"");
    }
    return spec;
}

} // namespace

Config parse_config(const json& doc) {
    if (!doc.is_object()) fail("config", "top level must be an object");
    check_keys(doc, "config", {"problem", "operator", "u1", "rhs", "sigma", "grid", "sweep", "N",
                               "M", "norm", "quad", "eval"});
    Config cfg;
    if (const json* v = maybe(doc, "problem")) {
        cfg.problem = as_string(*v, "problem");
        if (cfg.problem != "homogeneous" && cfg.problem != "inhomogeneous")
            fail("problem", "expected \"homogeneous\" or \"inhomogeneous\"");
    }
    if (const json* v = maybe(doc, "operator")) cfg.op = parse_operator(*v);
    if (const json* v = maybe(doc, "u1")) cfg.u1 = parse_u1(*v);
    if (const json* v = maybe(doc, "rhs")) cfg.rhs = parse_rhs(*v);
    if (const json* v = maybe(doc, "sigma")) {
        cfg.sigma = as_double(*v, "sigma");
        if (!(cfg.sigma > 0.0)) fail("sigma", "needs sigma > 0");
    }
    if (const json* v = maybe(doc, "grid")) {
        if (!v->is_object()) fail("grid", "expected an object");
        check_keys(*v, "grid", {"m"});
        if (const json* m = maybe(*v, "m")) {
            cfg.grid_m = as_int(*m, "grid.m");
            if (cfg.grid_m < 2) fail("grid.m", "needs m >= 2");
        }
    }
    if (const json* v = maybe(doc, "sweep")) {
        if (!v->is_object()) fail("sweep", "expected an object");
        check_keys(*v, "sweep", {"N_list"});
        if (const json* list = maybe(*v, "N_list")) {
            if (!list->is_array() || list->empty())
                fail("sweep.N_list", "expected a nonempty array of integers");
            cfg.sweep_N.clear();
            int prev = 0;
            for (std::size_t i = 0; i < list->size(); ++i) {
                const int N =
                    as_int((*list)[i], "sweep.N_list[" + std::to_string(i) + "]");
                if (N < 1) fail("sweep.N_list", "orders must be >= 1");
                if (N <= prev) fail("sweep.N_list", "orders must be strictly increasing");
                cfg.sweep_N.push_back(N);
                prev = N;
            }
        }
    }
    if (const json* v = maybe(doc, "N")) {
        cfg.N = as_int(*v, "N");
        if (*cfg.N < 0) fail("N", "needs N >= 0");
    }
    if (const json* v = maybe(doc, "M")) {
        cfg.M = as_int(*v, "M");
        if (*cfg.M < 0) fail("M", "needs M >= 0");
    }
    if (const json* v = maybe(doc, "norm")) {
        const std::string name = as_string(*v, "norm");
        try {
            cfg.norm = parse_norm(name);
        } catch (const Error&) {
            fail("norm", "expected \"l2\", \"max\" or \"l1\"");
        }
    }
    if (const json* v = maybe(doc, "quad")) {
        if (!v->is_object()) fail("quad", "expected an object");
        check_keys(*v, "quad", {"panels", "nodes_per_panel"});
        if (const json* p = maybe(*v, "panels")) {
            cfg.quad.panels = as_int(*p, "quad.panels");
            if (cfg.quad.panels < 1) fail("quad.panels", "needs panels >= 1");
        }
        if (const json* p = maybe(*v, "nodes_per_panel")) {
            cfg.quad.nodes_per_panel = as_int(*p, "quad.nodes_per_panel");
            if (cfg.quad.nodes_per_panel < 2) fail("quad.nodes_per_panel", "needs >= 2 nodes");
        }
    }
    if (const json* v = maybe(doc, "eval")) {
        if (!v->is_object()) fail("eval", "expected an object");
        check_keys(*v, "eval", {"fourier_P", "rational_cap"});
        if (const json* p = maybe(*v, "fourier_P")) {
            cfg.fourier_terms = as_int(*p, "eval.fourier_P");
            if (cfg.fourier_terms < 1) fail("eval.fourier_P", "needs >= 1 terms");
        }
        if (const json* p = maybe(*v, "rational_cap")) {
            cfg.rational_cap = as_int(*p, "eval.rational_cap");
            if (cfg.rational_cap < 1) fail("eval.rational_cap", "needs cap >= 1");
        }
    }
    return cfg;
}

json load_config_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("config_unreadable", "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error("malformed_config", path + ": " + e.what());
    }
}

Config load_config(const std::string& path) { return parse_config(load_config_json(path)); }

void apply_override(json& doc, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw Error("malformed_config", "override must look like path.to.field=value: " +
                                            assignment);
    const std::string path = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);

    json value = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (value.is_discarded()) value = text; // bare words become strings

    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
        if (key.empty())
            throw Error("malformed_config", "empty path segment in override: " + assignment);
        if (dot == std::string::npos) {
            (*node)[key] = std::move(value);
            return;
        }
        json& next = (*node)[key];
        if (!next.is_object()) {
            if (!next.is_null())
                throw Error("malformed_config",
                            "override path crosses a non-object field: " + path);
            next = json::object();
        }
        node = &next;
        start = dot + 1;
    }
}

json config_to_json(const Config& cfg) {
    json doc;
    doc["problem"] = cfg.problem;

    json op;
    op["kind"] = cfg.op.kind;
    if (cfg.op.kind == "diagonal") {
        if (!cfg.op.generator_rule.empty()) {
            op["generator"] = {{"rule", cfg.op.generator_rule}, {"J", cfg.op.generator_count}};
        } else {
            op["eigenvalues"] = cfg.op.eigenvalues;
        }
    } else if (cfg.op.kind == "dense") {
        op["path"] = cfg.op.matrix_path;
    } else if (cfg.op.kind == "fd_laplacian") {
        op["n"] = cfg.op.fd_n;
        op["b"] = cfg.op.fd_convection;
    }
    doc["operator"] = op;

    json u1;
    u1["kind"] = cfg.u1.kind;
    if (cfg.u1.kind == "explicit") u1["values"] = cfg.u1.values;
    if (cfg.u1.kind == "a_power_seeded") u1["seed"] = cfg.u1.seed;
    if (cfg.u1.kind == "low_modes") u1["count"] = cfg.u1.low_mode_count;
    doc["u1"] = u1;

    json rhs;
    rhs["kind"] = cfg.rhs.kind;
    if (cfg.rhs.kind == "explicit") {
        rhs["f0"] = cfg.rhs.f0;
        rhs["fs"] = cfg.rhs.fs;
        rhs["fc"] = cfg.rhs.fc;
    }
    if (cfg.rhs.kind == "constant") rhs["amplitude"] = cfg.rhs.amplitude;
    if (cfg.rhs.kind == "one_sine" || cfg.rhs.kind == "one_cosine") {
        rhs["amplitude"] = cfg.rhs.amplitude;
        rhs["mode"] = cfg.rhs.mode;
    }
    if (cfg.rhs.kind == "smooth_decay") rhs["modes"] = cfg.rhs.modes;
    doc["rhs"] = rhs;

    doc["sigma"] = cfg.sigma;
    doc["grid"] = {{"m", cfg.grid_m}};
    doc["sweep"] = {{"N_list", cfg.sweep_N}};
    if (cfg.N) doc["N"] = *cfg.N;
    if (cfg.M) doc["M"] = *cfg.M;
    doc["norm"] = norm_name(cfg.norm);
    doc["quad"] = {{"panels", cfg.quad.panels}, {"nodes_per_panel", cfg.quad.nodes_per_panel}};
    doc["eval"] = {{"fourier_P", cfg.fourier_terms}, {"rational_cap", cfg.rational_cap}};
    return doc;
}

std::shared_ptr<SectorialOperator> make_operator(const OperatorSpec& spec) {
    if (spec.kind == "diagonal") {
        if (spec.generator_rule == "jpi_squared" && spec.generator_count > 0) {
            Vector lams(static_cast<std::size_t>(spec.generator_count));
            for (int j = 1; j <= spec.generator_count; ++j) {
                const double root = j * kPi;
                lams[static_cast<std::size_t>(j) - 1] = root * root;
            }
            return std::make_shared<DiagonalOperator>(std::move(lams));
        }
        if (!spec.eigenvalues.empty()) return std::make_shared<DiagonalOperator>(spec.eigenvalues);
        throw Error("malformed_config", "diagonal operator needs eigenvalues or generator");
    }
    if (spec.kind == "dense")
        return std::make_shared<DenseOperator>(load_dense_matrix(spec.matrix_path));
    if (spec.kind == "fd_laplacian")
        return std::make_shared<DenseOperator>(make_fd_laplacian(spec.fd_n, spec.fd_convection));
    throw Error("malformed_config", "unknown operator kind \"" + spec.kind + "\"");
}

Vector make_boundary_value(const BoundarySpec& spec, const SectorialOperator& op, double sigma) {
    const std::size_t dim = op.dim();
    if (spec.kind == "explicit") {
        if (spec.values.size() != dim)
            throw Error("dim_mismatch", "u1 has " + std::to_string(spec.values.size()) +
                                            " entries for a dim-" + std::to_string(dim) +
                                            " operator");
        return spec.values;
    }
    if (spec.kind == "a_power_uniform") {
        Vector g(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
        return op.power_apply(-sigma, g);
    }
    if (spec.kind == "a_power_seeded") {
        // Deterministic across platforms: draw raw 64-bit words and map the top
        // 53 bits into [-1, 1) instead of relying on distribution internals.
        std::mt19937_64 rng(spec.seed);
        Vector g(dim);
        for (double& gi : g) gi = 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
        const double len = norm(g, NormKind::L2);
        if (len > 0.0)
            for (double& gi : g) gi /= len;
        return op.power_apply(-sigma, g);
    }
    if (spec.kind == "low_modes") {
        if (static_cast<std::size_t>(spec.low_mode_count) > dim)
            throw Error("dim_mismatch", "low_modes count exceeds operator dimension");
        Vector u1(dim, 0.0);
        for (int i = 0; i < spec.low_mode_count; ++i) u1[static_cast<std::size_t>(i)] = 1.0;
        return u1;
    }
    throw Error("malformed_config", "unknown u1 kind \"" + spec.kind + "\"");
}

FourierData make_rhs(const RhsSpec& spec, const SectorialOperator& op, double sigma, int K) {
    const std::size_t dim = op.dim();
    if (K < 0) throw Error("invalid_index", "mode count must be >= 0");
    FourierData data;
    data.f0 = Vector(dim, 0.0);

    auto pad_modes = [&](int modes) {
        data.fs.assign(static_cast<std::size_t>(modes), Vector(dim, 0.0));
        data.fc.assign(static_cast<std::size_t>(modes), Vector(dim, 0.0));
    };

    if (spec.kind == "explicit") {
        const int modes = std::max({K, static_cast<int>(spec.fs.size()),
                                    static_cast<int>(spec.fc.size())});
        pad_modes(modes);
        if (!spec.f0.empty()) {
            check_same_dim(spec.f0, data.f0, "rhs.f0");
            data.f0 = spec.f0;
        }
        for (std::size_t k = 0; k < spec.fs.size(); ++k) {
            check_same_dim(spec.fs[k], data.f0, "rhs.fs");
            data.fs[k] = spec.fs[k];
        }
        for (std::size_t k = 0; k < spec.fc.size(); ++k) {
            check_same_dim(spec.fc[k], data.f0, "rhs.fc");
            data.fc[k] = spec.fc[k];
        }
        return data;
    }
    if (spec.kind == "constant") {
        pad_modes(K);
        data.f0.assign(dim, spec.amplitude);
        return data;
    }
    if (spec.kind == "one_sine" || spec.kind == "one_cosine") {
        const int modes = std::max(K, spec.mode);
        pad_modes(modes);
        Vector w(dim, spec.amplitude);
        if (spec.kind == "one_sine")
            data.fs[static_cast<std::size_t>(spec.mode) - 1] = std::move(w);
        else
            data.fc[static_cast<std::size_t>(spec.mode) - 1] = std::move(w);
        return data;
    }
    if (spec.kind == "smooth_decay") {
        // rhs.modes > 0 truncates the cosine content explicitly; otherwise the
        // content extends to the requested resolution K. Zero padding beyond the
        // content never counts against the dimension constraint.
        const int content = spec.modes > 0 ? spec.modes : std::max(K, 1);
        if (static_cast<std::size_t>(content) > dim)
            throw Error("coeff_out_of_range",
                        "smooth_decay uses basis vector e_k per mode, so modes <= dim");
        pad_modes(std::max(content, K));
        // Cosine data with prescribed regularity: the k-th coefficient sits on
        // the k-th eigendirection with magnitude k^{-(sigma+1.6)/2}, and the
        // mean block carries A^{-sigma} smoothing of a uniform vector.
        for (int k = 1; k <= content; ++k)
            data.fc[static_cast<std::size_t>(k) - 1][static_cast<std::size_t>(k) - 1] =
                std::pow(static_cast<double>(k), -(sigma + 1.6) / 2.0);
        Vector g(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
        data.f0 = op.power_apply(-sigma, g);
        return data;
    }
    throw Error("malformed_config", "unknown rhs kind \"" + spec.kind + "\"");
}

} // namespace cayley
