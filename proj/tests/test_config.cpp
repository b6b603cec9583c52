#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "cayley/config.hpp"

using cayley::Config;
using cayley::Error;
using cayley::Vector;
using nlohmann::json;

TEST_CASE("empty document yields the documented defaults") {
    const Config cfg = cayley::parse_config(json::object());
    CHECK(cfg.problem == "homogeneous");
    CHECK(cfg.op.kind == "diagonal");
    CHECK(cfg.op.eigenvalues == Vector{4.0});
    CHECK(cfg.u1.kind == "explicit");
    CHECK(cfg.u1.values == Vector{1.0});
    CHECK(cfg.rhs.kind == "constant");
    CHECK(cfg.sigma == 2.5);
    CHECK(cfg.grid_m == 64);
    CHECK(cfg.sweep_N == std::vector<int>{8, 16, 32, 64, 128, 256});
    CHECK_FALSE(cfg.N.has_value());
    CHECK_FALSE(cfg.M.has_value());
    CHECK(cfg.norm == cayley::NormKind::L2);
    CHECK(cfg.quad.panels == 64);
    CHECK(cfg.quad.nodes_per_panel == 8);
    CHECK(cfg.fourier_terms == 20000);
    CHECK(cfg.rational_cap == 200);
}

TEST_CASE("parse rejects unknown fields and bad values") {
    CHECK_THROWS_WITH_AS(cayley::parse_config(json::parse(R"({"bogus": 1})")),
                         doctest::Contains("malformed_config"), Error);
    CHECK_THROWS_WITH_AS(
        cayley::parse_config(json::parse(R"({"operator": {"kind": "diagonal", "typo": 2}})")),
        doctest::Contains("malformed_config"), Error);
    CHECK_THROWS_WITH_AS(cayley::parse_config(json::parse(
                             R"({"operator": {"eigenvalues": [1], "generator": {"J": 3}}})")),
                         doctest::Contains("malformed_config"), Error);
    CHECK_THROWS_WITH_AS(
        cayley::parse_config(json::parse(R"({"operator": {"generator": {"rule": "cubes"}}})")),
        doctest::Contains("malformed_config"), Error);
    CHECK_THROWS_WITH_AS(cayley::parse_config(json::parse(R"({"sigma": 0.0})")),
                         doctest::Contains("malformed_config"), Error);
    CHECK_THROWS_WITH_AS(cayley::parse_config(json::parse(R"({"grid": {"m": 1}})")),
                         doctest::Contains("malformed_config"), Error);
    CHECK_THROWS_WITH_AS(cayley::parse_config(json::parse(R"({"norm": "sup"})")),
                         doctest::Contains("malformed_config"), Error);
    CHECK_THROWS_WITH_AS(cayley::parse_config(json::parse(R"({"rhs": {"kind": "noise"}})")),
                         doctest::Contains("malformed_config"), Error);
    CHECK_THROWS_WITH_AS(cayley::parse_config(json::parse(R"({"N": -1})")),
                         doctest::Contains("malformed_config"), Error);

    // Sweep orders must be strictly increasing.
    CHECK_THROWS_WITH_AS(
        cayley::parse_config(json::parse(R"({"sweep": {"N_list": [8, 8, 16]}})")),
        doctest::Contains("malformed_config"), Error);
    CHECK_THROWS_WITH_AS(cayley::parse_config(json::parse(R"({"sweep": {"N_list": []}})")),
                         doctest::Contains("malformed_config"), Error);
}

TEST_CASE("dotted-path overrides edit the document in place") {
    json doc = json::object();
    cayley::apply_override(doc, "sigma=1.5");
    CHECK(doc["sigma"] == json(1.5));

    cayley::apply_override(doc, "sweep.N_list=[8,16,32]");
    cayley::apply_override(doc, "u1.kind=a_power_uniform");
    cayley::apply_override(doc, "operator.generator.J=2000");

    const Config cfg = cayley::parse_config(doc);
    CHECK(cfg.sigma == 1.5);
    CHECK(cfg.sweep_N == std::vector<int>{8, 16, 32});
    CHECK(cfg.u1.kind == "a_power_uniform");
    // The generator path must displace the default eigenvalue list entirely.
    CHECK(cfg.op.generator_rule == "jpi_squared");
    CHECK(cfg.op.generator_count == 2000);
    CHECK(cfg.op.eigenvalues.empty());
    CHECK(cayley::make_operator(cfg.op)->dim() == 2000);

    CHECK_THROWS_WITH_AS(cayley::apply_override(doc, "sigma.sub=1"),
                         doctest::Contains("malformed_config"), Error);
    CHECK_THROWS_WITH_AS(cayley::apply_override(doc, "no_equals_sign"),
                         doctest::Contains("malformed_config"), Error);
    CHECK_THROWS_WITH_AS(cayley::apply_override(doc, "=5"),
                         doctest::Contains("malformed_config"), Error);
    CHECK_THROWS_WITH_AS(cayley::apply_override(doc, "a..b=1"),
                         doctest::Contains("malformed_config"), Error);
}

TEST_CASE("config files: missing, malformed, valid") {
    CHECK_THROWS_WITH_AS(cayley::load_config("no_such_config_file.json"),
                         doctest::Contains("config_unreadable"), Error);

    const std::string bad = "test_config_bad_scratch.json";
    std::ofstream(bad) << "{ this is not json";
    CHECK_THROWS_WITH_AS(cayley::load_config(bad), doctest::Contains("malformed_config"),
                         Error);
    std::remove(bad.c_str());

    const std::string good = "test_config_good_scratch.json";
    std::ofstream(good) << R"({"sigma": 3.0, "problem": "inhomogeneous"})";
    const Config cfg = cayley::load_config(good);
    CHECK(cfg.sigma == 3.0);
    CHECK(cfg.problem == "inhomogeneous");
    std::remove(good.c_str());
}

TEST_CASE("config echo round-trips through the parser") {
    json doc = json::object();
    cayley::apply_override(doc, "operator.generator.J=5");
    cayley::apply_override(doc, "sigma=1.5");
    const Config cfg = cayley::parse_config(doc);

    const json echo = cayley::config_to_json(cfg);
    CHECK(echo["sigma"] == json(1.5));
    CHECK(echo["operator"]["generator"]["J"] == json(5));
    CHECK(echo["norm"] == json("l2"));
    CHECK(echo["eval"]["fourier_P"] == json(20000));

    const Config again = cayley::parse_config(echo);
    CHECK(again.sigma == cfg.sigma);
    CHECK(again.op.generator_count == cfg.op.generator_count);
    CHECK(again.sweep_N == cfg.sweep_N);

    const json dflt = cayley::config_to_json(cayley::parse_config(json::object()));
    CHECK(dflt["operator"]["eigenvalues"] == json::array({4.0}));
}

TEST_CASE("make_operator realizes each kind") {
    cayley::OperatorSpec diag;
    diag.eigenvalues = {2.0, 5.0};
    auto op = cayley::make_operator(diag);
    CHECK(op->dim() == 2);
    CHECK(op->apply({1.0, 1.0}) == Vector{2.0, 5.0});

    cayley::OperatorSpec gen;
    gen.eigenvalues.clear();
    gen.generator_rule = "jpi_squared";
    gen.generator_count = 3;
    auto lap = cayley::make_operator(gen);
    REQUIRE(lap->dim() == 3);
    const auto spec = lap->spectrum();
    CHECK(spec[0].real() == doctest::Approx(9.869604401089358).epsilon(1e-12));
    CHECK(spec[1].real() == doctest::Approx(39.47841760435743).epsilon(1e-12));
    CHECK(spec[2].real() == doctest::Approx(88.82643960980423).epsilon(1e-12));

    cayley::OperatorSpec fd;
    fd.kind = "fd_laplacian";
    fd.fd_n = 8;
    CHECK(cayley::make_operator(fd)->dim() == 8);

    cayley::OperatorSpec empty;
    empty.eigenvalues.clear();
    CHECK_THROWS_WITH_AS(cayley::make_operator(empty), doctest::Contains("malformed_config"),
                         Error);
}

TEST_CASE("make_boundary_value realizes each kind") {
    cayley::DiagonalOperator op({4.0, 16.0});

    cayley::BoundarySpec ex;
    ex.values = {0.5, -1.0};
    CHECK(cayley::make_boundary_value(ex, op, 2.5) == Vector{0.5, -1.0});
    ex.values = {1.0};
    CHECK_THROWS_WITH_AS(cayley::make_boundary_value(ex, op, 2.5),
                         doctest::Contains("dim_mismatch"), Error);

    cayley::BoundarySpec uniform;
    uniform.kind = "a_power_uniform";
    const Vector got = cayley::make_boundary_value(uniform, op, 0.5);
    const Vector expect =
        op.power_apply(-0.5, Vector(2, 1.0 / std::sqrt(2.0)));
    CHECK(got == expect);
    CHECK(got[0] == doctest::Approx(0.35355339059327373).epsilon(1e-15));
    CHECK(got[1] == doctest::Approx(0.17677669529663687).epsilon(1e-15));

    // Seeded draws are deterministic and unit length before smoothing; an
    // identity spectrum makes the smoothing invisible so we can see the norm.
    cayley::DiagonalOperator ident({1.0, 1.0, 1.0});
    cayley::BoundarySpec seeded;
    seeded.kind = "a_power_seeded";
    seeded.seed = 777;
    const Vector a = cayley::make_boundary_value(seeded, ident, 2.5);
    const Vector b = cayley::make_boundary_value(seeded, ident, 2.5);
    CHECK(a == b);
    CHECK(cayley::norm(a, cayley::NormKind::L2) == doctest::Approx(1.0).epsilon(1e-14));
    seeded.seed = 778;
    CHECK(cayley::make_boundary_value(seeded, ident, 2.5) != a);

    cayley::DiagonalOperator five({1.0, 2.0, 3.0, 4.0, 5.0});
    cayley::BoundarySpec low;
    low.kind = "low_modes";
    low.low_mode_count = 3;
    CHECK(cayley::make_boundary_value(low, five, 2.5) == Vector{1.0, 1.0, 1.0, 0.0, 0.0});
    low.low_mode_count = 6;
    CHECK_THROWS_WITH_AS(cayley::make_boundary_value(low, five, 2.5),
                         doctest::Contains("dim_mismatch"), Error);
}

TEST_CASE("make_rhs realizes each kind") {
    cayley::DiagonalOperator op({1.0, 4.0, 9.0});

    cayley::RhsSpec constant;
    constant.amplitude = 2.5;
    const auto cdata = cayley::make_rhs(constant, op, 2.5, 3);
    CHECK(cdata.f0 == Vector(3, 2.5));
    CHECK(cdata.modes() == 3);
    for (const auto& v : cdata.fs) CHECK(v == Vector(3, 0.0));
    for (const auto& v : cdata.fc) CHECK(v == Vector(3, 0.0));
    CHECK_NOTHROW(cdata.validate());

    cayley::RhsSpec sine;
    sine.kind = "one_sine";
    sine.mode = 2;
    sine.amplitude = -1.5;
    const auto sdata = cayley::make_rhs(sine, op, 2.5, 1);
    CHECK(sdata.modes() == 2); // the requested mode extends the retained band
    CHECK(sdata.fs[1] == Vector(3, -1.5));
    CHECK(sdata.fs[0] == Vector(3, 0.0));
    CHECK(sdata.f0 == Vector(3, 0.0));

    cayley::RhsSpec ex;
    ex.kind = "explicit";
    ex.f0 = {1.0, 2.0, 3.0};
    ex.fs = {{0.5, 0.5, 0.5}};
    const auto edata = cayley::make_rhs(ex, op, 2.5, 0);
    CHECK(edata.modes() == 1);
    CHECK(edata.f0 == Vector{1.0, 2.0, 3.0});
    CHECK(edata.fs[0] == Vector(3, 0.5));
    ex.fs = {{0.5, 0.5}};
    CHECK_THROWS_WITH_AS(cayley::make_rhs(ex, op, 2.5, 0),
                         doctest::Contains("dim_mismatch"), Error);
}

TEST_CASE("smooth_decay places one decaying coefficient per eigendirection") {
    cayley::DiagonalOperator op({1.0, 4.0, 9.0});
    cayley::RhsSpec spec;
    spec.kind = "smooth_decay";
    spec.modes = 3;
    const double sigma = 2.5;

    // Content 3 on a dim-3 operator padded out to the retained band K = 4.
    const auto data = cayley::make_rhs(spec, op, sigma, 4);
    CHECK(data.modes() == 4);
    CHECK(data.fc[0][0] == 1.0);
    CHECK(data.fc[1][1] == doctest::Approx(0.24148408223121143).epsilon(1e-15));
    CHECK(data.fc[2][2] == std::pow(3.0, -(sigma + 1.6) / 2.0));
    CHECK(data.fc[1][0] == 0.0);
    CHECK(data.fc[3] == Vector(3, 0.0));
    CHECK(data.fs[0] == Vector(3, 0.0));
    CHECK(data.f0 == op.power_apply(-sigma, Vector(3, 1.0 / std::sqrt(3.0))));

    // Without an explicit mode count the content tracks K, which cannot
    // exceed the operator dimension.
    spec.modes = 0;
    CHECK_THROWS_WITH_AS(cayley::make_rhs(spec, op, sigma, 4),
                         doctest::Contains("coeff_out_of_range"), Error);
    spec.modes = 5;
    CHECK_THROWS_WITH_AS(cayley::make_rhs(spec, op, sigma, 2),
                         doctest::Contains("coeff_out_of_range"), Error);
}
