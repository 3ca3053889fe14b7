#include <doctest.h>

#include <cmath>
#include <string>

#include "lrinv/config.hpp"

using namespace lrinv;

namespace {

std::string with_model(const std::string& extra) {
  return R"({"model": "spin", "params": {"omega": 1.0, "theta": 0.5, "phi": 0.0},
             "grid": {"t_end": 1.0, "steps": 10})" +
         extra + "}";
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("minimal document with defaults") {
    const ScenarioConfig c = parse_config(with_model(""));
    CHECK(c.model == "spin");
    CHECK(c.grid.t_start == 0.0);
    CHECK(c.grid.steps == 10);
    CHECK(c.params.j == 0.5);
    CHECK(c.lambdas.empty());
    CHECK(c.oracle_substeps == 4);
    CHECK(c.tol.invariant == 1e-7);
    CHECK(c.fault == Fault::None);
    CHECK((*c.params.omega)(3.0) == 1.0);
  }

  TEST_CASE("profiles") {
    CHECK(parse_profile("2.5")(7.0) == 2.5);
    CHECK(parse_profile(R"({"type": "constant", "value": -1})")(0.3) == -1.0);
    CHECK(parse_profile(R"({"type": "linear", "value0": 1, "slope": 2})")(1.5) == 4.0);
    CHECK(parse_profile(R"({"type": "ramp", "t0": 0, "v0": 1, "t1": 2, "v1": 3})")(1.0) == 2.0);
    const Profile s = parse_profile(R"({"type": "sin", "offset": 1, "amplitude": 0.5, "frequency": 2})");
    CHECK(s(0.3) == doctest::Approx(1.0 + 0.5 * std::sin(0.6)));
    const Profile tab = parse_profile(R"({"type": "table", "t": [0, 1, 2], "v": [0, 1, 0]})");
    CHECK(tab(1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(parse_profile(R"({"type": "cubic"})"), ConfigError);
    CHECK_THROWS_AS(parse_profile(R"({"type": "sin", "offset": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_profile("[1, 2"), ConfigError);
  }

  TEST_CASE("complex coupling and model parameters") {
    const ScenarioConfig c = parse_config(R"({
      // comments are allowed
      "model": "susy_jc",
      "params": {"k": 2, "m": 1, "omega": 1, "omega0": 1.8, "g": {"re": 0.1, "im": 0.03},
                 "parity": "odd", "cutoff": 30},
      "grid": {"t_start": 1, "t_end": 3, "steps": 16},
      "initial": {"c_re": 0.2, "b": 0.5},
      "lambda": [1, -1],
      "inject_fault": "corrupt_y",
      "tolerances": {"phase": 1e-3},
      "seed": 9
    })");
    CHECK(c.params.k == 2);
    CHECK(c.params.m_fock == 1);
    CHECK(c.params.parity == Parity::Odd);
    CHECK(c.params.cutoff == 30);
    CHECK((*c.params.g)(0.0) == cplx(0.1, 0.03));
    REQUIRE(c.susy_initial.has_value());
    CHECK(c.susy_initial->first == cplx(0.2, 0.0));
    CHECK_FALSE(c.initial.has_value());
    CHECK(c.lambdas == std::vector<double>{1.0, -1.0});
    CHECK(c.fault == Fault::CorruptY);
    CHECK(c.tol.phase == 1e-3);
    CHECK(c.tol.fidelity == 1e-6);
    CHECK(c.seed == 9u);
  }

  TEST_CASE("berry-only document") {
    const ScenarioConfig c =
        parse_config(R"({"berry": {"periods": [10, 100], "theta": 0.6, "j": 1}})");
    CHECK(c.model.empty());
    CHECK(c.berry.periods.size() == 2);
    CHECK(c.berry.theta == 0.6);
    CHECK_FALSE(c.berry.lambda.has_value());
    CHECK_THROWS_AS(parse_config(R"({"berry": {"periods": [10, -1]}})"), ConfigError);
  }

  TEST_CASE("errors name the offending key") {
    CHECK(error_of(with_model(R"(, "colour": 1)")).find("colour") != std::string::npos);
    CHECK(error_of(R"({"model": "spin", "params": {"omega": 1, "spin": 2}, "grid": {"t_end": 1, "steps": 10}})")
              .find("spin") != std::string::npos);
    CHECK(error_of(with_model(R"(, "tolerances": {"fast": 1})")).find("fast") != std::string::npos);
    CHECK(error_of(with_model(R"(, "inject_fault": "meteor")")).find("meteor") != std::string::npos);
    CHECK_FALSE(error_of(R"({"model": "spin", "grid": {"t_end": 1, "steps": 4}})").empty());
    CHECK_FALSE(error_of(R"({"model": "spin", "grid": {"t_end": 0, "steps": 40}})").empty());
    CHECK_FALSE(error_of(with_model(R"(, "seed": -3)")).empty());
    CHECK_FALSE(error_of(with_model(R"(, "lambda": "some")")).empty());
    CHECK_FALSE(error_of(with_model(R"(, "substeps": 0)")).empty());
    CHECK_FALSE(error_of("[1, 2]").empty());
    CHECK_FALSE(error_of("{\"model\": ").empty());
    CHECK_FALSE(error_of(R"({"model": 3})").empty());
  }

  TEST_CASE("missing files") {
    CHECK_THROWS_AS(load_config("/nonexistent/scenario.json"), ConfigError);
  }
}
