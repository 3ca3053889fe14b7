#include "lrinv/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lrinv {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

double number_at(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail(where, std::string("missing key '") + key + "'");
  return number(obj.at(key), where + "." + key);
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
  return obj.contains(key) ? number(obj.at(key), where + "." + key) : fallback;
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Profile profile(const json& j, const std::string& where) {
  if (j.is_number()) return Profile::constant(j.get<double>());
  if (!j.is_object() || !j.contains("type")) fail(where, "expected a number or a typed profile");
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "constant") return Profile::constant(number_at(j, "value", where));
    if (type == "linear")
      return Profile::linear(number_or(j, "t0", 0.0, where), number_at(j, "value0", where),
                             number_at(j, "slope", where));
    if (type == "ramp")
      return Profile::linear_ramp(number_at(j, "t0", where), number_at(j, "v0", where),
                                  number_at(j, "t1", where), number_at(j, "v1", where));
    if (type == "sin")
      return Profile::sinusoidal(number_or(j, "offset", 0.0, where),
                                 number_at(j, "amplitude", where),
                                 number_at(j, "frequency", where),
                                 number_or(j, "phase", 0.0, where));
    if (type == "table") {
      if (!j.contains("t") || !j.contains("v")) fail(where, "table needs 't' and 'v'");
      return Profile::tabulated(numbers(j.at("t"), where + ".t"), numbers(j.at("v"), where + ".v"));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    fail(where, e.what());
  }
  fail(where, "unknown profile type '" + type + "'");
}

ComplexProfile complex_profile(const json& j, const std::string& where) {
  ComplexProfile out;
  if (j.is_number()) {
    out.re = Profile::constant(j.get<double>());
    return out;
  }
  if (!j.is_object() || !(j.contains("re") || j.contains("im")))
    fail(where, "expected a number or {\"re\": ..., \"im\": ...}");
  if (j.contains("re")) out.re = profile(j.at("re"), where + ".re");
  if (j.contains("im")) out.im = profile(j.at("im"), where + ".im");
  return out;
}

ModelParams model_params(const json& p) {
  ModelParams out;
  const std::string w = "params";
  if (!p.is_object()) fail(w, "expected an object");
  for (const auto& [key, value] : p.items()) {
    const std::string where = w + "." + key;
    if (key == "j") out.j = number(value, where);
    else if (key == "omega") out.omega = profile(value, where);
    else if (key == "theta") out.theta = profile(value, where);
    else if (key == "phi") out.phi = profile(value, where);
    else if (key == "omega1") out.omega1 = profile(value, where);
    else if (key == "omega2") out.omega2 = profile(value, where);
    else if (key == "omega0") out.omega0 = profile(value, where);
    else if (key == "X") out.X = profile(value, where);
    else if (key == "Y") out.Y = profile(value, where);
    else if (key == "Z") out.Z = profile(value, where);
    else if (key == "g") out.g = complex_profile(value, where);
    else if (key == "n_total") out.n_total = integer(value, where);
    else if (key == "n_diff") out.n_diff = integer(value, where);
    else if (key == "cutoff") out.cutoff = integer(value, where);
    else if (key == "F") out.F = number(value, where);
    else if (key == "k") out.k = integer(value, where);
    else if (key == "m") out.m_fock = integer(value, where);
    else if (key == "parity") {
      const std::string s = value.get<std::string>();
      if (s == "even") out.parity = Parity::Even;
      else if (s == "odd") out.parity = Parity::Odd;
      else fail(where, "parity must be 'even' or 'odd'");
    } else {
      fail(where, "unknown parameter");
    }
  }
  return out;
}

Tolerances tolerances(const json& t) {
  Tolerances out;
  if (!t.is_object()) fail("tolerances", "expected an object");
  for (const auto& [key, value] : t.items()) {
    const std::string where = "tolerances." + key;
    const double v = number(value, where);
    if (!(v > 0.0)) fail(where, "tolerances must be positive");
    if (key == "closure") out.closure = v;
    else if (key == "certify") out.certify = v;
    else if (key == "invariant") out.invariant = v;
    else if (key == "contract") out.contract = v;
    else if (key == "offdiag") out.offdiag = v;
    else if (key == "fidelity") out.fidelity = v;
    else if (key == "phase") out.phase = v;
    else if (key == "drift") out.drift = v;
    else if (key == "berry") out.berry = v;
    else fail(where, "unknown tolerance");
  }
  return out;
}

BerrySweep berry_sweep(const json& b) {
  BerrySweep out;
  if (!b.is_object()) fail("berry", "expected an object");
  if (b.contains("periods")) out.periods = numbers(b.at("periods"), "berry.periods");
  out.omega = number_or(b, "omega", out.omega, "berry");
  out.theta = number_or(b, "theta", out.theta, "berry");
  out.j = number_or(b, "j", out.j, "berry");
  if (b.contains("lambda")) out.lambda = number(b.at("lambda"), "berry.lambda");
  out.samples_per_unit_time =
      number_or(b, "samples_per_unit_time", out.samples_per_unit_time, "berry");
  return out;
}

Fault fault(const json& f) {
  if (!f.is_string()) fail("inject_fault", "expected a string");
  const std::string s = f.get<std::string>();
  if (s == "none") return Fault::None;
  if (s == "structure_constant") return Fault::StructureConstant;
  if (s == "drop_geometric") return Fault::DropGeometric;
  if (s == "corrupt_y") return Fault::CorruptY;
  fail("inject_fault", "unknown fault '" + s + "'");
}

}  // namespace

void ScenarioConfig::validate() const {
  if (!model.empty()) {
    if (grid.steps < 8) throw ConfigError("grid.steps: need at least 8 steps");
    if (!(grid.t_end > grid.t_start)) throw ConfigError("grid: need t_start < t_end");
  }
  if (aux_substeps < 1 || oracle_substeps < 1) throw ConfigError("substeps must be positive");
  for (double p : berry.periods)
    if (!(p > 0.0)) throw ConfigError("berry.periods: periods must be positive");
  if (!(berry.samples_per_unit_time > 0.0))
    throw ConfigError("berry.samples_per_unit_time: must be positive");
}

ScenarioConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("top level: expected an object");

  ScenarioConfig cfg;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "model") {
        cfg.model = value.get<std::string>();
      } else if (key == "params") {
        cfg.params = model_params(value);
      } else if (key == "grid") {
        cfg.grid.t_start = number_or(value, "t_start", 0.0, "grid");
        cfg.grid.t_end = number_at(value, "t_end", "grid");
        cfg.grid.steps = integer(value.at("steps"), "grid.steps");
      } else if (key == "initial") {
        if (value.contains("a0") || value.contains("b0")) {
          cfg.initial = {number_at(value, "a0", "initial"), number_at(value, "b0", "initial")};
        } else {
          cfg.susy_initial = {cplx(number_or(value, "c_re", 0.0, "initial"),
                                   number_or(value, "c_im", 0.0, "initial")),
                              number_at(value, "b", "initial")};
        }
      } else if (key == "lambda") {
        if (value.is_string()) {
          if (value.get<std::string>() != "all") fail("lambda", "expected \"all\" or a list");
        } else {
          cfg.lambdas = numbers(value, "lambda");
        }
      } else if (key == "substeps") {
        cfg.aux_substeps = integer(value, "substeps");
      } else if (key == "oracle_substeps") {
        cfg.oracle_substeps = integer(value, "oracle_substeps");
      } else if (key == "tolerances") {
        cfg.tol = tolerances(value);
      } else if (key == "berry") {
        cfg.berry = berry_sweep(value);
      } else if (key == "outputs") {
        cfg.outputs.phases = value.value("phases", true);
        cfg.outputs.states = value.value("states", true);
        cfg.outputs.report = value.value("report", true);
      } else if (key == "inject_fault") {
        cfg.fault = fault(value);
      } else if (key == "seed") {
        if (!value.is_number_unsigned()) fail("seed", "expected a nonnegative integer");
        cfg.seed = value.get<std::uint64_t>();
      } else {
        fail(key, "unknown key");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("type error: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

Profile parse_profile(const std::string& text) {
  try {
    return profile(json::parse(text), "profile");
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("parse error: ") + e.what());
  }
}

}  // namespace lrinv
