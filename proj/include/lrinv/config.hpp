#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lrinv/algebra.hpp"
#include "lrinv/errors.hpp"
#include "lrinv/schedule.hpp"
#include "lrinv/types.hpp"

namespace lrinv {

/// Malformed or inconsistent scenario configuration.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Complex-valued time profile assembled from real and imaginary parts.
struct ComplexProfile {
  Profile re = Profile::constant(0.0);
  Profile im = Profile::constant(0.0);

  cplx operator()(double t) const { return {re(t), im(t)}; }
};

/// Union of the parameters used by the catalog presets; each model reads the
/// subset it needs and rejects missing ones.
struct ModelParams {
  double j = 0.5;
  std::optional<Profile> omega, theta, phi;       // spin, susy_jc (omega)
  std::optional<Profile> omega1, omega2;          // coupled oscillators
  std::optional<Profile> omega0;                  // two_level, susy_jc
  std::optional<Profile> X, Y, Z;                 // gho
  std::optional<ComplexProfile> g;
  int n_total = 1;
  int n_diff = 0;
  int cutoff = 24;
  Parity parity = Parity::Even;
  double F = 0.0;
  int k = 1;
  int m_fock = 0;
};

struct Tolerances {
  double closure = 1e-12;
  double certify = 1e-8;
  double invariant = 1e-7;     // relative to |H|
  double contract = 1e-8;      // |I_V - C| / |C|
  double offdiag = 1e-5;       // transformed Hamiltonian off-diagonal part
  double fidelity = 1e-6;      // 1 - |<psi_oracle|psi_exact>|
  double phase = 1e-4;         // |arg <psi_oracle|psi_exact>|
  double drift = 1e-8;         // SUSY conservation drift
  double berry = 1e-3;
};

struct BerrySweep {
  std::vector<double> periods;
  double omega = 1.0;
  double theta = 0.5;          // cone angle of the rotating field
  double j = 0.5;
  std::optional<double> lambda;  // defaults to j
  double samples_per_unit_time = 100.0;
};

enum class Fault { None, StructureConstant, DropGeometric, CorruptY };

struct Outputs {
  bool phases = true;
  bool states = true;
  bool report = true;
};

struct ScenarioConfig {
  std::string model;  // empty for berry-only configs
  ModelParams params;
  TimeGrid grid;
  std::optional<std::pair<double, double>> initial;  // (a0, b0)
  std::optional<std::pair<cplx, double>> susy_initial;  // (c0, b0)
  std::vector<double> lambdas;  // empty: all eigenvalues
  int aux_substeps = 1;
  int oracle_substeps = 4;
  Tolerances tol;
  BerrySweep berry;
  Outputs outputs;
  Fault fault = Fault::None;
  std::uint64_t seed = 0;

  void validate() const;
};

/// JSON document to ScenarioConfig; throws ConfigError with the offending key.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// A profile from its JSON text, e.g. `1.5` or `{"type": "sin", ...}`.
Profile parse_profile(const std::string& text);

}  // namespace lrinv
