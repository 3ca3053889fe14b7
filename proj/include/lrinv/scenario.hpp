#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lrinv/catalog.hpp"
#include "lrinv/config.hpp"
#include "lrinv/evolution.hpp"
#include "lrinv/invariant.hpp"
#include "lrinv/susy_jc.hpp"

namespace lrinv {

enum ExitCode : int { kExitPass = 0, kExitNumerical = 1, kExitConfig = 2 };

struct RunOptions {
  std::filesystem::path out_dir = ".";
  int jobs = 1;
  std::optional<std::uint64_t> seed;  // overrides the config seed
};

bool is_susy(const ScenarioConfig& cfg);
/// Catalog preset named by `cfg.model`; ConfigError for unknown names or
/// missing parameters.
ModelPreset build_preset(const ScenarioConfig& cfg);
SusyJCConfig build_susy_config(const ScenarioConfig& cfg);

/// One pass/fail line of a report.
struct Check {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool pass = false;
  std::string detail;
};

struct BranchResult {
  double lambda = 0.0;
  SolutionState exact;
  std::vector<double> fidelity;
  std::vector<double> phase_error;
};

/// Per-grid-point diagnostics of a run. For the SUSY JC model the `a` and
/// `b` columns hold the block angles theta and phi.
struct RunResult {
  std::vector<double> grid, a, b, invariant_residual;
  std::vector<BranchResult> branches;
  std::vector<Check> checks;

  bool pass() const;
};

RunResult run_pipeline(const ScenarioConfig& cfg, int jobs = 1);
std::vector<Check> verify_pipeline(const ScenarioConfig& cfg, std::uint64_t seed);

/// log2 of successive step-halving differences at the final time. `exact` is
/// set when the coarse difference is already at round-off (static problems).
struct OrderMeasurement {
  double order = 0.0;
  double coarse_difference = 0.0;
  bool exact = false;
};

OrderMeasurement auxiliary_order(const CoefficientSchedule& sched, const AlgebraSpec& spec,
                                 AuxiliaryState start, const TimeGrid& coarse);
OrderMeasurement oracle_order(const MatrixFn& H, const TimeGrid& coarse);

/// Spin model in a field of cone angle theta rotating once over `period`.
struct BerryRow {
  double period = 0.0;
  double phi_g = 0.0;
  double target = 0.0;
  double error = 0.0;
};

BerryRow berry_point(const BerrySweep& sweep, double period, double certify_tol);
std::vector<BerryRow> berry_pipeline(const BerrySweep& sweep, double certify_tol, int jobs = 1);

/// CLI entry points; each writes its files into `opts.out_dir` and returns
/// an ExitCode.
int run_command(const ScenarioConfig& cfg, const RunOptions& opts, std::ostream& log);
int verify_command(const ScenarioConfig& cfg, const RunOptions& opts, std::ostream& log);
int berry_command(const ScenarioConfig& cfg, const RunOptions& opts, std::ostream& log);
void print_catalog(std::ostream& os);

/// Decimal rendering with 17 significant digits, used for every CSV field.
std::string format_number(double value);

}  // namespace lrinv
