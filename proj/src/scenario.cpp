#include "lrinv/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <system_error>
#include <thread>

#include "lrinv/errors.hpp"
#include "lrinv/numerics.hpp"
#include "lrinv/oracle.hpp"

namespace lrinv {

namespace {

constexpr double kRoundoff = 1e-12;
// Fock matrix elements are products of square roots, so integer eigenvalues
// are reproduced to a few ulps rather than bit-exactly.
constexpr double kIntegerMatch = 1e-13;

/// Runs fn(0..n-1) on up to `jobs` threads. Each index writes only its own
/// slot; the first failure (by index) is rethrown.
template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

const Profile& need(const std::optional<Profile>& p, const char* key) {
  if (!p) throw ConfigError(std::string("params.") + key + ": required by this model");
  return *p;
}

ComplexFn need(const std::optional<ComplexProfile>& p, const char* key) {
  if (!p) throw ConfigError(std::string("params.") + key + ": required by this model");
  return *p;
}

Check make_check(std::string name, double value, double limit, std::string detail = {}) {
  return {std::move(name), value, limit, value <= limit, std::move(detail)};
}

Check order_check(std::string name, const OrderMeasurement& m, double lo, double hi) {
  Check c{std::move(name), m.order, hi, m.exact || (m.order >= lo && m.order <= hi), {}};
  std::ostringstream d;
  if (m.exact)
    d << "exact to round-off (difference " << m.coarse_difference << ")";
  else
    d << "window [" << lo << ", " << hi << "]";
  c.detail = d.str();
  return c;
}

double relative_h_norm(const Representation& rep, const CoefficientSchedule& sched, double t) {
  return std::max(1.0, frobenius_block(assemble(rep, sched, t), rep.interior_dim));
}

/// Grid indices drawn from the seed; always includes both ends.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(1, n - 2);
  std::vector<std::size_t> out{0, n - 1};
  for (std::size_t i = 0; i < count; ++i) out.push_back(pick(rng));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Smallest improvement ratio of the finite-difference transformed-Hamiltonian
/// defect under step halving, over samples whose defect is above round-off.
struct HalvingTracker {
  double worst = std::numeric_limits<double>::infinity();

  void add(double coarse, double fine) {
    if (coarse > 1e-10) worst = std::min(worst, coarse / fine);
  }
  Check check() const {
    const bool resolved = std::isfinite(worst);
    return {"transformed_hamiltonian_step_halving", resolved ? worst : 0.0, 3.5,
            !resolved || worst >= 3.5,
            resolved ? "defect ratio for step h vs h/2, must be >= 3.5"
                     : "defect at round-off for every sample"};
  }
};

double ratio_order(double e1, double e2) { return std::log2(e1 / e2); }

/// Coarse grid whose step resolves the largest frequency by ~0.2 rad.
TimeGrid coarse_grid(const TimeGrid& grid, double omega_max) {
  const double span = grid.t_end - grid.t_start;
  const int steps = std::clamp(static_cast<int>(std::ceil(span * omega_max / 0.2)), 16, 4096);
  return {grid.t_start, grid.t_end, steps};
}

std::vector<Eigenpair> select_branches(const Representation& rep,
                                       const std::vector<double>& wanted) {
  std::vector<Eigenpair> all = eigen_invariant(rep);
  std::vector<Eigenpair> out;
  if (wanted.empty()) {
    for (auto& e : all) {
      const Index tail = rep.dim() - rep.reliable_dim;
      if (!rep.truncated || e.vector.tail(tail).norm() < kRoundoff) out.push_back(std::move(e));
    }
    return out;
  }
  for (double lam : wanted) {
    auto it = std::find_if(all.begin(), all.end(),
                           [lam](const Eigenpair& e) { return std::abs(e.lambda - lam) < 1e-9; });
    if (it == all.end())
      throw ConfigError("lambda: " + format_number(lam) + " is not an eigenvalue of C");
    out.push_back(*it);
  }
  return out;
}

void compare_with_oracle(BranchResult& br, const std::vector<Vector>& exact,
                         const std::vector<Vector>& oracle) {
  const std::size_t n = exact.size();
  br.fidelity.resize(n);
  br.phase_error.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx ov = overlap(oracle[i], exact[i]);
    br.fidelity[i] = std::min(1.0, std::abs(ov));
    br.phase_error[i] = std::abs(std::arg(ov));
  }
}

void oracle_checks(RunResult& res, const Tolerances& tol) {
  double worst_fid = 0.0, worst_phase = 0.0;
  for (const auto& br : res.branches) {
    worst_fid = std::max(worst_fid, 1.0 - *std::min_element(br.fidelity.begin(), br.fidelity.end()));
    worst_phase =
        std::max(worst_phase, *std::max_element(br.phase_error.begin(), br.phase_error.end()));
  }
  res.checks.push_back(make_check("oracle_infidelity", worst_fid, tol.fidelity));
  res.checks.push_back(make_check("oracle_phase_error", worst_phase, tol.phase));
}

RunResult run_lie(const ScenarioConfig& cfg, int jobs) {
  const ModelPreset preset = build_preset(cfg);
  const Representation& rep = preset.rep;
  const CoefficientSchedule& sched = preset.schedule;
  RunResult res;

  const ClosureReport closure = verify_closure(rep, cfg.tol.closure);
  res.checks.push_back(make_check("closure", closure.max_residual() / closure.scale,
                                  cfg.tol.closure));

  const AuxiliaryState s0 = cfg.initial ? AuxiliaryState{cfg.initial->first, cfg.initial->second}
                                        : aligned_start(sched, rep.spec, cfg.grid.t_start);
  const AuxiliaryTrajectory traj =
      solve_auxiliary(sched, rep.spec, s0.a, s0.b, cfg.grid,
                      {cfg.aux_substeps, true, cfg.tol.certify, kSingularityGuard});
  res.checks.push_back(
      make_check("auxiliary_error_estimate", traj.error_estimate, cfg.tol.certify));

  res.grid = traj.grid;
  res.a = traj.a;
  res.b = traj.b;
  res.invariant_residual.resize(traj.size());
  double worst_inv = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    res.invariant_residual[i] = invariant_residual(rep, sched, traj, i);
    worst_inv = std::max(worst_inv,
                         res.invariant_residual[i] / relative_h_norm(rep, sched, traj.grid[i]));
  }
  res.checks.push_back(make_check("invariant_residual_relative", worst_inv, cfg.tol.invariant));

  const InvariantConstants consts = kappa_constants(rep.spec);
  std::vector<Matrix> Vs(traj.size());
  std::vector<double> contract(traj.size());
  parallel_for(traj.size(), jobs, [&](std::size_t i) {
    Vs[i] = unitary_V(rep, consts, traj.state(i));
    const Matrix I_V =
        inverse_transform(Vs[i]) * invariant_matrix(rep, consts, traj.state(i)) * Vs[i];
    contract[i] = invariant_contract_defect(rep, I_V, -1);
  });
  const double worst_contract = *std::max_element(contract.begin(), contract.end());
  res.checks.push_back(make_check("transformed_invariant", worst_contract, cfg.tol.contract));

  const std::vector<Eigenpair> branches = select_branches(rep, cfg.lambdas);
  if (branches.empty()) throw ConfigError("lambda: no eigenvalue selected");
  PhaseMask mask;
  if (cfg.fault == Fault::DropGeometric) mask.geometric = false;
  const MatrixFn H = [&](double t) { return assemble(rep, sched, t); };
  res.branches.resize(branches.size());
  parallel_for(branches.size(), jobs, [&](std::size_t k) {
    BranchResult& br = res.branches[k];
    br.lambda = branches[k].lambda;
    br.exact = solution_state(br.lambda, branches[k].vector, Vs, phases(br.lambda, sched, traj), mask);
  });
  Matrix start(rep.dim(), static_cast<Index>(branches.size()));
  for (std::size_t k = 0; k < branches.size(); ++k)
    start.col(static_cast<Index>(k)) = res.branches[k].exact.psi.front();
  const std::vector<Matrix> oracle = propagate_states(H, cfg.grid, cfg.oracle_substeps, start);
  for (std::size_t k = 0; k < branches.size(); ++k) {
    std::vector<Vector> column;
    column.reserve(oracle.size());
    for (const auto& m : oracle) column.push_back(m.col(static_cast<Index>(k)));
    compare_with_oracle(res.branches[k], res.branches[k].exact.psi, column);
  }
  oracle_checks(res, cfg.tol);
  return res;
}

RunResult run_susy(const ScenarioConfig& cfg, int jobs) {
  const SusyJCConfig sc = build_susy_config(cfg);
  const auto [c0, b0] = cfg.susy_initial ? *cfg.susy_initial : susy_aligned_start(sc);
  const SusyAuxiliary aux = solve_susy_auxiliary(sc, c0, b0, cfg.grid, {cfg.aux_substeps, 1e-6});
  RunResult res;
  res.checks.push_back(make_check("conservation_drift", aux.drift, cfg.tol.drift));

  res.grid = aux.grid;
  res.a = aux.theta;
  res.b = aux.phi;
  res.invariant_residual.resize(aux.size());
  double worst_inv = 0.0, worst_identity = 0.0;
  for (std::size_t i = 0; i < aux.size(); ++i) {
    res.invariant_residual[i] = susy_invariant_residual(sc, aux, i);
    worst_inv = std::max(worst_inv, res.invariant_residual[i] /
                                        std::max(1.0, block_hamiltonian(sc, aux.grid[i]).norm()));
    worst_identity = std::max(worst_identity, susy_angle_identity_defect(
                                                  aux.c[i], aux.b[i], aux.theta[i], aux.phi[i],
                                                  aux.lambda_m));
  }
  res.checks.push_back(make_check("invariant_residual_relative", worst_inv, cfg.tol.invariant));
  res.checks.push_back(make_check("angle_identities", worst_identity, 1e-10));

  const SusyEmbedding emb = fullspace_susy_embedding(sc, sc.m_fock + sc.k + 4);
  double worst_block = 0.0;
  for (double t : aux.grid)
    worst_block = std::max(worst_block, (emb.block.adjoint() * emb.H_full(t) * emb.block -
                                         block_hamiltonian(sc, t))
                                            .norm());
  res.checks.push_back(make_check("block_projection", worst_block, 1e-12));

  std::vector<int> sigmas;
  if (cfg.lambdas.empty()) {
    sigmas = {1, -1};
  } else {
    for (double s : cfg.lambdas) {
      if (s != 1.0 && s != -1.0) throw ConfigError("lambda: SUSY branches are +1 and -1");
      sigmas.push_back(static_cast<int>(s));
    }
  }
  res.branches.resize(sigmas.size());
  std::vector<double> leakage(sigmas.size(), 0.0);
  const Matrix P = emb.projector();
  const Matrix outside = Matrix::Identity(P.rows(), P.cols()) - P;
  parallel_for(sigmas.size(), jobs, [&](std::size_t k) {
    BranchResult& br = res.branches[k];
    br.lambda = sigmas[k];
    br.exact = susy_solution(sc, sigmas[k], aux);
    if (cfg.fault == Fault::DropGeometric) {
      for (std::size_t i = 0; i < br.exact.psi.size(); ++i) {
        br.exact.psi[i] *= std::polar(1.0, br.exact.phases.phi_g[i]);
        br.exact.phases.phi_g[i] = 0.0;
      }
    }
    std::vector<Vector> embedded;
    embedded.reserve(br.exact.psi.size());
    for (const auto& v : br.exact.psi) embedded.push_back(emb.block * v);
    const auto oracle = propagate_state(emb.H_full, cfg.grid, cfg.oracle_substeps, embedded.front());
    for (const auto& v : oracle) leakage[k] = std::max(leakage[k], (outside * v).norm());
    compare_with_oracle(br, embedded, oracle);
  });
  res.checks.push_back(
      make_check("block_leakage", *std::max_element(leakage.begin(), leakage.end()), 1e-12));
  oracle_checks(res, cfg.tol);
  return res;
}

std::vector<Check> verify_lie(const ScenarioConfig& cfg, std::uint64_t seed) {
  ModelPreset preset = build_preset(cfg);
  Representation& rep = preset.rep;
  const CoefficientSchedule& sched = preset.schedule;
  std::vector<Check> checks;

  Representation probed = rep;
  if (cfg.fault == Fault::StructureConstant) probed.spec.m *= 1.1;
  const ClosureReport closure = verify_closure(probed, cfg.tol.closure);
  {
    std::ostringstream d;
    d << "[A,B]-nC " << closure.ab << ", [C,A]-mA " << closure.ca << ", [C,B]+mB "
      << closure.cb;
    checks.push_back(
        make_check("closure", closure.max_residual() / closure.scale, cfg.tol.closure, d.str()));
  }

  const AuxiliaryState s0 = cfg.initial ? AuxiliaryState{cfg.initial->first, cfg.initial->second}
                                        : aligned_start(sched, rep.spec, cfg.grid.t_start);
  const AuxiliaryTrajectory traj =
      solve_auxiliary(sched, rep.spec, s0.a, s0.b, cfg.grid,
                      {cfg.aux_substeps, true, cfg.tol.certify, kSingularityGuard});
  checks.push_back(make_check("auxiliary_error_estimate", traj.error_estimate, cfg.tol.certify));
  checks.push_back(make_check("auxiliary_equation_residual", traj.max_residual, cfg.tol.certify));

  double worst_inv = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i)
    worst_inv = std::max(worst_inv, invariant_residual(rep, sched, traj, i) /
                                        relative_h_norm(rep, sched, traj.grid[i]));
  checks.push_back(make_check("invariant_residual_relative", worst_inv, cfg.tol.invariant));

  const std::vector<std::size_t> picks = sample_indices(traj.size(), 12, seed);
  InvariantConstants consts = kappa_constants(rep.spec);
  InvariantConstants probe_consts = consts;
  if (cfg.fault == Fault::CorruptY) probe_consts.y *= 1.1;

  // Spectrum of I(t): the leading half of the reliable block for truncated ladders.
  const Index spectrum_count = rep.truncated ? std::max<Index>(1, rep.reliable_dim / 2) : rep.dim();
  auto low_spectrum = [&](std::size_t i) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(invariant_matrix(rep, consts, traj.state(i)),
                                             Eigen::EigenvaluesOnly);
    return Eigen::VectorXd(es.eigenvalues().head(spectrum_count));
  };
  const Eigen::VectorXd spectrum0 = low_spectrum(0);
  double worst_spec = 0.0, worst_contract = 0.0, worst_offdiag = 0.0, worst_norm = 0.0;
  HalvingTracker halving;
  const double step = 1e-3;
  for (std::size_t i : picks) {
    worst_spec = std::max(worst_spec, (low_spectrum(i) - spectrum0).cwiseAbs().maxCoeff());
    const Matrix V = unitary_V(rep, consts, traj.state(i));
    const Matrix I_V = inverse_transform(V) * invariant_matrix(rep, probe_consts, traj.state(i)) * V;
    worst_contract = std::max(worst_contract, invariant_contract_defect(rep, I_V, -1));
    const double d1 = transformed_hamiltonian_defect(rep, sched, traj, i, step).offdiag;
    const double d2 = transformed_hamiltonian_defect(rep, sched, traj, i, step / 2).offdiag;
    worst_offdiag = std::max(worst_offdiag, d1);
    halving.add(d1, d2);
  }
  checks.push_back(make_check("invariant_spectrum_drift", worst_spec, cfg.tol.invariant));
  checks.push_back(make_check("transformed_invariant", worst_contract, cfg.tol.contract));
  checks.push_back(make_check("transformed_hamiltonian_offdiag", worst_offdiag, cfg.tol.offdiag));
  checks.push_back(halving.check());

  const std::vector<Eigenpair> branches = select_branches(rep, cfg.lambdas);
  for (const auto& e : branches) {
    const SolutionState st = solution_state(e.lambda, e.vector, rep, sched, traj);
    for (std::size_t i : picks) worst_norm = std::max(worst_norm, std::abs(st.psi[i].norm() - 1.0));
  }
  checks.push_back(make_check("norm_conservation", worst_norm, 1e-10));

  double omega_max = 0.0;
  for (double t : traj.grid) omega_max = std::max(omega_max, std::abs(sched.omega(t)));
  const TimeGrid coarse = coarse_grid(cfg.grid, std::max(omega_max, 1e-3));
  checks.push_back(order_check("auxiliary_rk4_order", auxiliary_order(sched, rep.spec, s0, coarse),
                               3.5, 4.5));
  const MatrixFn H = [&](double t) { return assemble(rep, sched, t); };
  checks.push_back(order_check("oracle_midpoint_order", oracle_order(H, coarse), 1.7, 2.3));
  return checks;
}

std::vector<Check> verify_susy(const ScenarioConfig& cfg, std::uint64_t seed) {
  const SusyJCConfig sc = build_susy_config(cfg);
  const auto [c0, b0] = cfg.susy_initial ? *cfg.susy_initial : susy_aligned_start(sc);
  const SusyAuxiliary aux = solve_susy_auxiliary(sc, c0, b0, cfg.grid, {cfg.aux_substeps, 1e-6});
  std::vector<Check> checks;
  checks.push_back(make_check("conservation_drift", aux.drift, cfg.tol.drift));

  const SubspaceBlock blk = subspace_block(sc);
  const Matrix comm = blk.Qdag * blk.Q - blk.Q * blk.Qdag - blk.lambda_m * blk.sigmaz;
  checks.push_back(make_check("block_algebra", comm.norm() / blk.lambda_m, cfg.tol.closure));

  const SusyEmbedding emb = fullspace_susy_embedding(sc, sc.m_fock + sc.k + 4);
  const Matrix np = emb.block.adjoint() * emb.n_prime * emb.block;
  checks.push_back(make_check(
      "lambda_m_eigenvalue",
      (np - blk.lambda_m * Matrix::Identity(2, 2)).norm() / blk.lambda_m, kIntegerMatch,
      "N' on the block against (m+k)!/m!"));
  checks.push_back(make_check(
      "sigma_normalization",
      std::abs(sigma_block_normalization(sc.k, sc.m_fock) - blk.lambda_m) / blk.lambda_m,
      kIntegerMatch));

  const std::vector<std::size_t> picks = sample_indices(aux.size(), 12, seed);
  double worst_inv = 0.0, worst_identity = 0.0, worst_offdiag = 0.0, worst_coeff = 0.0,
         worst_iv = 0.0;
  HalvingTracker halving;
  const double step = 1e-3;
  for (std::size_t i = 0; i < aux.size(); ++i)
    worst_inv = std::max(worst_inv, susy_invariant_residual(sc, aux, i) /
                                        std::max(1.0, block_hamiltonian(sc, aux.grid[i]).norm()));
  for (std::size_t i : picks) {
    worst_identity = std::max(worst_identity,
                              susy_angle_identity_defect(aux.c[i], aux.b[i], aux.theta[i],
                                                         aux.phi[i], aux.lambda_m));
    const Matrix V = susy_V(aux.theta[i], aux.phi[i], aux.lambda_m);
    const Matrix I = susy_invariant(aux.theta[i], aux.phi[i], aux.lambda_m);
    worst_iv = std::max(worst_iv, (V.adjoint() * I * V - blk.sigmaz).norm());
    const SusyTransformDefect d1 = susy_transformed_hamiltonian_defect(sc, aux, i, step);
    const SusyTransformDefect d2 = susy_transformed_hamiltonian_defect(sc, aux, i, step / 2);
    worst_offdiag = std::max(worst_offdiag, d1.offdiag);
    worst_coeff = std::max(worst_coeff, d1.sigmaz_coefficient_error);
    halving.add(d1.offdiag, d2.offdiag);
  }
  checks.push_back(make_check("invariant_residual_relative", worst_inv, cfg.tol.invariant));
  checks.push_back(make_check("angle_identities", worst_identity, 1e-10));
  checks.push_back(make_check("transformed_invariant", worst_iv, cfg.tol.contract));
  checks.push_back(make_check("transformed_hamiltonian_offdiag", worst_offdiag, cfg.tol.offdiag));
  checks.push_back(make_check("transformed_hamiltonian_sigmaz", worst_coeff, 1e-6));
  checks.push_back(halving.check());

  double omega_max = 0.0;
  for (double t : aux.grid)
    omega_max = std::max(omega_max, block_hamiltonian(sc, t).operatorNorm());
  const TimeGrid coarse = coarse_grid(cfg.grid, omega_max);
  checks.push_back(order_check(
      "oracle_midpoint_order",
      oracle_order([&](double t) { return block_hamiltonian(sc, t); }, coarse), 1.7, 2.3));
  return checks;
}

void write_csv_row(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << format_number(v);
    first = false;
  }
  os << '\n';
}

void write_checks(std::ostream& os, const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << format_number(c.value)
       << " limit=" << format_number(c.limit);
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << '\n';
  }
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create '" + dir.string() + "': " + ec.message());
  std::ofstream out(dir / name);
  if (!out) throw ConfigError("cannot write '" + (dir / name).string() + "'");
  return out;
}

void write_report(const RunOptions& opts, const std::string& title,
                  const std::vector<Check>& checks, const std::string& diagnostic) {
  std::ofstream rep = open_output(opts.out_dir, "report.txt");
  rep << title << '\n';
  write_checks(rep, checks);
  if (!diagnostic.empty()) rep << "ERROR " << diagnostic << '\n';
  rep << "RESULT " << (diagnostic.empty() && all_pass(checks) ? "PASS" : "FAIL") << '\n';
}

/// Maps exceptions to exit codes and writes a failing report when it can.
template <class Body>
int guarded(const RunOptions& opts, const std::string& title, std::ostream& log, Body&& body) {
  try {
    return body();
  } catch (const InvalidArgument& e) {
    log << "config error: " << e.what() << '\n';
    try {
      write_report(opts, title, {}, e.what());
    } catch (const Error&) {
    }
    return kExitConfig;
  } catch (const NumericalError& e) {
    log << "numerical failure: " << e.what() << '\n';
    try {
      write_report(opts, title, {}, e.what());
    } catch (const Error&) {
    }
    return kExitNumerical;
  }
}

}  // namespace

bool RunResult::pass() const { return all_pass(checks); }

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value == 0.0 ? 0.0 : value);
  return buf;
}

bool is_susy(const ScenarioConfig& cfg) { return cfg.model == "susy_jc"; }

ModelPreset build_preset(const ScenarioConfig& cfg) {
  const ModelParams& p = cfg.params;
  const TimeGrid& grid = cfg.grid;
  if (cfg.model == "spin")
    return spin_model(need(p.omega, "omega"), need(p.theta, "theta"), need(p.phi, "phi"), p.j,
                      grid);
  if (cfg.model == "oscillators_su2")
    return coupled_oscillators_su2(need(p.omega1, "omega1"), need(p.omega2, "omega2"),
                                   need(p.g, "g"), p.n_total, grid);
  if (cfg.model == "oscillators_su11")
    return coupled_oscillators_su11(need(p.omega1, "omega1"), need(p.omega2, "omega2"),
                                    need(p.g, "g"), p.n_diff, p.cutoff, grid);
  if (cfg.model == "gho")
    return general_harmonic_oscillator(need(p.X, "X"), need(p.Y, "Y"), need(p.Z, "Z"), p.cutoff,
                                       grid, p.parity, p.F);
  if (cfg.model == "two_level")
    return two_level_atom(need(p.omega0, "omega0"), need(p.g, "g"), grid);
  for (const auto& entry : list_models())
    if (entry.name == cfg.model && !entry.runnable)
      throw ConfigError("model: '" + cfg.model + "' is catalogued but not solvable: " + entry.note);
  throw ConfigError("model: unknown preset '" + cfg.model + "'");
}

SusyJCConfig build_susy_config(const ScenarioConfig& cfg) {
  const ModelParams& p = cfg.params;
  SusyJCConfig sc{p.k, p.m_fock, need(p.omega, "omega"), need(p.omega0, "omega0"), need(p.g, "g"),
                  cfg.grid.t_start, cfg.grid.t_end};
  sc.validate();
  return sc;
}

RunResult run_pipeline(const ScenarioConfig& cfg, int jobs) {
  cfg.validate();
  if (cfg.model.empty()) throw ConfigError("model: missing");
  return is_susy(cfg) ? run_susy(cfg, jobs) : run_lie(cfg, jobs);
}

std::vector<Check> verify_pipeline(const ScenarioConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  if (cfg.model.empty()) throw ConfigError("model: missing");
  return is_susy(cfg) ? verify_susy(cfg, seed) : verify_lie(cfg, seed);
}

OrderMeasurement auxiliary_order(const CoefficientSchedule& sched, const AlgebraSpec& spec,
                                 AuxiliaryState start, const TimeGrid& coarse) {
  AuxiliaryState ends[3];
  for (int level = 0; level < 3; ++level) {
    const AuxiliaryTrajectory tr =
        solve_auxiliary(sched, spec, start.a, start.b, coarse, {1 << level, false, 1.0});
    ends[level] = tr.state(tr.size() - 1);
  }
  const double e1 = std::hypot(ends[0].a - ends[1].a, ends[0].b - ends[1].b);
  const double e2 = std::hypot(ends[1].a - ends[2].a, ends[1].b - ends[2].b);
  if (e1 < 1e-11) return {0.0, e1, true};
  return {ratio_order(e1, e2), e1, false};
}

OrderMeasurement oracle_order(const MatrixFn& H, const TimeGrid& coarse) {
  const PropagatorResult r1 = timeordered_propagator(H, coarse, 1, false);
  const PropagatorResult r2 = timeordered_propagator(H, coarse, 2, false);
  const PropagatorResult r4 = timeordered_propagator(H, coarse, 4, false);
  const double e1 = (r1.U.back() - r2.U.back()).norm();
  const double e2 = (r2.U.back() - r4.U.back()).norm();
  if (e1 < 1e-11 * std::max(1.0, r1.U.back().norm())) return {0.0, e1, true};
  return {ratio_order(e1, e2), e1, false};
}

BerryRow berry_point(const BerrySweep& sweep, double period, double certify_tol) {
  if (!(period > 0.0)) throw InvalidArgument("sweep period must be positive");
  const AlgebraSpec spec{"su(2)", 1.0, 2.0};
  const double lambda = sweep.lambda.value_or(sweep.j);
  BerryRow row{period, 0.0, berry_limit(lambda, spec, sweep.theta), 0.0};
  if (sweep.theta == 0.0) return row;  // field along C: I = C and no geometric phase

  const int steps = std::max(8, static_cast<int>(std::ceil(period * sweep.samples_per_unit_time)));
  const TimeGrid grid{0.0, period, steps};
  const double rate = 2.0 * std::numbers::pi / period;
  CoefficientSchedule sched = constant_schedule(sweep.omega, sweep.theta, 0.0, 0.0, period);
  sched.phi = [rate](double t) { return rate * t; };
  const AuxiliaryState s0 = aligned_start(sched, spec, 0.0);
  const AuxiliaryTrajectory traj =
      solve_auxiliary(sched, spec, s0.a, s0.b, grid, {1, true, certify_tol, kSingularityGuard});
  row.phi_g = phases(lambda, sched, traj).phi_g.back();
  row.error = std::abs(row.phi_g - row.target);
  return row;
}

std::vector<BerryRow> berry_pipeline(const BerrySweep& sweep, double certify_tol, int jobs) {
  std::vector<BerryRow> rows(sweep.periods.size());
  parallel_for(rows.size(), jobs,
               [&](std::size_t i) { rows[i] = berry_point(sweep, sweep.periods[i], certify_tol); });
  return rows;
}

int run_command(const ScenarioConfig& cfg, const RunOptions& opts, std::ostream& log) {
  return guarded(opts, "run " + cfg.model, log, [&] {
    const RunResult res = run_pipeline(cfg, opts.jobs);
    for (std::size_t k = 0; k < res.branches.size() && cfg.outputs.phases; ++k) {
      const BranchResult& br = res.branches[k];
      std::ofstream csv = open_output(
          opts.out_dir, k == 0 ? std::string("phases.csv") : "phases_" + std::to_string(k) + ".csv");
      csv << "t,a,b,phi_d,phi_g,phi_c,invariant_residual,oracle_fidelity,oracle_phase_error\n";
      for (std::size_t i = 0; i < res.grid.size(); ++i)
        write_csv_row(csv, {res.grid[i], res.a[i], res.b[i], br.exact.phases.phi_d[i],
                            br.exact.phases.phi_g[i], br.exact.phases.phi_c[i],
                            res.invariant_residual[i], br.fidelity[i], br.phase_error[i]});
    }
    if (cfg.outputs.states) {
      std::ofstream csv = open_output(opts.out_dir, "states.csv");
      csv << "t,lambda,index,re,im\n";
      for (const auto& br : res.branches)
        for (std::size_t i = 0; i < br.exact.psi.size(); ++i)
          for (Index r = 0; r < br.exact.psi[i].size(); ++r)
            write_csv_row(csv, {br.exact.grid[i], br.lambda, static_cast<double>(r),
                                br.exact.psi[i](r).real(), br.exact.psi[i](r).imag()});
    }
    if (cfg.outputs.report) {
      std::ostringstream title;
      title << "run " << cfg.model << " branches=";
      for (std::size_t k = 0; k < res.branches.size(); ++k)
        title << (k ? ";" : "") << format_number(res.branches[k].lambda);
      write_report(opts, title.str(), res.checks, {});
    }
    write_checks(log, res.checks);
    return res.pass() ? kExitPass : kExitNumerical;
  });
}

int verify_command(const ScenarioConfig& cfg, const RunOptions& opts, std::ostream& log) {
  const std::uint64_t seed = opts.seed.value_or(cfg.seed);
  return guarded(opts, "verify " + cfg.model, log, [&] {
    const std::vector<Check> checks = verify_pipeline(cfg, seed);
    write_report(opts, "verify " + cfg.model + " seed=" + std::to_string(seed), checks, {});
    write_checks(log, checks);
    return all_pass(checks) ? kExitPass : kExitNumerical;
  });
}

int berry_command(const ScenarioConfig& cfg, const RunOptions& opts, std::ostream& log) {
  return guarded(opts, "berry", log, [&] {
    if (cfg.berry.periods.empty()) throw ConfigError("berry.periods: at least one period needed");
    const std::vector<BerryRow> rows = berry_pipeline(cfg.berry, cfg.tol.certify, opts.jobs);
    std::ofstream csv = open_output(opts.out_dir, "berry.csv");
    csv << "sweep_period,phi_g,target,error\n";
    for (const auto& r : rows) write_csv_row(csv, {r.period, r.phi_g, r.target, r.error});

    std::vector<Check> checks;
    bool monotone = true;
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (rows[i].period > rows[i - 1].period && rows[i].error > rows[i - 1].error) monotone = false;
    checks.push_back({"error_decreases_with_period", monotone ? 0.0 : 1.0, 0.0, monotone, {}});
    const auto longest = std::max_element(
        rows.begin(), rows.end(), [](const BerryRow& x, const BerryRow& y) { return x.period < y.period; });
    checks.push_back(make_check("longest_period_error", longest->error, cfg.tol.berry));
    write_report(opts, "berry theta=" + format_number(cfg.berry.theta), checks, {});
    write_checks(log, checks);
    return all_pass(checks) ? kExitPass : kExitNumerical;
  });
}

void print_catalog(std::ostream& os) {
  for (const auto& e : list_models())
    os << (e.runnable ? "preset   " : "excluded ") << e.name << " [" << e.algebra << "] "
       << e.note << '\n';
}

}  // namespace lrinv
