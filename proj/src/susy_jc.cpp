#include "lrinv/susy_jc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lrinv/errors.hpp"
#include "lrinv/numerics.hpp"
#include "lrinv/oracle.hpp"

namespace lrinv {

namespace {

using State3 = Eigen::Vector3d;

constexpr double kPoleTol = 1e-12;

Matrix pauli_z() {
  Matrix s = Matrix::Zero(2, 2);
  s(0, 0) = 1.0;
  s(1, 1) = -1.0;
  return s;
}

/// (theta, phi) from a unit-sphere (c, b) pair; phi follows `phi_near`.
std::pair<double, double> sphere_angles(cplx c, double b, double lambda, double phi_near) {
  const double theta = std::acos(std::clamp(b, -1.0, 1.0));
  if (std::abs(c) * std::sqrt(lambda) < kPoleTol) return {theta, phi_near};
  double phi = -std::arg(-c);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi += two_pi * std::round((phi_near - phi) / two_pi);
  return {theta, phi};
}

}  // namespace

void SusyJCConfig::validate() const {
  if (k < 1) throw InvalidArgument("photon number k must be at least 1");
  if (m_fock < 0) throw InvalidArgument("Fock index m must be nonnegative");
  if (!omega || !omega0 || !g) throw InvalidArgument("SUSY JC schedules must all be set");
  if (!(t_end > t_start)) throw InvalidArgument("SUSY JC interval needs t_start < t_end");
}

std::uint64_t lambda_m_exact(int m_fock, int k) {
  if (m_fock < 0 || k < 1) throw InvalidArgument("lambda_m needs m >= 0 and k >= 1");
  std::uint64_t value = 1;
  for (int j = 1; j <= k; ++j) {
    if (__builtin_mul_overflow(value, static_cast<std::uint64_t>(m_fock + j), &value))
      throw RangeError("(m + k)!/m! overflows 64-bit integers");
  }
  return value;
}

double lambda_m(int m_fock, int k) {
  const std::uint64_t v = lambda_m_exact(m_fock, k);
  if (v > (std::uint64_t{1} << 53)) throw RangeError("(m + k)!/m! is not exact in double precision");
  return static_cast<double>(v);
}

SubspaceBlock subspace_block(const SusyJCConfig& cfg) {
  SubspaceBlock blk;
  blk.lambda_m = lambda_m(cfg.m_fock, cfg.k);
  const double s = std::sqrt(blk.lambda_m);
  blk.Q = Matrix::Zero(2, 2);
  blk.Q(1, 0) = s;
  blk.Qdag = blk.Q.adjoint();
  blk.sigmaz = pauli_z();
  blk.N = Matrix::Zero(2, 2);
  blk.N(0, 0) = cfg.m_fock + 0.5 * cfg.k;
  blk.N(1, 1) = cfg.m_fock + 0.5 * cfg.k + 1.0;
  return blk;
}

double delta(const SusyJCConfig& cfg, double t) { return cfg.k * cfg.omega(t) - cfg.omega0(t); }

Matrix block_hamiltonian(const SusyJCConfig& cfg, double t) {
  const SubspaceBlock blk = subspace_block(cfg);
  const double w = cfg.omega(t);
  const double d = delta(cfg, t);
  const cplx g = cfg.g(t);
  Matrix H = w * blk.N + 0.5 * (w - d) * blk.sigmaz + g * blk.Q + std::conj(g) * blk.Qdag;
  H.diagonal().array() -= 0.5 * w;
  return H;
}

SusyRate susy_auxiliary_rhs(cplx c, double b, double t, const SusyJCConfig& cfg) {
  const double lam = lambda_m(cfg.m_fock, cfg.k);
  const cplx g = cfg.g(t);
  const cplx cdot = -I_unit * (c * delta(cfg, t) + 2.0 * b * g);
  const cplx bdot = I_unit * lam * (std::conj(c) * g - c * std::conj(g));
  return {cdot, bdot.real()};
}

std::pair<cplx, double> susy_aligned_start(const SusyJCConfig& cfg) {
  const double lam = lambda_m(cfg.m_fock, cfg.k);
  const cplx g = cfg.g(cfg.t_start);
  const double d = delta(cfg, cfg.t_start);
  const double norm2 = lam * std::norm(g) + 0.25 * d * d;
  if (norm2 < 1e-24) return {cplx(0.0), 1.0};
  const double s = 1.0 / std::sqrt(norm2);
  return {s * g, -0.5 * d * s};
}

SusyAuxiliary solve_susy_auxiliary(const SusyJCConfig& cfg, cplx c0, double b0,
                                   const TimeGrid& grid, const SusyOptions& options) {
  cfg.validate();
  grid.validate();
  if (options.substeps < 1) throw InvalidArgument("substeps must be positive");
  const double lam = lambda_m(cfg.m_fock, cfg.k);
  const double norm0 = lam * std::norm(c0) + b0 * b0;
  if (!(norm0 > 0.0)) throw InvalidArgument("initial invariant must be nonzero");
  const double scale = 1.0 / std::sqrt(norm0);
  c0 *= scale;
  b0 *= scale;

  auto rhs = [&](double t, const State3& y) {
    const SusyRate r = susy_auxiliary_rhs({y(0), y(1)}, y(2), t, cfg);
    return State3(r.cdot.real(), r.cdot.imag(), r.bdot);
  };

  SusyAuxiliary aux;
  aux.lambda_m = lam;
  aux.time_grid = grid;
  aux.grid = grid.times();
  const std::size_t n = aux.grid.size();
  aux.c.resize(n);
  aux.b.resize(n);
  aux.theta.resize(n);
  aux.phi.resize(n);
  aux.phidot.resize(n);

  State3 y(c0.real(), c0.imag(), b0);
  const double h = grid.h() / options.substeps;
  double phi_prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      const double t0 = grid.at(static_cast<int>(i) - 1);
      for (int s = 0; s < options.substeps; ++s) y = rk4_step(rhs, t0 + s * h, y, h);
    }
    cplx c(y(0), y(1));
    double b = y(2);
    const double norm = lam * std::norm(c) + b * b;
    aux.drift = std::max(aux.drift, std::abs(norm - 1.0));
    const double r = 1.0 / std::sqrt(norm);
    c *= r;
    b *= r;
    aux.c[i] = c;
    aux.b[i] = b;
    const auto [theta, phi] = sphere_angles(c, b, lam, phi_prev);
    aux.theta[i] = theta;
    aux.phi[i] = phi;
    phi_prev = phi;
    const SusyRate rate = susy_auxiliary_rhs(c, b, aux.grid[i], cfg);
    aux.phidot[i] =
        std::abs(c) * std::sqrt(lam) < kPoleTol ? 0.0 : -(rate.cdot / c).imag();
  }
  if (aux.drift > options.drift_tol) {
    std::ostringstream msg;
    msg << "conservation drift " << aux.drift << " exceeds " << options.drift_tol
        << "; use a finer grid";
    throw AccuracyError(msg.str());
  }
  return aux;
}

Matrix susy_V(double theta, double phi, double lambda) {
  const double s = std::sqrt(lambda);
  Matrix Q = Matrix::Zero(2, 2);
  Q(1, 0) = s;
  const cplx beta = -(theta / 2.0) * std::exp(-I_unit * phi) / s;
  return expm(Matrix(beta * Q - std::conj(beta) * Q.adjoint()));
}

Matrix susy_invariant(double theta, double phi, double lambda) {
  const double s = std::sqrt(lambda);
  Matrix Q = Matrix::Zero(2, 2);
  Q(1, 0) = s;
  return -(std::sin(theta) / s) *
             (std::exp(-I_unit * phi) * Q + std::exp(I_unit * phi) * Matrix(Q.adjoint())) +
         std::cos(theta) * pauli_z();
}

double susy_angle_identity_defect(cplx c, double b, double theta, double phi, double lambda) {
  const cplx beta = -(theta / 2.0) * std::exp(-I_unit * phi) / std::sqrt(lambda);
  const double r = std::sqrt(4.0 * std::norm(beta) * lambda);
  const double cos_defect = std::abs(std::cos(r) - b);
  if (r < kPoleTol) return std::max(cos_defect, std::sqrt(lambda) * std::abs(c));
  const double sin_rhs = lambda * (c * std::conj(beta) + std::conj(c) * beta).real() / r;
  return std::max(cos_defect, std::abs(std::sin(r) - sin_rhs));
}

SusyPhaseRates susy_phase_rates(const SusyJCConfig& cfg, double theta, double phi, double phidot,
                                double t, int sigma) {
  if (sigma != 1 && sigma != -1) throw InvalidArgument("sigma must be +1 or -1");
  const double lam = lambda_m(cfg.m_fock, cfg.k);
  const cplx g = cfg.g(t);
  const double base = (cfg.m_fock + 0.5 * cfg.k) * cfg.omega(t);
  const double coupling = std::sqrt(lam) * (g * std::exp(I_unit * phi)).real() * std::sin(theta);
  const double detuning = 0.5 * delta(cfg, t) * std::cos(theta);
  const double geometric = -0.5 * phidot * (1.0 - std::cos(theta));
  return {base - sigma * (coupling + detuning), sigma * geometric};
}

SolutionState susy_solution(const SusyJCConfig& cfg, int sigma, const SusyAuxiliary& aux) {
  if (sigma != 1 && sigma != -1) throw InvalidArgument("sigma must be +1 or -1");
  const std::size_t n = aux.size();
  if (n < 2 || aux.theta.size() != n || aux.phi.size() != n || aux.phidot.size() != n)
    throw InvalidArgument("auxiliary samples do not match their grid");
  std::vector<double> dyn(n), geo(n);
  for (std::size_t i = 0; i < n; ++i) {
    const SusyPhaseRates r =
        susy_phase_rates(cfg, aux.theta[i], aux.phi[i], aux.phidot[i], aux.grid[i], sigma);
    dyn[i] = r.dynamical;
    geo[i] = r.geometric;
  }
  SolutionState out;
  out.lambda = sigma;
  out.grid = aux.grid;
  const double h = aux.time_grid.h();
  out.phases = {aux.grid, cumulative_simpson(dyn, h), cumulative_simpson(geo, h),
                std::vector<double>(n, 0.0)};
  Vector e = Vector::Zero(2);
  e(sigma == 1 ? 0 : 1) = 1.0;
  out.psi.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.psi.push_back(std::polar(1.0, -out.phases.total(i)) *
                      (susy_V(aux.theta[i], aux.phi[i], aux.lambda_m) * e));
  return out;
}

double sigma_block_normalization(int k, int m_fock) {
  if (k < 1 || m_fock < 0) throw InvalidArgument("need k >= 1 and m >= 0");
  const int cutoff = m_fock + k + 1;
  const Matrix a = annihilation(cutoff);
  Matrix ak = Matrix::Identity(cutoff, cutoff);
  for (int i = 0; i < k; ++i) ak = a * ak;
  const Matrix chi = ak.adjoint() * ak;  // A+ A- with A- = a^k
  return chi(m_fock + k, m_fock + k).real();
}

SusyTransformDefect susy_transformed_hamiltonian_defect(const SusyJCConfig& cfg,
                                                        const SusyAuxiliary& aux,
                                                        std::size_t index, double step) {
  const double t = aux.grid[index];
  const double lam = aux.lambda_m;
  const cplx c = aux.c[index];
  const double b = aux.b[index];
  const SusyRate rate = susy_auxiliary_rhs(c, b, t, cfg);
  auto V_at = [&](double h) {
    const cplx cs = c + h * rate.cdot;
    const double bs = b + h * rate.bdot;
    const double r = 1.0 / std::sqrt(lam * std::norm(cs) + bs * bs);
    const auto [theta, phi] = sphere_angles(cs * r, bs * r, lam, aux.phi[index]);
    return susy_V(theta, phi, lam);
  };
  const Matrix Vdot = (V_at(step) - V_at(-step)) / (2.0 * step);
  const Matrix V = susy_V(aux.theta[index], aux.phi[index], lam);
  const Matrix HV = V.adjoint() * block_hamiltonian(cfg, t) * V - I_unit * V.adjoint() * Vdot;

  const double w = cfg.omega(t);
  const double theta = aux.theta[index];
  const double phi = aux.phi[index];
  const cplx g = cfg.g(t);
  const double closed = 0.5 * w * (1.0 - std::cos(theta)) -
                        std::sqrt(lam) * (g * std::exp(I_unit * phi)).real() * std::sin(theta) +
                        0.5 * (w - delta(cfg, t)) * std::cos(theta) -
                        0.5 * aux.phidot[index] * (1.0 - std::cos(theta));
  const double measured = 0.5 * (HV(0, 0) - HV(1, 1)).real() + 0.5 * w;
  return {std::hypot(std::abs(HV(0, 1)), std::abs(HV(1, 0))), std::abs(measured - closed)};
}

double susy_invariant_residual(const SusyJCConfig& cfg, const SusyAuxiliary& aux,
                               std::size_t index) {
  const SubspaceBlock blk = subspace_block(cfg);
  const double t = aux.grid[index];
  const cplx c = aux.c[index];
  const double b = aux.b[index];
  const SusyRate r = susy_auxiliary_rhs(c, b, t, cfg);
  const Matrix I = c * blk.Q + std::conj(c) * blk.Qdag + b * blk.sigmaz;
  const Matrix dI = r.cdot * blk.Q + std::conj(r.cdot) * blk.Qdag + r.bdot * blk.sigmaz;
  return (dI - I_unit * commutator(I, block_hamiltonian(cfg, t))).norm();
}

}  // namespace lrinv
