#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lrinv/evolution.hpp"
#include "lrinv/types.hpp"

namespace lrinv {

/// k-photon Jaynes-Cummings model restricted to the N' = lambda_m block
/// spanned by |m, e> and |m + k, g>.
struct SusyJCConfig {
  int k = 1;
  int m_fock = 0;
  RealFn omega;   // field frequency
  RealFn omega0;  // atomic transition frequency
  ComplexFn g;    // coupling
  double t_start = 0.0;
  double t_end = 1.0;

  void validate() const;
};

/// Block operators in the (|m, e>, |m + k, g>) basis.
struct SubspaceBlock {
  double lambda_m;
  Matrix Q;       // (a^dag)^k sigma_-  = sqrt(lambda_m) |2><1|
  Matrix Qdag;    // a^k sigma_+        = sqrt(lambda_m) |1><2|
  Matrix sigmaz;  // diag(1, -1)
  Matrix N;       // a^dag a + (k-1)/2 sigma_z + 1/2
};

/// (m + k)! / m!, exact in 64-bit integers; RangeError beyond 2^53.
double lambda_m(int m_fock, int k);
std::uint64_t lambda_m_exact(int m_fock, int k);

SubspaceBlock subspace_block(const SusyJCConfig& cfg);

/// delta = k omega - omega0.
double delta(const SusyJCConfig& cfg, double t);

/// omega N + (omega - delta)/2 sigma_z + g Q + g* Q^dag - omega/2.
Matrix block_hamiltonian(const SusyJCConfig& cfg, double t);

struct SusyRate {
  cplx cdot;
  double bdot;
};

/// cdot = -i (c delta + 2 b g),  bdot = i lambda_m (c* g - c g*).
/// The invariant is I = c Q + c* Q^dag + b sigma_z.
SusyRate susy_auxiliary_rhs(cplx c, double b, double t, const SusyJCConfig& cfg);

struct SusyAuxiliary {
  double lambda_m = 1.0;
  TimeGrid time_grid;
  std::vector<double> grid;
  std::vector<cplx> c;
  std::vector<double> b;
  std::vector<double> theta, phi, phidot;
  double drift = 0.0;  // max |lambda_m |c|^2 + b^2 - 1| before renormalization

  std::size_t size() const { return grid.size(); }
};

struct SusyOptions {
  int substeps = 1;
  double drift_tol = 1e-6;
};

/// Initial (c, b) that aligns the invariant with the traceless part of the
/// block Hamiltonian at t_start; (0, 1) when that part vanishes.
std::pair<cplx, double> susy_aligned_start(const SusyJCConfig& cfg);

/// RK4 integration of the auxiliary equations. Initial data are scaled onto
/// lambda_m|c|^2 + b^2 = 1; theta = arccos b, phi = -arg(-c), phidot from
/// the exact rate -Im(cdot / c).
SusyAuxiliary solve_susy_auxiliary(const SusyJCConfig& cfg, cplx c0, double b0,
                                   const TimeGrid& grid, const SusyOptions& options = {});

/// exp[beta Q - beta* Q^dag], beta = -(theta/2) e^{-i phi} / sqrt(lambda_m).
Matrix susy_V(double theta, double phi, double lambda_m);

/// -(sin theta / sqrt(lambda_m)) [e^{-i phi} Q + e^{i phi} Q^dag] + cos theta sigma_z.
Matrix susy_invariant(double theta, double phi, double lambda_m);

/// Largest violation of sin(r) = lambda_m (c beta* + c* beta)/r and cos(r) = b
/// with r = sqrt(4 beta beta* lambda_m), beta from (theta, phi). Zero when
/// (theta, phi) are the sphere angles of the normalized (c, b).
double susy_angle_identity_defect(cplx c, double b, double theta, double phi, double lambda_m);

struct SusyPhaseRates {
  double dynamical;
  double geometric;
};

SusyPhaseRates susy_phase_rates(const SusyJCConfig& cfg, double theta, double phi, double phidot,
                                double t, int sigma);

/// Particular solution for sigma = +1 (upper block state) or -1.
SolutionState susy_solution(const SusyJCConfig& cfg, int sigma, const SusyAuxiliary& aux);

/// chi = <n| A+ A- |n> for A- = a^k evaluated on the block's upper state;
/// coincides with lambda_m.
double sigma_block_normalization(int k, int m_fock);

/// Off-diagonal norm of V^dag H V - i V^dag dV/dt (central difference of
/// width `step` in time along the integrated trajectory) and the deviation of
/// its sigma_z coefficient from the closed form.
struct SusyTransformDefect {
  double offdiag;
  double sigmaz_coefficient_error;
};

SusyTransformDefect susy_transformed_hamiltonian_defect(const SusyJCConfig& cfg,
                                                        const SusyAuxiliary& aux,
                                                        std::size_t index, double step);

/// Frobenius norm of dI/dt + (1/i)[I, H] in the block at grid index.
double susy_invariant_residual(const SusyJCConfig& cfg, const SusyAuxiliary& aux,
                               std::size_t index);

}  // namespace lrinv
