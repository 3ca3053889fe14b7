#pragma once

#include <vector>

#include "lrinv/algebra.hpp"
#include "lrinv/invariant.hpp"
#include "lrinv/schedule.hpp"
#include "lrinv/types.hpp"

namespace lrinv {

/// Accumulated phases, each zero at the first grid time. The solution picks
/// up exp(-i (phi_d + phi_g + phi_c)).
struct PhaseDecomposition {
  std::vector<double> grid;
  std::vector<double> phi_d;  // dynamical
  std::vector<double> phi_g;  // geometric
  std::vector<double> phi_c;  // c-number shift

  double total(std::size_t i) const { return phi_d[i] + phi_g[i] + phi_c[i]; }
};

struct SolutionState {
  double lambda = 0.0;
  std::vector<double> grid;
  std::vector<Vector> psi;
  PhaseDecomposition phases;
};

/// Which phase contributions enter a solution; dropping one is a negative
/// control, never a physical option.
struct PhaseMask {
  bool dynamical = true;
  bool geometric = true;
  bool cnumber = true;
};

/// V = exp[beta A - beta~ B], beta = -(a/2) x e^{-ib}, beta~ = -(a/2) x e^{ib}.
Matrix unitary_V(const Representation& rep, const InvariantConstants& consts,
                 AuxiliaryState state);

/// V^dagger for unitary V, V^{-1} otherwise.
Matrix inverse_transform(const Matrix& V);

/// |I_V - C|_F / |C|_F on the leading `check_dim` block.
double invariant_contract_defect(const Representation& rep, const Matrix& I_V, Index check_dim);

/// I_V = V^{-1} I V. Throws TransformationError unless
/// |I_V - C| <= 1e-8 |C| on the leading `check_dim` block (default:
/// rep.reliable_dim).
Matrix transformed_invariant(const Representation& rep, const Matrix& V, const Matrix& I,
                             Index check_dim = -1);

/// Dynamical and geometric parts of the transformed-Hamiltonian coefficient:
///   dynamical = w [cos a cos(theta) + (kappa/m) sin a sin(theta) cos(b - phi)]
///   geometric = (bdot/m)(1 - cos a)
struct PhaseRates {
  double dynamical;
  double geometric;
};

PhaseRates transformed_phase_rates(const CoefficientSchedule& sched,
                                   const AuxiliaryTrajectory& traj, std::size_t index);

/// h_V(t), so that V^dag H V - i V^dag dV/dt = h_V C (+ c0).
double transformed_hamiltonian_coefficient(const CoefficientSchedule& sched,
                                           const AuxiliaryTrajectory& traj, std::size_t index);

struct HamiltonianDefect {
  double full = 0.0;      // |V^dag H V - i V^dag Vdot - h_V C - c0|
  double offdiag = 0.0;   // off-diagonal part in the C eigenbasis
};

/// Diagnostic for the diagonal transformed Hamiltonian. dV/dt is a central
/// difference of width `step` along (adot, bdot); with `richardson` the
/// h and h/2 estimates are extrapolated.
HamiltonianDefect transformed_hamiltonian_defect(const Representation& rep,
                                                 const CoefficientSchedule& sched,
                                                 const AuxiliaryTrajectory& traj,
                                                 std::size_t index, double step,
                                                 bool richardson = false, Index check_dim = -1);

/// Composite-Simpson accumulation of lambda * rates and of c0.
PhaseDecomposition phases(double lambda, const CoefficientSchedule& sched,
                          const AuxiliaryTrajectory& traj);

/// Cyclic geometric phase for a constant invariant angle:
/// (lambda/m) 2 pi (1 - cos a).
double berry_limit(double lambda, const AlgebraSpec& spec, double a);

/// psi(t) = exp[-i (phi_d + phi_g + phi_c)] V(t) |lambda>.
SolutionState solution_state(double lambda, const Vector& eigvec, const Representation& rep,
                             const CoefficientSchedule& sched, const AuxiliaryTrajectory& traj,
                             PhaseMask mask = {});
SolutionState solution_state(double lambda, const Vector& eigvec, const Representation& rep,
                             const AuxiliaryTrajectory& traj, PhaseDecomposition phase,
                             PhaseMask mask = {});

/// V(t) at every trajectory sample.
std::vector<Matrix> transformation_samples(const Representation& rep,
                                          const AuxiliaryTrajectory& traj);
/// Same as above with V(t) supplied, so several lambda share one set of
/// exponentials.
SolutionState solution_state(double lambda, const Vector& eigvec,
                             const std::vector<Matrix>& V_samples, PhaseDecomposition phase,
                             PhaseMask mask = {});

/// sum_k c_k psi_k(t) over particular solutions with distinct lambda.
std::vector<Vector> general_solution(const std::vector<cplx>& coefficients,
                                     const std::vector<SolutionState>& states);

}  // namespace lrinv
