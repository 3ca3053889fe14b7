#pragma once

#include <vector>

#include "lrinv/algebra.hpp"
#include "lrinv/schedule.hpp"
#include "lrinv/types.hpp"

namespace lrinv {

/// kappa = principal sqrt(mn/2), x = 1/kappa, y = m/kappa.
struct InvariantConstants {
  cplx kappa;
  cplx x;
  cplx y;
};

InvariantConstants kappa_constants(const AlgebraSpec& spec);

/// Invariant angles. For compact algebras `a` is the polar angle itself; for
/// non-compact ones it is the rapidity alpha of the continuation a = i alpha.
struct AuxiliaryState {
  double a = 0.0;
  double b = 0.0;
};

struct AuxiliaryRate {
  double adot = 0.0;
  double bdot = 0.0;
};

/// The complex angle entering the invariant: a, or i*a for mn < 0.
cplx invariant_angle(const AlgebraSpec& spec, double a);

inline constexpr double kSingularityGuard = 1e-8;

/// Closed-form (adot, bdot):
///   adot = -|kappa| w sin(theta) sin(b - phi)
///   bdot = m w cos(theta) - |kappa| w sin(theta) cot(a) cos(b - phi)
/// with cot -> coth for the hyperbolic continuation.
/// Throws SingularityError when |sin a| (|sinh a|) drops below `guard`.
AuxiliaryRate auxiliary_rhs(AuxiliaryState state, double t, const CoefficientSchedule& sched,
                            const AlgebraSpec& spec, double guard = kSingularityGuard);

/// Both lines of the auxiliary equations evaluated at (state, rate), written
/// in the original implicit complex form. Zero for an exact solution.
struct AuxiliaryResidual {
  cplx first;
  cplx second;
  double norm() const;
};

AuxiliaryResidual auxiliary_equation_residual(AuxiliaryState state, AuxiliaryRate rate, double t,
                                              const CoefficientSchedule& sched,
                                              const AlgebraSpec& spec);

/// Initial angles that align the invariant with H(t): I is proportional to
/// the Lie part of H. For su(2) this is (theta, phi).
AuxiliaryState aligned_start(const CoefficientSchedule& sched, const AlgebraSpec& spec, double t);

struct AuxiliaryTrajectory {
  AlgebraSpec spec;
  TimeGrid time_grid;
  std::vector<double> grid, a, b, adot, bdot;
  double error_estimate = 0.0;  // half-step Richardson estimate
  double max_residual = 0.0;    // max auxiliary-equation residual

  std::size_t size() const { return grid.size(); }
  AuxiliaryState state(std::size_t i) const { return {a[i], b[i]}; }
  AuxiliaryRate rate(std::size_t i) const { return {adot[i], bdot[i]}; }
  std::size_t index_of(double t) const;
};

struct AuxiliaryOptions {
  int substeps = 1;             // RK4 steps per grid interval
  bool certify = true;          // run the half-step estimate and residual check
  double certify_tol = 1e-8;
  double guard = kSingularityGuard;
};

/// Fixed-step RK4 integration of the auxiliary equations on `grid`.
/// With certification, the stored samples come from the half-step run, and
/// the trajectory is rejected (AccuracyError) if the Richardson estimate or
/// the equation residual exceeds `certify_tol`.
AuxiliaryTrajectory solve_auxiliary(const CoefficientSchedule& sched, const AlgebraSpec& spec,
                                    double a0, double b0, const TimeGrid& grid,
                                    const AuxiliaryOptions& options = {});

/// I = y{(1/2) sin a e^{-ib} A + (1/2) sin a e^{ib} B} + cos a C.
Matrix invariant_matrix(const Representation& rep, const InvariantConstants& consts,
                        AuxiliaryState state);

/// dI/dt obtained by differentiating the ansatz along (adot, bdot).
Matrix invariant_time_derivative(const Representation& rep, const InvariantConstants& consts,
                                 AuxiliaryState state, AuxiliaryRate rate);

/// Frobenius norm of dI/dt + (1/i)[I, H(t)] on the interior block.
double invariant_residual(const Representation& rep, const CoefficientSchedule& sched,
                          const AuxiliaryTrajectory& traj, std::size_t index);
double invariant_residual_at(const Representation& rep, const CoefficientSchedule& sched,
                             const AuxiliaryTrajectory& traj, double t);

struct Eigenpair {
  double lambda;
  Vector vector;
};

/// Spectrum of C sorted by descending eigenvalue; each eigenvector's first
/// nonzero component is made real positive.
std::vector<Eigenpair> eigen_invariant(const Representation& rep);

}  // namespace lrinv
