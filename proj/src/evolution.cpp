#include "lrinv/evolution.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lrinv/errors.hpp"
#include "lrinv/numerics.hpp"

namespace lrinv {

namespace {

Index resolve_check_dim(const Representation& rep, Index check_dim) {
  return check_dim <= 0 ? rep.reliable_dim : std::min(check_dim, rep.dim());
}

bool is_diagonal(const Matrix& M) {
  Matrix off = M;
  off.diagonal().setZero();
  return off.norm() <= 1e-14 * std::max(1.0, M.norm());
}

/// Transformed-Hamiltonian pieces evaluated with the complex angle.
struct RateParts {
  cplx dynamical;
  cplx geometric;
};

RateParts rate_parts(const CoefficientSchedule& sched, const AlgebraSpec& spec,
                     const InvariantConstants& k, AuxiliaryState st, AuxiliaryRate rate,
                     double t) {
  const cplx a = invariant_angle(spec, st.a);
  const double omega = sched.omega(t);
  const double theta = sched.theta(t);
  const double rel = st.b - sched.phi(t);
  const cplx dyn = omega * (std::cos(a) * std::cos(theta) +
                            k.kappa / spec.m * std::sin(a) * std::sin(theta) * std::cos(rel));
  const cplx geo = rate.bdot / spec.m * (1.0 - std::cos(a));
  return {dyn, geo};
}

double real_checked(cplx z, const char* what) {
  if (std::abs(z.imag()) > 1e-9 * std::max(1.0, std::abs(z))) {
    std::ostringstream msg;
    msg << what << " acquired an imaginary part " << z.imag();
    throw ContinuationError(msg.str());
  }
  return z.real();
}

}  // namespace

Matrix unitary_V(const Representation& rep, const InvariantConstants& consts,
                 AuxiliaryState state) {
  const cplx a = invariant_angle(rep.spec, state.a);
  const cplx beta = -(a / 2.0) * consts.x * std::exp(-I_unit * state.b);
  const cplx beta_t = -(a / 2.0) * consts.x * std::exp(I_unit * state.b);
  const Matrix L = beta * rep.A - beta_t * rep.B;
  Matrix V = expm(L);
  if (is_anti_hermitian(L, 1e-13)) {
    const double defect = (V.adjoint() * V - Matrix::Identity(V.rows(), V.cols())).norm();
    if (defect > 1e-12 * std::max(1.0, L.norm())) {
      std::ostringstream msg;
      msg << "exponential of an anti-Hermitian generator lost unitarity (" << defect << ")";
      throw NumericalError(msg.str());
    }
  }
  return V;
}

Matrix inverse_transform(const Matrix& V) {
  const Matrix Vd = V.adjoint();
  if ((Vd * V - Matrix::Identity(V.rows(), V.cols())).norm() <= 1e-10 * std::max(1.0, V.norm()))
    return Vd;
  return V.partialPivLu().inverse();
}

double invariant_contract_defect(const Representation& rep, const Matrix& I_V, Index check_dim) {
  const Index k = resolve_check_dim(rep, check_dim);
  return frobenius_block(I_V - rep.C, k) / std::max(1e-300, frobenius_block(rep.C, k));
}

Matrix transformed_invariant(const Representation& rep, const Matrix& V, const Matrix& I,
                             Index check_dim) {
  Matrix I_V = inverse_transform(V) * I * V;
  const double defect = invariant_contract_defect(rep, I_V, check_dim);
  if (defect > 1e-8) {
    std::ostringstream msg;
    msg << "transformed invariant misses C by relative " << defect
        << "; the constants x, y or the trajectory are inconsistent";
    throw TransformationError(msg.str());
  }
  return I_V;
}

PhaseRates transformed_phase_rates(const CoefficientSchedule& sched,
                                   const AuxiliaryTrajectory& traj, std::size_t index) {
  const InvariantConstants k = kappa_constants(traj.spec);
  const RateParts p = rate_parts(sched, traj.spec, k, traj.state(index), traj.rate(index),
                                 traj.grid[index]);
  return {real_checked(p.dynamical, "dynamical phase rate"),
          real_checked(p.geometric, "geometric phase rate")};
}

double transformed_hamiltonian_coefficient(const CoefficientSchedule& sched,
                                           const AuxiliaryTrajectory& traj, std::size_t index) {
  const PhaseRates r = transformed_phase_rates(sched, traj, index);
  return r.dynamical + r.geometric;
}

HamiltonianDefect transformed_hamiltonian_defect(const Representation& rep,
                                                 const CoefficientSchedule& sched,
                                                 const AuxiliaryTrajectory& traj,
                                                 std::size_t index, double step, bool richardson,
                                                 Index check_dim) {
  if (!(step > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  const InvariantConstants k = kappa_constants(rep.spec);
  const AuxiliaryState st = traj.state(index);
  const AuxiliaryRate rate = traj.rate(index);
  const double t = traj.grid[index];

  auto central = [&](double h) {
    const Matrix Vp = unitary_V(rep, k, {st.a + h * rate.adot, st.b + h * rate.bdot});
    const Matrix Vm = unitary_V(rep, k, {st.a - h * rate.adot, st.b - h * rate.bdot});
    return Matrix((Vp - Vm) / (2.0 * h));
  };
  Matrix Vdot = central(step);
  if (richardson) Vdot = (4.0 * central(0.5 * step) - Vdot) / 3.0;

  const Matrix V = unitary_V(rep, k, st);
  const Matrix Vinv = inverse_transform(V);
  const Matrix H = assemble(rep, sched, t);
  Matrix D = Vinv * H * V - I_unit * Vinv * Vdot -
             transformed_hamiltonian_coefficient(sched, traj, index) * rep.C;
  D.diagonal().array() -= sched.c0_at(t);

  const Index dim = resolve_check_dim(rep, check_dim);
  HamiltonianDefect out;
  if (is_diagonal(rep.C)) {
    Matrix block = D.topLeftCorner(dim, dim);
    out.full = block.norm();
    block.diagonal().setZero();
    out.offdiag = block.norm();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rep.C);
    Matrix Dc = es.eigenvectors().adjoint() * D * es.eigenvectors();
    out.full = Dc.norm();
    Dc.diagonal().setZero();
    out.offdiag = Dc.norm();
  }
  return out;
}

PhaseDecomposition phases(double lambda, const CoefficientSchedule& sched,
                          const AuxiliaryTrajectory& traj) {
  const std::size_t n = traj.size();
  std::vector<double> dyn(n), geo(n), shift(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PhaseRates r = transformed_phase_rates(sched, traj, i);
    dyn[i] = lambda * r.dynamical;
    geo[i] = lambda * r.geometric;
    shift[i] = sched.c0_at(traj.grid[i]);
  }
  const double h = traj.time_grid.h();
  return {traj.grid, cumulative_simpson(dyn, h), cumulative_simpson(geo, h),
          cumulative_simpson(shift, h)};
}

double berry_limit(double lambda, const AlgebraSpec& spec, double a) {
  const cplx ca = std::cos(invariant_angle(spec, a));
  return lambda / spec.m * 2.0 * std::numbers::pi * (1.0 - ca.real());
}

SolutionState solution_state(double lambda, const Vector& eigvec, const Representation& rep,
                             const CoefficientSchedule& sched, const AuxiliaryTrajectory& traj,
                             PhaseMask mask) {
  return solution_state(lambda, eigvec, rep, traj, phases(lambda, sched, traj), mask);
}

std::vector<Matrix> transformation_samples(const Representation& rep,
                                          const AuxiliaryTrajectory& traj) {
  const InvariantConstants k = kappa_constants(rep.spec);
  std::vector<Matrix> out;
  out.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) out.push_back(unitary_V(rep, k, traj.state(i)));
  return out;
}

SolutionState solution_state(double lambda, const Vector& eigvec, const Representation& rep,
                             const AuxiliaryTrajectory& traj, PhaseDecomposition phase,
                             PhaseMask mask) {
  if (phase.grid.size() != traj.size())
    throw InvalidArgument("phase grid and trajectory grid differ in length");
  for (std::size_t i = 0; i < traj.size(); ++i)
    if (std::abs(phase.grid[i] - traj.grid[i]) > 1e-12 * std::max(1.0, std::abs(traj.grid[i])))
      throw InvalidArgument("phase grid and trajectory grid differ");
  if (eigvec.size() != rep.dim()) throw InvalidArgument("eigenvector dimension mismatch");
  return solution_state(lambda, eigvec, transformation_samples(rep, traj), std::move(phase), mask);
}

SolutionState solution_state(double lambda, const Vector& eigvec,
                             const std::vector<Matrix>& V_samples, PhaseDecomposition phase,
                             PhaseMask mask) {
  if (phase.grid.size() != V_samples.size())
    throw InvalidArgument("phase grid and transformation samples differ in length");
  if (V_samples.empty() || eigvec.size() != V_samples.front().cols())
    throw InvalidArgument("eigenvector dimension mismatch");

  SolutionState out;
  out.lambda = lambda;
  out.grid = phase.grid;
  out.psi.reserve(V_samples.size());
  for (std::size_t i = 0; i < V_samples.size(); ++i) {
    double total = 0.0;
    if (mask.dynamical) total += phase.phi_d[i];
    if (mask.geometric) total += phase.phi_g[i];
    if (mask.cnumber) total += phase.phi_c[i];
    out.psi.push_back(std::polar(1.0, -total) * (V_samples[i] * eigvec));
  }
  out.phases = std::move(phase);
  return out;
}

std::vector<Vector> general_solution(const std::vector<cplx>& coefficients,
                                     const std::vector<SolutionState>& states) {
  if (coefficients.size() != states.size() || states.empty())
    throw InvalidArgument("need one coefficient per particular solution");
  double norm2 = 0.0;
  for (const cplx& c : coefficients) norm2 += std::norm(c);
  if (std::abs(norm2 - 1.0) > 1e-10) throw InvalidArgument("coefficients must be normalized");
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].psi.size() != states[0].psi.size())
      throw InvalidArgument("particular solutions live on different grids");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(states[i].lambda - states[j].lambda) < 1e-12)
        throw InvalidArgument("duplicate lambda in general solution");
  }
  std::vector<Vector> out(states[0].psi.size(), Vector::Zero(states[0].psi[0].size()));
  for (std::size_t s = 0; s < states.size(); ++s)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += coefficients[s] * states[s].psi[i];
  return out;
}

}  // namespace lrinv
