#include "lrinv/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lrinv/errors.hpp"
#include "lrinv/numerics.hpp"

namespace lrinv {

namespace {

using State2 = Eigen::Vector2d;

double kappa_magnitude(const AlgebraSpec& spec) { return std::sqrt(std::abs(spec.m * spec.n) / 2.0); }

/// Time derivative of the complex angle.
cplx angle_rate(const AlgebraSpec& spec, double adot) {
  return spec.compact() ? cplx(adot) : I_unit * adot;
}

void normalize_phase(Vector& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) {
      v *= std::polar(1.0, -std::arg(v(i)));
      return;
    }
  }
}

}  // namespace

InvariantConstants kappa_constants(const AlgebraSpec& spec) {
  spec.validate();
  const cplx kappa = std::sqrt(cplx(spec.m * spec.n / 2.0, 0.0));
  return {kappa, 1.0 / kappa, spec.m / kappa};
}

cplx invariant_angle(const AlgebraSpec& spec, double a) {
  return spec.compact() ? cplx(a) : I_unit * a;
}

AuxiliaryRate auxiliary_rhs(AuxiliaryState state, double t, const CoefficientSchedule& sched,
                            const AlgebraSpec& spec, double guard) {
  const double s = spec.compact() ? std::sin(state.a) : std::sinh(state.a);
  if (std::abs(s) < guard) {
    std::ostringstream msg;
    msg << "invariant angle reached its pole (|sin a| = " << std::abs(s) << ") at t = " << t;
    throw SingularityError(msg.str(), t);
  }
  const double c = spec.compact() ? std::cos(state.a) : std::cosh(state.a);
  const double kappa = kappa_magnitude(spec);
  const double omega = sched.omega(t);
  const double theta = sched.theta(t);
  const double rel = state.b - sched.phi(t);
  const double drive = kappa * omega * std::sin(theta);
  return {-drive * std::sin(rel), spec.m * omega * std::cos(theta) - drive * (c / s) * std::cos(rel)};
}

double AuxiliaryResidual::norm() const { return std::hypot(std::abs(first), std::abs(second)); }

AuxiliaryResidual auxiliary_equation_residual(AuxiliaryState state, AuxiliaryRate rate, double t,
                                              const CoefficientSchedule& sched,
                                              const AlgebraSpec& spec) {
  const InvariantConstants k = kappa_constants(spec);
  const cplx a = invariant_angle(spec, state.a);
  const cplx adot = angle_rate(spec, rate.adot);
  const double omega = sched.omega(t);
  const double theta = sched.theta(t);
  const double phi = sched.phi(t);
  const cplx eb = std::exp(-I_unit * state.b);
  const cplx ephi = std::exp(-I_unit * phi);
  AuxiliaryResidual r;
  r.first = k.y * eb * (adot * std::cos(a) - I_unit * rate.bdot * std::sin(a)) -
            I_unit * spec.m * omega *
                (ephi * std::cos(a) * std::sin(theta) - k.y * eb * std::sin(a) * std::cos(theta));
  r.second = adot + spec.n * k.y / 2.0 * omega * std::sin(theta) * std::sin(state.b - phi);
  return r;
}

AuxiliaryState aligned_start(const CoefficientSchedule& sched, const AlgebraSpec& spec, double t) {
  const InvariantConstants k = kappa_constants(spec);
  const double theta = sched.theta(t);
  const double phi = sched.phi(t);
  if (spec.compact()) {
    const double y = k.y.real();
    return {std::atan2(std::sin(theta) / y, std::cos(theta)), phi};
  }
  const double ratio = kappa_magnitude(spec) / spec.m * std::tan(theta);
  if (!(std::abs(ratio) < 1.0)) {
    std::ostringstream msg;
    msg << "no bounded aligned invariant at t = " << t << ": H is not elliptic";
    throw RegimeError(msg.str());
  }
  return {std::atanh(ratio), phi};
}

std::size_t AuxiliaryTrajectory::index_of(double t) const {
  const double tol = 1e-9 * std::max(1.0, std::abs(t));
  auto it = std::lower_bound(grid.begin(), grid.end(), t - tol);
  if (it == grid.end() || std::abs(*it - t) > tol)
    throw InvalidArgument("time is not on the trajectory grid");
  return static_cast<std::size_t>(it - grid.begin());
}

AuxiliaryTrajectory solve_auxiliary(const CoefficientSchedule& sched, const AlgebraSpec& spec,
                                    double a0, double b0, const TimeGrid& grid,
                                    const AuxiliaryOptions& options) {
  spec.validate();
  grid.validate();
  if (options.substeps < 1) throw InvalidArgument("substeps must be positive");
  if (!sched.contains(grid.t_start) || !sched.contains(grid.t_end))
    throw InvalidArgument("grid extends outside the schedule interval");
  const double s0 = spec.compact() ? std::sin(a0) : std::sinh(a0);
  if (std::abs(s0) < 1e-6)
    throw SingularityError("initial invariant angle sits on the pole (|sin a0| < 1e-6)",
                           grid.t_start);

  auto rhs = [&](double t, const State2& y) {
    const AuxiliaryRate r = auxiliary_rhs({y(0), y(1)}, t, sched, spec, options.guard);
    return State2(r.adot, r.bdot);
  };
  auto integrate = [&](int substeps) {
    std::vector<State2> out(grid.size());
    State2 y(a0, b0);
    out[0] = y;
    const double h = grid.h() / substeps;
    for (int i = 0; i < grid.steps; ++i) {
      const double t0 = grid.at(i);
      for (int s = 0; s < substeps; ++s) y = rk4_step(rhs, t0 + s * h, y, h);
      out[i + 1] = y;
    }
    return out;
  };

  AuxiliaryTrajectory traj;
  traj.spec = spec;
  traj.time_grid = grid;
  traj.grid = grid.times();

  std::vector<State2> samples = integrate(options.substeps);
  if (options.certify) {
    std::vector<State2> fine = integrate(2 * options.substeps);
    double est = 0.0;
    for (std::size_t i = 0; i < fine.size(); ++i)
      est = std::max(est, (fine[i] - samples[i]).lpNorm<Eigen::Infinity>());
    traj.error_estimate = est * 16.0 / 15.0;
    samples = std::move(fine);
  }

  const std::size_t n = samples.size();
  traj.a.resize(n);
  traj.b.resize(n);
  traj.adot.resize(n);
  traj.bdot.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const AuxiliaryState st{samples[i](0), samples[i](1)};
    const AuxiliaryRate r = auxiliary_rhs(st, traj.grid[i], sched, spec, options.guard);
    traj.a[i] = st.a;
    traj.b[i] = st.b;
    traj.adot[i] = r.adot;
    traj.bdot[i] = r.bdot;
    traj.max_residual = std::max(
        traj.max_residual, auxiliary_equation_residual(st, r, traj.grid[i], sched, spec).norm());
  }

  if (options.certify) {
    if (traj.max_residual > options.certify_tol) {
      std::ostringstream msg;
      msg << "auxiliary equation residual " << traj.max_residual << " exceeds "
          << options.certify_tol;
      throw AccuracyError(msg.str());
    }
    if (traj.error_estimate > options.certify_tol) {
      std::ostringstream msg;
      msg << "auxiliary integration error estimate " << traj.error_estimate << " exceeds "
          << options.certify_tol << "; use a finer grid (more steps)";
      throw AccuracyError(msg.str());
    }
  }
  return traj;
}

Matrix invariant_matrix(const Representation& rep, const InvariantConstants& consts,
                        AuxiliaryState state) {
  const cplx a = invariant_angle(rep.spec, state.a);
  const cplx half_sin = 0.5 * std::sin(a);
  const cplx eb = std::exp(-I_unit * state.b);
  Matrix I = consts.y * half_sin * eb * rep.A + consts.y * half_sin / eb * rep.B +
             std::cos(a) * rep.C;
  if (rep.hermitian_paired() && !is_hermitian(I, 1e-10)) {
    std::ostringstream msg;
    msg << "invariant is not Hermitian (|I - I^dag| = " << (I - I.adjoint()).norm()
        << ") for a Hermitian-paired representation";
    throw ContinuationError(msg.str());
  }
  return I;
}

Matrix invariant_time_derivative(const Representation& rep, const InvariantConstants& consts,
                                 AuxiliaryState state, AuxiliaryRate rate) {
  const cplx a = invariant_angle(rep.spec, state.a);
  const cplx adot = angle_rate(rep.spec, rate.adot);
  const cplx eb = std::exp(-I_unit * state.b);
  const cplx sa = std::sin(a);
  const cplx ca = std::cos(a);
  return consts.y * 0.5 * eb * (ca * adot - I_unit * rate.bdot * sa) * rep.A +
         consts.y * 0.5 / eb * (ca * adot + I_unit * rate.bdot * sa) * rep.B -
         sa * adot * rep.C;
}

double invariant_residual(const Representation& rep, const CoefficientSchedule& sched,
                          const AuxiliaryTrajectory& traj, std::size_t index) {
  const InvariantConstants k = kappa_constants(rep.spec);
  const AuxiliaryState st = traj.state(index);
  const Matrix I = invariant_matrix(rep, k, st);
  const Matrix dI = invariant_time_derivative(rep, k, st, traj.rate(index));
  const Matrix H = assemble(rep, sched, traj.grid[index]);
  return frobenius_block(dI - I_unit * commutator(I, H), rep.interior_dim);
}

double invariant_residual_at(const Representation& rep, const CoefficientSchedule& sched,
                             const AuxiliaryTrajectory& traj, double t) {
  return invariant_residual(rep, sched, traj, traj.index_of(t));
}

std::vector<Eigenpair> eigen_invariant(const Representation& rep) {
  const Matrix& C = rep.C;
  std::vector<Eigenpair> out;
  if (is_hermitian(C, 1e-12)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(C);
    if (es.info() != Eigen::Success) throw NumericalError("diagonalization of C failed");
    for (Index i = 0; i < C.rows(); ++i)
      out.push_back({es.eigenvalues()(i), es.eigenvectors().col(i)});
  } else {
    Eigen::ComplexEigenSolver<Matrix> es(C);
    if (es.info() != Eigen::Success) throw NumericalError("diagonalization of C failed");
    const Matrix& W = es.eigenvectors();
    Eigen::JacobiSVD<Matrix> svd(W);
    const auto sv = svd.singularValues();
    if (sv(sv.size() - 1) < 1e-10 * sv(0))
      throw NumericalError("C is defective; no complete eigenbasis");
    for (Index i = 0; i < C.rows(); ++i) {
      const cplx ev = es.eigenvalues()(i);
      if (std::abs(ev.imag()) > 1e-10 * std::max(1.0, std::abs(ev)))
        throw NumericalError("C has a complex eigenvalue");
      out.push_back({ev.real(), W.col(i).normalized()});
    }
  }
  for (auto& p : out) normalize_phase(p.vector);
  std::stable_sort(out.begin(), out.end(), [](const Eigenpair& l, const Eigenpair& r) {
    if (std::abs(l.lambda - r.lambda) > 1e-12) return l.lambda > r.lambda;
    // Lexicographic tie-break on moduli for repeated eigenvalues.
    for (Index i = 0; i < l.vector.size(); ++i) {
      const double dl = std::abs(l.vector(i)), dr = std::abs(r.vector(i));
      if (std::abs(dl - dr) > 1e-12) return dl > dr;
    }
    return false;
  });
  return out;
}

}  // namespace lrinv
