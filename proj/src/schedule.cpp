#include "lrinv/schedule.hpp"

#include <cmath>
#include <sstream>

#include "lrinv/errors.hpp"

namespace lrinv {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool half_integer(double v) { return std::abs(2.0 * v - std::round(2.0 * v)) <= 1e-12; }

}  // namespace

Profile Profile::constant(double value) { return Profile(Constant{value}); }

Profile Profile::linear(double t0, double value0, double slope) {
  return Profile(Linear{t0, value0, slope});
}

Profile Profile::linear_ramp(double t0, double v0, double t1, double v1) {
  if (!(t1 > t0)) throw InvalidArgument("linear ramp needs t1 > t0");
  return Profile(Linear{t0, v0, (v1 - v0) / (t1 - t0)});
}

Profile Profile::sinusoidal(double offset, double amplitude, double frequency, double phase) {
  return Profile(Sinusoidal{offset, amplitude, frequency, phase});
}

Profile Profile::tabulated(std::vector<double> times, std::vector<double> values) {
  return Profile(CubicSpline(std::move(times), std::move(values)));
}

Profile::Kind Profile::kind() const {
  return std::visit(Overloaded{[](const Constant&) { return Kind::Constant; },
                               [](const Linear&) { return Kind::Linear; },
                               [](const Sinusoidal&) { return Kind::Sinusoidal; },
                               [](const CubicSpline&) { return Kind::Tabulated; }},
                    rep_);
}

double Profile::operator()(double t) const {
  return std::visit(
      Overloaded{[](const Constant& c) { return c.value; },
                 [t](const Linear& l) { return l.value0 + l.slope * (t - l.t0); },
                 [t](const Sinusoidal& s) {
                   return s.offset + s.amplitude * std::sin(s.frequency * t + s.phase);
                 },
                 [t](const CubicSpline& s) { return s.value(t); }},
      rep_);
}

double Profile::derivative(double t) const {
  return std::visit(
      Overloaded{[](const Constant&) { return 0.0; },
                 [](const Linear& l) { return l.slope; },
                 [t](const Sinusoidal& s) {
                   return s.amplitude * s.frequency * std::cos(s.frequency * t + s.phase);
                 },
                 [t](const CubicSpline& s) { return s.derivative(t); }},
      rep_);
}

bool CoefficientSchedule::contains(double t) const {
  const double slack = 1e-12 * std::max({1.0, std::abs(t_start), std::abs(t_end)});
  return t >= t_start - slack && t <= t_end + slack;
}

CoefficientSchedule constant_schedule(double omega, double theta, double phi, double t_start,
                                      double t_end) {
  return {[omega](double) { return omega; }, [theta](double) { return theta; },
          [phi](double) { return phi; }, {}, t_start, t_end};
}

Matrix assemble_lie(const Representation& rep, double omega, double theta, double phi) {
  const cplx off = 0.5 * omega * std::sin(theta) * std::exp(-I_unit * phi);
  return off * rep.A + std::conj(off) * rep.B + (omega * std::cos(theta)) * rep.C;
}

Matrix assemble(const Representation& rep, const CoefficientSchedule& sched, double t) {
  if (!sched.contains(t)) {
    std::ostringstream msg;
    msg << "t = " << t << " outside schedule interval [" << sched.t_start << ", "
        << sched.t_end << "]";
    throw DomainError(msg.str());
  }
  Matrix H = assemble_lie(rep, sched.omega(t), sched.theta(t), sched.phi(t));
  const double shift = sched.c0_at(t);
  if (shift != 0.0) H.diagonal().array() += shift;
  return H;
}

CoefficientSchedule schedule_from_coefficients(ComplexFn alpha, RealFn gamma, RealFn c0,
                                               const TimeGrid& grid, bool require_elliptic) {
  grid.validate();
  for (int i = 0; i < grid.size(); ++i) {
    const double t = grid.at(i);
    const double a = std::abs(alpha(t));
    const double g = gamma(t);
    const double omega = std::sqrt(g * g + 4.0 * a * a);
    if (!(omega > 1e-12)) {
      std::ostringstream msg;
      msg << "degenerate parameterization: omega vanishes at t = " << t;
      throw RegimeError(msg.str());
    }
    if (require_elliptic && !(g * g > 4.0 * a * a)) {
      std::ostringstream msg;
      msg << "hyperbolic su(1,1) regime at t = " << t << " (gamma^2 = " << g * g
          << " <= 4|alpha|^2 = " << 4.0 * a * a
          << "); only the elliptic regime has a bounded invariant";
      throw RegimeError(msg.str());
    }
  }
  CoefficientSchedule s;
  s.omega = [alpha, gamma](double t) {
    const double a = std::abs(alpha(t));
    const double g = gamma(t);
    return std::sqrt(g * g + 4.0 * a * a);
  };
  s.theta = [alpha, gamma](double t) { return std::atan2(2.0 * std::abs(alpha(t)), gamma(t)); };
  s.phi = [alpha](double t) {
    const cplx a = alpha(t);
    return a == cplx(0.0) ? 0.0 : -std::arg(a);
  };
  s.c0 = std::move(c0);
  s.t_start = grid.t_start;
  s.t_end = grid.t_end;
  return s;
}

CoefficientSchedule parameterize_su2_coupled_oscillators(RealFn omega1, RealFn omega2,
                                                         ComplexFn g, const TimeGrid& grid) {
  RealFn gamma = [omega1, omega2](double t) { return omega1(t) - omega2(t); };
  return schedule_from_coefficients(std::move(g), gamma, {}, grid, false);
}

CoefficientSchedule ConservedSplit::combined() const {
  CoefficientSchedule s = lie;
  s.c0 = c0;
  return s;
}

ConservedSplit split_conserved(CoupledModel model, RealFn omega1, RealFn omega2, ComplexFn g,
                               double subspace_eigenvalue, const TimeGrid& grid) {
  if (!half_integer(subspace_eigenvalue))
    throw InvalidArgument("conserved-generator eigenvalue must be a half-integer");
  const double N = subspace_eigenvalue;
  ConservedSplit out;
  if (model == CoupledModel::Su2) {
    if (N < 0.0) throw InvalidArgument("N = (n1 + n2)/2 cannot be negative");
    out.lie = parameterize_su2_coupled_oscillators(omega1, omega2, std::move(g), grid);
    out.c0 = [N, omega1, omega2](double t) { return N * (omega1(t) + omega2(t)); };
  } else {
    // g multiplies K- = B, so the coefficient of A = K+ is g*.
    ComplexFn alpha = [g](double t) { return std::conj(g(t)); };
    RealFn gamma = [omega1, omega2](double t) { return omega1(t) + omega2(t); };
    out.lie = schedule_from_coefficients(alpha, gamma, {}, grid, true);
    out.c0 = [N, omega1, omega2](double t) {
      return N * (omega1(t) - omega2(t)) - 0.5 * (omega1(t) + omega2(t));
    };
  }
  return out;
}

}  // namespace lrinv
