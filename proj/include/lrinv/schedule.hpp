#pragma once

#include <variant>
#include <vector>

#include "lrinv/algebra.hpp"
#include "lrinv/numerics.hpp"
#include "lrinv/types.hpp"

namespace lrinv {

/// Scalar time profile built from one of a few smooth recipes.
class Profile {
 public:
  enum class Kind { Constant, Linear, Sinusoidal, Tabulated };

  static Profile constant(double value);
  /// value0 + slope * (t - t0)
  static Profile linear(double t0, double value0, double slope);
  /// Straight line through (t0, v0) and (t1, v1).
  static Profile linear_ramp(double t0, double v0, double t1, double v1);
  /// offset + amplitude * sin(frequency * t + phase)
  static Profile sinusoidal(double offset, double amplitude, double frequency, double phase = 0.0);
  /// Natural cubic spline through strictly time-ordered samples.
  static Profile tabulated(std::vector<double> times, std::vector<double> values);

  Kind kind() const;
  double operator()(double t) const;
  double derivative(double t) const;

 private:
  struct Constant { double value; };
  struct Linear { double t0, value0, slope; };
  struct Sinusoidal { double offset, amplitude, frequency, phase; };
  using Rep = std::variant<Constant, Linear, Sinusoidal, CubicSpline>;

  explicit Profile(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

/// H(t) = omega { (1/2) sin(theta) e^{-i phi} A + (1/2) sin(theta) e^{i phi} B
///                + cos(theta) C } + c0 I.
struct CoefficientSchedule {
  RealFn omega;
  RealFn theta;
  RealFn phi;
  RealFn c0;  // may be empty (zero)
  double t_start = 0.0;
  double t_end = 1.0;

  bool contains(double t) const;
  double c0_at(double t) const { return c0 ? c0(t) : 0.0; }
};

/// Schedule from constant-in-time values (c0 = 0).
CoefficientSchedule constant_schedule(double omega, double theta, double phi, double t_start,
                                      double t_end);

/// Lie-part Hamiltonian without the c-number shift.
Matrix assemble_lie(const Representation& rep, double omega, double theta, double phi);
/// Full H(t); throws DomainError outside [t_start, t_end].
Matrix assemble(const Representation& rep, const CoefficientSchedule& sched, double t);

/// Rewrites alpha(t) A + alpha*(t) B + gamma(t) C into (omega, theta, phi)
/// form with theta in [0, pi] and phi = -arg(alpha) (0 where alpha = 0).
/// Checks omega > 0 on every grid time; with `require_elliptic` also checks
/// gamma^2 > 4|alpha|^2 (the only su(1,1) regime the invariant covers).
CoefficientSchedule schedule_from_coefficients(ComplexFn alpha, RealFn gamma, RealFn c0,
                                               const TimeGrid& grid, bool require_elliptic);

/// omega = sqrt((w1 - w2)^2 + 4|g|^2), cos(theta) = (w1 - w2)/omega,
/// g = (1/2) omega sin(theta) e^{-i phi}; no c-number attached.
CoefficientSchedule parameterize_su2_coupled_oscillators(RealFn omega1, RealFn omega2,
                                                         ComplexFn g, const TimeGrid& grid);

enum class CoupledModel { Su2, Su11 };

struct ConservedSplit {
  CoefficientSchedule lie;  // c0 left empty
  RealFn c0;

  CoefficientSchedule combined() const;
};

/// Separates the conserved-generator c-number from the coupled-oscillator
/// Hamiltonians on the shell where N takes `subspace_eigenvalue`.
///   Su2  : g J+ + g* J- + (w1 - w2) J3,  c0 = N (w1 + w2)
///   Su11 : g K- + g* K+ + (w1 + w2) K3,  c0 = N (w1 - w2) - (w1 + w2)/2
ConservedSplit split_conserved(CoupledModel model, RealFn omega1, RealFn omega2, ComplexFn g,
                               double subspace_eigenvalue, const TimeGrid& grid);

}  // namespace lrinv
