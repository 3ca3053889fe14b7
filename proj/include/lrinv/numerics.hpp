#pragma once

#include <span>
#include <vector>

#include "lrinv/types.hpp"

namespace lrinv {

/// One classical fourth-order Runge-Kutta step. `State` needs vector-space
/// arithmetic (Eigen fixed-size vectors work).
template <class State, class Rhs>
State rk4_step(const Rhs& rhs, double t, const State& y, double h) {
  const State k1 = rhs(t, y);
  const State k2 = rhs(t + 0.5 * h, State(y + (0.5 * h) * k1));
  const State k3 = rhs(t + 0.5 * h, State(y + (0.5 * h) * k2));
  const State k4 = rhs(t + h, State(y + h * k3));
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Running integral of uniformly sampled values, starting at zero.
/// Even indices use composite Simpson; odd indices close with the 3/8 rule
/// (a three-point quadratic panel when only one interval is available).
std::vector<double> cumulative_simpson(std::span<const double> f, double h);

/// Natural cubic spline through strictly increasing knots.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double operator()(double t) const { return value(t); }
  double value(double t) const;
  double derivative(double t) const;
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

 private:
  std::size_t segment(double t) const;

  std::vector<double> x_, y_, m_;  // m_: second derivatives at knots
};

Matrix expm(const Matrix& X);

double frobenius_block(const Matrix& M, Index dim);
bool is_hermitian(const Matrix& M, double tol);
bool is_anti_hermitian(const Matrix& M, double tol);
Matrix commutator(const Matrix& X, const Matrix& Y);

/// Continuous branch of a sampled phase sequence.
std::vector<double> unwrap(std::span<const double> phase);

}  // namespace lrinv
