#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace lrinv {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<cplx(double)>;
using MatrixFn = std::function<Matrix(double)>;

inline constexpr cplx I_unit{0.0, 1.0};

/// Uniform time grid with `steps` intervals (steps + 1 points).
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  int steps = 1;

  double h() const { return (t_end - t_start) / steps; }
  double at(int i) const { return i == steps ? t_end : t_start + i * h(); }
  int size() const { return steps + 1; }
  std::vector<double> times() const;
  void validate() const;
};

}  // namespace lrinv
