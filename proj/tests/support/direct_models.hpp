#pragma once

// Hamiltonians built straight from their operator expressions on plain Fock
// or spin bases, with no use of the library's representations. Tests compare
// these against the catalog presets.

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace direct {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat lowering(int n) {
  Mat a = Mat::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(double(k));
  return a;
}

inline Mat kron(const Mat& x, const Mat& y) {
  Mat out(x.rows() * y.rows(), x.cols() * y.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return out;
}

/// c0 {(1/2) sin(th) e^{-i ph} J+ + (1/2) sin(th) e^{i ph} J- + cos(th) J3}
/// with J1, J2 from the textbook spin matrices (basis m = j, j-1, ..., -j).
inline Mat spin_hamiltonian(double j, double c0, double th, double ph) {
  const int d = int(std::lround(2 * j)) + 1;
  Mat jp = Mat::Zero(d, d), j3 = Mat::Zero(d, d);
  for (int r = 0; r < d; ++r) {
    const double m = j - r;
    j3(r, r) = m;
    if (r > 0) jp(r - 1, r) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  const Mat j1 = 0.5 * (jp + jp.adjoint());
  const Mat j2 = cplx(0, -0.5) * (jp - jp.adjoint());
  return c0 * (std::sin(th) * std::cos(ph) * j1 + std::sin(th) * std::sin(ph) * j2 + std::cos(th) * j3);
}

/// Column selector onto two-mode states |n1, n2> in a (cut x cut) product space.
inline Mat two_mode_selector(int cut, const std::vector<std::pair<int, int>>& states) {
  Mat P = Mat::Zero(cut * cut, Eigen::Index(states.size()));
  for (std::size_t s = 0; s < states.size(); ++s)
    P(states[s].first * cut + states[s].second, Eigen::Index(s)) = 1.0;
  return P;
}

/// w1 a1^dag a1 + w2 a2^dag a2 + g a1^dag a2 + g* a2^dag a1 on the shell
/// n1 + n2 = total, basis ordered n1 = total, ..., 0.
inline Mat beam_splitter_shell(double w1, double w2, cplx g, int total) {
  const int cut = total + 2;
  const Mat a = lowering(cut), id = Mat::Identity(cut, cut);
  const Mat a1 = kron(a, id), a2 = kron(id, a);
  const Mat H = w1 * a1.adjoint() * a1 + w2 * a2.adjoint() * a2 + g * a1.adjoint() * a2 +
                std::conj(g) * a2.adjoint() * a1;
  std::vector<std::pair<int, int>> states;
  for (int i = 0; i <= total; ++i) states.emplace_back(total - i, i);
  const Mat P = two_mode_selector(cut, states);
  return P.adjoint() * H * P;
}

/// w1 a1^dag a1 + w2 a2^dag a2 + g a1 a2 + g* a1^dag a2^dag on n1 - n2 = diff,
/// first `rungs` states in ascending quanta.
inline Mat pair_coupling_ladder(double w1, double w2, cplx g, int diff, int rungs) {
  const int cut = rungs + std::abs(diff) + 2;
  const Mat a = lowering(cut), id = Mat::Identity(cut, cut);
  const Mat a1 = kron(a, id), a2 = kron(id, a);
  const Mat H = w1 * a1.adjoint() * a1 + w2 * a2.adjoint() * a2 + g * a1 * a2 +
                std::conj(g) * a1.adjoint() * a2.adjoint();
  std::vector<std::pair<int, int>> states;
  for (int r = 0; r < rungs; ++r) states.emplace_back(r + std::max(diff, 0), r + std::max(-diff, 0));
  const Mat P = two_mode_selector(cut, states);
  return P.adjoint() * H * P;
}

/// (1/2)[X q^2 + Y (qp + pq) + Z p^2] on |base>, |base+2>, ... (`rungs` states).
inline Mat quadratic_oscillator(double X, double Y, double Z, int base, int rungs) {
  const int cut = 2 * rungs + base + 3;
  const Mat a = lowering(cut);
  const Mat q = (a + a.adjoint()) / std::sqrt(2.0);
  const Mat p = cplx(0, 1) * (a.adjoint() - a) / std::sqrt(2.0);
  const Mat H = 0.5 * (X * q * q + Y * (q * p + p * q) + Z * p * p);
  Mat P = Mat::Zero(cut, rungs);
  for (int r = 0; r < rungs; ++r) P(base + 2 * r, r) = 1.0;
  return P.adjoint() * H * P;
}

/// (w0/2)(|1><1| - |2><2|) + g |2><1| + g* |1><2|.
inline Mat two_level(double w0, cplx g) {
  Mat H(2, 2);
  H << 0.5 * w0, std::conj(g), g, -0.5 * w0;
  return H;
}

/// w a^dag a + (w0/2) sigma_z + g a^dag^k sigma_- + g* a^k sigma_+ on
/// Fock(cut) x {e, g}, index 2n + s with s = 0 for e.
inline Mat multiphoton_jc(double w, double w0, cplx g, int k, int cut) {
  const Mat a = lowering(cut);
  Mat ak = Mat::Identity(cut, cut);
  for (int i = 0; i < k; ++i) ak = ak * a;
  Mat sz = Mat::Zero(2, 2), sm = Mat::Zero(2, 2);
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  sm(1, 0) = 1.0;  // |g><e|
  const Mat id2 = Mat::Identity(2, 2);
  return w * kron(a.adjoint() * a, id2) + 0.5 * w0 * kron(Mat::Identity(cut, cut), sz) +
         g * kron(ak.adjoint(), sm) + std::conj(g) * kron(ak, sm.adjoint());
}

}  // namespace direct
