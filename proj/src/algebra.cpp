#include "lrinv/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "lrinv/errors.hpp"
#include "lrinv/numerics.hpp"

namespace lrinv {

namespace {

constexpr double kSu11M = 1.0;
constexpr double kSu11N = -2.0;

Representation make_rep(std::string name, double m, double n, Index dim) {
  Representation rep;
  rep.spec = {std::move(name), m, n};
  rep.A = Matrix::Zero(dim, dim);
  rep.B = Matrix::Zero(dim, dim);
  rep.C = Matrix::Zero(dim, dim);
  rep.interior_dim = dim;
  rep.reliable_dim = dim;
  return rep;
}

void mark_truncated(Representation& rep) {
  rep.truncated = true;
  rep.interior_dim = rep.dim() - 1;
  rep.reliable_dim = std::max<Index>(2, rep.dim() / 4);
}

}  // namespace

void AlgebraSpec::validate() const {
  if (m == 0.0 || n == 0.0 || !std::isfinite(m) || !std::isfinite(n))
    throw InvalidArgument("structure constants m and n must be finite and nonzero");
}

bool Representation::hermitian_paired(double tol) const {
  const double scale = std::max({1.0, A.norm(), C.norm()});
  return (B - A.adjoint()).norm() <= tol * scale && (C - C.adjoint()).norm() <= tol * scale;
}

double ClosureReport::max_residual() const { return std::max({ab, ca, cb}); }

Representation su2_spin_rep(double j) {
  const double twice = 2.0 * j;
  if (!(j >= 0.0) || std::abs(twice - std::round(twice)) > 1e-12)
    throw InvalidArgument("spin j must be a nonnegative half-integer");
  const int dim = static_cast<int>(std::lround(twice)) + 1;
  Representation rep = make_rep("su(2)", 1.0, 2.0, dim);
  rep.basis_note = "|j,m>, m = j, j-1, ..., -j";
  for (int i = 0; i < dim; ++i) {
    const double mz = j - i;
    rep.C(i, i) = mz;
    if (i > 0) rep.A(i - 1, i) = std::sqrt(j * (j + 1.0) - mz * (mz + 1.0));
  }
  rep.B = rep.A.adjoint();
  return rep;
}

Representation schwinger_su2_rep(int total) {
  if (total < 0) throw InvalidArgument("n1 + n2 must be nonnegative");
  const int dim = total + 1;
  Representation rep = make_rep("su(2) Schwinger", 1.0, 2.0, dim);
  rep.basis_note = "|n1, n2>, n1 = N, N-1, ..., 0";
  rep.conserved_eigenvalue = 0.5 * total;
  // Index i holds n1 = total - i, n2 = i.
  for (int i = 0; i < dim; ++i) {
    const int n1 = total - i;
    const int n2 = i;
    rep.C(i, i) = 0.5 * (n1 - n2);
    // a1^dag a2 |n1, n2> = sqrt((n1+1) n2) |n1+1, n2-1>, which is index i-1.
    if (i > 0) rep.A(i - 1, i) = std::sqrt(static_cast<double>(n1 + 1) * n2);
  }
  rep.B = rep.A.adjoint();
  return rep;
}

Representation su11_two_mode_rep(int difference, int cutoff) {
  if (cutoff < 4) throw InvalidArgument("su(1,1) cutoff must be at least 4");
  Representation rep = make_rep("su(1,1) two-mode", kSu11M, kSu11N, cutoff);
  rep.basis_note = "|n1, n2> with n1 - n2 fixed, ascending quanta";
  rep.conserved_eigenvalue = 0.5 * difference;
  const int off1 = std::max(difference, 0);
  const int off2 = std::max(-difference, 0);
  for (int r = 0; r < cutoff; ++r) {
    const double n1 = r + off1;
    const double n2 = r + off2;
    rep.C(r, r) = 0.5 * (n1 + n2 + 1.0);
    if (r + 1 < cutoff) rep.A(r + 1, r) = std::sqrt((n1 + 1.0) * (n2 + 1.0));
  }
  rep.B = rep.A.adjoint();
  mark_truncated(rep);
  return rep;
}

Representation su11_one_mode_rep(int cutoff, Parity parity) {
  if (cutoff < 4) throw InvalidArgument("su(1,1) cutoff must be at least 4");
  Representation rep = make_rep("su(1,1) one-mode", kSu11M, kSu11N, cutoff);
  const int base = parity == Parity::Even ? 0 : 1;
  rep.basis_note = parity == Parity::Even ? "|0>, |2>, |4>, ..." : "|1>, |3>, |5>, ...";
  for (int r = 0; r < cutoff; ++r) {
    const double n = 2.0 * r + base;
    rep.C(r, r) = 0.5 * (n + 0.5);
    if (r + 1 < cutoff) rep.A(r + 1, r) = 0.5 * std::sqrt((n + 1.0) * (n + 2.0));
  }
  rep.B = rep.A.adjoint();
  mark_truncated(rep);
  return rep;
}

Representation two_level_rep() {
  Representation rep = make_rep("su(2) two-level", 1.0, 2.0, 2);
  rep.basis_note = "|1>, |2>";
  rep.A(0, 1) = 1.0;
  rep.B(1, 0) = 1.0;
  rep.C(0, 0) = 0.5;
  rep.C(1, 1) = -0.5;
  return rep;
}

ClosureReport verify_closure(const Representation& rep, double tol) {
  const auto& [name, m, n] = rep.spec;
  const Index k = rep.interior_dim;
  ClosureReport report;
  report.ab = frobenius_block(commutator(rep.A, rep.B) - n * rep.C, k);
  report.ca = frobenius_block(commutator(rep.C, rep.A) - m * rep.A, k);
  report.cb = frobenius_block(commutator(rep.C, rep.B) + m * rep.B, k);
  report.scale = std::max({1.0, rep.A.norm(), rep.B.norm(), rep.C.norm()});
  report.pass = report.max_residual() <= tol * report.scale;
  return report;
}

}  // namespace lrinv
