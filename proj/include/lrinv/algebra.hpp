#pragma once

#include <optional>
#include <string>

#include "lrinv/types.hpp"

namespace lrinv {

/// Three-generator Lie algebra  [A,B] = nC,  [C,A] = mA,  [C,B] = -mB.
struct AlgebraSpec {
  std::string name;
  double m = 1.0;
  double n = 2.0;

  /// mn > 0: compact (circular invariant angle); mn < 0: non-compact
  /// (hyperbolic continuation of the invariant angle).
  bool compact() const { return m * n > 0.0; }
  void validate() const;
};

/// Dense matrix realization of an AlgebraSpec.
///
/// Truncated Fock ladders satisfy the relations only on the first
/// `interior_dim` basis states; the last rung is lost to the truncation.
/// `reliable_dim` is the leading block on which dynamics (squeezing-type
/// transformations) are trusted to machine precision; it is what downstream
/// contract checks restrict to.
struct Representation {
  AlgebraSpec spec;
  Matrix A, B, C;
  bool truncated = false;
  Index interior_dim = 0;
  Index reliable_dim = 0;
  std::optional<double> conserved_eigenvalue;  // eigenvalue of N, if any
  std::string basis_note;

  Index dim() const { return C.rows(); }
  /// B = A^dagger and C = C^dagger.
  bool hermitian_paired(double tol = 1e-12) const;
};

struct ClosureReport {
  double ab = 0.0;  // |[A,B] - nC|
  double ca = 0.0;  // |[C,A] - mA|
  double cb = 0.0;  // |[C,B] + mB|
  double scale = 1.0;
  bool pass = false;

  double max_residual() const;
};

enum class Parity { Even, Odd };

/// Spin-j irrep, basis ordered by descending J3.
Representation su2_spin_rep(double j);
/// Schwinger two-mode realization on the n1+n2 = total shell.
Representation schwinger_su2_rep(int total);
/// a1^dag a2^dag, a1 a2, (a1 a1^dag + a2^dag a2)/2 on the fixed n1-n2 ladder.
Representation su11_two_mode_rep(int difference, int cutoff);
/// a^dag^2/2, a^2/2, (a^dag a + 1/2)/2 on one parity ladder.
Representation su11_one_mode_rep(int cutoff, Parity parity = Parity::Even);
/// |1><2|, |2><1|, (|1><1| - |2><2|)/2.
Representation two_level_rep();

/// Residuals restricted to the interior block; pass iff each is
/// <= tol * max(1, |A|, |B|, |C|).
ClosureReport verify_closure(const Representation& rep, double tol);

}  // namespace lrinv
