#pragma once

#include <vector>

#include "lrinv/types.hpp"

namespace lrinv {

struct SusyJCConfig;

/// U(t) = P exp[-i int H dt'] sampled on a grid.
struct PropagatorResult {
  std::vector<double> grid;
  std::vector<Matrix> U;
  double order_estimate = 0.0;  // 0 when not requested
};

/// Ordered product of midpoint step exponentials exp[-i H(t_mid) dt], with
/// `substeps` steps per grid interval. With `estimate_order`, two further
/// runs at 2x and 4x substeps give log2(|U_s - U_2s| / |U_2s - U_4s|) at t_end.
PropagatorResult timeordered_propagator(const MatrixFn& H, const TimeGrid& grid, int substeps,
                                        bool estimate_order = false);

/// Same product applied to a single state; cheaper than the full propagator.
std::vector<Vector> propagate_state(const MatrixFn& H, const TimeGrid& grid, int substeps,
                                    const Vector& psi0);

/// Several states at once (the columns of `psi0`); each step exponential is
/// computed once and shared.
std::vector<Matrix> propagate_states(const MatrixFn& H, const TimeGrid& grid, int substeps,
                                     const Matrix& psi0);

/// Truncated bosonic annihilation operator on |0>..|cutoff-1>.
Matrix annihilation(int cutoff);

/// Full-space SUSY JC Hamiltonian on (Fock, cutoff) x (e, g) with index
/// 2n + s, s = 0 for |e> and 1 for |g>.
struct SusyEmbedding {
  int cutoff = 0;
  MatrixFn H_full;
  Matrix block;     // dim x 2 isometry onto (|m, e>, |m+k, g>)
  Matrix n_prime;   // diag(a^k a^dag^k, a^dag^k a^k)
  Matrix projector() const { return block * block.adjoint(); }
};

/// omega a^dag a + (omega0/2) sigma_z + g a^dag^k sigma_- + g* a^k sigma_+
SusyEmbedding fullspace_susy_embedding(const SusyJCConfig& cfg, int cutoff);

cplx overlap(const Vector& psi1, const Vector& psi2);  // <psi1|psi2>
/// |<psi1|psi2>|, clamped to [0, 1].
double fidelity(const Vector& psi1, const Vector& psi2);

/// max over interior grid points of |i (psi_{k+1} - psi_{k-1}) / 2h - H psi_k|.
double schrodinger_residual(const std::vector<Vector>& psi, const MatrixFn& H,
                            const TimeGrid& grid);

}  // namespace lrinv
