#include "lrinv/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "lrinv/errors.hpp"
#include "lrinv/numerics.hpp"
#include "lrinv/susy_jc.hpp"

namespace lrinv {

namespace {

Matrix step_exponential(const MatrixFn& H, double t_mid, double dt) {
  return expm(Matrix(-I_unit * dt * H(t_mid)));
}

Matrix final_propagator(const MatrixFn& H, const TimeGrid& grid, int substeps) {
  const double dt = grid.h() / substeps;
  const Index dim = H(grid.t_start).rows();
  Matrix U = Matrix::Identity(dim, dim);
  for (int i = 0; i < grid.steps; ++i)
    for (int s = 0; s < substeps; ++s)
      U = step_exponential(H, grid.at(i) + (s + 0.5) * dt, dt) * U;
  return U;
}

}  // namespace

PropagatorResult timeordered_propagator(const MatrixFn& H, const TimeGrid& grid, int substeps,
                                        bool estimate_order) {
  grid.validate();
  if (substeps < 1) throw InvalidArgument("substeps must be positive");
  PropagatorResult out;
  out.grid = grid.times();
  const double dt = grid.h() / substeps;
  const Index dim = H(grid.t_start).rows();
  Matrix U = Matrix::Identity(dim, dim);
  out.U.reserve(grid.size());
  out.U.push_back(U);
  for (int i = 0; i < grid.steps; ++i) {
    for (int s = 0; s < substeps; ++s)
      U = step_exponential(H, grid.at(i) + (s + 0.5) * dt, dt) * U;
    out.U.push_back(U);
  }
  if (estimate_order) {
    const Matrix U2 = final_propagator(H, grid, 2 * substeps);
    const Matrix U4 = final_propagator(H, grid, 4 * substeps);
    const double e1 = (out.U.back() - U2).norm();
    const double e2 = (U2 - U4).norm();
    out.order_estimate = e2 > 0.0 ? std::log2(e1 / e2) : 0.0;
  }
  return out;
}

std::vector<Matrix> propagate_states(const MatrixFn& H, const TimeGrid& grid, int substeps,
                                     const Matrix& psi0) {
  grid.validate();
  if (substeps < 1) throw InvalidArgument("substeps must be positive");
  const double dt = grid.h() / substeps;
  std::vector<Matrix> out;
  out.reserve(grid.size());
  Matrix psi = psi0;
  out.push_back(psi);
  for (int i = 0; i < grid.steps; ++i) {
    for (int s = 0; s < substeps; ++s)
      psi = step_exponential(H, grid.at(i) + (s + 0.5) * dt, dt) * psi;
    out.push_back(psi);
  }
  return out;
}

std::vector<Vector> propagate_state(const MatrixFn& H, const TimeGrid& grid, int substeps,
                                    const Vector& psi0) {
  const std::vector<Matrix> cols = propagate_states(H, grid, substeps, Matrix(psi0));
  std::vector<Vector> out;
  out.reserve(cols.size());
  for (const auto& m : cols) out.push_back(m.col(0));
  return out;
}

Matrix annihilation(int cutoff) {
  if (cutoff < 1) throw InvalidArgument("Fock cutoff must be positive");
  Matrix a = Matrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

SusyEmbedding fullspace_susy_embedding(const SusyJCConfig& cfg, int cutoff) {
  cfg.validate();
  if (cutoff < cfg.m_fock + cfg.k + 4)
    throw InvalidArgument("Fock cutoff must be at least m + k + 4");
  const int k = cfg.k;
  const Index dim = 2 * cutoff;
  const Matrix a = annihilation(cutoff);
  const Matrix ad = a.adjoint();
  Matrix ak = Matrix::Identity(cutoff, cutoff);
  for (int i = 0; i < k; ++i) ak = a * ak;
  const Matrix adk = ak.adjoint();

  // Two-level factor, basis (e, g).
  Matrix sz = Matrix::Zero(2, 2), sm = Matrix::Zero(2, 2);
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  sm(1, 0) = 1.0;  // sigma_- |e> = |g>
  const Matrix sp = sm.adjoint();
  auto kron = [](const Matrix& field, const Matrix& atom) {
    Matrix out = Matrix::Zero(field.rows() * 2, field.cols() * 2);
    for (Index i = 0; i < field.rows(); ++i)
      for (Index j = 0; j < field.cols(); ++j) out.block(2 * i, 2 * j, 2, 2) = field(i, j) * atom;
    return out;
  };
  const Matrix id2 = Matrix::Identity(2, 2);
  const Matrix num = kron(ad * a, id2);
  const Matrix szf = kron(Matrix::Identity(cutoff, cutoff), sz);
  const Matrix raise = kron(adk, sm);  // (a^dag)^k sigma_-
  const Matrix lower = kron(ak, sp);   // a^k sigma_+

  SusyEmbedding out;
  out.cutoff = cutoff;
  const SusyJCConfig c = cfg;
  out.H_full = [c, num, szf, raise, lower](double t) {
    const cplx g = c.g(t);
    return Matrix(c.omega(t) * num + 0.5 * c.omega0(t) * szf + g * raise + std::conj(g) * lower);
  };
  Matrix pe = Matrix::Zero(2, 2), pg = Matrix::Zero(2, 2);
  pe(0, 0) = 1.0;
  pg(1, 1) = 1.0;
  out.n_prime = kron(ak * adk, pe) + kron(adk * ak, pg);
  out.block = Matrix::Zero(dim, 2);
  out.block(2 * cfg.m_fock + 0, 0) = 1.0;
  out.block(2 * (cfg.m_fock + k) + 1, 1) = 1.0;
  return out;
}

cplx overlap(const Vector& psi1, const Vector& psi2) {
  if (psi1.size() != psi2.size()) throw InvalidArgument("state dimensions differ");
  return psi1.dot(psi2);  // Eigen's dot conjugates the first argument
}

double fidelity(const Vector& psi1, const Vector& psi2) {
  return std::clamp(std::abs(overlap(psi1, psi2)), 0.0, 1.0);
}

double schrodinger_residual(const std::vector<Vector>& psi, const MatrixFn& H,
                            const TimeGrid& grid) {
  if (psi.size() < 3 || static_cast<int>(psi.size()) != grid.size())
    throw InvalidArgument("need at least three states matching the grid");
  const double h = grid.h();
  double worst = 0.0;
  for (int i = 1; i + 1 < grid.size(); ++i) {
    const Vector lhs = I_unit * (psi[i + 1] - psi[i - 1]) / (2.0 * h);
    worst = std::max(worst, (lhs - H(grid.at(i)) * psi[i]).norm());
  }
  return worst;
}

}  // namespace lrinv
