#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "direct_models.hpp"
#include "lrinv/catalog.hpp"
#include "lrinv/errors.hpp"
#include "lrinv/numerics.hpp"
#include "lrinv/oracle.hpp"
#include "lrinv/susy_jc.hpp"

using namespace lrinv;
using std::numbers::pi;

namespace {

SusyJCConfig static_config(int k, int m, double w, double w0, cplx g, double t_end = 5.0) {
  SusyJCConfig cfg;
  cfg.k = k;
  cfg.m_fock = m;
  cfg.omega = [w](double) { return w; };
  cfg.omega0 = [w0](double) { return w0; };
  cfg.g = [g](double) { return g; };
  cfg.t_end = t_end;
  return cfg;
}

SusyJCConfig driven_config(int k, int m) {
  SusyJCConfig cfg;
  cfg.k = k;
  cfg.m_fock = m;
  cfg.omega = [](double) { return 1.0; };
  cfg.omega0 = [k](double t) { return k * 0.9 + 0.1 * std::sin(0.5 * t); };
  cfg.g = [](double t) { return cplx(0.1 + 0.02 * std::sin(0.3 * t), 0.03); };
  cfg.t_end = 5.0;
  return cfg;
}

}  // namespace

TEST_SUITE("susy_jc") {
  TEST_CASE("lambda_m is (m + k)!/m!") {
    CHECK(lambda_m(0, 1) == 1.0);
    CHECK(lambda_m(1, 2) == 6.0);
    CHECK(lambda_m(2, 3) == 60.0);
    CHECK(lambda_m_exact(10, 5) == 360360u);
    CHECK_THROWS_AS(lambda_m_exact(40, 30), RangeError);
    CHECK_THROWS_AS(lambda_m(20, 20), RangeError);
    CHECK_THROWS_AS(lambda_m(-1, 1), InvalidArgument);
    CHECK_THROWS_AS(lambda_m(0, 0), InvalidArgument);
  }

  TEST_CASE("detuning") {
    const SusyJCConfig cfg = static_config(3, 0, 1.2, 3.1, 0.1);
    CHECK(delta(cfg, 0.0) == doctest::Approx(0.5));
  }

  TEST_CASE("block Hamiltonian is the projection of the full model") {
    for (int k = 1; k <= 3; ++k)
      for (int m = 0; m <= 2; ++m) {
        const SusyJCConfig cfg = static_config(k, m, 1.1, 0.7 * k, cplx(0.2, -0.15));
        const int cut = m + k + 4;
        const direct::Mat H = direct::multiphoton_jc(1.1, 0.7 * k, cplx(0.2, -0.15), k, cut);
        direct::Mat P = direct::Mat::Zero(2 * cut, 2);
        P(2 * m, 0) = 1.0;
        P(2 * (m + k) + 1, 1) = 1.0;
        CHECK((P.adjoint() * H * P - block_hamiltonian(cfg, 0.0)).norm() < 1e-12);

        const SusyEmbedding emb = fullspace_susy_embedding(cfg, cut);
        CHECK((emb.H_full(0.0) - H).norm() < 1e-12);
        CHECK(commutator(emb.H_full(0.0), emb.n_prime).norm() < 1e-12);
        CHECK((emb.block - P).norm() == 0.0);
      }
  }

  TEST_CASE("embedding rejects a small cutoff") {
    CHECK_THROWS_AS(fullspace_susy_embedding(static_config(2, 1, 1.0, 1.8, 0.1), 6),
                    InvalidArgument);
  }

  TEST_CASE("auxiliary right-hand side") {
    const SusyJCConfig cfg = static_config(1, 0, 1.0, 0.5, cplx(0.0, 0.2));
    // delta = 0.5; cdot = -i (0.5 c + 2 b g); bdot = i (c* g - c g*).
    const SusyRate r = susy_auxiliary_rhs(cplx(0.3, 0.0), 0.5, 0.0, cfg);
    CHECK(std::abs(r.cdot - cplx(0.2, -0.15)) < 1e-15);
    CHECK(r.bdot == doctest::Approx(-0.12));
  }

  TEST_CASE("auxiliary flow conserves lambda_m |c|^2 + b^2") {
    const SusyJCConfig cfg = driven_config(2, 1);
    const auto [c0, b0] = susy_aligned_start(cfg);
    const SusyAuxiliary aux = solve_susy_auxiliary(cfg, c0, b0, {0.0, 5.0, 1000});
    CHECK(aux.lambda_m == 6.0);
    CHECK(aux.drift < 1e-10);
    for (std::size_t i = 0; i < aux.size(); i += 50) {
      CHECK(6.0 * std::norm(aux.c[i]) + aux.b[i] * aux.b[i] == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(susy_invariant_residual(cfg, aux, i) < 1e-12);
      CHECK(susy_angle_identity_defect(aux.c[i], aux.b[i], aux.theta[i], aux.phi[i], 6.0) < 1e-12);
    }
    CHECK_THROWS_AS(solve_susy_auxiliary(cfg, c0, b0, {0.0, 5.0, 2}), AccuracyError);
  }

  TEST_CASE("initial data are scaled to the unit sphere") {
    const SusyJCConfig cfg = static_config(1, 0, 1.0, 1.0, 0.1);
    const SusyAuxiliary aux = solve_susy_auxiliary(cfg, cplx(0.0), 3.0, {0.0, 1.0, 20});
    CHECK(aux.b.front() == doctest::Approx(1.0));
    CHECK(aux.theta.front() == 0.0);
    CHECK_THROWS_AS(solve_susy_auxiliary(cfg, cplx(0.0), 0.0, {0.0, 1.0, 20}), InvalidArgument);
  }

  TEST_CASE("uncoupled block: phi advances at the detuning") {
    const double w = 1.0, w0 = 0.6;  // delta = 0.4
    const SusyJCConfig cfg = static_config(1, 2, w, w0, 0.0, 4.0);
    const double c0 = 0.4 / std::sqrt(3.0);  // lambda_m = 3, |c| sqrt(3) = 0.4
    const SusyAuxiliary aux = solve_susy_auxiliary(cfg, -c0, std::sqrt(1 - 0.16), {0.0, 4.0, 400});
    CHECK(aux.phi.front() == doctest::Approx(0.0));
    for (std::size_t i = 0; i < aux.size(); i += 40) {
      CHECK(aux.phi[i] == doctest::Approx(0.4 * aux.grid[i]).epsilon(1e-10));
      CHECK(aux.phidot[i] == doctest::Approx(0.4).epsilon(1e-12));
      CHECK(aux.b[i] == doctest::Approx(std::sqrt(0.84)).epsilon(1e-12));
    }
  }

  TEST_CASE("V and the invariant in closed form") {
    CHECK((susy_V(0.0, 0.7, 6.0) - Matrix::Identity(2, 2)).norm() < 1e-15);
    const Matrix flip = susy_V(pi, 0.0, 2.0);
    CHECK(std::abs(flip(1, 0) + 1.0) < 1e-15);
    CHECK(std::abs(flip(0, 1) - 1.0) < 1e-15);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ut(0.0, pi), up(-pi, pi);
    Matrix sz = Matrix::Zero(2, 2);
    sz(0, 0) = 1.0;
    sz(1, 1) = -1.0;
    for (int trial = 0; trial < 10; ++trial) {
      const double th = ut(rng), ph = up(rng);
      for (double lam : {1.0, 6.0, 60.0}) {
        const Matrix V = susy_V(th, ph, lam);
        CHECK((V.adjoint() * V - Matrix::Identity(2, 2)).norm() < 1e-14);
        CHECK((V * sz * V.adjoint() - susy_invariant(th, ph, lam)).norm() < 1e-14);
      }
    }
  }

  TEST_CASE("angle identities hold only for matching angles") {
    const double lam = 6.0, th = 1.1, ph = 0.4;
    const cplx c = -std::sin(th) / std::sqrt(lam) * std::exp(-I_unit * ph);
    CHECK(std::abs(-std::arg(-c) - ph) < 1e-15);
    CHECK(susy_angle_identity_defect(c, std::cos(th), th, ph, lam) < 1e-15);
    CHECK(susy_angle_identity_defect(c, std::cos(th), th, ph + 0.1, lam) > 1e-3);
    CHECK(susy_angle_identity_defect(cplx(0.0), 1.0, 0.0, 0.0, lam) == 0.0);
  }

  TEST_CASE("phase rates at the pole are the diagonal energies") {
    const SusyJCConfig cfg = static_config(2, 1, 1.0, 1.8, cplx(0.1, 0.03));
    const Matrix H = block_hamiltonian(cfg, 0.0);
    const SusyPhaseRates up = susy_phase_rates(cfg, 0.0, 0.3, 0.2, 0.0, 1);
    const SusyPhaseRates down = susy_phase_rates(cfg, 0.0, 0.3, 0.2, 0.0, -1);
    CHECK(up.dynamical == doctest::Approx(H(0, 0).real()));
    CHECK(down.dynamical == doctest::Approx(H(1, 1).real()));
    CHECK(up.geometric == 0.0);
    CHECK(susy_phase_rates(cfg, pi / 2, 0.0, 0.2, 0.0, 1).geometric == doctest::Approx(-0.1));
    CHECK_THROWS_AS(susy_phase_rates(cfg, 0.0, 0.0, 0.0, 0.0, 0), InvalidArgument);
  }

  TEST_CASE("static block: aligned solutions are the Rabi eigenstates") {
    const SusyJCConfig cfg = static_config(2, 1, 1.0, 1.8, cplx(0.1, 0.03));
    const auto [c0, b0] = susy_aligned_start(cfg);
    const SusyAuxiliary aux = solve_susy_auxiliary(cfg, c0, b0, {0.0, 5.0, 500});
    for (std::size_t i = 0; i < aux.size(); i += 100)
      CHECK(aux.theta[i] == doctest::Approx(aux.theta.front()).epsilon(1e-12));
    std::vector<double> energies;
    for (int sigma : {1, -1}) {
      const SolutionState s = susy_solution(cfg, sigma, aux);
      energies.push_back(s.phases.total(aux.size() - 1) / 5.0);
      const Matrix H = block_hamiltonian(cfg, 0.0);
      CHECK((H * s.psi.front() - energies.back() * s.psi.front()).norm() < 1e-12);
    }
    std::sort(energies.begin(), energies.end());
    CHECK(energies[0] == doctest::Approx(1.725409395645080).epsilon(1e-13));
    CHECK(energies[1] == doctest::Approx(2.274590604354920).epsilon(1e-13));
  }

  TEST_CASE("driven block: solutions match the oracle and stay orthogonal") {
    const SusyJCConfig cfg = driven_config(2, 1);
    const TimeGrid grid{0.0, 5.0, 1000};
    const auto [c0, b0] = susy_aligned_start(cfg);
    const SusyAuxiliary aux = solve_susy_auxiliary(cfg, c0, b0, grid);
    const SolutionState up = susy_solution(cfg, 1, aux);
    const SolutionState down = susy_solution(cfg, -1, aux);
    for (std::size_t i = 0; i < aux.size(); i += 100)
      CHECK(std::abs(overlap(up.psi[i], down.psi[i])) < 1e-14);
    const MatrixFn H = [&](double t) { return block_hamiltonian(cfg, t); };
    for (const SolutionState* s : {&up, &down}) {
      const auto ref = propagate_state(H, grid, 4, s->psi.front());
      const cplx ov = overlap(ref.back(), s->psi.back());
      CHECK(std::abs(ov) > 1 - 1e-9);
      CHECK(std::abs(std::arg(ov)) < 1e-6);
      CHECK(schrodinger_residual(s->psi, H, grid) < 1e-4);
    }
    for (std::size_t i : {100u, 500u, 900u}) {
      const SusyTransformDefect d1 = susy_transformed_hamiltonian_defect(cfg, aux, i, 2e-3);
      const SusyTransformDefect d2 = susy_transformed_hamiltonian_defect(cfg, aux, i, 1e-3);
      CHECK(d1.offdiag < 1e-5);
      CHECK(d1.sigmaz_coefficient_error < 1e-5);
      CHECK(d1.offdiag / d2.offdiag == doctest::Approx(4.0).epsilon(0.05));
    }
  }

  TEST_CASE("block normalization equals lambda_m") {
    for (int k = 1; k <= 4; ++k)
      for (int m = 0; m <= 4; ++m)
        CHECK(sigma_block_normalization(k, m) == doctest::Approx(lambda_m(m, k)).epsilon(1e-13));
  }

  TEST_CASE("one-photon block reproduces the two-level pipeline") {
    SusyJCConfig cfg = driven_config(1, 0);
    const TimeGrid grid{0.0, 5.0, 1000};
    const ModelPreset tl =
        two_level_atom([&](double t) { return cfg.omega0(t) - cfg.omega(t); }, cfg.g, grid);
    for (double t : {0.0, 2.3, 5.0}) {
      Matrix shifted = block_hamiltonian(cfg, t);
      shifted.diagonal().array() -= 0.5 * cfg.omega(t);
      CHECK((shifted - assemble(tl.rep, tl.schedule, t)).norm() < 1e-14);
    }
    const AuxiliaryState start = aligned_start(tl.schedule, tl.rep.spec, 0.0);
    const AuxiliaryTrajectory traj = solve_auxiliary(tl.schedule, tl.rep.spec, start.a, start.b, grid);
    const auto eig = eigen_invariant(tl.rep);
    const auto [c0, b0] = susy_aligned_start(cfg);
    const SusyAuxiliary aux = solve_susy_auxiliary(cfg, c0, b0, grid);
    const SolutionState susy = susy_solution(cfg, 1, aux);
    bool matched = false;
    for (const Eigenpair& e : eig) {
      const SolutionState lie = solution_state(e.lambda, e.vector, tl.rep, tl.schedule, traj);
      if (std::abs(std::abs(overlap(lie.psi.front(), susy.psi.front())) - 1.0) > 1e-10) continue;
      matched = true;
      const cplx ov0 = overlap(lie.psi.front(), susy.psi.front());
      const cplx ovT = overlap(lie.psi.back(), susy.psi.back()) * std::polar(1.0, 0.5 * 5.0);
      CHECK(std::abs(ovT / ov0 - 1.0) < 1e-7);
    }
    CHECK(matched);
  }
}
