#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lrinv/errors.hpp"
#include "lrinv/invariant.hpp"

using namespace lrinv;
using std::numbers::pi;

namespace {

const AlgebraSpec kSu2{"su(2)", 1.0, 2.0};
const AlgebraSpec kSu11{"su(1,1)", 1.0, -2.0};

double wrap(double x) { return std::remainder(x, 2.0 * pi); }

/// omega = 1 + 0.2 sin(0.7 t), theta ramps 0.6 -> 1.1 over [0, 6], phi = 0.3 t.
CoefficientSchedule driven_schedule() {
  return {[](double t) { return 1.0 + 0.2 * std::sin(0.7 * t); },
          [](double t) { return 0.6 + 0.5 * t / 6.0; },
          [](double t) { return 0.3 * t; },
          {},
          0.0,
          6.0};
}

}  // namespace

TEST_SUITE("invariant") {
  TEST_CASE("kappa constants") {
    const auto a = kappa_constants(kSu2);
    CHECK(std::abs(a.kappa - 1.0) < 1e-15);
    CHECK(std::abs(a.x - 1.0) < 1e-15);
    CHECK(std::abs(a.y - 1.0) < 1e-15);
    const auto b = kappa_constants({"scaled", 4.0, 2.0});
    CHECK(std::abs(b.kappa - 2.0) < 1e-15);
    CHECK(std::abs(b.x - 0.5) < 1e-15);
    CHECK(std::abs(b.y - 2.0) < 1e-15);
    const auto c = kappa_constants(kSu11);
    CHECK(std::abs(c.kappa - I_unit) < 1e-15);
    CHECK(std::abs(c.x + I_unit) < 1e-15);
    CHECK(std::abs(c.y + I_unit) < 1e-15);
    CHECK(std::abs(c.x * c.kappa - 1.0) < 1e-15);
    CHECK(std::abs(c.y * c.kappa - kSu11.m) < 1e-15);
  }

  TEST_CASE("auxiliary rates at a hand-evaluated point") {
    const CoefficientSchedule s = constant_schedule(1.0, pi / 3, 0.0, 0.0, 1.0);
    const AuxiliaryState st{pi / 4, pi / 6};
    const AuxiliaryRate r = auxiliary_rhs(st, 0.5, s, kSu2);
    CHECK(r.adot == doctest::Approx(-std::sqrt(3.0) / 4.0).epsilon(1e-14));
    CHECK(r.bdot == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(auxiliary_equation_residual(st, r, 0.5, s, kSu2).norm() < 1e-12);
  }

  TEST_CASE("aligned invariant is a fixed point") {
    const CoefficientSchedule s = constant_schedule(1.3, 0.7, 0.4, 0.0, 1.0);
    const AuxiliaryState st = aligned_start(s, kSu2, 0.0);
    CHECK(st.a == doctest::Approx(0.7));
    CHECK(st.b == doctest::Approx(0.4));
    const AuxiliaryRate r = auxiliary_rhs(st, 0.0, s, kSu2);
    CHECK(std::abs(r.adot) < 1e-15);
    CHECK(std::abs(r.bdot) < 1e-15);
  }

  TEST_CASE("field along C makes b wind uniformly") {
    const CoefficientSchedule s = constant_schedule(1.5, 0.0, 0.0, 0.0, 2.0);
    const AuxiliaryTrajectory tr = solve_auxiliary(s, kSu2, pi / 4, 0.2, {0.0, 2.0, 40});
    CHECK(tr.a.back() == doctest::Approx(pi / 4).epsilon(1e-14));
    CHECK(tr.b.back() == doctest::Approx(0.2 + 3.0).epsilon(1e-13));
  }

  TEST_CASE("driven spin-1/2 trajectory matches direct propagation of the invariant") {
    // Reference from U(6) I(0) U(6)^dag, U integrated from the Schrodinger equation.
    const CoefficientSchedule s = driven_schedule();
    const AuxiliaryTrajectory tr = solve_auxiliary(s, kSu2, 0.6, 0.0, {0.0, 6.0, 1200});
    CHECK(tr.a.back() == doctest::Approx(1.331488681168442).epsilon(1e-9));
    CHECK(wrap(tr.b.back() - 1.818107680663350) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(tr.error_estimate < 1e-8);
    CHECK(tr.max_residual < 1e-8);
  }

  TEST_CASE("quadratic oscillator rapidity matches direct propagation") {
    // X = 1.2 + 0.1 sin(0.8 t), Y = 0.1, Z = 0.8 on the even ladder.
    const auto X = [](double t) { return 1.2 + 0.1 * std::sin(0.8 * t); };
    const double Y = 0.1, Z = 0.8;
    const ComplexFn alpha = [=](double t) { return cplx(0.5 * (X(t) - Z), Y); };
    const CoefficientSchedule s = schedule_from_coefficients(
        alpha, [=](double t) { return X(t) + Z; }, {}, {0.0, 4.0, 800}, true);
    const AuxiliaryState st = aligned_start(s, kSu11, 0.0);
    CHECK(st.a == doctest::Approx(0.227449536005791).epsilon(1e-12));
    CHECK(wrap(st.b + 0.463647609000806) == doctest::Approx(0.0).epsilon(1e-12));
    const AuxiliaryTrajectory tr = solve_auxiliary(s, kSu11, st.a, st.b, {0.0, 4.0, 800});
    CHECK(tr.a.back() == doctest::Approx(0.201851338926915).epsilon(1e-8));
    CHECK(wrap(tr.b.back() - 5.828519052257905) == doctest::Approx(0.0).epsilon(1e-8));
  }

  TEST_CASE("Richardson step halving shows fourth order") {
    const CoefficientSchedule s = driven_schedule();
    auto end_a = [&](int substeps) {
      return solve_auxiliary(s, kSu2, 0.6, 0.0, {0.0, 6.0, 30}, {substeps, false, 1.0}).a.back();
    };
    const double e1 = std::abs(end_a(1) - end_a(2));
    const double e2 = std::abs(end_a(2) - end_a(4));
    CHECK(std::log2(e1 / e2) == doctest::Approx(4.0).epsilon(0.1));
  }

  TEST_CASE("certification rejects a coarse grid") {
    const CoefficientSchedule s = driven_schedule();
    CHECK_THROWS_AS(solve_auxiliary(s, kSu2, 0.6, 0.0, {0.0, 6.0, 10}), AccuracyError);
  }

  TEST_CASE("starting on the coordinate pole is a singularity") {
    const CoefficientSchedule s = constant_schedule(1.0, 0.5, 0.0, 0.0, 1.0);
    CHECK_THROWS_AS(solve_auxiliary(s, kSu2, 0.0, 0.0, {0.0, 1.0, 20}), SingularityError);
    try {
      auxiliary_rhs({0.0, 0.0}, 0.25, s, kSu2);
      FAIL("expected a singularity");
    } catch (const SingularityError& e) {
      CHECK(e.time() == 0.25);
    }
  }

  TEST_CASE("invariant matrices") {
    const Representation half = su2_spin_rep(0.5);
    const auto k2 = kappa_constants(kSu2);
    CHECK((invariant_matrix(half, k2, {0.0, 0.3}) - half.C).norm() < 1e-15);
    const Matrix J1 = 0.5 * (half.A + half.B);
    CHECK((invariant_matrix(half, k2, {pi / 2, 0.0}) - J1).norm() < 1e-15);

    const Representation one = su11_one_mode_rep(10);
    const Matrix I = invariant_matrix(one, kappa_constants(kSu11), {0.3, 0.0});
    const Matrix expect = 0.5 * std::sinh(0.3) * (one.A + one.B) + std::cosh(0.3) * one.C;
    CHECK((I - expect).norm() < 1e-14);
    CHECK((I - I.adjoint()).norm() < 1e-14);
  }

  TEST_CASE("invariant residual vanishes on a certified path and reacts to a kink") {
    const Representation rep = su2_spin_rep(1.0);
    const CoefficientSchedule s = driven_schedule();
    AuxiliaryTrajectory tr = solve_auxiliary(s, kSu2, 0.6, 0.0, {0.0, 6.0, 1200});
    double worst = 0.0;
    for (std::size_t i = 0; i < tr.size(); i += 50) worst = std::max(worst, invariant_residual(rep, s, tr, i));
    CHECK(worst < 1e-8);
    CHECK(invariant_residual_at(rep, s, tr, 3.0) < 1e-8);
    tr.b[600] += 0.1;
    CHECK(invariant_residual(rep, s, tr, 600) > 1e-2);
  }

  TEST_CASE("static aligned invariant has zero residual") {
    const Representation rep = su2_spin_rep(0.5);
    const CoefficientSchedule s = constant_schedule(1.0, 0.8, 0.2, 0.0, 1.0);
    const AuxiliaryTrajectory tr = solve_auxiliary(s, kSu2, 0.8, 0.2, {0.0, 1.0, 16});
    CHECK(invariant_residual(rep, s, tr, 8) < 1e-15);
  }

  TEST_CASE("eigenvalues of C") {
    auto lambdas = [](const Representation& r) {
      std::vector<double> out;
      for (const auto& e : eigen_invariant(r)) out.push_back(e.lambda);
      return out;
    };
    const auto h = lambdas(su2_spin_rep(0.5));
    CHECK(h == std::vector<double>{0.5, -0.5});
    const auto s1 = lambdas(su2_spin_rep(1.0));
    REQUIRE(s1.size() == 3);
    CHECK(s1[0] == doctest::Approx(1.0));
    CHECK(s1[1] == doctest::Approx(0.0));
    CHECK(s1[2] == doctest::Approx(-1.0));
    const auto ladder = lambdas(su11_one_mode_rep(6));
    CHECK(ladder.back() == doctest::Approx(0.25));
    CHECK(ladder[ladder.size() - 2] == doctest::Approx(1.25));
    CHECK(ladder[ladder.size() - 3] == doctest::Approx(2.25));
    for (const auto& e : eigen_invariant(su2_spin_rep(1.5))) {
      Index first = 0;
      while (std::abs(e.vector(first)) < 1e-14) ++first;
      CHECK(std::abs(e.vector(first).imag()) < 1e-15);
      CHECK(e.vector(first).real() > 0.0);
    }
  }
}
