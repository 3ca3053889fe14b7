#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lrinv/numerics.hpp"

using namespace lrinv;

TEST_SUITE("numerics") {
  TEST_CASE("cumulative Simpson integrates cubics exactly at every index") {
    const double h = 0.1;
    std::vector<double> f;
    for (int i = 0; i <= 9; ++i) {
      const double t = i * h;
      f.push_back(1.0 - 2.0 * t + 3.0 * t * t * t);
    }
    const auto F = cumulative_simpson(f, h);
    REQUIRE(F.size() == f.size());
    CHECK(F[0] == 0.0);
    for (int i = 1; i <= 9; ++i) {
      const double t = i * h;
      // t = 0.1 uses the three-point panel, which is exact only up to quadratics.
      const double exact = t - t * t + 0.75 * t * t * t * t;
      CHECK(F[i] == doctest::Approx(exact).epsilon(i == 1 ? 1e-4 : 1e-13));
    }
  }

  TEST_CASE("cumulative Simpson converges at fourth order on a smooth integrand") {
    auto err = [](int n) {
      const double h = std::numbers::pi / n;
      std::vector<double> f(n + 1);
      for (int i = 0; i <= n; ++i) f[i] = std::sin(i * h);
      return std::abs(cumulative_simpson(f, h).back() - 2.0);
    };
    const double ratio = std::log2(err(16) / err(32));
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
  }

  TEST_CASE("cubic spline reproduces a line and its slope") {
    CubicSpline s({0.0, 1.0, 2.5, 4.0}, {1.0, 3.0, 6.0, 9.0});
    CHECK(s(1.7) == doctest::Approx(4.4));
    CHECK(s.derivative(3.1) == doctest::Approx(2.0));
    CHECK_THROWS_AS(CubicSpline({0.0, 0.0, 1.0}, {1.0, 2.0, 3.0}), std::exception);
  }

  TEST_CASE("rk4 step has local error O(h^5) on y' = y") {
    auto rhs = [](double, const Eigen::Vector2d& y) { return Eigen::Vector2d(y); };
    const Eigen::Vector2d y0(1.0, 2.0);
    const double e1 = std::abs(rk4_step(rhs, 0.0, y0, 0.1)(0) - std::exp(0.1));
    const double e2 = std::abs(rk4_step(rhs, 0.0, y0, 0.05)(0) - std::exp(0.05));
    CHECK(std::log2(e1 / e2) == doctest::Approx(5.0).epsilon(0.03));
  }

  TEST_CASE("expm of a Pauli rotation") {
    Matrix sx(2, 2);
    sx << 0.0, 1.0, 1.0, 0.0;
    const Matrix U = expm(Matrix(-I_unit * 0.3 * sx));
    CHECK(std::abs(U(0, 0) - std::cos(0.3)) < 1e-15);
    CHECK(std::abs(U(0, 1) - (-I_unit * std::sin(0.3))) < 1e-15);
  }

  TEST_CASE("unwrap removes 2 pi jumps") {
    const std::vector<double> raw{3.0, -3.1, -2.9, 3.0};
    const auto u = unwrap(raw);
    CHECK(u[1] == doctest::Approx(-3.1 + 2 * std::numbers::pi));
    CHECK(u[2] == doctest::Approx(-2.9 + 2 * std::numbers::pi));
    CHECK(u[3] == doctest::Approx(3.0));
  }

  TEST_CASE("hermiticity helpers and commutator") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 1) = 1.0;
    CHECK(is_hermitian(Matrix(a + a.adjoint()), 1e-14));
    CHECK_FALSE(is_hermitian(a, 1e-14));
    CHECK(is_anti_hermitian(Matrix(a - a.adjoint()), 1e-14));
    const Matrix c = commutator(a, a.adjoint());
    CHECK(c(0, 0).real() == 1.0);
    CHECK(c(1, 1).real() == -1.0);
    CHECK(frobenius_block(c, 1) == 1.0);
  }
}
