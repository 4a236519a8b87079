#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "dqd/potential.hpp"

using namespace dqd;

TEST_SUITE("potential") {
  TEST_CASE("table values at the well bottoms and the barrier") {
    DeviceParams p;
    p.xi_mev = 0.0;
    const double c = derive_constants(p).barrier_height_mev;
    CHECK(eval_potential(-p.a_nm, 0.0, p) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(eval_potential(0.0, 0.0, p) == doctest::Approx(c).epsilon(1e-14));
    p.xi_mev = 1.3;
    CHECK(eval_potential(0.0, 0.0, p) == doctest::Approx(c + 1.3).epsilon(1e-14));
  }

  TEST_CASE("coefficients follow the quartic construction") {
    DeviceParams p;
    p.epsilon_mev = 0.3;
    const ConfinementPotential v(p);
    const auto d = derive_constants(p);
    const double a = p.a_nm, k = a * a * d.curvature_mev_nm2, c = d.barrier_height_mev;
    const auto& l = v.left().coefficients;
    const auto& r = v.right().coefficients;
    CHECK(v.left().center_nm == -a);
    CHECK(v.right().center_nm == a);
    CHECK(l[0] == doctest::Approx(-p.mu1()));
    CHECK(r[0] == doctest::Approx(-p.mu2()));
    CHECK(l[3] == doctest::Approx((4 * c + 4 * p.mu1() - k) / (a * a * a)));
    CHECK(r[3] == doctest::Approx(-(4 * c + 4 * p.mu2() - k) / (a * a * a)));
    CHECK(l[4] == doctest::Approx((-6 * c - 6 * p.mu1() + k) / (2 * a * a * a * a)));
    CHECK(r[4] == doctest::Approx((-6 * c - 6 * p.mu2() + k) / (2 * a * a * a * a)));
  }

  TEST_CASE("six construction constraints at defaults") {
    const auto rep = potential_constraint_report(DeviceParams{});
    CHECK(rep.items.size() >= 6);
    CHECK(rep.max_relative_residual < 1e-12);
  }

  TEST_CASE("constraints on random configurations") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 50; ++k) {
      DeviceParams p;
      p.epsilon_mev = 2.0 * u(rng) - 1.0;
      p.xi_mev = 1.5 * u(rng);
      p.a_nm = 50.0 + 250.0 * u(rng);
      CHECK(potential_constraint_report(p).max_relative_residual < 1e-12);
    }
  }

  TEST_CASE("detuning sign convention") {
    DeviceParams p;
    p.xi_mev = 0.0;
    p.epsilon_mev = 0.5;
    const ConfinementPotential v(p);
    CHECK(v.longitudinal(-p.a_nm) == doctest::Approx(-0.25));
    CHECK(v.longitudinal(p.a_nm) == doctest::Approx(0.25));
  }

  TEST_CASE("one-sided curvature at x = 0 vanishes for level wells") {
    DeviceParams p;
    const auto rep = potential_constraint_report(p);
    CHECK(std::abs(rep.curvature_at_barrier_left) < 1e-18);
    CHECK(std::abs(rep.curvature_at_barrier_right) < 1e-18);
  }

  TEST_CASE("continuity at x = 0 for all y") {
    DeviceParams p;
    p.epsilon_mev = 0.7;
    for (double y : {-200.0, 0.0, 35.0, 150.0}) {
      const double below = eval_potential(-1e-9, y, p);
      const double above = eval_potential(0.0, y, p);
      CHECK(below == doctest::Approx(above).epsilon(1e-12));
    }
  }

  TEST_CASE("mirror symmetry at zero detuning") {
    DeviceParams p;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-400.0, 400.0);
    for (int k = 0; k < 200; ++k) {
      const double x = u(rng), y = u(rng);
      CHECK(eval_potential(x, y, p) == doctest::Approx(eval_potential(-x, y, p)).epsilon(1e-13));
    }
  }

  TEST_CASE("harmonic limit near each minimum") {
    for (double eps : {0.0, 0.01}) {
      DeviceParams p;
      p.epsilon_mev = eps;
      const ConfinementPotential v(p);
      const auto d = derive_constants(p);
      const double a = p.a_nm;
      const double tol = 1e-3 * d.curvature_mev_nm2 * a * a / 2.0;
      for (int side : {-1, 1}) {
        const double mu = side < 0 ? p.mu1() : p.mu2();
        for (int k = -10; k <= 10; ++k) {
          const double dx = 0.005 * a * k;
          const double x = side * a + dx;
          const double harmonic = d.curvature_mev_nm2 * dx * dx / 2.0 - mu + v.barrier(x, 0.0);
          CHECK(std::abs(v(x, 0.0) - harmonic) <= tol);
        }
      }
    }
  }

  TEST_CASE("detuning enters linearly") {
    DeviceParams p0, p1, p2;
    p1.epsilon_mev = 0.3;
    p2.epsilon_mev = 0.6;
    for (double x : {-250.0, -100.0, -3.0, 0.0, 42.0, 180.0}) {
      const double d1 = eval_potential(x, 20.0, p1) - eval_potential(x, 20.0, p0);
      const double d2 = eval_potential(x, 20.0, p2) - eval_potential(x, 20.0, p0);
      CHECK(d2 == doctest::Approx(2.0 * d1).epsilon(1e-10));
    }
  }

  TEST_CASE("analytic derivatives match finite differences") {
    DeviceParams p;
    p.epsilon_mev = 0.2;
    const ConfinementPotential v(p);
    const auto& piece = v.right();
    const double x = 73.0, h = 1e-3;
    CHECK(piece.derivative(x, 1) ==
          doctest::Approx((piece.value(x + h) - piece.value(x - h)) / (2 * h)).epsilon(1e-7));
    CHECK(piece.derivative(x, 4) == doctest::Approx(24.0 * piece.coefficients[4]));
  }
}
