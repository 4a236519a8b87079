#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/bessel.hpp>

#include "dqd/quadrature.hpp"
#include "dqd/special.hpp"

using namespace dqd;

namespace {

/// e^{-x} I0(x) = (1/pi) \int_0^pi exp(-x (1 - cos t)) dt, integrated on
/// panels that refine geometrically towards t = 0.
double integral_i0e(double x) {
  std::vector<double> edges{0.0};
  for (double t = 1e-7; t < std::numbers::pi; t *= 1.25) edges.push_back(t);
  edges.push_back(std::numbers::pi);
  const auto rule = quadrature::composite(edges, 20);
  return rule.integrate([&](double t) { return std::exp(-2.0 * x * std::pow(std::sin(t / 2), 2)); }) /
         std::numbers::pi;
}

}  // namespace

TEST_SUITE("special") {
  TEST_CASE("reference values") {
    CHECK(i0e(0.0) == 1.0);
    struct Ref {
      double x, value;
    };
    // 40-digit arbitrary-precision values of e^{-x} I0(x).
    const Ref refs[] = {{0.5, 0.64503527044915006811},   {1.0, 0.4657596075936404365},
                        {10.0, 0.12783333716342860732},  {24.9, 0.080359332611532211307},
                        {25.0, 0.080196773547436708422}, {25.1, 0.080035197254296238736},
                        {100.0, 0.039944379299096682648}, {700.0, 0.015081295651531357587},
                        {1000.0, 0.012617240455891256586}, {1e4, 0.0039894726746047321064},
                        {1e5, 0.0012615678379767767669}};
    for (const auto& r : refs) {
      INFO("x = " << r.x);
      CHECK(std::abs(i0e(r.x) - r.value) <= 1e-12 * r.value);
    }
  }

  TEST_CASE("agrees with boost's I0 where it does not overflow") {
    for (double x = 0.0; x <= 700.0; x += 0.37) {
      const double ref = boost::math::cyl_bessel_i(0, x) * std::exp(-x);
      INFO("x = " << x);
      CHECK(std::abs(i0e(x) - ref) <= 1e-12 * ref);
    }
  }

  TEST_CASE("agrees with the integral representation up to 1e5") {
    for (double x : {0.0, 0.3, 3.0, 24.99, 25.0, 40.0, 700.0, 5000.0, 31415.9, 1e5}) {
      const double ref = integral_i0e(x);
      INFO("x = " << x);
      CHECK(std::abs(i0e(x) - ref) <= 1e-12 * ref);
    }
  }

  TEST_CASE("monotone decreasing") {
    double prev = i0e(0.0);
    for (double x = 0.01; x < 2e5; x *= 1.05) {
      const double v = i0e(x);
      CHECK(v < prev);
      prev = v;
    }
  }

  TEST_CASE("domain") {
    CHECK_THROWS_AS(i0e(-1e-300), std::domain_error);
    CHECK_THROWS_AS(i0e(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
    CHECK(i0e(std::numeric_limits<double>::infinity()) == 0.0);
  }
}
