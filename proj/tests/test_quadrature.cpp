#include <cmath>

#include "doctest.h"
#include "randrk/quadrature.hpp"

using namespace randrk;

TEST_CASE("polynomials integrate to machine accuracy") {
  const auto cubic = [](double t) { return 3.0 * t * t - 2.0 * t + 1.0; };
  CHECK(integrate(cubic, 0.0, 2.0, 1e-12) ==
        doctest::Approx(8.0 - 4.0 + 2.0).epsilon(1e-14));
  const auto deg10 = [](double t) { return std::pow(t, 10); };
  CHECK(integrate(deg10, -1.0, 1.0, 1e-12) ==
        doctest::Approx(2.0 / 11.0).epsilon(1e-13));
}

TEST_CASE("smooth transcendental integrals honor the tolerance") {
  CHECK(std::fabs(integrate([](double t) { return std::exp(t); }, 0.0, 1.0,
                            1e-11) -
                  (std::exp(1.0) - 1.0)) < 1e-11);
  // Runge's function needs genuine adaptivity.
  const auto runge = [](double t) { return 1.0 / (1.0 + 25.0 * t * t); };
  const double exact = 2.0 / 5.0 * std::atan(5.0);
  CHECK(std::fabs(integrate(runge, -1.0, 1.0, 1e-12) - exact) < 1e-12);
}

TEST_CASE("oscillatory integrand converges under subdivision") {
  const auto osc = [](double t) { return std::cos(40.0 * t); };
  CHECK(integrate(osc, 0.0, 3.0, 1e-11) ==
        doctest::Approx(std::sin(120.0) / 40.0).epsilon(1e-10));
}

TEST_CASE("logarithmic endpoint singularities are handled on both sides") {
  const auto left = [](double t) { return std::log(t); };
  CHECK(std::fabs(integrate_endpoint_singular(left, 0.0, 1.0, true, 1e-10) -
                  (-1.0)) < 1e-9);
  const auto right = [](double t) { return std::log(1.0 - t); };
  CHECK(std::fabs(integrate_endpoint_singular(right, 0.0, 1.0, false, 1e-10) -
                  (-1.0)) < 1e-9);
  // Squared log: integral of (ln t)^2 over [0,1] is 2.
  const auto sq = [](double t) { const double l = std::log(t); return l * l; };
  CHECK(std::fabs(integrate_endpoint_singular(sq, 0.0, 1.0, true, 1e-10) -
                  2.0) < 1e-8);
}

TEST_CASE("non-integrable singularities raise with a best estimate") {
  const auto pole = [](double t) { return 1.0 / t; };
  try {
    integrate(pole, 0.0, 1.0, 1e-10);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(std::isfinite(e.estimate));
    CHECK(e.error_estimate > 0.0);
  }
}
