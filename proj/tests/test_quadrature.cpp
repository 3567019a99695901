#include <doctest.h>

#include <cmath>

#include "imprior/quadrature.hpp"
#include "imprior/special.hpp"

using namespace imprior;

TEST_CASE("tanh-sinh integrates smooth functions") {
  CHECK(integrate01([](double, double) { return 1.0; }, 1e-12) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate01([](double x, double) { return x * x; }, 1e-12) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("tanh-sinh handles endpoint singularities") {
  CHECK(integrate01([](double x, double) { return 1.0 / std::sqrt(x); },
                    1e-11) == doctest::Approx(2.0).epsilon(1e-10));
  // Beta(1/4, 1/4) density integrates to one despite both endpoints
  const double lb = log_beta(0.25, 0.25);
  CHECK(integrate01(
            [&](double x, double cx) {
              return std::exp(-0.75 * std::log(x) - 0.75 * std::log(cx) - lb);
            },
            1e-10) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("tanh-sinh resolves sharply peaked beta densities") {
  const double a = 5000.0, b = 2000.0;
  const double lb = log_beta(a, b);
  CHECK(integrate01(
            [&](double x, double cx) {
              return std::exp((a - 1.0) * std::log(x) +
                              (b - 1.0) * std::log(cx) - lb);
            },
            1e-10) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("2-D tanh-sinh tensor rule") {
  CHECK(integrate01_2d([](double, double, double, double) { return 1.0; },
                       1e-10) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(integrate01_2d(
            [](double x, double, double y, double) { return x * y; }, 1e-10) ==
        doctest::Approx(0.25).epsilon(1e-9));
  const double lb = log_beta(0.25, 0.25);
  CHECK(integrate01_2d(
            [&](double x, double cx, double y, double cy) {
              return std::exp(-0.75 * (std::log(x) + std::log(cx) +
                                       std::log(y) + std::log(cy)) -
                              2.0 * lb);
            },
            1e-9) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("adaptive simpson on an interval") {
  CHECK(integrate_interval([](double x) { return std::sin(x); }, 0.0, M_PI,
                           1e-12) == doctest::Approx(2.0).epsilon(1e-11));
  // narrow gaussian bump away from panel boundaries
  const double mu = 0.3141, s = 1e-3;
  const double val = integrate_interval(
      [&](double x) {
        const double z = (x - mu) / s;
        return std::exp(-0.5 * z * z);
      },
      0.0, 1.0, 1e-14);
  CHECK(val == doctest::Approx(s * std::sqrt(2.0 * M_PI)).epsilon(1e-9));
}
