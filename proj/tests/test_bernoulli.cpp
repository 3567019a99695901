#include <doctest.h>

#include <cmath>
#include <vector>

#include "imprior/bernoulli.hpp"
#include "imprior/exact_rational.hpp"
#include "imprior/quadrature.hpp"
#include "imprior/special.hpp"

using namespace imprior;
using exact::Rational;

namespace {

// independent oracle: E[(theta-theta0)^{2h}] under Beta(a1,a2) by quadrature
double k_oracle(double a1, double a2, int h, double theta0, double tol) {
  const double lb = log_beta(a1, a2);
  return integrate01(
      [&](double x, double cx) {
        return std::pow(x - theta0, 2 * h) *
               std::exp((a1 - 1.0) * std::log(x) + (a2 - 1.0) * std::log(cx) -
                        lb);
      },
      tol);
}

}  // namespace

TEST_CASE("k_const basic values") {
  CHECK(k_const(1.0, 1.0, 0, 0.25) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(k_const(1.0, 1.0, 1, 0.5) ==
        doctest::Approx(1.0 / 12.0).epsilon(1e-13));
  // frozen from the quadrature oracle; also Var + (mean - 1/4)^2 = 9/80
  const double oracle = k_oracle(2.0, 2.0, 1, 0.25, 1e-12);
  CHECK(oracle == doctest::Approx(0.1125).epsilon(1e-10));
  CHECK(k_const(2.0, 2.0, 1, 0.25) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("k_const domain errors") {
  CHECK_THROWS_AS(k_const(0.0, 1.0, 1, 0.5), std::domain_error);
  CHECK_THROWS_AS(k_const(1.0, 1.0, 1, 0.0), std::domain_error);
  CHECK_THROWS_AS(k_const(1.0, 1.0, 1, 1.0), std::domain_error);
  CHECK_THROWS_AS(k_const(1.0, 1.0, -1, 0.5), std::domain_error);
}

TEST_CASE("k_const escalates deep cancellation and quadrature rescues it") {
  // h = 2 with huge symmetric shapes at theta0 = mean cancels catastrophically
  const double a = 1e4;
  CHECK_THROWS_AS(k_const(a, a, 2, 0.5, KConstPolicy::Strict),
                  CancellationError);
  const double rescued = k_const(a, a, 2, 0.5, KConstPolicy::QuadratureFallback);
  // E[(theta-1/2)^4] ~ 3 Var^2 for the nearly-normal Beta
  const double var = 0.25 / (2.0 * a + 1.0);
  CHECK(rescued == doctest::Approx(3.0 * var * var).epsilon(1e-3));
}

TEST_CASE("k_const agrees with the exact rational oracle") {
  for (const int h : {1, 2}) {
    for (const double b : {1.0, 2.0}) {
      const Rational exact_val =
          exact::k_const(Rational(b), Rational(b + 1), h, Rational(1, 4));
      CHECK(k_const(b, b + 1, h, 0.25) ==
            doctest::Approx(exact_val.get_d()).epsilon(1e-12));
    }
  }
}

TEST_CASE("intrinsic prior density reference points") {
  // t = 1 at theta0 = 1/2 reproduces the uniform prior
  CHECK(intrinsic_prior_density(0.7, BernoulliNull(0.5),
                                MomentPriorSpec(1.0, 0, 1)) ==
        doctest::Approx(1.0).epsilon(1e-13));
  // default prior (t = 0) with b = 1 is uniform
  CHECK(intrinsic_prior_density(0.3, BernoulliNull(0.25),
                                MomentPriorSpec(1.0, 0, 0)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  // mixture value against the exact rational evaluation
  const double got = intrinsic_prior_density(0.25, BernoulliNull(0.25),
                                             MomentPriorSpec(1.0, 0, 8));
  const Rational want =
      exact::intrinsic_prior_density_int(Rational(1, 4), 1, 8, Rational(1, 4));
  CHECK(got == doctest::Approx(want.get_d()).epsilon(1e-12));
  CHECK_THROWS_AS(intrinsic_prior_density(0.5, BernoulliNull(0.5),
                                          MomentPriorSpec(1.0, 1, 1)),
                  std::invalid_argument);
}

TEST_CASE("intrinsic moment prior density vanishes only at the null") {
  const BernoulliNull null(0.25);
  const MomentPriorSpec spec(1.0, 1, 8);
  CHECK(intrinsic_moment_prior_density(0.25, null, spec) == 0.0);
  for (const double theta : {0.01, 0.1, 0.24, 0.26, 0.5, 0.9, 0.99})
    CHECK(intrinsic_moment_prior_density(theta, null, spec) > 0.0);
  // reduces to the uniform default at (h=0, t=0)
  CHECK(intrinsic_moment_prior_density(0.5, null, MomentPriorSpec(1.0, 0, 0)) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("intrinsic moment prior density integrates to one") {
  for (const int h : {0, 1, 2}) {
    for (const int t : {0, 5, 13}) {
      for (const double b : {0.5, 1.0}) {
        const BernoulliNull null(0.25);
        const MomentPriorSpec spec(b, h, t);
        const double mass = integrate01(
            [&](double x, double cx) {
              return intrinsic_moment_prior_density(x, cx, null, spec);
            },
            1e-10);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("bf10_moment reference values") {
  const BernoulliNull half(0.5);
  CHECK(bf10_moment(BinData(1, 2), 1.0, 1.0, 0, half) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(bf10_moment(BinData(0, 0), 2.5, 1.5, 0, half) == 1.0);
  const Rational want = exact::bf10_moment(2, 2, Rational(1), Rational(1), 1,
                                           Rational(1, 2));
  CHECK(want == Rational(8, 5));  // factorial expansion gives exactly 8/5
  CHECK(bf10_moment(BinData(2, 2), 1.0, 1.0, 1, half) ==
        doctest::Approx(want.get_d()).epsilon(1e-12));
}

TEST_CASE("bf10_intrinsic_moment reductions and argmin shape") {
  const BernoulliNull half(0.5);
  CHECK(bf10_intrinsic_moment(BinData(1, 2), half, MomentPriorSpec(1, 0, 0)) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  // the t = 1 intrinsic prior at theta0 = 1/2 is uniform, so values match t = 0
  CHECK(bf10_intrinsic_moment(BinData(1, 2), half, MomentPriorSpec(1, 0, 1)) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // evidence curve at n = 12, theta0 = 1/4 dips exactly at y = 3
  const BernoulliNull quarter(0.25);
  const MomentPriorSpec spec(1.0, 1, 8);
  double best = 1e300;
  long long argmin = -1;
  for (long long y = 0; y <= 12; ++y) {
    const double bf = bf10_intrinsic_moment(BinData(y, 12), quarter, spec);
    if (bf < best) {
      best = bf;
      argmin = y;
    }
  }
  CHECK(argmin == 3);
}

TEST_CASE("reduction chain to the plain conjugate Bayes factor") {
  for (const double b : {0.5, 1.0, 2.0}) {
    for (long long y = 0; y <= 9; ++y) {
      const BernoulliNull null(0.25);
      const double got = log_bf10_intrinsic_moment(BinData(y, 9), null,
                                                   MomentPriorSpec(b, 0, 0));
      const double want = log_beta(b + y, b + 9 - y) - log_beta(b, b) -
                          y * std::log(0.25) - (9 - y) * std::log(0.75);
      CHECK(std::abs(got - want) < 1e-12);
    }
  }
}

TEST_CASE("symmetry at theta0 = 1/2") {
  for (const int h : {0, 1, 2}) {
    for (const int t : {0, 4, 9}) {
      const BernoulliNull half(0.5);
      const MomentPriorSpec spec(1.0, h, t);
      for (long long y = 0; y <= 6; ++y) {
        const double a = log_bf10_intrinsic_moment(BinData(y, 12), half, spec);
        const double b = log_bf10_intrinsic_moment(BinData(12 - y, 12), half, spec);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
      }
    }
  }
}

TEST_CASE("exact rational oracle equivalence on a spot grid") {
  const Rational theta0(1, 4);
  for (const int h : {0, 1, 2}) {
    for (const int t : {0, 3, 8}) {
      for (const long long y : {0LL, 5LL, 12LL}) {
        const double got = bf10_intrinsic_moment(
            BinData(y, 12), BernoulliNull(0.25), MomentPriorSpec(2.0, h, t));
        const Rational want =
            exact::bf10_intrinsic_moment(y, 12, Rational(2), h, t, theta0);
        CHECK(std::abs(got - want.get_d()) <= 1e-10 * want.get_d());
      }
    }
  }
}

TEST_CASE("posterior probability map") {
  CHECK(posterior_prob_m1(1.0) == doctest::Approx(0.5));
  CHECK(posterior_prob_m1(2.0 / 3.0) == doctest::Approx(0.4));
  CHECK(posterior_prob_m1(3.0) == doctest::Approx(0.75));
  CHECK_THROWS_AS(posterior_prob_m1(0.0), std::domain_error);
  CHECK(posterior_prob_m1_from_log(std::log(3.0)) == doctest::Approx(0.75));
  CHECK(posterior_prob_m1_from_log(-800.0) ==
        doctest::Approx(0.0).epsilon(1e-300));
}

TEST_CASE("degenerate inputs") {
  CHECK_THROWS_AS(BernoulliNull(0.0), std::domain_error);
  CHECK_THROWS_AS(BernoulliNull(1.0), std::domain_error);
  CHECK_THROWS_AS(BinData(3, 2), std::domain_error);
  CHECK_THROWS_AS(MomentPriorSpec(0.0, 1, 1), std::domain_error);
  CHECK_THROWS_AS(MomentPriorSpec(1.0, -1, 0), std::domain_error);
  CHECK(bf10_intrinsic_moment(BinData(0, 0), BernoulliNull(0.25),
                              MomentPriorSpec(1.0, 1, 8)) == 1.0);
}
