#include <doctest.h>

#include <cmath>
#include <vector>

#include "imprior/exact_rational.hpp"
#include "imprior/quadrature.hpp"
#include "imprior/special.hpp"
#include "imprior/two_proportions.hpp"

using namespace imprior;
using exact::Rational;

TEST_CASE("k_const2 reference values") {
  CHECK(k_const2(BetaMatrix(3.0, 1.0, 0.5, 2.0), 0) == 1.0);
  // independent uniforms: E(theta1-theta2)^2 = 2/12
  CHECK(k_const2(BetaMatrix(1, 1, 1, 1), 1) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  const BetaMatrix quarter(0.25, 0.25, 0.25, 0.25);
  const double quad = std::exp(log_k_const2_quadrature(quarter, 1, 1e-9));
  CHECK(k_const2(quarter, 1) == doctest::Approx(quad).epsilon(1e-9));
}

TEST_CASE("k_const2 matches the 2-D quadrature oracle on a grid") {
  int checked = 0;
  for (const double a11 : {0.25, 1.0, 3.0}) {
    for (const double a12 : {0.5, 2.0}) {
      for (const double a21 : {0.25, 1.5}) {
        for (const int h : {1, 2}) {
          const BetaMatrix a(a11, a12, a21, 0.75);
          const double quad = std::exp(log_k_const2_quadrature(a, h, 1e-9));
          CHECK(k_const2(a, h, KConstPolicy::QuadratureFallback) ==
                doctest::Approx(quad).epsilon(1e-8));
          ++checked;
        }
      }
    }
  }
  CHECK(checked == 24);
}

TEST_CASE("m0_training values and normalization") {
  CHECK(m0_training(0, 0, 0, 0, 0.5) == doctest::Approx(1.0));
  // C(1,0) C(1,0) B(1/2,5/2)/B(1/2,1/2) = 3/8
  CHECK(m0_training(0, 0, 1, 1, 0.5) == doctest::Approx(0.375).epsilon(1e-13));
  const Rational exact_w = exact::m0_training(0, 0, 1, 1, Rational(1, 2));
  CHECK(exact_w == Rational(3, 8));
  for (const double b0 : {0.5, 1.0}) {
    for (const int t1 : {0, 2, 7, 20}) {
      for (const int t2 : {0, 3, 20}) {
        std::vector<double> logw;
        for (int x1 = 0; x1 <= t1; ++x1)
          for (int x2 = 0; x2 <= t2; ++x2)
            logw.push_back(log_m0_training(x1, x2, t1, t2, b0));
        CHECK(std::abs(log_sum_exp(logw)) < 1e-12);
      }
    }
  }
}

TEST_CASE("bf10_moment2 reference values") {
  CHECK(bf10_moment2(TwoPropData(0, 0, 0, 0), BetaMatrix(1, 1, 1, 1), 0, 0.5) ==
        1.0);
  // direct Gamma-function assembly of the h = 0 display
  const double want = std::exp(
      log_beta(0.5, 0.5) + log_beta(0.25, 1.25) + log_beta(1.25, 0.25) -
      2.0 * log_beta(0.25, 0.25) - log_beta(1.5, 1.5));
  CHECK(bf10_moment2(TwoPropData(0, 1, 1, 1),
                     BetaMatrix(0.25, 0.25, 0.25, 0.25), 0, 0.5) ==
        doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("bf10_moment2 h=1 against the 2-D quadrature marginal") {
  // m1 under the moment prior by quadrature, m0 in closed form
  const TwoPropData d(0, 1, 1, 1);
  const BetaMatrix a(0.25, 0.25, 0.25, 0.25);
  const double k = k_const2(a, 1);
  const double lb1 = log_beta(a.a11, a.a12), lb2 = log_beta(a.a21, a.a22);
  const double m1 = integrate01_2d(
      [&](double t1, double c1, double t2, double c2) {
        const double prior =
            std::exp((a.a11 - 1.0) * std::log(t1) + (a.a12 - 1.0) * std::log(c1) -
                     lb1 + (a.a21 - 1.0) * std::log(t2) +
                     (a.a22 - 1.0) * std::log(c2) - lb2);
        const double tilt = (t1 - t2) * (t1 - t2) / k;
        const double like = c1 * t2;  // Bin(0|1,t1) Bin(1|1,t2)
        return prior * tilt * like;
      },
      1e-9);
  const double m0 = std::exp(log_beta(0.5 + 1, 0.5 + 1) - log_beta(0.5, 0.5));
  CHECK(bf10_moment2(d, a, 1, 0.5) == doctest::Approx(m1 / m0).epsilon(1e-8));
}

TEST_CASE("bf10_intrinsic_moment2 reduction and symmetry") {
  const TwoPropData d(3, 9, 5, 7);
  // t = (0,0), h = 0 reduces to the conjugate Bayes factor
  const TwoPropHyper plain(0.5, 0.25, 0.25, 0, 0, 0);
  CHECK(log_bf10_intrinsic_moment2(d, plain) ==
        doctest::Approx(log_bf10_base2(d, BetaMatrix(0.25, 0.25, 0.25, 0.25),
                                       0.5))
            .epsilon(1e-14));
  for (const int h : {0, 1, 2}) {
    const TwoPropHyper hyper = default_hyper(9, 7, h, 6);
    const double ab = log_bf10_intrinsic_moment2(d, hyper);
    const double ba = log_bf10_intrinsic_moment2(d.swapped(), hyper.swapped());
    CHECK(std::abs(ab - ba) <= 1e-12 * std::max(1.0, std::abs(ab)));
  }
}

TEST_CASE("bf10_intrinsic_moment2 matches the exact rational oracle") {
  const Rational b0(1, 2), b1(1, 4), b2(1, 4);
  for (const int h : {0, 1, 2}) {
    for (const int t1 : {0, 2, 4}) {
      const TwoPropData d(2, 10, 7, 10);
      const TwoPropHyper hyper(0.5, 0.25, 0.25, h, t1, t1);
      const double got = bf10_intrinsic_moment2(d, hyper);
      const Rational want =
          exact::bf10_intrinsic_moment2(2, 10, 7, 10, b0, b1, b2, h, t1, t1);
      CHECK(std::abs(got - want.get_d()) <= 1e-10 * want.get_d());
    }
  }
}

TEST_CASE("posterior probability of M1 is minimized on the diagonal") {
  for (const int h : {0, 1, 2}) {
    for (const int tp : {0, 8, 14}) {
      const TwoPropHyper hyper = default_hyper(12, 12, h, tp);
      double diag = 0.0;
      for (long long y1 = 0; y1 <= 12; ++y1) {
        const long long y2 = 12 - y1;  // fixed total
        const double p1 = posterior_prob_m1_from_log(log_bf10_intrinsic_moment2(
            TwoPropData(y1, 12, y2, 12), hyper,
            KConstPolicy::QuadratureFallback));
        if (y1 == 6) diag = p1;
      }
      for (long long y1 = 0; y1 <= 12; ++y1) {
        const long long y2 = 12 - y1;
        const double p1 = posterior_prob_m1_from_log(log_bf10_intrinsic_moment2(
            TwoPropData(y1, 12, y2, 12), hyper,
            KConstPolicy::QuadratureFallback));
        CHECK(p1 >= diag - 1e-12);
      }
    }
  }
}

TEST_CASE("nonlocal contours sit closer to the diagonal") {
  // along the ray y = (6+d, 6-d): every displayed probability threshold is
  // crossed at least as early under the nonlocal prior, strictly earlier for
  // the 0.5 contour, while the diagonal itself carries less evidence
  const TwoPropHyper local = default_hyper(12, 12, 0, 0);
  const TwoPropHyper nonlocal = default_hyper(12, 12, 1, 8);
  auto prob = [&](const TwoPropHyper& hy, long long d) {
    return posterior_prob_m1_from_log(log_bf10_intrinsic_moment2(
        TwoPropData(6 + d, 12, 6 - d, 12), hy, KConstPolicy::QuadratureFallback));
  };
  CHECK(prob(nonlocal, 0) < prob(local, 0));
  auto first_crossing = [&](const TwoPropHyper& hy, double threshold) {
    for (long long d = 0; d <= 6; ++d)
      if (prob(hy, d) >= threshold) return d;
    return 7LL;
  };
  for (const double c : {0.25, 0.5, 0.75, 0.95, 0.99})
    CHECK(first_crossing(nonlocal, c) <= first_crossing(local, c));
  CHECK(prob(nonlocal, 2) > prob(local, 2));
}

TEST_CASE("largest remainder allocation") {
  {
    const double w[2] = {10, 10};
    const auto t = largest_remainder_allocation(8, w);
    CHECK(t == std::vector<int>{4, 4});
  }
  {
    const double w[2] = {30, 10};
    const auto t = largest_remainder_allocation(8, w);
    CHECK(t == std::vector<int>{6, 2});
  }
  {
    const double w[2] = {21, 26};
    const auto t = largest_remainder_allocation(8, w);
    CHECK(t == std::vector<int>{4, 4});
  }
}

TEST_CASE("largest remainder minimizes L1 distance to exact shares") {
  // enumeration oracle: no other split with the same total is closer
  Pcg32 rng(RngStream{5, 5});
  for (int trial = 0; trial < 100; ++trial) {
    const double n1 = 1 + std::floor(rng.uniform01() * 40);
    const double n2 = 1 + std::floor(rng.uniform01() * 40);
    const int total = static_cast<int>(rng.uniform01() * 20);
    const double w[2] = {n1, n2};
    const auto t = largest_remainder_allocation(total, w);
    REQUIRE(t[0] + t[1] == total);
    const double q1 = total * n1 / (n1 + n2);
    const double best = std::abs(t[0] - q1) + std::abs(t[1] - (total - q1));
    for (int k = 0; k <= total; ++k) {
      const double alt = std::abs(k - q1) + std::abs((total - k) - (total - q1));
      CHECK(best <= alt + 1e-12);
    }
  }
}

TEST_CASE("default_hyper follows the recommended configuration") {
  const auto hy = default_hyper(10, 10, 1, 8);
  CHECK(hy.b0 == doctest::Approx(0.5));
  CHECK(hy.b1 == doctest::Approx(0.25));
  CHECK(hy.b2 == doctest::Approx(0.25));
  CHECK(hy.t1 == 4);
  CHECK(hy.t2 == 4);
  CHECK(hy.b1 + hy.b2 == doctest::Approx(hy.b0));
  const auto skew = default_hyper(30, 10, 1, 8);
  CHECK(skew.t1 == 6);
  CHECK(skew.t2 == 2);
  CHECK(skew.b1 == doctest::Approx(0.375));
  CHECK_THROWS_AS(default_hyper(0, 10, 1, 8), std::domain_error);
}

TEST_CASE("prior correlation: independent, recommended, and uncentered cases") {
  {
    const auto res =
        prior_correlation(TwoPropHyper(0.5, 0.25, 0.25, 0, 0, 0), 40000,
                          RngStream{2024, 0});
    CHECK(std::abs(res.r) < 0.02);
    CHECK(res.expected_acceptance == doctest::Approx(1.0));
  }
  {
    const auto res = prior_correlation(default_hyper(10, 10, 1, 8), 40000,
                                       RngStream{2024, 1});
    CHECK(std::abs(res.r) < 0.05);
    CHECK_FALSE(res.low_acceptance_warning);
  }
  {
    const auto res =
        prior_correlation(TwoPropHyper(0.5, 0.25, 0.25, 1, 0, 0), 40000,
                          RngStream{2024, 2});
    CHECK(res.r < -0.05);
  }
  CHECK_THROWS_AS(prior_correlation(default_hyper(4, 4, 1, 4), 10,
                                    RngStream{1, 1}),
                  std::domain_error);
}

TEST_CASE("posterior mean under the intrinsic moment prior vs exact oracle") {
  const TwoPropData d(4, 11, 2, 9);
  for (const int h : {0, 1, 2}) {
    const TwoPropHyper hyper(0.5, 0.25, 0.25, h, 3, 2);
    const double got = posterior_mean_theta1_im(d, hyper);
    const Rational want = exact::posterior_mean_theta1_im(
        4, 11, 2, 9, Rational(1, 2), Rational(1, 4), Rational(1, 4), h, 3, 2);
    CHECK(got == doctest::Approx(want.get_d()).epsilon(1e-10));
  }
}
