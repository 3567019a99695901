#include <doctest.h>

#include <cmath>

#include "imprior/datasets.hpp"
#include "imprior/evidence.hpp"
#include "imprior/exact_rational.hpp"

using namespace imprior;

TEST_CASE("bernoulli twoe optima") {
  const auto h0 = twoe_bernoulli(1.0, 0);
  CHECK(h0.argmax_set == std::vector<int>{0, 1});
  CHECK(h0.t_star == 0);
  CHECK(twoe_bernoulli(1.0, 1).t_star == 8);
  CHECK(twoe_bernoulli(1.0, 2).t_star == 13);
}

TEST_CASE("woe symmetry and monotonicity on the minimal design") {
  for (const int h : {0, 1, 2}) {
    double prev_woe1 = -1e300;
    double prev_woe0 = 1e300;
    for (int t = 0; t <= 20; ++t) {
      const auto woe = woe_bernoulli(1.0, h, t);
      CHECK(woe[0] == woe[2]);  // bit-exact mirror symmetry
      CHECK(woe[1] >= prev_woe1 - 1e-12);
      CHECK(woe[0] <= prev_woe0 + 1e-12);
      prev_woe1 = woe[1];
      prev_woe0 = woe[0];
    }
  }
}

TEST_CASE("twoe curves are bit-reproducible") {
  const auto a = twoe_bernoulli(1.0, 1, 20);
  const auto b = twoe_bernoulli(1.0, 1, 20);
  CHECK(a.twoe == b.twoe);
  const auto c = twoe_two_props(0.5, 1, 20);
  const auto d = twoe_two_props(0.5, 1, 20);
  CHECK(c.twoe == d.twoe);
}

TEST_CASE("two-proportion twoe optima") {
  CHECK(twoe_two_props(0.5, 0).t_star == 0);
  CHECK(twoe_two_props(0.5, 1).t_star == 8);
  CHECK(twoe_two_props(0.5, 2).t_star == 14);
}

TEST_CASE("evidence curve shape at n = 12") {
  const BernoulliNull null(0.25);
  const std::vector<MomentPriorSpec> specs{MomentPriorSpec(1, 0, 0),
                                           MomentPriorSpec(1, 1, 8)};
  const auto points = evidence_curve(12, null, specs);
  REQUIRE(points.size() == 13);
  // minimum of the default-prior curve sits at y-bar = theta0
  double best = 2.0;
  long long argmin = -1;
  for (const auto& p : points) {
    CHECK(p.prob_m1[0] > 0.0);
    CHECK(p.prob_m1[0] < 1.0);
    CHECK(p.prob_m1[1] > 0.0);
    CHECK(p.prob_m1[1] < 1.0);
    if (p.prob_m1[0] < best) {
      best = p.prob_m1[0];
      argmin = p.y;
    }
  }
  CHECK(argmin == 3);
  // the nonlocal prior concedes more to the null exactly at theta0
  CHECK(points[3].prob_m1[1] < points[3].prob_m1[0]);
}

TEST_CASE("learning-rate simulation recovers the null-regime slope (smoke)") {
  const std::vector<long long> grid{200, 500, 1000, 2000, 5000};
  RateTruth truth;
  truth.theta1 = 0.25;
  truth.theta0 = 0.25;
  const auto study = learning_rate_sim(RateFamily::Bernoulli, truth, 1.0, 1, 8,
                                       grid, 300, RngStream{77, 0});
  CHECK(study.fit.regime == RateRegime::PolynomialInLogN);
  CHECK(study.fit.expected_slope == doctest::Approx(-1.5));
  CHECK(std::abs(study.fit.slope - (-1.5)) < 0.3);
  CHECK(study.fit.boot_lo < study.fit.boot_hi);
  CHECK(study.points.size() == grid.size());
}

TEST_CASE("learning-rate simulation recovers the alternative-regime constant") {
  const std::vector<long long> grid{200, 500, 1000, 2000, 4000};
  RateTruth truth;
  truth.theta1 = 0.4;
  truth.theta0 = 0.25;
  const auto study = learning_rate_sim(RateFamily::Bernoulli, truth, 1.0, 1, 8,
                                       grid, 300, RngStream{78, 0});
  CHECK(study.fit.regime == RateRegime::LinearInN);
  const double kstar = bernoulli_kl(0.4, 0.25);
  CHECK(study.fit.expected_slope == doctest::Approx(-kstar));
  CHECK(std::abs(study.fit.slope + kstar) < 0.2 * kstar);
}

TEST_CASE("two-proportion rate study runs in both regimes (smoke)") {
  const std::vector<long long> grid{50, 100, 200, 400, 800};
  {
    RateTruth truth;
    truth.theta1 = truth.theta2 = 0.25;
    const auto study = learning_rate_sim(RateFamily::TwoProps, truth, 0.5, 1, 8,
                                         grid, 120, RngStream{79, 0});
    CHECK(study.fit.expected_slope == doctest::Approx(-1.5));
    CHECK(study.fit.slope < -0.8);  // clearly decreasing in log n
  }
  {
    RateTruth truth;
    truth.theta1 = 0.25;
    truth.theta2 = 0.4;
    const auto study = learning_rate_sim(RateFamily::TwoProps, truth, 0.5, 1, 8,
                                         grid, 120, RngStream{80, 0});
    const double kstar = two_props_kl_to_null(0.25, 0.4);
    CHECK(study.fit.expected_slope == doctest::Approx(-kstar));
    CHECK(study.fit.slope < 0.0);
    CHECK(std::abs(study.fit.slope + kstar) < 0.5 * kstar);
  }
}

TEST_CASE("kl projection of the two-proportion truth") {
  // projection of independent Bernoullis onto the equal-theta diagonal sits
  // at the midpoint for equal weights
  const double k = two_props_kl_to_null(0.2, 0.6);
  const double direct = bernoulli_kl(0.2, 0.4) + bernoulli_kl(0.6, 0.4);
  CHECK(k == doctest::Approx(direct).epsilon(1e-8));
  CHECK(two_props_kl_to_null(0.3, 0.3) == doctest::Approx(0.0));
}

TEST_CASE("sensitivity analysis sign properties") {
  const std::vector<TwoPropData> tables{
      TwoPropData(3, 12, 3, 12),   // concordant
      TwoPropData(0, 15, 0, 18),   // zero occurrences
      TwoPropData(10, 12, 1, 12),  // strongly discordant
  };
  const std::vector<std::string> ids{"concordant", "zero", "discordant"};
  const std::vector<int> h_set{0, 1};
  const auto rows = sensitivity_analysis(tables, ids, h_set);
  REQUIRE(rows.size() == 6);
  // ordering by |y1/n1 - y2/n2|: concordant and zero tie at 0, discordant last
  CHECK(rows.front().frac_gap == doctest::Approx(0.0));
  CHECK(rows.back().id == "discordant");
  for (const auto& row : rows) {
    if (row.h == 0) {
      CHECK(row.t_lo == 0);
      CHECK(row.t_hi == 8);
    } else {
      CHECK(row.t_lo == 8);
      CHECK(row.t_hi == 14);
    }
    if (row.id == "concordant" || row.id == "zero") {
      CHECK(row.p0_min > 0.5);
    }
    if (row.id == "discordant") {
      CHECK(row.p0_max < 0.5);
    }
  }
  // the nonlocal prior concedes more to the null on the zero table
  double p0_h0 = 0, p0_h1 = 0;
  for (const auto& row : rows) {
    if (row.id != "zero") continue;
    if (row.h == 0) p0_h0 = row.p0_at_lo;  // t = t*(0) = 0
    if (row.h == 1) p0_h1 = row.p0_at_lo;  // t = t*(1) = 8
  }
  CHECK(p0_h1 > p0_h0);
}

TEST_CASE("cross-validation scoring identities") {
  // a certain forecast of an occurring event contributes log 1 = 0
  CHECK(cv_mean_log_score(TwoPropData(1, 1, 0, 0), 1.0, 0.5, 0.5, 0.5) == 0.0);
  // all-half forecasts give a mean score of log(1/2)
  CHECK(cv_mean_log_score(TwoPropData(3, 10, 2, 6), 0.5, 0.5, 0.5, 0.5) ==
        doctest::Approx(std::log(0.5)).epsilon(1e-14));
}

TEST_CASE("cross-validation forecasts are proper probabilities") {
  const TwoPropData table(4, 13, 7, 11);
  for (const int h : {0, 1, 2}) {
    const auto f = cv_forecasts(table, h, h == 0 ? 0 : (h == 1 ? 8 : 14));
    for (const double p : {f.th1_occ, f.th1_non, f.th2_occ, f.th2_non}) {
      CHECK(p > 0.0);
      CHECK(p < 1.0);
    }
  }
  const auto score = cross_validation(table);
  CHECK(score.s0 <= 0.0);
  CHECK(score.s1 <= 0.0);
  CHECK(score.s2 <= 0.0);
  CHECK(score.delta1 == doctest::Approx(score.s1 - score.s0));
  CHECK(score.delta2 == doctest::Approx(score.s2 - score.s0));
}

TEST_CASE("model-averaged forecast components match the exact oracle") {
  using exact::Rational;
  const TwoPropData loo(3, 12, 7, 11);
  const TwoPropHyper hyper = default_hyper(13, 11, 1, 8);
  const double got = posterior_mean_theta1_im(loo, hyper);
  // reconstruct the same hyperparameters as exact rationals
  const Rational b0(1, 2);
  const Rational b1 = b0 * 13 / 24, b2 = b0 * 11 / 24;
  const Rational want = exact::posterior_mean_theta1_im(
      3, 12, 7, 11, b0, b1, b2, 1, hyper.t1, hyper.t2);
  CHECK(got == doctest::Approx(want.get_d()).epsilon(1e-10));
}

TEST_CASE("logit twoe orderings on the survival design (reduced chains)") {
  const auto survival = builtin_survival_data();
  McmcConfig config;
  config.chain_length = 3000;
  config.thin = 3;
  config.burn_in = 2500;
  config.seed = RngStream{42, 0};
  const std::vector<int> grid{0, 4, 8, 12};
  const auto curve_h0 = twoe_logit(survival.problem, 0, grid, config);
  // h = 0: training only dilutes the comparison; t+ = 12 clearly suboptimal
  CHECK(curve_h0.twoe[3] < curve_h0.twoe[0] - 1.0);
  const auto curve_h1 = twoe_logit(survival.problem, 1, grid, config);
  CHECK(curve_h1.twoe[0] < curve_h1.twoe[1]);  // t+ = 0 is not a good choice
  const std::vector<int> grid2{4, 8};
  const auto curve_h2 = twoe_logit(survival.problem, 2, grid2, config);
  CHECK(curve_h2.twoe[0] < curve_h2.twoe[1]);  // t+ = 4 is not enough
}
