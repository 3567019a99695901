#include <doctest.h>

#include <cmath>

#include "imprior/datasets.hpp"
#include "imprior/logistic.hpp"
#include "imprior/mcmc.hpp"

using namespace imprior;

TEST_CASE("log likelihood at the origin and on the survival data") {
  const auto survival = builtin_survival_data();
  const Eigen::VectorXd beta0 = Eigen::VectorXd::Zero(4);
  CHECK(log_likelihood(beta0, survival.problem) ==
        doctest::Approx(-79.0 * std::log(2.0)).epsilon(1e-14));

  LogitProblem bern;
  bern.n = Eigen::VectorXd::Ones(6);
  bern.y = Eigen::VectorXd::Zero(6);
  bern.y[2] = 1;
  bern.Z = Eigen::MatrixXd::Zero(6, 0);
  CHECK(log_likelihood(Eigen::VectorXd::Zero(1), bern) ==
        doctest::Approx(-6.0 * std::log(2.0)));
}

TEST_CASE("log likelihood increases along a separating direction") {
  LogitProblem all_success;
  all_success.n = Eigen::VectorXd::Ones(4);
  all_success.y = Eigen::VectorXd::Ones(4);
  all_success.Z = Eigen::MatrixXd::Zero(4, 0);
  double prev = -1e300;
  for (double b0 = 0.0; b0 <= 30.0; b0 += 5.0) {
    Eigen::VectorXd beta(1);
    beta << b0;
    const double ll = log_likelihood(beta, all_success);
    CHECK(ll > prev);
    CHECK(ll <= 0.0);
    prev = ll;
  }
  CHECK(prev == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("log likelihood rejects dimension mismatches") {
  const auto survival = builtin_survival_data();
  CHECK_THROWS_AS(log_likelihood(Eigen::VectorXd::Zero(2), survival.problem),
                  std::invalid_argument);
}

TEST_CASE("default conjugate hyperparameters") {
  LogitProblem two;
  two.n = Eigen::VectorXd::Ones(2);
  two.y = Eigen::VectorXd::Zero(2);
  two.Z = Eigen::MatrixXd::Zero(2, 1);
  two.Z << 1, 0;
  const auto hyper = default_conjugate_hyper(two);
  CHECK(hyper.w[0] == doctest::Approx(0.5));
  CHECK(hyper.w[1] == doctest::Approx(0.5));
  CHECK(hyper.u[0] == doctest::Approx(0.25));
  CHECK(hyper.u[1] == doctest::Approx(0.25));

  const auto survival = builtin_survival_data();
  const auto sh = default_conjugate_hyper(survival.problem);
  for (int i = 0; i < 4; ++i)
    CHECK(sh.w[i] == doctest::Approx(survival.problem.n[i] / 79.0));
}

TEST_CASE("conjugate prior mode sits at the origin") {
  // coarse random search plus axis polishing never beats beta = 0
  const auto survival = builtin_survival_data();
  const auto hyper = default_conjugate_hyper(survival.problem);
  const auto design = model_design(survival.problem, ModelId{{1, 2, 3}});
  auto target = [&](const Eigen::VectorXd& beta) {
    return logit_log_likelihood(beta, hyper.u, hyper.w, design);
  };
  const double at_zero = target(Eigen::VectorXd::Zero(4));
  Pcg32 rng(RngStream{31, 7});
  Eigen::VectorXd best = Eigen::VectorXd::Zero(4);
  double best_val = at_zero;
  for (int trial = 0; trial < 2000; ++trial) {
    Eigen::VectorXd beta(4);
    for (int j = 0; j < 4; ++j) beta[j] = 8.0 * (rng.uniform01() - 0.5);
    const double v = target(beta);
    if (v > best_val) {
      best_val = v;
      best = beta;
    }
  }
  for (double step = 1.0; step > 1e-4; step *= 0.5) {
    for (int j = 0; j < 4; ++j) {
      for (const double dir : {-1.0, 1.0}) {
        Eigen::VectorXd beta = best;
        beta[j] += dir * step;
        const double v = target(beta);
        if (v > best_val) {
          best_val = v;
          best = beta;
        }
      }
    }
  }
  CHECK(best_val <= at_zero + 1e-9);
  CHECK(best.norm() < 0.05);
}

TEST_CASE("model_design validates columns and identifiability") {
  const auto survival = builtin_survival_data();
  CHECK(model_design(survival.problem, ModelId{{1, 2}}).cols() == 2);
  CHECK_THROWS_AS(model_design(survival.problem, ModelId{{4}}),
                  std::invalid_argument);
  LogitProblem collinear = survival.problem;
  collinear.Z.col(1) = collinear.Z.col(0);
  CHECK_THROWS_AS(model_design(collinear, ModelId{{1, 2}}), std::domain_error);
}

TEST_CASE("nearest allocation follows plain rounding") {
  const auto survival = builtin_survival_data();
  CHECK(nearest_allocation(8, survival.problem.n) ==
        std::vector<int>{2, 3, 2, 1});
  CHECK(nearest_allocation(16, survival.problem.n) ==
        std::vector<int>{4, 5, 4, 2});
  CHECK(nearest_allocation(4, survival.problem.n) ==
        std::vector<int>{1, 1, 1, 1});
  CHECK(nearest_allocation(0, survival.problem.n) ==
        std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("mh_sample recovers a gaussian target and is deterministic") {
  const LogDensity target = [](const Eigen::VectorXd& b) {
    return -0.5 * b.squaredNorm();
  };
  McmcConfig config;
  config.chain_length = 20000;
  config.thin = 5;
  config.burn_in = 4000;
  config.seed = RngStream{17, 1};
  const auto run1 = mh_sample(target, 2, config);
  const auto run2 = mh_sample(target, 2, config);
  CHECK(run1.draws == run2.draws);
  CHECK(run1.acceptance_rate >= config.accept_lo);
  CHECK(run1.acceptance_rate <= config.accept_hi);
  const Eigen::VectorXd mean = run1.draws.colwise().mean();
  // conservative error bound: sd / sqrt(G / 20) with sd = 1
  const double bound = 3.0 / std::sqrt(20000.0 / 20.0);
  CHECK(std::abs(mean[0]) < bound);
  CHECK(std::abs(mean[1]) < bound);
}

TEST_CASE("mh_sample hits the acceptance window on the survival prior") {
  const auto survival = builtin_survival_data();
  const auto hyper = default_conjugate_hyper(survival.problem);
  const auto design = model_design(survival.problem, ModelId{{1, 2, 3}});
  const LogDensity target = [&](const Eigen::VectorXd& beta) {
    return logit_log_likelihood(beta, hyper.u, hyper.w, design);
  };
  McmcConfig config;
  config.chain_length = 8000;
  config.thin = 4;
  config.burn_in = 5000;
  config.seed = RngStream{23, 4};
  const auto run = mh_sample(target, 4, config);
  CHECK(run.acceptance_rate >= 0.24);
  CHECK(run.acceptance_rate <= 0.28);
}

TEST_CASE("config validation") {
  McmcConfig config;
  config.chain_length = 100;
  config.burn_in = 1000;
  CHECK_THROWS_AS(config.validate(), std::domain_error);
  ConjugateHyper bad;
  bad.u = Eigen::VectorXd::Ones(2);
  bad.w = Eigen::VectorXd::Ones(2);
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
}
