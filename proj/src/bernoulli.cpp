#include "imprior/bernoulli.hpp"

#include <cmath>
#include <vector>

#include "imprior/quadrature.hpp"
#include "imprior/signed_log.hpp"
#include "imprior/special.hpp"

namespace imprior {

namespace {

constexpr double kEps = 2.220446049250313e-16;
constexpr double kEscalationThreshold = 1e-8;

}  // namespace

double log_k_const_quadrature(double a1, double a2, int h, double theta0) {
  const double lb = log_beta(a1, a2);
  if (a1 >= 2.0 && a2 >= 2.0 && a1 + a2 > 200.0) {
    // sharply peaked, no endpoint singularity near the bulk: integrate a
    // +/- 12 sigma window around the mean
    const double mean = a1 / (a1 + a2);
    const double sd = std::sqrt(a1 * a2 / ((a1 + a2) * (a1 + a2) * (a1 + a2 + 1.0)));
    const double lo = std::max(1e-12, mean - 12.0 * sd);
    const double hi = std::min(1.0 - 1e-12, mean + 12.0 * sd);
    // factor out the peak log-density so the integrand stays O(1)
    const double peak = (a1 - 1.0) * std::log(mean) + (a2 - 1.0) * std::log1p(-mean) - lb;
    auto f = [&](double th) {
      const double ld = (a1 - 1.0) * std::log(th) + (a2 - 1.0) * std::log1p(-th) - lb - peak;
      return std::pow(th - theta0, 2 * h) * std::exp(ld);
    };
    const double val = integrate_interval(f, lo, hi, 1e-12);
    return std::log(val) + peak;
  }
  auto f = [&](double th, double cth) {
    const double ld = (a1 - 1.0) * std::log(th) + (a2 - 1.0) * std::log(cth) - lb;
    return std::pow(th - theta0, 2 * h) * std::exp(ld);
  };
  return std::log(integrate01(f, 1e-11));
}

double log_k_const(double a1, double a2, int h, double theta0, KConstPolicy policy) {
  if (!(a1 > 0.0) || !(a2 > 0.0))
    throw std::domain_error("k_const: a1, a2 must be positive");
  if (!(theta0 > 0.0 && theta0 < 1.0))
    throw std::domain_error("k_const: theta0 must lie strictly in (0,1)");
  if (h < 0) throw std::domain_error("k_const: h must be >= 0");
  if (h == 0) return 0.0;
  // canonical argument order via K(a1,a2,h,theta0) = K(a2,a1,h,1-theta0),
  // so mirror-image inputs evaluate bit-identically
  if (a1 > a2) return log_k_const(a2, a1, h, 1.0 - theta0, policy);
  const double lb = log_beta(a1, a2);
  const double lt0 = std::log(theta0);
  std::vector<SignedLogValue> terms;
  terms.reserve(2 * h + 1);
  for (int j = 0; j <= 2 * h; ++j) {
    const double lm = log_choose(2.0 * h, j) + (2.0 * h - j) * lt0 +
                      log_beta(a1 + j, a2) - lb;
    terms.push_back(SignedLogValue::from_log(lm, (j % 2 == 0) ? +1 : -1));
  }
  const auto sum = signed_log_sum(terms);
  const bool degenerate = sum.value.sign <= 0;
  const double est_rel_err =
      degenerate ? 1.0 : kEps / sum.retained_fraction;
  if (est_rel_err > kEscalationThreshold) {
    if (policy == KConstPolicy::QuadratureFallback)
      return log_k_const_quadrature(a1, a2, h, theta0);
    throw CancellationError(
        "k_const: alternating sum lost more than 1e-8 relative precision");
  }
  return sum.value.log_magnitude;
}

double k_const(double a1, double a2, int h, double theta0, KConstPolicy policy) {
  return std::exp(log_k_const(a1, a2, h, theta0, policy));
}

namespace {

double log_beta_pdf(double theta, double one_minus_theta, double a, double b) {
  return (a - 1.0) * std::log(theta) + (b - 1.0) * std::log(one_minus_theta) -
         log_beta(a, b);
}

}  // namespace

double intrinsic_prior_density(double theta, double one_minus_theta,
                               const BernoulliNull& null,
                               const MomentPriorSpec& spec) {
  if (spec.h != 0)
    throw std::invalid_argument("intrinsic_prior_density: requires h = 0");
  if (!(theta > 0.0 && one_minus_theta > 0.0))
    throw std::domain_error("intrinsic_prior_density: theta must lie in (0,1)");
  double density = 0.0;
  for (int x = 0; x <= spec.t; ++x) {
    density += std::exp(
        log_beta_pdf(theta, one_minus_theta, spec.b + x, spec.b + spec.t - x) +
        log_binom_pmf(x, spec.t, null.theta0));
  }
  return density;
}

double intrinsic_prior_density(double theta, const BernoulliNull& null,
                               const MomentPriorSpec& spec) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::domain_error("intrinsic_prior_density: theta must lie in (0,1)");
  return intrinsic_prior_density(theta, 1.0 - theta, null, spec);
}

double intrinsic_moment_prior_density(double theta, double one_minus_theta,
                                      const BernoulliNull& null,
                                      const MomentPriorSpec& spec) {
  if (spec.h == 0)
    return intrinsic_prior_density(theta, one_minus_theta, null, spec);
  if (!(theta > 0.0 && one_minus_theta > 0.0))
    throw std::domain_error(
        "intrinsic_moment_prior_density: theta must lie in (0,1)");
  if (theta == null.theta0) return 0.0;  // nonlocal: vanishes on the null
  const double log_tilt = 2.0 * spec.h * std::log(std::abs(theta - null.theta0));
  double density = 0.0;
  for (int x = 0; x <= spec.t; ++x) {
    const double a1 = spec.b + x, a2 = spec.b + spec.t - x;
    density += std::exp(log_tilt + log_beta_pdf(theta, one_minus_theta, a1, a2) -
                        log_k_const(a1, a2, spec.h, null.theta0) +
                        log_binom_pmf(x, spec.t, null.theta0));
  }
  return density;
}

double intrinsic_moment_prior_density(double theta, const BernoulliNull& null,
                                      const MomentPriorSpec& spec) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::domain_error(
        "intrinsic_moment_prior_density: theta must lie in (0,1)");
  return intrinsic_moment_prior_density(theta, 1.0 - theta, null, spec);
}

double log_bf10_moment(const BinData& data, double a1, double a2, int h,
                       const BernoulliNull& null, KConstPolicy policy) {
  if (!(a1 > 0.0) || !(a2 > 0.0))
    throw std::domain_error("bf10_moment: a1, a2 must be positive");
  if (data.n == 0) return 0.0;  // empty data carry no evidence
  const double y = static_cast<double>(data.y);
  const double n = static_cast<double>(data.n);
  const double log_conjugate =
      log_beta(a1 + y, a2 + n - y) - log_beta(a1, a2) -
      y * std::log(null.theta0) - (n - y) * std::log1p(-null.theta0);
  if (h == 0) return log_conjugate;
  return log_k_const(a1 + y, a2 + n - y, h, null.theta0, policy) -
         log_k_const(a1, a2, h, null.theta0, policy) + log_conjugate;
}

double bf10_moment(const BinData& data, double a1, double a2, int h,
                   const BernoulliNull& null, KConstPolicy policy) {
  return std::exp(log_bf10_moment(data, a1, a2, h, null, policy));
}

double log_bf10_intrinsic_moment(const BinData& data, const BernoulliNull& null,
                                 const MomentPriorSpec& spec, KConstPolicy policy) {
  if (data.n == 0) return 0.0;
  // at theta0 = 1/2 the mixture is exactly mirror symmetric in y; evaluate
  // the canonical representative so BF(y) and BF(n-y) agree bit-for-bit
  if (null.theta0 == 0.5 && 2 * data.y > data.n)
    return log_bf10_intrinsic_moment(BinData(data.n - data.y, data.n), null,
                                     spec, policy);
  std::vector<double> terms;
  terms.reserve(spec.t + 1);
  for (int x = 0; x <= spec.t; ++x) {
    terms.push_back(
        log_bf10_moment(data, spec.b + x, spec.b + spec.t - x, spec.h, null, policy) +
        log_binom_pmf(x, spec.t, null.theta0));
  }
  return log_sum_exp(terms);
}

double bf10_intrinsic_moment(const BinData& data, const BernoulliNull& null,
                             const MomentPriorSpec& spec, KConstPolicy policy) {
  return std::exp(log_bf10_intrinsic_moment(data, null, spec, policy));
}

double posterior_prob_m1(double bf10) {
  if (!(bf10 > 0.0)) throw std::domain_error("posterior_prob_m1: bf10 must be positive");
  if (std::isinf(bf10)) return 1.0;
  return bf10 / (1.0 + bf10);
}

double posterior_prob_m1_from_log(double log_bf10) {
  // 1 / (1 + e^{-log_bf10}), stable on both sides
  return std::exp(-log1pexp(-log_bf10));
}

}  // namespace imprior
