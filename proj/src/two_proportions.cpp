#include "imprior/two_proportions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "imprior/quadrature.hpp"
#include "imprior/signed_log.hpp"
#include "imprior/special.hpp"

namespace imprior {

namespace {

constexpr double kEps = 2.220446049250313e-16;
constexpr double kEscalationThreshold = 1e-8;

double log_beta_pdf(double x, double cx, double a, double b) {
  return (a - 1.0) * std::log(x) + (b - 1.0) * std::log(cx) - log_beta(a, b);
}

// log E[theta1^{p1} theta2^{p2}] under Beta(a11,a12) (x) Beta(a21,a22)
double log_product_moment(const BetaMatrix& a, int p1, int p2) {
  return log_beta(a.a11 + p1, a.a12) - log_beta(a.a11, a.a12) +
         log_beta(a.a21 + p2, a.a22) - log_beta(a.a21, a.a22);
}

// signed-log-sum of E[theta1^{extra} (theta1-theta2)^{2h}]; escalates to 2-D
// quadrature when the alternating sum cancels too deeply.
double log_tilted_moment(const BetaMatrix& a, int h, int extra) {
  if (h == 0 && extra == 0) return 0.0;
  std::vector<SignedLogValue> terms;
  terms.reserve(2 * h + 1);
  for (int j = 0; j <= 2 * h; ++j) {
    const double lm =
        log_choose(2.0 * h, j) + log_product_moment(a, 2 * h - j + extra, j);
    terms.push_back(SignedLogValue::from_log(lm, (j % 2 == 0) ? +1 : -1));
  }
  const auto sum = signed_log_sum(terms);
  const bool degenerate = sum.value.sign <= 0;
  if (degenerate || kEps / sum.retained_fraction > kEscalationThreshold) {
    auto f = [&](double t1, double c1, double t2, double c2) {
      return std::pow(t1, extra) * std::pow(t1 - t2, 2 * h) *
             std::exp(log_beta_pdf(t1, c1, a.a11, a.a12) +
                      log_beta_pdf(t2, c2, a.a21, a.a22));
    };
    return std::log(integrate01_2d(f, 1e-10));
  }
  return sum.value.log_magnitude;
}

}  // namespace

double log_k_const2_quadrature(const BetaMatrix& a, int h, double tol) {
  auto f = [&](double t1, double c1, double t2, double c2) {
    return std::pow(t1 - t2, 2 * h) *
           std::exp(log_beta_pdf(t1, c1, a.a11, a.a12) +
                    log_beta_pdf(t2, c2, a.a21, a.a22));
  };
  return std::log(integrate01_2d(f, tol));
}

double log_k_const2(const BetaMatrix& a, int h, KConstPolicy policy) {
  if (h < 0) throw std::domain_error("k_const2: h must be >= 0");
  if (h == 0) return 0.0;
  // K is invariant under swapping the two groups; canonicalize the row order
  // so label-swapped inputs evaluate bit-identically
  if (a.a11 > a.a21 || (a.a11 == a.a21 && a.a12 > a.a22))
    return log_k_const2(BetaMatrix{a.a21, a.a22, a.a11, a.a12}, h, policy);
  std::vector<SignedLogValue> terms;
  terms.reserve(2 * h + 1);
  for (int j = 0; j <= 2 * h; ++j) {
    const double lm = log_choose(2.0 * h, j) + log_beta(a.a11 + j, a.a12) -
                      log_beta(a.a11, a.a12) +
                      log_beta(a.a21 + 2 * h - j, a.a22) -
                      log_beta(a.a21, a.a22);
    terms.push_back(SignedLogValue::from_log(lm, (j % 2 == 0) ? +1 : -1));
  }
  const auto sum = signed_log_sum(terms);
  const bool degenerate = sum.value.sign <= 0;
  const double est_rel_err = degenerate ? 1.0 : kEps / sum.retained_fraction;
  if (est_rel_err > kEscalationThreshold) {
    if (policy == KConstPolicy::QuadratureFallback)
      return log_k_const2_quadrature(a, h);
    throw CancellationError(
        "k_const2: alternating sum lost more than 1e-8 relative precision");
  }
  return sum.value.log_magnitude;
}

double k_const2(const BetaMatrix& a, int h, KConstPolicy policy) {
  return std::exp(log_k_const2(a, h, policy));
}

double log_m0_training(int x1, int x2, int t1, int t2, double b0) {
  if (x1 < 0 || x2 < 0 || x1 > t1 || x2 > t2)
    throw std::domain_error("m0_training: need 0 <= x_i <= t_i");
  if (!(b0 > 0.0)) throw std::domain_error("m0_training: b0 must be positive");
  return log_choose(t1, x1) + log_choose(t2, x2) +
         log_beta(b0 + x1 + x2, b0 + t1 + t2 - x1 - x2) - log_beta(b0, b0);
}

double m0_training(int x1, int x2, int t1, int t2, double b0) {
  return std::exp(log_m0_training(x1, x2, t1, t2, b0));
}

double log_bf10_base2(const TwoPropData& d, const BetaMatrix& a, double b0) {
  return log_beta(b0, b0) + log_beta(a.a11 + d.y1, a.a12 + d.n1 - d.y1) +
         log_beta(a.a21 + d.y2, a.a22 + d.n2 - d.y2) - log_beta(a.a11, a.a12) -
         log_beta(a.a21, a.a22) -
         log_beta(b0 + d.y1 + d.y2, b0 + d.n1 + d.n2 - d.y1 - d.y2);
}

double log_bf10_moment2(const TwoPropData& d, const BetaMatrix& a, int h,
                        double b0, KConstPolicy policy) {
  if (d.n1 == 0 && d.n2 == 0) return 0.0;  // empty data carry no evidence
  const double base = log_bf10_base2(d, a, b0);
  if (h == 0) return base;
  return log_k_const2(a.updated(d), h, policy) - log_k_const2(a, h, policy) + base;
}

double bf10_moment2(const TwoPropData& d, const BetaMatrix& a, int h, double b0,
                    KConstPolicy policy) {
  return std::exp(log_bf10_moment2(d, a, h, b0, policy));
}

double log_bf10_intrinsic_moment2(const TwoPropData& d, const TwoPropHyper& hy,
                                  KConstPolicy policy) {
  if (d.n1 == 0 && d.n2 == 0) return 0.0;
  std::vector<double> terms;
  terms.reserve((hy.t1 + 1) * (hy.t2 + 1));
  for (int x1 = 0; x1 <= hy.t1; ++x1) {
    for (int x2 = 0; x2 <= hy.t2; ++x2) {
      const BetaMatrix ax{hy.b1 + x1, hy.b1 + hy.t1 - x1, hy.b2 + x2,
                          hy.b2 + hy.t2 - x2};
      terms.push_back(log_bf10_moment2(d, ax, hy.h, hy.b0, policy) +
                      log_m0_training(x1, x2, hy.t1, hy.t2, hy.b0));
    }
  }
  return log_sum_exp(terms);
}

double bf10_intrinsic_moment2(const TwoPropData& d, const TwoPropHyper& hy,
                              KConstPolicy policy) {
  return std::exp(log_bf10_intrinsic_moment2(d, hy, policy));
}

std::vector<int> largest_remainder_allocation(int total,
                                              std::span<const double> weights) {
  const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(wsum > 0.0))
    throw std::domain_error("largest_remainder_allocation: weights must sum > 0");
  const int k = static_cast<int>(weights.size());
  std::vector<int> alloc(k);
  std::vector<std::pair<double, int>> frac(k);
  int assigned = 0;
  for (int i = 0; i < k; ++i) {
    const double q = total * weights[i] / wsum;
    alloc[i] = static_cast<int>(std::floor(q));
    assigned += alloc[i];
    frac[i] = {q - alloc[i], i};
  }
  std::stable_sort(frac.begin(), frac.end(), [](const auto& a, const auto& b) {
    return a.first > b.first;  // ties keep lower index first
  });
  for (int r = 0; r < total - assigned; ++r) alloc[frac[r].second] += 1;
  return alloc;
}

TwoPropHyper default_hyper(long long n1, long long n2, int h, int t_plus) {
  if (n1 <= 0 || n2 <= 0)
    throw std::domain_error("default_hyper: both groups need trials");
  const double b0 = 0.5;
  const double b1 = b0 * static_cast<double>(n1) / static_cast<double>(n1 + n2);
  const double b2 = b0 * static_cast<double>(n2) / static_cast<double>(n1 + n2);
  const double w[2] = {static_cast<double>(n1), static_cast<double>(n2)};
  const auto t = largest_remainder_allocation(t_plus, w);
  return {b0, b1, b2, h, t[0], t[1]};
}

namespace {

double gamma_draw(Pcg32& g, double shape) {
  // Marsaglia-Tsang, with the shape+1 boost below 1
  if (shape < 1.0)
    return gamma_draw(g, shape + 1.0) *
           std::pow(g.uniform01(), 1.0 / shape);
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = g.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = g.uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double beta_draw(Pcg32& g, double a, double b) {
  const double x = gamma_draw(g, a);
  const double y = gamma_draw(g, b);
  return x / (x + y);
}

}  // namespace

PriorCorrelationResult prior_correlation(const TwoPropHyper& hy,
                                         long long samples, RngStream stream) {
  if (samples < 1000)
    throw std::domain_error("prior_correlation: need at least 1000 samples");
  const int nx = (hy.t1 + 1) * (hy.t2 + 1);
  std::vector<double> cumw(nx);
  double expected_acc = 0.0;
  {
    double acc = 0.0;
    int idx = 0;
    for (int x1 = 0; x1 <= hy.t1; ++x1) {
      for (int x2 = 0; x2 <= hy.t2; ++x2, ++idx) {
        const double w = m0_training(x1, x2, hy.t1, hy.t2, hy.b0);
        const BetaMatrix ax{hy.b1 + x1, hy.b1 + hy.t1 - x1, hy.b2 + x2,
                            hy.b2 + hy.t2 - x2};
        // exact component acceptance is K(a_x*, h); the rejection bound is 1
        const double k = (hy.h == 0) ? 1.0
                                     : std::exp(log_k_const2(
                                           ax, hy.h, KConstPolicy::QuadratureFallback));
        acc += w;
        cumw[idx] = acc;
        expected_acc += w * k;
      }
    }
    cumw.back() = 1.0;  // guard rounding in the final cumulative weight
  }

  PriorCorrelationResult out;
  out.expected_acceptance = expected_acc;
  out.low_acceptance_warning = expected_acc < 1e-3;

  Pcg32 g(stream);
  double s1 = 0, s2 = 0, s11 = 0, s22 = 0, s12 = 0;
  const long long proposal_cap =
      static_cast<long long>(10.0 * samples / std::max(expected_acc, 1e-9)) + 1000;
  for (long long kept = 0; kept < samples; ++kept) {
    // the mixture index is drawn once; rejection runs within the component so
    // the component weights stay m0(x), not m0(x) K(a_x*, h)
    const double u = g.uniform01();
    const int idx = static_cast<int>(
        std::lower_bound(cumw.begin(), cumw.end(), u) - cumw.begin());
    const int x1 = idx / (hy.t2 + 1);
    const int x2 = idx % (hy.t2 + 1);
    for (;;) {
      if (++out.proposals > proposal_cap)
        throw std::runtime_error("prior_correlation: rejection sampler stalled");
      const double th1 = beta_draw(g, hy.b1 + x1, hy.b1 + hy.t1 - x1);
      const double th2 = beta_draw(g, hy.b2 + x2, hy.b2 + hy.t2 - x2);
      if (hy.h > 0) {
        const double tilt = std::pow(th1 - th2, 2 * hy.h);  // bounded by 1
        if (g.uniform01() >= tilt) continue;
      }
      s1 += th1;
      s2 += th2;
      s11 += th1 * th1;
      s22 += th2 * th2;
      s12 += th1 * th2;
      break;
    }
  }
  const double m1 = s1 / samples, m2 = s2 / samples;
  const double v1 = s11 / samples - m1 * m1;
  const double v2 = s22 / samples - m2 * m2;
  const double c12 = s12 / samples - m1 * m2;
  out.r = c12 / std::sqrt(v1 * v2);
  return out;
}

double posterior_mean_theta1_im(const TwoPropData& d, const TwoPropHyper& hy) {
  // E[theta1 | D] = sum_x w_x mu_x / sum_x w_x, with w_x the posterior weight
  // of training component x and mu_x its tilted posterior mean.
  std::vector<double> log_w;
  std::vector<double> log_w_mu;
  log_w.reserve((hy.t1 + 1) * (hy.t2 + 1));
  log_w_mu.reserve(log_w.capacity());
  for (int x1 = 0; x1 <= hy.t1; ++x1) {
    for (int x2 = 0; x2 <= hy.t2; ++x2) {
      const BetaMatrix ax{hy.b1 + x1, hy.b1 + hy.t1 - x1, hy.b2 + x2,
                          hy.b2 + hy.t2 - x2};
      const BetaMatrix axd = ax.updated(d);
      const double log_tilted0 = log_tilted_moment(axd, hy.h, 0);
      // component marginal (up to factors common in x)
      const double log_marg =
          log_tilted0 - log_tilted_moment(ax, hy.h, 0) +
          log_beta(axd.a11, axd.a12) - log_beta(ax.a11, ax.a12) +
          log_beta(axd.a21, axd.a22) - log_beta(ax.a21, ax.a22);
      const double lw = log_m0_training(x1, x2, hy.t1, hy.t2, hy.b0) + log_marg;
      const double log_mu = log_tilted_moment(axd, hy.h, 1) - log_tilted0;
      log_w.push_back(lw);
      log_w_mu.push_back(lw + log_mu);
    }
  }
  return std::exp(log_sum_exp(log_w_mu) - log_sum_exp(log_w));
}

}  // namespace imprior
