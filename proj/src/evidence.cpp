#include "imprior/evidence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "imprior/parallel.hpp"
#include "imprior/selection.hpp"
#include "imprior/special.hpp"

namespace imprior {

namespace {

constexpr double kArgmaxTolerance = 1e-9;

TwoeCurve finalize_curve(std::vector<int> grid, std::vector<double> twoe) {
  TwoeCurve curve;
  curve.grid = std::move(grid);
  curve.twoe = std::move(twoe);
  const double best = *std::max_element(curve.twoe.begin(), curve.twoe.end());
  for (size_t i = 0; i < curve.twoe.size(); ++i)
    if (curve.twoe[i] >= best - kArgmaxTolerance)
      curve.argmax_set.push_back(curve.grid[i]);
  curve.t_star = curve.argmax_set.front();
  return curve;
}

}  // namespace

std::vector<double> woe_bernoulli(double b, int h, int t, long long n) {
  const BernoulliNull null(0.5);
  std::vector<double> woe;
  woe.reserve(n + 1);
  for (long long y = 0; y <= n; ++y)
    woe.push_back(log_bf10_intrinsic_moment(
        BinData(y, n), null, MomentPriorSpec(b, h, t),
        KConstPolicy::QuadratureFallback));
  return woe;
}

TwoeCurve twoe_bernoulli(double b, int h, int t_max) {
  std::vector<int> grid;
  std::vector<double> twoe;
  for (int t = 0; t <= t_max; ++t) {
    const auto woe = woe_bernoulli(b, h, t);
    grid.push_back(t);
    twoe.push_back(std::accumulate(woe.begin(), woe.end(), 0.0));
  }
  return finalize_curve(std::move(grid), std::move(twoe));
}

TwoeCurve twoe_two_props(double b0, int h, int t_plus_max) {
  std::vector<int> grid;
  std::vector<double> twoe;
  for (int tp = 0; tp <= t_plus_max; tp += 2) {
    const TwoPropHyper hyper(b0, b0 / 2.0, b0 / 2.0, h, tp / 2, tp / 2);
    double total = 0.0;
    for (int y1 = 0; y1 <= 1; ++y1)
      for (int y2 = 0; y2 <= 1; ++y2)
        total += log_bf10_intrinsic_moment2(TwoPropData(y1, 1, y2, 1), hyper,
                                            KConstPolicy::QuadratureFallback);
    grid.push_back(tp);
    twoe.push_back(total);
  }
  return finalize_curve(std::move(grid), std::move(twoe));
}

TwoeCurve twoe_logit(const LogitProblem& problem, int h,
                     std::span<const int> t_plus_grid,
                     const McmcConfig& config) {
  if (t_plus_grid.empty())
    throw std::invalid_argument("twoe_logit: empty t_plus grid");
  problem.validate();
  LogitProblem minimal = problem;
  minimal.n.setOnes();
  minimal.y.setZero();
  const int n_patterns = minimal.num_patterns();
  const int k = minimal.num_columns();
  ModelId full;
  for (int c = 1; c <= k; ++c) full.included.push_back(c);

  const ConjugateHyper hyper = default_conjugate_hyper(minimal);
  const Eigen::MatrixXd design = model_design(minimal, full);
  const double u_plus = hyper.u.sum();
  const double w0 = hyper.w.sum() - u_plus;
  const RngStream base = config.seed.substream(0x70E0);

  const long long n_outcomes = 1LL << n_patterns;
  const ChainContext ctx_prior =
      build_chain_context(design, hyper.u, hyper.w, config, base.substream(0));
  std::vector<ChainContext> ctx_post(n_outcomes);
  parallel_for(static_cast<int>(n_outcomes), [&](int o) {
    Eigen::VectorXd y(n_patterns);
    for (int i = 0; i < n_patterns; ++i) y[i] = (o >> i) & 1;
    ctx_post[o] = build_chain_context(design, hyper.u + y, hyper.w + minimal.n,
                                      config, base.substream(1 + o));
  });

  std::vector<int> grid;
  std::vector<double> twoe;
  for (int tp : t_plus_grid) {
    const std::vector<int> tvec = nearest_allocation(tp, minimal.n);
    const TrainingDesign tdesign{tvec};
    Eigen::VectorXd tv(n_patterns);
    for (int i = 0; i < n_patterns; ++i) tv[i] = tvec[i];
    const TrainingOutcomeGrid xgrid =
        training_outcome_grid(tvec, u_plus, w0, base.substream(0x5a0 + tp));
    std::vector<double> per_outcome(n_outcomes);
    parallel_for(static_cast<int>(n_outcomes), [&](int o) {
      LogitProblem with_y = minimal;
      for (int i = 0; i < n_patterns; ++i) with_y.y[i] = (o >> i) & 1;
      const double log_m_full =
          log_q_mixture(ctx_prior, ctx_post[o], xgrid, tv, h).log_value;
      const double log_m_null = log_marginal_intercept_only(with_y, tdesign);
      per_outcome[o] = log_m_full - log_m_null;
    });
    grid.push_back(tp);
    twoe.push_back(std::accumulate(per_outcome.begin(), per_outcome.end(), 0.0));
  }
  return finalize_curve(std::move(grid), std::move(twoe));
}

std::vector<EvidencePoint> evidence_curve(long long n, const BernoulliNull& null,
                                          std::span<const MomentPriorSpec> specs) {
  if (n < 1) throw std::domain_error("evidence_curve: need n >= 1");
  std::vector<EvidencePoint> points;
  points.reserve(n + 1);
  for (long long y = 0; y <= n; ++y) {
    EvidencePoint p;
    p.y = y;
    p.y_bar = static_cast<double>(y) / static_cast<double>(n);
    for (const auto& spec : specs)
      p.prob_m1.push_back(posterior_prob_m1_from_log(log_bf10_intrinsic_moment(
          BinData(y, n), null, spec, KConstPolicy::QuadratureFallback)));
    points.push_back(std::move(p));
  }
  return points;
}

double bernoulli_kl(double theta_true, double theta0) {
  return theta_true * std::log(theta_true / theta0) +
         (1.0 - theta_true) * std::log((1.0 - theta_true) / (1.0 - theta0));
}

double two_props_kl_to_null(double theta1, double theta2) {
  // golden-section minimization of KL((theta1,theta2) || (theta,theta))
  auto objective = [&](double th) {
    return bernoulli_kl(theta1, th) + bernoulli_kl(theta2, th);
  };
  double lo = std::min(theta1, theta2), hi = std::max(theta1, theta2);
  if (hi - lo < 1e-14) return 0.0;
  const double gr = 0.61803398874989484820;
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = objective(c), fd = objective(d);
  for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = objective(d);
    }
  }
  return objective(0.5 * (a + b));
}

namespace {

struct SlopeFit {
  double slope;
  double intercept;
};

SlopeFit ols(const std::vector<double>& xs, const std::vector<double>& ys) {
  const int n = static_cast<int>(xs.size());
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  return {sxy / sxx, my - sxy / sxx * mx};
}

double median_of(std::vector<double> v) {
  const size_t n = v.size();
  std::nth_element(v.begin(), v.begin() + n / 2, v.end());
  double hi = v[n / 2];
  if (n % 2 == 1) return hi;
  std::nth_element(v.begin(), v.begin() + n / 2 - 1, v.end());
  return 0.5 * (hi + v[n / 2 - 1]);
}

}  // namespace

RateStudy learning_rate_sim(RateFamily family, const RateTruth& truth,
                            double b_or_b0, int h, int t_or_t_plus,
                            std::span<const long long> n_grid, int replications,
                            RngStream rng) {
  if (n_grid.size() < 5)
    throw std::invalid_argument("learning_rate_sim: need >= 5 grid points");
  for (size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1])
      throw std::invalid_argument("learning_rate_sim: n_grid must increase");
  if (replications < 1)
    throw std::invalid_argument("learning_rate_sim: need replications >= 1");

  const bool null_regime = family == RateFamily::Bernoulli
                               ? truth.theta1 == truth.theta0
                               : truth.theta1 == truth.theta2;

  const size_t n_points = n_grid.size();
  // log BF10 per (grid point, replication)
  std::vector<std::vector<double>> log_bf(n_points,
                                          std::vector<double>(replications));
  for (size_t gi = 0; gi < n_points; ++gi) {
    const long long n = n_grid[gi];
    if (family == RateFamily::Bernoulli) {
      const BernoulliNull null(truth.theta0);
      const MomentPriorSpec spec(b_or_b0, h, t_or_t_plus);
      std::vector<long long> ys(replications);
      for (int r = 0; r < replications; ++r) {
        Pcg32 g(rng.substream(gi * 1000003ULL + r));
        ys[r] = g.binomial(n, truth.theta1);
      }
      std::map<long long, double> cache;
      for (long long y : ys) cache.emplace(y, 0.0);
      std::vector<long long> uniq;
      uniq.reserve(cache.size());
      for (const auto& [y, v] : cache) uniq.push_back(y);
      std::vector<double> vals(uniq.size());
      parallel_for(static_cast<int>(uniq.size()), [&](int i) {
        vals[i] = log_bf10_intrinsic_moment(BinData(uniq[i], n), null, spec,
                                            KConstPolicy::QuadratureFallback);
      });
      for (size_t i = 0; i < uniq.size(); ++i) cache[uniq[i]] = vals[i];
      for (int r = 0; r < replications; ++r) log_bf[gi][r] = cache[ys[r]];
    } else {
      const double w[2] = {1.0, 1.0};
      const auto tsplit = largest_remainder_allocation(t_or_t_plus, w);
      const TwoPropHyper hyper(b_or_b0, b_or_b0 / 2.0, b_or_b0 / 2.0, h,
                               tsplit[0], tsplit[1]);
      std::vector<std::pair<long long, long long>> ys(replications);
      for (int r = 0; r < replications; ++r) {
        Pcg32 g(rng.substream(gi * 1000003ULL + r));
        ys[r] = {g.binomial(n, truth.theta1), g.binomial(n, truth.theta2)};
      }
      std::map<std::pair<long long, long long>, double> cache;
      for (const auto& y : ys) cache.emplace(y, 0.0);
      std::vector<std::pair<long long, long long>> uniq;
      uniq.reserve(cache.size());
      for (const auto& [y, v] : cache) uniq.push_back(y);
      std::vector<double> vals(uniq.size());
      parallel_for(static_cast<int>(uniq.size()), [&](int i) {
        vals[i] = log_bf10_intrinsic_moment2(
            TwoPropData(uniq[i].first, n, uniq[i].second, n), hyper,
            KConstPolicy::QuadratureFallback);
      });
      for (size_t i = 0; i < uniq.size(); ++i) cache[uniq[i]] = vals[i];
      for (int r = 0; r < replications; ++r) log_bf[gi][r] = cache[ys[r]];
    }
  }

  RateStudy study;
  std::vector<double> xs(n_points), med(n_points);
  for (size_t gi = 0; gi < n_points; ++gi) {
    std::vector<double> v = log_bf[gi];
    if (!null_regime)
      for (double& lv : v) lv = -lv;  // log BF01 in the alternative regime
    const double m = median_of(v);
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    study.points.push_back(RatePoint{n_grid[gi], m, mean, replications});
    xs[gi] = null_regime ? std::log(static_cast<double>(n_grid[gi]))
                         : static_cast<double>(n_grid[gi]);
    med[gi] = m;
  }
  const SlopeFit fit = ols(xs, med);
  study.fit.slope = fit.slope;
  study.fit.intercept = fit.intercept;
  study.fit.regime =
      null_regime ? RateRegime::PolynomialInLogN : RateRegime::LinearInN;
  if (null_regime) {
    study.fit.expected_slope = -(h + 0.5);  // d1 - d0 = 1 for both families
  } else {
    study.fit.expected_slope =
        family == RateFamily::Bernoulli
            ? -bernoulli_kl(truth.theta1, truth.theta0)
            : -two_props_kl_to_null(truth.theta1, truth.theta2);
  }

  // percentile bootstrap over replications (resampled per grid point)
  const int n_boot = 200;
  std::vector<double> slopes(n_boot);
  Pcg32 g(rng.substream(0xB007));
  for (int bI = 0; bI < n_boot; ++bI) {
    std::vector<double> bmed(n_points);
    for (size_t gi = 0; gi < n_points; ++gi) {
      std::vector<double> resampled(replications);
      for (int r = 0; r < replications; ++r) {
        const int idx = static_cast<int>(g.uniform01() * replications);
        double lv = log_bf[gi][std::min(idx, replications - 1)];
        resampled[r] = null_regime ? lv : -lv;
      }
      bmed[gi] = median_of(resampled);
    }
    slopes[bI] = ols(xs, bmed).slope;
  }
  std::sort(slopes.begin(), slopes.end());
  study.fit.boot_lo = slopes[static_cast<int>(0.025 * n_boot)];
  study.fit.boot_hi = slopes[static_cast<int>(0.975 * n_boot) - 1];
  return study;
}

namespace {

// t* for the two-proportion problem at b0 = 1/2, cached for h = 0..3
int two_prop_t_star(int h) {
  static const std::vector<int> table = [] {
    std::vector<int> t;
    for (int hh = 0; hh <= 3; ++hh) t.push_back(twoe_two_props(0.5, hh).t_star);
    return t;
  }();
  if (h < 0 || h >= static_cast<int>(table.size()))
    throw std::domain_error("two_prop_t_star: h out of cached range");
  return table[h];
}

}  // namespace

std::vector<SensitivityRow> sensitivity_analysis(
    std::span<const TwoPropData> tables, std::span<const std::string> ids,
    std::span<const int> h_set) {
  if (tables.empty())
    throw std::invalid_argument("sensitivity_analysis: no tables");
  if (!ids.empty() && ids.size() != tables.size())
    throw std::invalid_argument("sensitivity_analysis: ids/tables mismatch");

  std::vector<size_t> order(tables.size());
  std::iota(order.begin(), order.end(), 0);
  auto gap = [&](size_t i) {
    const auto& d = tables[i];
    return std::abs(static_cast<double>(d.y1) / d.n1 -
                    static_cast<double>(d.y2) / d.n2);
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return gap(a) < gap(b); });

  std::vector<SensitivityRow> rows;
  for (size_t oi : order) {
    const auto& d = tables[oi];
    for (int h : h_set) {
      SensitivityRow row;
      row.id = ids.empty() ? std::to_string(oi + 1) : ids[oi];
      row.frac_gap = gap(oi);
      row.h = h;
      row.t_lo = two_prop_t_star(h);
      row.t_hi = two_prop_t_star(h + 1);
      double pmin = 1.0, pmax = 0.0, plo = 0.0, phi = 0.0;
      for (int tp = row.t_lo; tp <= row.t_hi; ++tp) {
        const auto hyper = default_hyper(d.n1, d.n2, h, tp);
        const double p1 = posterior_prob_m1_from_log(log_bf10_intrinsic_moment2(
            d, hyper, KConstPolicy::QuadratureFallback));
        const double p0 = 1.0 - p1;
        pmin = std::min(pmin, p0);
        pmax = std::max(pmax, p0);
        if (tp == row.t_lo) plo = p0;
        if (tp == row.t_hi) phi = p0;
      }
      row.p0_at_lo = plo;
      row.p0_at_hi = phi;
      row.p0_min = pmin;
      row.p0_max = pmax;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

CvForecasts cv_forecasts(const TwoPropData& d, int h, int t_plus) {
  // hyperparameters follow the full-table group sizes
  const TwoPropHyper hyper = default_hyper(d.n1, d.n2, h, t_plus);
  CvForecasts f;
  auto model_average = [&](const TwoPropData& loo, bool group1) {
    const double p1 = posterior_prob_m1_from_log(log_bf10_intrinsic_moment2(
        loo, hyper, KConstPolicy::QuadratureFallback));
    const double mean_m0 =
        (hyper.b0 + loo.y1 + loo.y2) / (2.0 * hyper.b0 + loo.n1 + loo.n2);
    const double mean_m1 =
        group1 ? posterior_mean_theta1_im(loo, hyper)
               : posterior_mean_theta1_im(loo.swapped(), hyper.swapped());
    return p1 * mean_m1 + (1.0 - p1) * mean_m0;
  };
  if (d.y1 >= 1)
    f.th1_occ = model_average(TwoPropData(d.y1 - 1, d.n1 - 1, d.y2, d.n2), true);
  if (d.n1 - d.y1 >= 1)
    f.th1_non = model_average(TwoPropData(d.y1, d.n1 - 1, d.y2, d.n2), true);
  if (d.y2 >= 1)
    f.th2_occ = model_average(TwoPropData(d.y1, d.n1, d.y2 - 1, d.n2 - 1), false);
  if (d.n2 - d.y2 >= 1)
    f.th2_non = model_average(TwoPropData(d.y1, d.n1, d.y2, d.n2 - 1), false);
  return f;
}

double cv_mean_log_score(const TwoPropData& d, double th1_occ, double th1_non,
                         double th2_occ, double th2_non) {
  double total = 0.0;
  if (d.y1 > 0) total += d.y1 * std::log(th1_occ);
  if (d.n1 - d.y1 > 0) total += (d.n1 - d.y1) * std::log1p(-th1_non);
  if (d.y2 > 0) total += d.y2 * std::log(th2_occ);
  if (d.n2 - d.y2 > 0) total += (d.n2 - d.y2) * std::log1p(-th2_non);
  return total / static_cast<double>(d.n1 + d.n2);
}

CvScore cross_validation(const TwoPropData& table) {
  if (table.n1 + table.n2 < 1)
    throw std::domain_error("cross_validation: empty table");
  CvScore score;
  double s[3];
  for (int h = 0; h <= 2; ++h) {
    const auto f = cv_forecasts(table, h, two_prop_t_star(h));
    s[h] = cv_mean_log_score(table, f.th1_occ, f.th1_non, f.th2_occ, f.th2_non);
  }
  score.s0 = s[0];
  score.s1 = s[1];
  score.s2 = s[2];
  score.delta1 = s[1] - s[0];
  score.delta2 = s[2] - s[0];
  return score;
}

}  // namespace imprior
