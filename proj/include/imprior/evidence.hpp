#ifndef IMPRIOR_EVIDENCE_HPP
#define IMPRIOR_EVIDENCE_HPP

#include <span>
#include <string>
#include <vector>

#include "imprior/bernoulli.hpp"
#include "imprior/logistic.hpp"
#include "imprior/rng.hpp"
#include "imprior/two_proportions.hpp"

namespace imprior {

/// Total-weight-of-evidence curve over training sample sizes, with the
/// argmax set (ties within 1e-9) and t_star = its smallest member.
struct TwoeCurve {
  std::vector<int> grid;
  std::vector<double> twoe;
  std::vector<int> argmax_set;
  int t_star = 0;
};

/// TWOE on the minimal Bernoulli design (n = 2, theta0 = 1/2).
TwoeCurve twoe_bernoulli(double b, int h, int t_max = 60);

/// Per-outcome weights of evidence WOE_y(t) on the minimal design; used by
/// the symmetry/monotonicity checks.
std::vector<double> woe_bernoulli(double b, int h, int t, long long n = 2);

/// TWOE on the minimal two-proportion design (n1 = n2 = 1, balanced split
/// t = (t_plus/2, t_plus/2), even t_plus only).
TwoeCurve twoe_two_props(double b0, int h, int t_plus_max = 60);

/// TWOE for the full model against the intercept-only model on minimal data
/// (n_i = 1 for every observed covariate pattern); Monte Carlo-noisy.
TwoeCurve twoe_logit(const LogitProblem& problem, int h,
                     std::span<const int> t_plus_grid, const McmcConfig& config);

struct EvidencePoint {
  long long y;
  double y_bar;
  std::vector<double> prob_m1;  // one entry per spec
};
/// Posterior probability of M1 as a function of the observed frequency,
/// by exact enumeration over y = 0..n.
std::vector<EvidencePoint> evidence_curve(long long n, const BernoulliNull& null,
                                          std::span<const MomentPriorSpec> specs);

enum class RateFamily { Bernoulli, TwoProps };
enum class RateRegime { PolynomialInLogN, LinearInN };

struct RatePoint {
  long long n;
  double median_log_bf;  // log BF10 under the null regime, log BF01 otherwise
  double mean_log_bf;
  long long replications;
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  RateRegime regime = RateRegime::PolynomialInLogN;
  double expected_slope = 0.0;
  double boot_lo = 0.0;  // 95% bootstrap interval for the slope
  double boot_hi = 0.0;
};

struct RateStudy {
  std::vector<RatePoint> points;
  RateFit fit;
};

struct RateTruth {
  double theta1 = 0.25;  // Bernoulli truth, or group-1 truth
  double theta2 = 0.25;  // group-2 truth (TwoProps only)
  double theta0 = 0.25;  // null value (Bernoulli only)
};

/// Simulated learning-rate study. Under a null-regime truth fits the slope of
/// the median log BF10 against log n; under an alternative truth fits the
/// median log BF01 against n, with the analytic -K* as the expected slope.
RateStudy learning_rate_sim(RateFamily family, const RateTruth& truth,
                            double b_or_b0, int h, int t_or_t_plus,
                            std::span<const long long> n_grid,
                            int replications, RngStream rng);

/// Kullback-Leibler rate constants for the alternative regime.
double bernoulli_kl(double theta_true, double theta0);
double two_props_kl_to_null(double theta1, double theta2);

struct SensitivityRow {
  std::string id;
  double frac_gap;  // |y1/n1 - y2/n2|
  int h;
  int t_lo, t_hi;
  double p0_at_lo, p0_at_hi, p0_min, p0_max;
};

/// Posterior probability of the null across t_plus in [t*(h), t*(h+1)] for
/// each table and h; rows ordered by increasing |y1/n1 - y2/n2|.
std::vector<SensitivityRow> sensitivity_analysis(
    std::span<const TwoPropData> tables, std::span<const std::string> ids,
    std::span<const int> h_set);

struct CvScore {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  double delta1 = 0.0, delta2 = 0.0;  // s1-s0, s2-s0
};

/// Leave-one-out logarithmic-score study comparing h = 0, 1, 2 at their
/// recommended training sizes.
CvScore cross_validation(const TwoPropData& table);

/// Mean log score of the four forecast blocks; exposed for direct checks.
double cv_mean_log_score(const TwoPropData& table, double th1_occ,
                         double th1_non, double th2_occ, double th2_non);

/// Model-averaged leave-one-out forecast machinery (per h).
struct CvForecasts {
  double th1_occ = 0.5, th1_non = 0.5, th2_occ = 0.5, th2_non = 0.5;
};
CvForecasts cv_forecasts(const TwoPropData& table, int h, int t_plus);

}  // namespace imprior

#endif
