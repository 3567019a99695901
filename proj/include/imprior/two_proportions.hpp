#ifndef IMPRIOR_TWO_PROPORTIONS_HPP
#define IMPRIOR_TWO_PROPORTIONS_HPP

#include <span>
#include <stdexcept>
#include <vector>

#include "imprior/bernoulli.hpp"
#include "imprior/rng.hpp"

namespace imprior {

/// Counts from two independent binomials.
struct TwoPropData {
  long long y1, n1, y2, n2;
  TwoPropData(long long y1_, long long n1_, long long y2_, long long n2_)
      : y1(y1_), n1(n1_), y2(y2_), n2(n2_) {
    if (n1 < 0 || n2 < 0 || y1 < 0 || y2 < 0 || y1 > n1 || y2 > n2)
      throw std::domain_error("TwoPropData: need 0 <= y_i <= n_i");
  }
  TwoPropData swapped() const { return {y2, n2, y1, n1}; }
};

/// Hyperparameters of a Beta(a11,a12) (x) Beta(a21,a22) product prior.
struct BetaMatrix {
  double a11, a12, a21, a22;
  BetaMatrix(double a11_, double a12_, double a21_, double a22_)
      : a11(a11_), a12(a12_), a21(a21_), a22(a22_) {
    if (!(a11 > 0.0 && a12 > 0.0 && a21 > 0.0 && a22 > 0.0))
      throw std::domain_error("BetaMatrix: all entries must be positive");
  }
  BetaMatrix updated(const TwoPropData& d) const {
    return {a11 + d.y1, a12 + d.n1 - d.y1, a21 + d.y2, a22 + d.n2 - d.y2};
  }
};

/// Full hyperparameter set (b0, b1, b2, h, t1, t2) for the two-binomial
/// intrinsic moment prior. The recommended configuration has b1 + b2 = b0.
struct TwoPropHyper {
  double b0, b1, b2;
  int h;
  int t1, t2;
  TwoPropHyper(double b0_, double b1_, double b2_, int h_, int t1_, int t2_)
      : b0(b0_), b1(b1_), b2(b2_), h(h_), t1(t1_), t2(t2_) {
    if (!(b0 > 0.0 && b1 > 0.0 && b2 > 0.0))
      throw std::domain_error("TwoPropHyper: b0, b1, b2 must be positive");
    if (h_ < 0 || t1_ < 0 || t2_ < 0)
      throw std::domain_error("TwoPropHyper: h, t1, t2 must be >= 0");
  }
  TwoPropHyper swapped() const { return {b0, b2, b1, h, t2, t1}; }
};

/// K(a,h) = E[(theta1-theta2)^{2h}] under the product Beta prior, via the
/// alternating double-Beta sum; h=0 gives exactly 1.
double k_const2(const BetaMatrix& a, int h,
                KConstPolicy policy = KConstPolicy::Strict);
double log_k_const2(const BetaMatrix& a, int h,
                    KConstPolicy policy = KConstPolicy::Strict);

/// 2-D quadrature evaluation of the same moment (rescue path, test oracle).
double log_k_const2_quadrature(const BetaMatrix& a, int h, double tol = 1e-10);

/// Marginal probability of the training outcome (x1, x2) under the null with
/// a Beta(b0,b0) prior; sums to 1 over the training sample space.
double m0_training(int x1, int x2, int t1, int t2, double b0);
double log_m0_training(int x1, int x2, int t1, int t2, double b0);

/// Conjugate-prior Bayes factor BF10(y|a) against theta1 = theta2 with a
/// Beta(b0,b0) prior under the null.
double log_bf10_base2(const TwoPropData& data, const BetaMatrix& a, double b0);

/// Moment-prior Bayes factor of order h.
double bf10_moment2(const TwoPropData& data, const BetaMatrix& a, int h,
                    double b0, KConstPolicy policy = KConstPolicy::Strict);
double log_bf10_moment2(const TwoPropData& data, const BetaMatrix& a, int h,
                        double b0, KConstPolicy policy = KConstPolicy::Strict);

/// Intrinsic moment prior Bayes factor: double mixture over training
/// outcomes, fully enumerated.
double bf10_intrinsic_moment2(const TwoPropData& data, const TwoPropHyper& hyper,
                              KConstPolicy policy = KConstPolicy::Strict);
double log_bf10_intrinsic_moment2(const TwoPropData& data,
                                  const TwoPropHyper& hyper,
                                  KConstPolicy policy = KConstPolicy::Strict);

/// Largest-remainder apportionment of `total` across weights; ties among
/// fractional remainders break toward the lower index.
std::vector<int> largest_remainder_allocation(int total,
                                              std::span<const double> weights);

/// Recommended hyperparameters: b0 = 1/2, b_i proportional to n_i,
/// (t1,t2) a largest-remainder split of t_plus proportional to (n1,n2).
TwoPropHyper default_hyper(long long n1, long long n2, int h, int t_plus);

struct PriorCorrelationResult {
  double r = 0.0;
  double expected_acceptance = 1.0;
  long long proposals = 0;
  bool low_acceptance_warning = false;
};

/// Monte Carlo estimate of corr(theta1, theta2) under the intrinsic moment
/// prior, by mixture sampling with rejection against the (theta1-theta2)^{2h}
/// tilt (bound 1, so the per-component acceptance rate is K(a_x*, h)).
PriorCorrelationResult prior_correlation(const TwoPropHyper& hyper,
                                         long long samples, RngStream rng);

/// Posterior mean of theta1 given data under the intrinsic moment prior
/// (component-mixture closed form); used by the cross-validation study.
double posterior_mean_theta1_im(const TwoPropData& data, const TwoPropHyper& hyper);

}  // namespace imprior

#endif
