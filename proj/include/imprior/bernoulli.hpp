#ifndef IMPRIOR_BERNOULLI_HPP
#define IMPRIOR_BERNOULLI_HPP

#include <stdexcept>

namespace imprior {

/// Raised when an alternating sum loses more relative precision than the
/// 1e-8 escalation threshold; callers may retry via quadrature.
class CancellationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class KConstPolicy {
  Strict,              // escalate severe cancellation to CancellationError
  QuadratureFallback,  // rescue through adaptive quadrature instead
};

/// Point null theta = theta0 for a binomial proportion.
struct BernoulliNull {
  double theta0;
  explicit BernoulliNull(double t0) : theta0(t0) {
    if (!(t0 > 0.0 && t0 < 1.0))
      throw std::domain_error("BernoulliNull: theta0 must lie strictly in (0,1)");
  }
};

/// Hyperparameters (b, h, t) of an intrinsic moment prior family.
/// (h=0, t=0) denotes the default Beta(b,b) prior.
struct MomentPriorSpec {
  double b;
  int h;
  int t;
  MomentPriorSpec(double b_, int h_, int t_) : b(b_), h(h_), t(t_) {
    if (!(b > 0.0)) throw std::domain_error("MomentPriorSpec: b must be positive");
    if (h < 0 || t < 0) throw std::domain_error("MomentPriorSpec: h and t must be >= 0");
  }
};

struct BinData {
  long long y;
  long long n;
  BinData(long long y_, long long n_) : y(y_), n(n_) {
    if (n < 0 || y < 0 || y > n) throw std::domain_error("BinData: need 0 <= y <= n");
  }
};

/// K(a1,a2,h,theta0) = E[(theta-theta0)^{2h}] under Beta(a1,a2), via the
/// alternating binomial sum in signed log space.
double k_const(double a1, double a2, int h, double theta0,
               KConstPolicy policy = KConstPolicy::Strict);
double log_k_const(double a1, double a2, int h, double theta0,
                   KConstPolicy policy = KConstPolicy::Strict);

/// Quadrature evaluation of the same moment; rescue path and test oracle.
double log_k_const_quadrature(double a1, double a2, int h, double theta0);

/// Intrinsic prior density at theta (h must be 0 in spec).
double intrinsic_prior_density(double theta, const BernoulliNull& null,
                               const MomentPriorSpec& spec);

/// Intrinsic moment prior density at theta; vanishes at theta0 when h >= 1.
double intrinsic_moment_prior_density(double theta, const BernoulliNull& null,
                                      const MomentPriorSpec& spec);

/// Endpoint-accurate overloads taking 1-theta separately, for quadrature over
/// the whole interval when b < 1 makes the endpoints singular.
double intrinsic_prior_density(double theta, double one_minus_theta,
                               const BernoulliNull& null,
                               const MomentPriorSpec& spec);
double intrinsic_moment_prior_density(double theta, double one_minus_theta,
                                      const BernoulliNull& null,
                                      const MomentPriorSpec& spec);

/// Moment-prior Bayes factor against the point null, natural and log scale.
double bf10_moment(const BinData& data, double a1, double a2, int h,
                   const BernoulliNull& null,
                   KConstPolicy policy = KConstPolicy::Strict);
double log_bf10_moment(const BinData& data, double a1, double a2, int h,
                       const BernoulliNull& null,
                       KConstPolicy policy = KConstPolicy::Strict);

/// Intrinsic moment prior Bayes factor: mixture of bf10_moment over the
/// training distribution Bin(x|t,theta0).
double bf10_intrinsic_moment(const BinData& data, const BernoulliNull& null,
                             const MomentPriorSpec& spec,
                             KConstPolicy policy = KConstPolicy::Strict);
double log_bf10_intrinsic_moment(const BinData& data, const BernoulliNull& null,
                                 const MomentPriorSpec& spec,
                                 KConstPolicy policy = KConstPolicy::Strict);

/// P(M1 | y) under equal prior model odds.
double posterior_prob_m1(double bf10);
double posterior_prob_m1_from_log(double log_bf10);

}  // namespace imprior

#endif
