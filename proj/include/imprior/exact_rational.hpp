#ifndef IMPRIOR_EXACT_RATIONAL_HPP
#define IMPRIOR_EXACT_RATIONAL_HPP

#include <gmpxx.h>

namespace imprior::exact {

/// Exact-rational mirror of the Bayes-factor algebra, used as a test oracle.
/// Every quantity here is assembled from rising-factorial Beta-function
/// ratios, so it is exact for arbitrary *rational* hyperparameters (the
/// production path works in log space with doubles). This is deliberately a
/// different algebraic route from the implementation it checks.
using Rational = mpq_class;

/// a (a+1) ... (a+k-1) for integer k >= 0.
Rational rising(const Rational& a, long long k);

/// B(a+da, b+db) / B(a, b) for integer shifts da, db >= 0.
Rational beta_ratio(const Rational& a, const Rational& b, long long da,
                    long long db);

Rational binom(long long n, long long k);
Rational pow_int(const Rational& x, long long p);  // p may be negative

Rational binom_pmf(long long x, long long n, const Rational& theta);

/// K(a1, a2, h, theta0) via the alternating sum, exactly.
Rational k_const(const Rational& a1, const Rational& a2, int h,
                 const Rational& theta0);

Rational bf10_moment(long long y, long long n, const Rational& a1,
                     const Rational& a2, int h, const Rational& theta0);

Rational bf10_intrinsic_moment(long long y, long long n, const Rational& b,
                               int h, int t, const Rational& theta0);

/// Beta density at rational theta; requires integer shape parameters so the
/// normalizer stays rational.
Rational beta_pdf_int(const Rational& theta, long long a, long long b);

Rational intrinsic_prior_density_int(const Rational& theta, long long b, int t,
                                     const Rational& theta0);

// --- two-proportion mirror ---

Rational k_const2(const Rational& a11, const Rational& a12, const Rational& a21,
                  const Rational& a22, int h);

Rational m0_training(long long x1, long long x2, long long t1, long long t2,
                     const Rational& b0);

Rational bf10_base2(long long y1, long long n1, long long y2, long long n2,
                    const Rational& a11, const Rational& a12,
                    const Rational& a21, const Rational& a22,
                    const Rational& b0);

Rational bf10_moment2(long long y1, long long n1, long long y2, long long n2,
                      const Rational& a11, const Rational& a12,
                      const Rational& a21, const Rational& a22, int h,
                      const Rational& b0);

Rational bf10_intrinsic_moment2(long long y1, long long n1, long long y2,
                                long long n2, const Rational& b0,
                                const Rational& b1, const Rational& b2, int h,
                                int t1, int t2);

/// E[theta1^extra (theta1-theta2)^{2h}] under the product Beta prior.
Rational tilted_moment(const Rational& a11, const Rational& a12,
                       const Rational& a21, const Rational& a22, int h,
                       int extra);

/// Model-wise posterior means used by the cross-validation oracle.
Rational posterior_mean_m0(long long y1, long long n1, long long y2,
                           long long n2, const Rational& b0);
Rational posterior_mean_theta1_im(long long y1, long long n1, long long y2,
                                  long long n2, const Rational& b0,
                                  const Rational& b1, const Rational& b2, int h,
                                  int t1, int t2);

double to_double(const Rational& q);

}  // namespace imprior::exact

#endif
