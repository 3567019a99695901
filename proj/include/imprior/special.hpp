#ifndef IMPRIOR_SPECIAL_HPP
#define IMPRIOR_SPECIAL_HPP

#include <cmath>
#include <span>

namespace imprior {

/// log Gamma(x) for x > 0, Lanczos approximation with reflection for x < 0.5.
/// Relative error below 1e-13 on [1e-3, 1e8]. Throws std::domain_error
/// for non-positive or non-finite arguments.
double log_gamma(double x);

/// log B(a, b) for a, b > 0.
double log_beta(double a, double b);

/// log C(n, k) for real n >= k >= 0.
double log_choose(double n, double k);

/// log of the Bin(x | n, theta) probability mass. theta in {0,1} follows the
/// degenerate convention (all mass at x = n*theta). Throws std::domain_error
/// for x outside [0, n] or theta outside [0, 1].
double log_binom_pmf(long long x, long long n, double theta);

/// log(1 + e^x) without overflow.
inline double log1pexp(double x) {
  if (x > 35.0) return x + std::log1p(std::exp(-x));
  if (x < -700.0) return 0.0;
  return std::log1p(std::exp(x));
}

/// log(e^a + e^b).
inline double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

/// log sum_i e^{v_i}; -inf on empty input.
double log_sum_exp(std::span<const double> vals);

}  // namespace imprior

#endif
