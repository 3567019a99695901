#include "imprior/special.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace imprior {

namespace {

// Lanczos coefficients for g = 607/128, 15 terms (Godfrey's set).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};
const double kLogSqrt2Pi = 0.91893853320467274178;

double lanczos_log_gamma(double x) {
  // valid for x >= 0.5
  double s = kLanczos[0];
  for (int k = 1; k < 15; ++k) s += kLanczos[k] / (x - 1.0 + k);
  const double t = x + kLanczosG - 0.5;
  return kLogSqrt2Pi + (x - 0.5) * std::log(t) - t + std::log(s);
}

}  // namespace

double log_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0)
    throw std::domain_error("log_gamma: argument must be positive and finite");
  if (x >= 0.5) return lanczos_log_gamma(x);
  // reflection: log Gamma(x) = log(pi / sin(pi x)) - log Gamma(1 - x)
  const double pi = 3.14159265358979323846;
  return std::log(pi / std::sin(pi * x)) - lanczos_log_gamma(1.0 - x);
}

double log_beta(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || a <= 0.0 || b <= 0.0)
    throw std::domain_error("log_beta: arguments must be positive and finite");
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double log_choose(double n, double k) {
  if (k < 0.0 || k > n) throw std::domain_error("log_choose: need 0 <= k <= n");
  if (k == 0.0 || k == n) return 0.0;
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

double log_binom_pmf(long long x, long long n, double theta) {
  if (n < 0 || x < 0 || x > n)
    throw std::domain_error("log_binom_pmf: need 0 <= x <= n");
  if (!(theta >= 0.0 && theta <= 1.0))
    throw std::domain_error("log_binom_pmf: theta must lie in [0, 1]");
  const double neg_inf = -std::numeric_limits<double>::infinity();
  if (theta == 0.0) return x == 0 ? 0.0 : neg_inf;
  if (theta == 1.0) return x == n ? 0.0 : neg_inf;
  return log_choose(static_cast<double>(n), static_cast<double>(x)) +
         x * std::log(theta) + (n - x) * std::log1p(-theta);
}

double log_sum_exp(std::span<const double> vals) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double v : vals) mx = std::max(mx, v);
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (double v : vals) s += std::exp(v - mx);
  return mx + std::log(s);
}

}  // namespace imprior
