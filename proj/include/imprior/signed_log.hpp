#ifndef IMPRIOR_SIGNED_LOG_HPP
#define IMPRIOR_SIGNED_LOG_HPP

#include <cmath>
#include <cstdlib>
#include <limits>
#include <span>
#include <stdexcept>

namespace imprior {

/// A real number stored as (sign, log|value|). sign == 0 encodes exact zero,
/// in which case log_magnitude is -infinity.
struct SignedLogValue {
  double log_magnitude = -std::numeric_limits<double>::infinity();
  int sign = 0;

  static SignedLogValue zero() { return {}; }

  static SignedLogValue from_log(double log_mag, int sgn) {
    if (sgn == 0) return zero();
    if (!std::isfinite(log_mag))
      throw std::invalid_argument("SignedLogValue: non-finite log magnitude with nonzero sign");
    return {log_mag, sgn < 0 ? -1 : +1};
  }

  static SignedLogValue from_value(double v) {
    if (v == 0.0) return zero();
    return {std::log(std::abs(v)), v < 0 ? -1 : +1};
  }

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }
};

struct SignedLogSum {
  SignedLogValue value;
  /// log of the sum of absolute term magnitudes; -inf for an empty/zero sum.
  double log_abs_sum = -std::numeric_limits<double>::infinity();
  /// |sum| / sum(|terms|), 0 on exact cancellation, 1 if nothing cancels.
  double retained_fraction = 1.0;
  /// Set when retained_fraction < 1e-12 (catastrophic cancellation).
  bool cancellation_flagged = false;
};

inline constexpr double kCancellationFlagThreshold = 1e-12;

/// Sums signed log-space terms by factoring out the largest magnitude.
inline SignedLogSum signed_log_sum(std::span<const SignedLogValue> terms) {
  SignedLogSum out;
  double max_log = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms)
    if (t.sign != 0 && t.log_magnitude > max_log) max_log = t.log_magnitude;
  if (!std::isfinite(max_log)) {
    out.value = SignedLogValue::zero();
    return out;
  }
  double acc = 0.0, acc_abs = 0.0;
  for (const auto& t : terms) {
    if (t.sign == 0) continue;
    const double m = std::exp(t.log_magnitude - max_log);
    acc += t.sign * m;
    acc_abs += m;
  }
  out.log_abs_sum = max_log + std::log(acc_abs);
  if (acc == 0.0) {
    out.value = SignedLogValue::zero();
    out.retained_fraction = 0.0;
    out.cancellation_flagged = true;
    return out;
  }
  out.value = SignedLogValue{max_log + std::log(std::abs(acc)), acc < 0 ? -1 : +1};
  out.retained_fraction = std::abs(acc) / acc_abs;
  out.cancellation_flagged = out.retained_fraction < kCancellationFlagThreshold;
  return out;
}

/// Neumaier compensated summation; kept as a linear-space cross-check path
/// for the alternating sums handled by signed_log_sum.
inline double compensated_sum(std::span<const double> xs) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace imprior

#endif
