#include "imprior/exact_rational.hpp"

#include <stdexcept>

namespace imprior::exact {

namespace {
// gmpxx has no operator overloads for long long
inline Rational rat(long long v) { return Rational(static_cast<long>(v)); }
}  // namespace

Rational rising(const Rational& a, long long k) {
  if (k < 0) throw std::domain_error("rising: k must be >= 0");
  Rational acc = 1;
  Rational term = a;
  for (long long i = 0; i < k; ++i) {
    acc *= term;
    term += 1;
  }
  return acc;
}

Rational beta_ratio(const Rational& a, const Rational& b, long long da,
                    long long db) {
  return rising(a, da) * rising(b, db) / rising(a + b, da + db);
}

Rational binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  mpz_class z;
  mpz_bin_uiui(z.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Rational(z);
}

Rational pow_int(const Rational& x, long long p) {
  if (p == 0) return 1;
  const bool neg = p < 0;
  const unsigned long e = static_cast<unsigned long>(neg ? -p : p);
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), x.get_num().get_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), x.get_den().get_mpz_t(), e);
  out.canonicalize();
  if (neg) out = 1 / out;
  return out;
}

Rational binom_pmf(long long x, long long n, const Rational& theta) {
  if (x < 0 || x > n) throw std::domain_error("binom_pmf: need 0 <= x <= n");
  return binom(n, x) * pow_int(theta, x) * pow_int(1 - theta, n - x);
}

Rational k_const(const Rational& a1, const Rational& a2, int h,
                 const Rational& theta0) {
  Rational sum = 0;
  for (int j = 0; j <= 2 * h; ++j) {
    Rational term = binom(2 * h, j) * pow_int(theta0, 2 * h - j) *
                    beta_ratio(a1, a2, j, 0);
    if (j % 2 == 1) term = -term;
    sum += term;
  }
  return sum;
}

Rational bf10_moment(long long y, long long n, const Rational& a1,
                     const Rational& a2, int h, const Rational& theta0) {
  if (n == 0) return 1;
  const Rational conjugate = beta_ratio(a1, a2, y, n - y) /
                             (pow_int(theta0, y) * pow_int(1 - theta0, n - y));
  if (h == 0) return conjugate;
  return k_const(a1 + rat(y), a2 + rat(n - y), h, theta0) /
         k_const(a1, a2, h, theta0) *
         conjugate;
}

Rational bf10_intrinsic_moment(long long y, long long n, const Rational& b,
                               int h, int t, const Rational& theta0) {
  Rational sum = 0;
  for (int x = 0; x <= t; ++x)
    sum += bf10_moment(y, n, b + rat(x), b + rat(t - x), h, theta0) *
           binom_pmf(x, t, theta0);
  return sum;
}

Rational beta_pdf_int(const Rational& theta, long long a, long long b) {
  if (a < 1 || b < 1)
    throw std::domain_error("beta_pdf_int: shapes must be positive integers");
  // 1/B(a,b) = (a+b-1)! / ((a-1)! (b-1)!) = (a+b-1) C(a+b-2, a-1)
  const Rational inv_beta = rat(a + b - 1) * binom(a + b - 2, a - 1);
  return pow_int(theta, a - 1) * pow_int(1 - theta, b - 1) * inv_beta;
}

Rational intrinsic_prior_density_int(const Rational& theta, long long b, int t,
                                     const Rational& theta0) {
  Rational sum = 0;
  for (int x = 0; x <= t; ++x)
    sum += beta_pdf_int(theta, b + x, b + t - x) * binom_pmf(x, t, theta0);
  return sum;
}

Rational k_const2(const Rational& a11, const Rational& a12, const Rational& a21,
                  const Rational& a22, int h) {
  Rational sum = 0;
  for (int j = 0; j <= 2 * h; ++j) {
    Rational term = binom(2 * h, j) * beta_ratio(a11, a12, j, 0) *
                    beta_ratio(a21, a22, 2 * h - j, 0);
    if (j % 2 == 1) term = -term;
    sum += term;
  }
  return sum;
}

Rational m0_training(long long x1, long long x2, long long t1, long long t2,
                     const Rational& b0) {
  return binom(t1, x1) * binom(t2, x2) *
         beta_ratio(b0, b0, x1 + x2, t1 + t2 - x1 - x2);
}

Rational bf10_base2(long long y1, long long n1, long long y2, long long n2,
                    const Rational& a11, const Rational& a12,
                    const Rational& a21, const Rational& a22,
                    const Rational& b0) {
  return beta_ratio(a11, a12, y1, n1 - y1) * beta_ratio(a21, a22, y2, n2 - y2) /
         beta_ratio(b0, b0, y1 + y2, n1 + n2 - y1 - y2);
}

Rational bf10_moment2(long long y1, long long n1, long long y2, long long n2,
                      const Rational& a11, const Rational& a12,
                      const Rational& a21, const Rational& a22, int h,
                      const Rational& b0) {
  if (n1 == 0 && n2 == 0) return 1;
  const Rational base = bf10_base2(y1, n1, y2, n2, a11, a12, a21, a22, b0);
  if (h == 0) return base;
  return k_const2(a11 + rat(y1), a12 + rat(n1 - y1), a21 + rat(y2),
                  a22 + rat(n2 - y2), h) /
         k_const2(a11, a12, a21, a22, h) * base;
}

Rational bf10_intrinsic_moment2(long long y1, long long n1, long long y2,
                                long long n2, const Rational& b0,
                                const Rational& b1, const Rational& b2, int h,
                                int t1, int t2) {
  Rational sum = 0;
  for (int x1 = 0; x1 <= t1; ++x1)
    for (int x2 = 0; x2 <= t2; ++x2)
      sum += bf10_moment2(y1, n1, y2, n2, b1 + rat(x1), b1 + rat(t1 - x1),
                          b2 + rat(x2), b2 + rat(t2 - x2), h, b0) *
             m0_training(x1, x2, t1, t2, b0);
  return sum;
}

Rational tilted_moment(const Rational& a11, const Rational& a12,
                       const Rational& a21, const Rational& a22, int h,
                       int extra) {
  Rational sum = 0;
  for (int j = 0; j <= 2 * h; ++j) {
    Rational term = binom(2 * h, j) * beta_ratio(a11, a12, 2 * h - j + extra, 0) *
                    beta_ratio(a21, a22, j, 0);
    if (j % 2 == 1) term = -term;
    sum += term;
  }
  return sum;
}

Rational posterior_mean_m0(long long y1, long long n1, long long y2,
                           long long n2, const Rational& b0) {
  return (b0 + rat(y1) + rat(y2)) / (2 * b0 + rat(n1) + rat(n2));
}

Rational posterior_mean_theta1_im(long long y1, long long n1, long long y2,
                                  long long n2, const Rational& b0,
                                  const Rational& b1, const Rational& b2, int h,
                                  int t1, int t2) {
  Rational wsum = 0, wmu = 0;
  for (int x1 = 0; x1 <= t1; ++x1) {
    for (int x2 = 0; x2 <= t2; ++x2) {
      const Rational c11 = b1 + rat(x1), c12 = b1 + rat(t1 - x1);
      const Rational c21 = b2 + rat(x2), c22 = b2 + rat(t2 - x2);
      const Rational d11 = c11 + rat(y1), d12 = c12 + rat(n1 - y1);
      const Rational d21 = c21 + rat(y2), d22 = c22 + rat(n2 - y2);
      const Rational tilted0 = tilted_moment(d11, d12, d21, d22, h, 0);
      const Rational marg = tilted0 / tilted_moment(c11, c12, c21, c22, h, 0) *
                            beta_ratio(c11, c12, y1, n1 - y1) *
                            beta_ratio(c21, c22, y2, n2 - y2);
      const Rational w = m0_training(x1, x2, t1, t2, b0) * marg;
      const Rational mu = tilted_moment(d11, d12, d21, d22, h, 1) / tilted0;
      wsum += w;
      wmu += w * mu;
    }
  }
  return wmu / wsum;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace imprior::exact
