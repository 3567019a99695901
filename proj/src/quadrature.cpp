#include "imprior/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace imprior {

namespace {

constexpr double kPiHalf = 1.57079632679489661923;
constexpr double kTMax = 4.7;  // transform underflows in double beyond this

struct Node {
  double x;
  double cx;  // 1 - x without cancellation
  double weight;
};

// tanh-sinh transform: x(t) = 1/(1+e^{-2u}), u = (pi/2) sinh t
Node make_node(double t) {
  const double u = kPiHalf * std::sinh(t);
  const double x = 1.0 / (1.0 + std::exp(-2.0 * u));
  const double cx = 1.0 / (1.0 + std::exp(2.0 * u));
  const double ch = std::cosh(u);
  const double w = kPiHalf * std::cosh(t) / (2.0 * ch * ch);
  return {x, cx, w};
}

bool usable(const Node& nd) {
  // x or cx may round to 1.0 deep in a tail; integrands receive both and are
  // expected to cope (only the stable small side matters there)
  return nd.x > 0.0 && nd.cx > 0.0 && nd.weight > 0.0;
}

double eval_node(const UnitIntegrand& f, const Node& nd) {
  if (!usable(nd)) return 0.0;
  const double v = f(nd.x, nd.cx);
  return std::isfinite(v) ? v * nd.weight : 0.0;
}

}  // namespace

QuadratureResult integrate01_ex(const UnitIntegrand& f, double tol,
                                int max_level) {
  QuadratureResult res;
  // level 0: integer abscissas; level m adds odd multiples of h = 2^-m,
  // keeping the grids nested so prior evaluations are reused.
  double sum = 0.0;
  for (int k = -4; k <= 4; ++k) sum += eval_node(f, make_node(k));
  double prev = sum;
  res.value = prev;
  res.levels = 0;
  for (int m = 1; m <= max_level; ++m) {
    const double h = std::ldexp(1.0, -m);
    const long long jmax = static_cast<long long>(std::floor(kTMax / h));
    for (long long j = -jmax; j <= jmax; ++j) {
      if ((j & 1LL) == 0) continue;  // even multiples already present
      sum += eval_node(f, make_node(j * h));
    }
    const double estimate = h * sum;
    res.levels = m;
    res.value = estimate;
    if (m >= 3) {
      const double change = std::abs(estimate - prev);
      res.error_estimate = change;
      if (change <= tol * std::max(std::abs(estimate), 1e-300)) {
        res.converged = true;
        return res;
      }
    }
    prev = estimate;
  }
  return res;
}

double integrate01(const UnitIntegrand& f, double tol, int max_level) {
  const auto r = integrate01_ex(f, tol, max_level);
  if (!r.converged)
    throw std::runtime_error("integrate01: tanh-sinh did not converge");
  return r.value;
}

QuadratureResult integrate01_2d_ex(const UnitIntegrand2D& f, double tol,
                                   int max_level) {
  QuadratureResult res;
  double prev = 0.0;
  for (int m = 3; m <= max_level; ++m) {
    const double h = std::ldexp(1.0, -m);
    const long long jmax = static_cast<long long>(std::floor(kTMax / h));
    std::vector<Node> nodes;
    nodes.reserve(2 * jmax + 1);
    for (long long j = -jmax; j <= jmax; ++j) nodes.push_back(make_node(j * h));
    double sum = 0.0;
    for (const auto& a : nodes) {
      if (!usable(a)) continue;
      double row = 0.0;
      for (const auto& b : nodes) {
        if (!usable(b)) continue;
        const double v = f(a.x, a.cx, b.x, b.cx);
        if (std::isfinite(v)) row += v * b.weight;
      }
      sum += row * a.weight;
    }
    const double estimate = h * h * sum;
    res.levels = m;
    res.value = estimate;
    if (m > 3) {
      const double change = std::abs(estimate - prev);
      res.error_estimate = change;
      if (change <= tol * std::max(std::abs(estimate), 1e-300)) {
        res.converged = true;
        return res;
      }
    }
    prev = estimate;
  }
  return res;
}

double integrate01_2d(const UnitIntegrand2D& f, double tol, int max_level) {
  const auto r = integrate01_2d_ex(f, tol, max_level);
  if (!r.converged)
    throw std::runtime_error("integrate01_2d: tanh-sinh did not converge");
  return r.value;
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double fa, double b, double fb, double m, double fm,
                        double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, tol / 2.0,
                          depth - 1) +
         adaptive_simpson(f, m, fm, b, fb, rm, frm, right, tol / 2.0,
                          depth - 1);
}

}  // namespace

double integrate_interval(const std::function<double(double)>& f, double a,
                          double b, double tol) {
  // seed panels so narrow peaks are not missed by the first parabola
  const int panels = 16;
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * h, hi = lo + h, mid = 0.5 * (lo + hi);
    const double flo = f(lo), fhi = f(hi), fmid = f(mid);
    const double whole = simpson(lo, flo, hi, fhi, fmid);
    total += adaptive_simpson(f, lo, flo, hi, fhi, mid, fmid, whole,
                              tol / panels, 48);
  }
  return total;
}

}  // namespace imprior
