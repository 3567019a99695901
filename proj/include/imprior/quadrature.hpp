#ifndef IMPRIOR_QUADRATURE_HPP
#define IMPRIOR_QUADRATURE_HPP

#include <functional>

namespace imprior {

/// Integrand on (0,1); receives x and 1-x (the latter computed without
/// cancellation so endpoint singularities stay accurate).
using UnitIntegrand = std::function<double(double x, double one_minus_x)>;
using UnitIntegrand2D =
    std::function<double(double x, double cx, double y, double cy)>;

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int levels = 0;
  bool converged = false;
};

/// Adaptive tanh-sinh quadrature over (0,1). Handles integrable endpoint
/// singularities; refines by level doubling until the relative change falls
/// below tol.
QuadratureResult integrate01_ex(const UnitIntegrand& f, double tol,
                                int max_level = 13);
double integrate01(const UnitIntegrand& f, double tol, int max_level = 13);

/// Tensorized tanh-sinh over the unit square.
QuadratureResult integrate01_2d_ex(const UnitIntegrand2D& f, double tol,
                                   int max_level = 10);
double integrate01_2d(const UnitIntegrand2D& f, double tol,
                      int max_level = 10);

/// Adaptive Simpson on [a, b] for smooth (possibly sharply peaked) integrands.
double integrate_interval(const std::function<double(double)>& f, double a,
                          double b, double tol);

}  // namespace imprior

#endif
