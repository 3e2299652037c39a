#ifndef FRACDIFF_INTEGRAL_HPP
#define FRACDIFF_INTEGRAL_HPP

#include "fracdiff/expr.hpp"
#include "fracdiff/numeric.hpp"

namespace fracdiff {

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  int subdivisions = 0;
  bool used_substitution = false;
};

inline constexpr int default_quad_budget = 10000;

/// Globally adaptive 10/21-point Gauss-Kronrod quadrature of f over [lo, hi]
/// (hi < lo integrates backwards). Stops once the summed error estimate is
/// within tol * max(1, |value|); throws BudgetExceeded if `budget`
/// bisections are not enough.
QuadResult integrate_adaptive(const RealFunction& f, double lo, double hi, double tol,
                              int budget = default_quad_budget);

/// Fractional integral I_a^alpha f(t) = int_a^t f(x) x^(alpha-1) dx.
///
/// For a > 0 the weighted integrand is integrated directly. For a = 0 the
/// weight singularity is removed with u = x^alpha / alpha, leaving
/// int_0^{t^alpha/alpha} f((alpha u)^(1/alpha)) du.
///
/// Throws SingularityError (a = 0, alpha <= 0), InvalidArgument (a < 0,
/// t < a, t <= 0), BudgetExceeded, DomainError.
QuadResult alpha_integral(const Expr& f, double a, double t, double alpha, double tol,
                          int budget = default_quad_budget);
QuadResult alpha_integral(const RealFunction& f, double a, double t, double alpha, double tol,
                          int budget = default_quad_budget);

/// Same integral, always through the u = x^alpha / alpha substitution.
QuadResult alpha_integral_substituted(const RealFunction& f, double a, double t, double alpha,
                                      double tol, int budget = default_quad_budget);

/// |D^alpha(I_a^alpha f)(t) - f(t)| with the outer derivative taken by the
/// limit estimator on the quadrature-defined function. At t == a the check
/// moves to t = a + 1e-3 where the integral is not identically zero.
/// alpha in (0, 1). Throws NonConvergence if the estimator does not settle.
double check_inverse(const Expr& f, double a, double t, double alpha, const LimitConfig& cfg = {},
                     double tol = 1e-12);

} // namespace fracdiff

#endif // FRACDIFF_INTEGRAL_HPP
