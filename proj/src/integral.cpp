#include "fracdiff/integral.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace fracdiff {

namespace {

struct Segment {
  double lo;
  double hi;
  double value;
  double err;
};

struct LargerError {
  bool operator()(const Segment& a, const Segment& b) const { return a.err < b.err; }
};

/// One 10/21-point Gauss-Kronrod panel with the QUADPACK error heuristic.
Segment gk21(const RealFunction& f, double lo, double hi)
{
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
  using Gauss = boost::math::quadrature::gauss<double, 10>;
  static const auto& xk = Kronrod::abscissa();
  static const auto& wk = Kronrod::weights();
  static const auto& wg = Gauss::weights();

  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);

  std::vector<double> f1(xk.size()), f2(xk.size());
  double resk = wk[0] * fc;
  double resg = 0.0;
  double resabs = std::fabs(resk);
  for (std::size_t j = 1; j < xk.size(); ++j) {
    const double dx = half * xk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    resk += wk[j] * (f1[j] + f2[j]);
    resabs += wk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
    if (j % 2 == 1) resg += wg[(j - 1) / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * resk;
  double resasc = wk[0] * std::fabs(fc - mean);
  for (std::size_t j = 1; j < xk.size(); ++j)
    resasc += wk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));

  const double width = std::fabs(half);
  resabs *= width;
  resasc *= width;
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {lo, hi, resk * half, err};
}

void check_finite(double x, const char* what)
{
  if (!std::isfinite(x)) throw InvalidArgument(std::string(what) + " must be finite");
}

} // namespace

QuadResult integrate_adaptive(const RealFunction& f, double lo, double hi, double tol, int budget)
{
  check_finite(lo, "lower limit");
  check_finite(hi, "upper limit");
  if (!(tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
  if (lo == hi) return {};
  if (hi < lo) {
    QuadResult r = integrate_adaptive(f, hi, lo, tol, budget);
    r.value = -r.value;
    return r;
  }

  std::priority_queue<Segment, std::vector<Segment>, LargerError> queue;
  const Segment first = gk21(f, lo, hi);
  queue.push(first);
  double value = first.value;
  double err = first.err;
  double frozen_value = 0.0; // segments too narrow to split further
  double frozen_err = 0.0;
  int subdivisions = 0;

  auto done = [&] { return err + frozen_err <= tol * std::max(1.0, std::fabs(value + frozen_value)); };

  while (!done()) {
    if (queue.empty())
      throw BudgetExceeded("quadrature reached the roundoff limit with error estimate "
                           + std::to_string(frozen_err));
    if (subdivisions >= budget)
      throw BudgetExceeded("quadrature used all " + std::to_string(budget)
                           + " subdivisions; error estimate " + std::to_string(err + frozen_err));
    const Segment s = queue.top();
    queue.pop();
    const double mid = 0.5 * (s.lo + s.hi);
    if (!(mid > s.lo && mid < s.hi)) {
      value -= s.value;
      err -= s.err;
      frozen_value += s.value;
      frozen_err += s.err;
      continue;
    }
    const Segment left = gk21(f, s.lo, mid);
    const Segment right = gk21(f, mid, s.hi);
    ++subdivisions;
    value += left.value + right.value - s.value;
    err += left.err + right.err - s.err;
    queue.push(left);
    queue.push(right);
  }

  // Re-sum to shed the drift of the running totals.
  double total = frozen_value;
  double total_err = frozen_err;
  while (!queue.empty()) {
    total += queue.top().value;
    total_err += queue.top().err;
    queue.pop();
  }
  return {total, total_err, subdivisions, false};
}

namespace {

void check_integral_args(double a, double t, double alpha)
{
  check_finite(a, "lower bound a");
  check_finite(t, "upper bound t");
  check_finite(alpha, "alpha");
  if (a < 0.0) throw InvalidArgument("lower bound a must be non-negative");
  if (t < a) throw InvalidArgument("upper bound t must not be below a");
  if (!(t > 0.0)) throw InvalidArgument("upper bound t must be positive");
  if (a == 0.0 && !(alpha > 0.0))
    throw SingularityError("x^(alpha-1) is not integrable at 0 for alpha <= 0");
}

} // namespace

QuadResult alpha_integral_substituted(const RealFunction& f, double a, double t, double alpha,
                                      double tol, int budget)
{
  check_integral_args(a, t, alpha);
  if (!(alpha > 0.0)) throw InvalidArgument("substitution u = x^alpha/alpha needs alpha > 0");
  const double inv = 1.0 / alpha;
  auto g = [&](double u) { return f(std::pow(alpha * u, inv)); };
  QuadResult r = integrate_adaptive(g, std::pow(a, alpha) / alpha, std::pow(t, alpha) / alpha, tol, budget);
  r.used_substitution = true;
  return r;
}

QuadResult alpha_integral(const RealFunction& f, double a, double t, double alpha, double tol, int budget)
{
  check_integral_args(a, t, alpha);
  if (a == 0.0) return alpha_integral_substituted(f, a, t, alpha, tol, budget);
  const double w = alpha - 1.0;
  return integrate_adaptive([&](double x) { return f(x) * std::pow(x, w); }, a, t, tol, budget);
}

QuadResult alpha_integral(const Expr& f, double a, double t, double alpha, double tol, int budget)
{
  return alpha_integral([&f](double x) { return eval(f, x); }, a, t, alpha, tol, budget);
}

double check_inverse(const Expr& f, double a, double t, double alpha, const LimitConfig& cfg, double tol)
{
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidArgument("check_inverse takes alpha in (0, 1), got " + std::to_string(alpha));
  if (t < a) throw InvalidArgument("check_inverse needs t >= a");
  if (t == a) t = a + 1e-3;

  const double at_t = alpha_integral(f, a, t, alpha, tol).value;
  const double w = alpha - 1.0;
  auto weighted = [&f, w](double x) { return eval(f, x) * std::pow(x, w); };

  // I(s) = I(t) + int_t^s, each sample a fresh quadrature.
  RealFunction integral_of = [&](double s) {
    return s == t ? at_t : at_t + integrate_adaptive(weighted, t, s, tol).value;
  };
  const DerivEstimate d = alpha_deriv_limit(integral_of, t, Alpha(0, alpha), cfg);
  require_converged(d, "D^alpha of the fractional integral");
  return std::fabs(d.value - eval(f, t));
}

} // namespace fracdiff
