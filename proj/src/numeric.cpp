#include "fracdiff/numeric.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "fracdiff/extrapolation.hpp"

namespace fracdiff {

Alpha::Alpha(unsigned n, double beta) : n_(n), beta_(beta)
{
  if (!(beta > 0.0 && beta <= 1.0))
    throw InvalidArgument("fractional residue must lie in (0, 1], got " + std::to_string(beta));
}

Alpha Alpha::from_total(double alpha)
{
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw InvalidArgument("order alpha must be positive and finite, got " + std::to_string(alpha));
  const double n = std::ceil(alpha) - 1.0;
  return Alpha(static_cast<unsigned>(n), alpha - n);
}

double truncated_exp(double x, TruncationOrder k)
{
  if (k.is_infinite()) return std::exp(x);
  double sum = 1.0;
  double term = 1.0;
  for (unsigned i = 1; i <= k.k(); ++i) {
    term *= x / static_cast<double>(i);
    sum += term;
  }
  return sum;
}

const DerivEstimate& require_converged(const DerivEstimate& est, std::string_view what)
{
  if (!est.converged) {
    throw NonConvergence(std::string(what) + ": limit did not stabilise after "
                         + std::to_string(est.levels_used) + " levels (value "
                         + std::to_string(est.value) + ", error estimate "
                         + std::to_string(est.err_estimate) + ")");
  }
  return est;
}

namespace {

using Growth = double (*)(double, TruncationOrder);

void validate(double t, double beta, const LimitConfig& cfg)
{
  if (!(t > 0.0) || !std::isfinite(t))
    throw InvalidArgument("evaluation point must be positive, got t = " + std::to_string(t));
  if (!(cfg.ratio > 0.0 && cfg.ratio < 1.0))
    throw InvalidArgument("LimitConfig.ratio must lie in (0, 1)");
  if (cfg.max_levels < 2) throw InvalidArgument("LimitConfig.max_levels must be at least 2");
  if (!(cfg.target_rtol > 0.0)) throw InvalidArgument("LimitConfig.target_rtol must be positive");
  if (cfg.eps0 && !(*cfg.eps0 > 0.0)) throw InvalidArgument("LimitConfig.eps0 must be positive");
  const double eps0 = cfg.eps0.value_or(1e-2 * std::pow(t, beta));
  const double smallest = eps0 * std::pow(cfg.ratio, cfg.max_levels);
  if (!(smallest > std::numeric_limits<double>::epsilon() * std::pow(t, beta)))
    throw InvalidArgument("LimitConfig: smallest step eps0*ratio^max_levels is below roundoff");
}

/// Shared limit machinery: samples the difference quotient of
/// f(t * growth(eps * t^-beta, k)) on the step schedule and extrapolates.
DerivEstimate estimate(const RealFunction& f, double t, double beta, Growth growth,
                       TruncationOrder k, const LimitConfig& cfg)
{
  validate(t, beta, cfg);
  const double scale = std::pow(t, -beta);
  const double eps0 = cfg.eps0.value_or(1e-2 * std::pow(t, beta));
  const bool symmetric = cfg.mode == QuotientMode::symmetric;

  const double f0 = f(t);
  RichardsonTableau tableau(cfg.ratio, symmetric ? 2 : 1);
  DerivEstimate out;

  double h = eps0;
  for (int level = 0; level < cfg.max_levels; ++level, h *= cfg.ratio) {
    const double f_up = f(t * growth(h * scale, k));
    double q;
    double cont;
    if (symmetric) {
      const double f_down = f(t * growth(-h * scale, k));
      q = (f_up - f_down) / (2.0 * h);
      cont = std::max(std::fabs(f_up - f0), std::fabs(f_down - f0));
    } else {
      q = (f_up - f0) / h;
      cont = std::fabs(f_up - f0);
    }
    if (!std::isfinite(q)) break;

    tableau.push(q);
    out.steps.push_back(h);
    out.continuity_by_level.push_back(cont);
    out.continuity_residual = std::max(out.continuity_residual, cont);

    const double tol = cfg.target_rtol * std::max(1.0, std::fabs(tableau.best()));
    if (tableau.rows() >= 3 && tableau.err_estimate() <= tol) {
      out.converged = true;
      break;
    }
    if (tableau.diverging()) break;
  }

  out.levels_used = tableau.rows();
  out.value = out.levels_used > 0 ? tableau.best() : std::numeric_limits<double>::quiet_NaN();
  out.err_estimate = tableau.err_estimate();
  return out;
}

double exp_growth(double x, TruncationOrder) { return std::exp(x); }

RealFunction bind(const Expr& f)
{
  return [f](double x) { return eval(f, x); };
}

void require_fractional(Alpha alpha, const char* op)
{
  if (alpha.n() != 0)
    throw InvalidArgument(std::string(op) + " takes alpha in (0, 1]; use alpha_deriv_higher for larger orders");
}

} // namespace

DerivEstimate alpha_deriv_limit(const RealFunction& f, double t, Alpha alpha, const LimitConfig& cfg)
{
  require_fractional(alpha, "alpha_deriv_limit");
  return estimate(f, t, alpha.beta(), exp_growth, TruncationOrder::infinite(), cfg);
}

DerivEstimate alpha_deriv_limit(const Expr& f, double t, Alpha alpha, const LimitConfig& cfg)
{
  return alpha_deriv_limit(bind(f), t, alpha, cfg);
}

DerivEstimate alpha_deriv_k(const Expr& f, double t, Alpha alpha, TruncationOrder k, const LimitConfig& cfg)
{
  require_fractional(alpha, "alpha_deriv_k");
  if (!k.is_infinite() && k.k() == 0)
    throw InvalidK("truncation order k = 0 makes the difference quotient identically zero");
  if (k.is_infinite()) return alpha_deriv_limit(f, t, alpha, cfg);
  return estimate(bind(f), t, alpha.beta(), truncated_exp, k, cfg);
}

DerivEstimate alpha_deriv_higher(const Expr& f, double t, Alpha alpha, const LimitConfig& cfg)
{
  if (alpha.n() == 0)
    throw InvalidArgument("alpha_deriv_higher needs alpha > 1; use alpha_deriv_limit");
  // t^{n - alpha} = t^{-beta}: the first-order machinery on f^(n).
  const Expr g = nth_diff(f, alpha.n());
  return estimate(bind(g), t, alpha.beta(), exp_growth, TruncationOrder::infinite(), cfg);
}

DerivEstimate alpha_deriv(const Expr& f, double t, Alpha alpha, const LimitConfig& cfg)
{
  return alpha.n() == 0 ? alpha_deriv_limit(f, t, alpha, cfg) : alpha_deriv_higher(f, t, alpha, cfg);
}

DerivEstimate alpha_deriv_at_zero(const Expr& f, Alpha alpha, const LimitConfig& cfg)
{
  require_fractional(alpha, "alpha_deriv_at_zero");
  constexpr int samples = 11;
  constexpr double t0 = 0.1;
  constexpr double shrink = 0.5;

  // A fixed eps0 is meaningless across a sweep of t; use the per-point default.
  LimitConfig inner = cfg;
  inner.eps0.reset();

  std::array<double, samples> seq{};
  bool all_converged = true;
  double t = t0;
  DerivEstimate last;
  for (int j = 0; j < samples; ++j, t *= shrink) {
    last = alpha_deriv_limit(f, t, alpha, inner);
    all_converged = all_converged && last.converged;
    seq[j] = last.value;
  }

  const LimitValue lim = wynn_epsilon(seq);
  DerivEstimate out;
  out.value = lim.value;
  out.err_estimate = lim.err_estimate;
  out.levels_used = samples;
  out.converged = all_converged && std::isfinite(lim.value)
                  && lim.err_estimate <= cfg.target_rtol * std::max(1.0, std::fabs(lim.value));
  out.continuity_residual = last.continuity_residual;
  out.continuity_by_level = last.continuity_by_level;
  out.steps = last.steps;
  return out;
}

} // namespace fracdiff
