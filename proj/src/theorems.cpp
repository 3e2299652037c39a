#include "fracdiff/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace fracdiff {

std::string_view to_string(Identity id) noexcept
{
  switch (id) {
    case Identity::linearity: return "linearity";
    case Identity::product: return "product";
    case Identity::quotient: return "quotient";
    case Identity::chain: return "chain";
  }
  return "?";
}

namespace {

void check_interval(double a, double b, double alpha)
{
  if (!(a > 0.0)) throw InvalidArgument("interval must start at a > 0");
  if (!(b > a)) throw InvalidArgument("interval needs b > a");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw InvalidArgument("alpha must lie in (0, 1], got " + std::to_string(alpha));
}

double sign(double x) { return (x > 0.0) - (x < 0.0); }

} // namespace

WitnessResult find_rolle_point(const Expr& f, double a, double b, double alpha, const LimitConfig& cfg,
                               const WitnessOptions& opt)
{
  check_interval(a, b, alpha);
  if (opt.grid_cells < 2) throw InvalidArgument("witness grid needs at least 2 cells");
  const double fa = eval(f, a);
  const double fb = eval(f, b);
  if (std::fabs(fa - fb) > 1e-9 * std::max(1.0, std::fabs(fa)))
    throw PreconditionViolation("f(a) = " + std::to_string(fa) + " differs from f(b) = " + std::to_string(fb));

  const Alpha order(0, alpha);
  auto deriv = [&](double x) { return alpha_deriv_limit(f, x, order, cfg).value; };

  const int cells = opt.grid_cells;
  const double h = (b - a) / cells;
  std::vector<double> x(cells + 1), v(cells + 1);
  double scale = 1.0;
  for (int i = 0; i <= cells; ++i) {
    x[i] = i == cells ? b : a + h * i;
    v[i] = deriv(x[i]);
    scale = std::max(scale, std::fabs(v[i]));
  }

  WitnessResult out;
  std::optional<int> first_cell;
  std::optional<int> first_zero_node;
  for (int i = 0; i < cells; ++i) {
    const bool zero_node = i > 0 && v[i] == 0.0;
    const bool crossing = sign(v[i]) * sign(v[i + 1]) < 0.0;
    if (zero_node || crossing) {
      ++out.brackets_found;
      if (!first_cell && !first_zero_node) {
        if (zero_node) first_zero_node = i;
        else first_cell = i;
      }
    }
  }

  const double tol = opt.residual_tol * scale;
  if (first_zero_node) {
    out.c = out.lo = out.hi = x[*first_zero_node];
  } else if (first_cell) {
    double lo = x[*first_cell], hi = x[*first_cell + 1];
    double vlo = v[*first_cell];
    const double width = opt.bracket_rtol * (b - a);
    while (hi - lo > width) {
      const double mid = 0.5 * (lo + hi);
      const double vm = deriv(mid);
      ++out.iterations;
      if (vm == 0.0) {
        lo = hi = mid;
        break;
      }
      if (sign(vm) == sign(vlo)) {
        lo = mid;
        vlo = vm;
      } else {
        hi = mid;
      }
    }
    out.lo = lo;
    out.hi = hi;
    out.c = 0.5 * (lo + hi);
  } else {
    // No crossing: accept a tangential zero on the interior grid.
    int best = 1;
    for (int i = 2; i < cells; ++i)
      if (std::fabs(v[i]) < std::fabs(v[best])) best = i;
    if (std::fabs(v[best]) > tol)
      throw NoSignChange("D^alpha f has no sign change on the " + std::to_string(cells)
                         + "-cell grid; smallest |D^alpha f| is " + std::to_string(std::fabs(v[best])));
    out.c = out.lo = out.hi = x[best];
    out.brackets_found = 1;
  }

  const DerivEstimate at_c = alpha_deriv_limit(f, out.c, order, cfg);
  require_converged(at_c, "D^alpha f at the witness point");
  out.residual = std::fabs(at_c.value);
  if (out.residual > tol)
    throw NonConvergence("sign change near c = " + std::to_string(out.c)
                         + " is not a root (|D^alpha f(c)| = " + std::to_string(out.residual) + ")");
  return out;
}

double mvt_slope(const Expr& f, double a, double b, double alpha)
{
  check_interval(a, b, alpha);
  const double run = (std::pow(b, alpha) - std::pow(a, alpha)) / alpha;
  return (eval(f, b) - eval(f, a)) / run;
}

Expr mvt_auxiliary(const Expr& f, double a, double b, double alpha)
{
  const double slope = mvt_slope(f, a, b, alpha);
  const Expr shifted = (pow(var_t(), constant(alpha)) - constant(std::pow(a, alpha))) / constant(alpha);
  return Expr::binary(BinaryOp::sub, Expr::binary(BinaryOp::sub, f, constant(eval(f, a))),
                      Expr::binary(BinaryOp::mul, constant(slope), shifted));
}

WitnessResult find_mvt_point(const Expr& f, double a, double b, double alpha, const LimitConfig& cfg,
                             const WitnessOptions& opt)
{
  const double slope = mvt_slope(f, a, b, alpha);
  WitnessResult w = find_rolle_point(mvt_auxiliary(f, a, b, alpha), a, b, alpha, cfg, opt);
  const DerivEstimate at_c = alpha_deriv_limit(f, w.c, Alpha(0, alpha), cfg);
  require_converged(at_c, "D^alpha f at the mean-value point");
  w.residual = std::fabs(at_c.value - slope);
  return w;
}

namespace {

struct Sampled {
  double value;
  double err;
};

Sampled deriv_at(const Expr& f, double t, double alpha, const LimitConfig& cfg)
{
  const DerivEstimate d = alpha_deriv_limit(f, t, Alpha(0, alpha), cfg);
  require_converged(d, "rule check estimate");
  return {d.value, d.err_estimate};
}

void add_entry(RuleCheckReport& report, RuleCheckEntry e)
{
  if (e.failed) ++report.failures;
  if (std::isfinite(e.residual)) {
    double& m = report.max_residual[static_cast<std::size_t>(e.identity)];
    m = std::max(m, e.residual);
  }
  report.entries.push_back(std::move(e));
}

} // namespace

RuleCheckReport check_rules_batch(const std::vector<ExprPair>& corpus, const std::vector<double>& alphas,
                                  const std::vector<double>& grid, const LimitConfig& cfg)
{
  constexpr double ca = 2.0;
  constexpr double cb = -3.0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  RuleCheckReport report;

  for (std::size_t p = 0; p < corpus.size(); ++p) {
    const Expr& f = corpus[p].first;
    const Expr& g = corpus[p].second;
    const Expr combo = Expr::binary(BinaryOp::add, Expr::binary(BinaryOp::mul, constant(ca), f),
                                    Expr::binary(BinaryOp::mul, constant(cb), g));
    const Expr product = Expr::binary(BinaryOp::mul, f, g);
    const Expr quotient = Expr::binary(BinaryOp::div, f, g);
    const Expr composed = compose(f, g);

    for (double alpha : alphas) {
      for (double t : grid) {
        auto run = [&](Identity id, auto&& body) {
          RuleCheckEntry e{p, alpha, t, id, nan, nan, false, {}};
          try {
            body(e);
          } catch (const Error& err) {
            e.failed = true;
            e.note = std::string(err.kind()) + ": " + err.what();
          }
          add_entry(report, std::move(e));
        };
        auto judge = [](RuleCheckEntry& e, double lhs, double rhs, double combined_err) {
          const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
          e.residual = std::fabs(lhs - rhs) / scale;
          e.threshold = combined_err / scale + 1e-10;
          e.failed = !(e.residual <= e.threshold);
        };

        std::optional<Sampled> df, dg;
        double fv = nan, gv = nan;
        try {
          fv = eval(f, t);
          gv = eval(g, t);
          df = deriv_at(f, t, alpha, cfg);
          dg = deriv_at(g, t, alpha, cfg);
        } catch (const Error& err) {
          for (Identity id : all_identities) {
            RuleCheckEntry e{p, alpha, t, id, nan, nan, true,
                             std::string(err.kind()) + ": " + err.what()};
            add_entry(report, std::move(e));
          }
          continue;
        }

        run(Identity::linearity, [&](RuleCheckEntry& e) {
          const Sampled lhs = deriv_at(combo, t, alpha, cfg);
          const double rhs = ca * df->value + cb * dg->value;
          judge(e, lhs.value, rhs, lhs.err + std::fabs(ca) * df->err + std::fabs(cb) * dg->err);
        });
        run(Identity::product, [&](RuleCheckEntry& e) {
          const Sampled lhs = deriv_at(product, t, alpha, cfg);
          const double rhs = fv * dg->value + gv * df->value;
          judge(e, lhs.value, rhs, lhs.err + std::fabs(fv) * dg->err + std::fabs(gv) * df->err);
        });
        run(Identity::quotient, [&](RuleCheckEntry& e) {
          if (std::fabs(gv) < 1e-6) {
            e.residual = 0.0;
            e.note = "skipped: |g(t)| < 1e-6";
            return;
          }
          const Sampled lhs = deriv_at(quotient, t, alpha, cfg);
          const double rhs = (gv * df->value - fv * dg->value) / (gv * gv);
          judge(e, lhs.value, rhs,
                lhs.err + (std::fabs(gv) * df->err + std::fabs(fv) * dg->err) / (gv * gv));
        });
        run(Identity::chain, [&](RuleCheckEntry& e) {
          if (!(gv > 0.0)) {
            e.residual = 0.0;
            e.note = "skipped: g(t) <= 0";
            return;
          }
          const Sampled lhs = deriv_at(composed, t, alpha, cfg);
          const double outer = eval(diff_classical(f), gv);
          const double rhs = outer * dg->value;
          judge(e, lhs.value, rhs, lhs.err + std::fabs(outer) * dg->err);
        });
      }
    }
  }
  return report;
}

std::vector<ExprPair> default_rule_corpus()
{
  const char* pairs[][2] = {
      {"t^2", "sin(t)+2"},
      {"exp(t)", "0.5*t+1"},
      {"cos(t)", "t^0.5+2"},
      {"ln(t)", "t^2+1"},
      {"sqrt(t)", "exp(-t)+1"},
      {"t^3-2*t", "cos(t)+2"},
      {"sin(t)", "2*t^0.5"},
      {"exp(t)", "1/(1+t^2)"},
  };
  std::vector<ExprPair> out;
  for (const auto& p : pairs) out.emplace_back(parse(p[0]), parse(p[1]));
  return out;
}

std::vector<TableCheck> verify_table(const std::vector<TableEntry>& table, double alpha,
                                     const std::vector<double>& grid, const LimitConfig& cfg)
{
  std::vector<TableCheck> out;
  for (const TableEntry& row : table) {
    TableCheck check{row, 0.0, grid.empty() ? 0.0 : grid.front()};
    for (double t : grid) {
      const DerivEstimate d = alpha_deriv_limit(row.function, t, Alpha(0, alpha), cfg);
      require_converged(d, "table check");
      const double want = eval(row.expected, t);
      const double r = std::fabs(d.value - want) / std::max(1.0, std::fabs(want));
      if (!(r <= check.max_residual)) {
        check.max_residual = r;
        check.worst_t = t;
      }
    }
    out.push_back(std::move(check));
  }
  return out;
}

} // namespace fracdiff
