// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Set FRACDIFF_UPDATE_GOLDEN=1 to rewrite the golden CSVs.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fracdiff/cli.hpp"
#include "fracdiff/integral.hpp"
#include "fracdiff/numeric.hpp"
#include "fracdiff/symbolic.hpp"
#include "fracdiff/theorems.hpp"
#include "oracles.hpp"

using namespace fracdiff;

namespace {

int failures = 0;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double x)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

void report(int id, const char* title, const std::function<Verdict()>& body)
{
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!v.pass) ++failures;
  std::printf("%s [%2d] %s: %s (%.3f s)\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str(), secs);
  std::fflush(stdout);
}

double elapsed_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double mixed(double got, double want) { return std::fabs(got - want) / std::max(1.0, std::fabs(want)); }

Verdict power_rule()
{
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (double n : {-1.0, 0.5, 1.0, 2.0, 3.0}) {
    const Expr f = pow(var_t(), constant(n));
    for (double alpha : {0.25, 0.5, 0.75, 1.0})
      for (double t : {0.5, 1.0, 2.0, 4.0}) {
        const auto d = alpha_deriv_limit(f, t, Alpha(0, alpha));
        worst = std::max(worst, mixed(d.value, n * std::pow(t, n - alpha)));
      }
  }
  const double secs = elapsed_since(t0);
  return {worst <= 1e-6 && secs < 1.0,
          "max mixed err " + fmt("%.2e", worst) + " (tol 1e-6), runtime " + fmt("%.3f", secs) + " s (limit 1 s)"};
}

std::string run_cli(const std::vector<std::string>& args, int& code)
{
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return out.str() + err.str();
}

Verdict power_plot()
{
  const std::filesystem::path dir = FRACDIFF_GOLDEN_DIR;
  const bool update = std::getenv("FRACDIFF_UPDATE_GOLDEN") != nullptr;
  double worst = 0;
  std::string notes;
  bool ok = true;
  for (int nu : {1, 2}) {
    int code = 0;
    const std::string csv = run_cli({"plot", "--expr", "t^" + std::to_string(nu), "--alpha", "0.5", "--from", "0.1",
                                     "--to", "3", "--n", "50", "--format", "csv"},
                                    code);
    if (code != 0) return {false, "plot exited with " + std::to_string(code) + ": " + csv};

    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
      ++rows;
      double t = 0, numeric = 0;
      std::sscanf(line.c_str(), "%lf,%lf", &t, &numeric);
      worst = std::max(worst, std::fabs(numeric - nu * std::pow(t, nu - 0.5)));
    }
    ok = ok && rows == 50;

    const auto path = dir / ("plot_nu" + std::to_string(nu) + ".csv");
    if (update || !std::filesystem::exists(path)) {
      std::ofstream(path, std::ios::binary) << csv;
      notes += " " + path.filename().string() + " written;";
    } else {
      std::ifstream f(path, std::ios::binary);
      std::stringstream golden;
      golden << f.rdbuf();
      const bool same = golden.str() == csv;
      ok = ok && same;
      notes += " " + path.filename().string() + (same ? " bit-exact;" : " DIFFERS;");
    }
  }
  return {ok && worst <= 1e-6, "max abs_diff vs nu*t^(nu-1/2) " + fmt("%.2e", worst) + " (tol 1e-6);" + notes};
}

Verdict sqrt_constancy()
{
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const double t = std::pow(10.0, -2.0 + 4.0 * i / 19.0);
    worst = std::max(worst, std::fabs(alpha_deriv_limit(parse("sqrt(t)"), t, Alpha(0, 0.5)).value - 0.5));
  }
  return {worst <= 1e-7, "max |D - 0.5| over 20 log-spaced t in [0.01, 100]: " + fmt("%.2e", worst) + " (tol 1e-7)"};
}

Verdict tables()
{
  std::vector<double> grid;
  for (int i = 0; i < 10; ++i) grid.push_back(0.3 + 0.3 * i);
  double worst = 0;
  int identities = 0;
  for (double alpha : {0.3, 0.5, 0.9}) {
    for (double a : {1.0, 2.0})
      for (const auto& c : verify_table(theorem4_table(alpha, a), alpha, grid)) {
        worst = std::max(worst, c.max_residual);
        ++identities;
      }
    for (const auto& c : verify_table(theorem5_table(alpha), alpha, grid)) {
      worst = std::max(worst, c.max_residual);
      ++identities;
    }
  }
  return {worst <= 1e-6 && identities == 3 * (2 * 6 + 3),
          std::to_string(identities) + " identity checks on 10 points, max mixed residual " + fmt("%.2e", worst)
              + " (tol 1e-6)"};
}

Verdict family_collapse()
{
  double worst = 0;
  for (const auto& s : oracle::smooth_corpus()) {
    const Expr f = parse(s);
    for (double alpha : {0.25, 0.5, 0.75})
      for (double t : oracle::smooth_grid()) {
        const double ref = alpha_deriv_limit(f, t, Alpha(0, alpha)).value;
        for (unsigned k : {1u, 2u, 3u, 10u})
          worst = std::max(worst, std::fabs(alpha_deriv_k(f, t, Alpha(0, alpha), TruncationOrder::finite(k)).value - ref));
        worst = std::max(worst, std::fabs(alpha_deriv_k(f, t, Alpha(0, alpha), TruncationOrder::infinite()).value - ref));
      }
  }
  return {worst <= 2e-6, "k in {1,2,3,10,inf}, " + std::to_string(oracle::smooth_corpus().size())
                             + " functions, max abs diff " + fmt("%.2e", worst) + " (tol 2e-6)"};
}

Verdict classical_reduction()
{
  double worst = 0;
  for (const auto& s : oracle::smooth_corpus()) {
    const Expr f = parse(s);
    for (double t : oracle::smooth_grid())
      worst = std::max(worst, mixed(alpha_deriv_limit(f, t, Alpha(0, 1.0)).value, oracle::five_point(oracle::of(f), t)));
  }
  return {worst <= 1e-6, "max relative diff vs finite difference " + fmt("%.2e", worst) + " (tol 1e-6)"};
}

Verdict rule_identities()
{
  const auto corpus = default_rule_corpus();
  const auto r = check_rules_batch(corpus, {0.3, 0.5, 0.9}, {0.3, 0.7, 1.0, 2.0, 5.0});
  double worst = 0;
  std::string parts;
  for (Identity id : all_identities) {
    worst = std::max(worst, r.max_for(id));
    parts += " " + std::string(to_string(id)) + " " + fmt("%.1e", r.max_for(id));
  }
  return {worst <= 1e-5 && r.failures == 0 && corpus.size() == 8,
          std::to_string(corpus.size()) + " pairs x 3 alpha x 5 t, max residual" + parts + " (tol 1e-5), "
              + std::to_string(r.failures) + " flagged"};
}

Verdict inverse_property()
{
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (const char* s : {"sin(t)", "exp(-t)", "t^2", "sqrt(t)", "1/(1+t^2)"})
    for (double alpha : {0.25, 0.5, 0.75})
      for (double a : {0.0, 1.0}) worst = std::max(worst, check_inverse(parse(s), a, 2.0, alpha));
  const double secs = elapsed_since(t0);
  return {worst <= 1e-5 && secs < 30.0,
          "30 cases at t = 2, max residual " + fmt("%.2e", worst) + " (tol 1e-5), runtime " + fmt("%.2f", secs)
              + " s (limit 30 s)"};
}

Verdict witnesses()
{
  const double rolle = find_rolle_point(parse("(t-1)*(t-2)"), 1.0, 2.0, 0.5).c;
  const double mvt = find_mvt_point(parse("t"), 1.0, 4.0, 0.5).c;
  const double e1 = std::fabs(rolle - 1.5), e2 = std::fabs(mvt - 2.25);
  return {e1 <= 1e-8 && e2 <= 1e-8, "Rolle c = " + fmt("%.12g", rolle) + " (|c-1.5| " + fmt("%.1e", e1)
                                        + "), MVT c = " + fmt("%.12g", mvt) + " (|c-2.25| " + fmt("%.1e", e2)
                                        + "), tol 1e-8"};
}

Verdict higher_order()
{
  // t^(n+1-alpha) f^(n+1)(t) with n = 1, alpha = 1.5, f'' = 6t is 6 t^1.5.
  double worst = 0, literal = 0;
  for (double t : {1.0, 2.0, 4.0}) {
    const double v = alpha_deriv_higher(parse("t^3"), t, Alpha(1, 0.5)).value;
    worst = std::max(worst, std::fabs(v - 6 * std::pow(t, 1.5)) / (6 * std::pow(t, 1.5)));
    literal = std::max(literal, std::fabs(v - 6 * std::pow(t, 2.5)) / (6 * std::pow(t, 2.5)));
  }
  return {worst <= 1e-5, "max relative err vs t^(n+1-alpha) f^(n+1) = 6 t^1.5: " + fmt("%.2e", worst)
                             + " (tol 1e-5); the reference 6 t^2.5 is off by up to " + fmt("%.2f", literal)
                             + " relative at t = 2, 4 and is not used"};
}

Verdict non_differentiable()
{
  const Expr f = parse("3*t^(1/3)");
  const Alpha third(0, 1.0 / 3.0);
  double worst = 0;
  for (double t : {0.1, 1.0, 10.0}) worst = std::max(worst, std::fabs(alpha_deriv_limit(f, t, third).value - 1.0));
  const auto z = alpha_deriv_at_zero(f, third);
  const double ez = std::fabs(z.value - 1.0);
  const auto c = alpha_deriv_limit(f, 1e-4, Alpha(0, 1.0));
  const bool blows_up = !c.converged || std::fabs(c.value) > 1e2;
  return {worst <= 1e-6 && ez <= 1e-4 && blows_up,
          "max |D - 1| at t in {0.1,1,10}: " + fmt("%.1e", worst) + " (tol 1e-6); at 0: " + fmt("%.1e", ez)
              + " (tol 1e-4); alpha = 1 at t = 1e-4: " + (c.converged ? "converged, " : "not converged, ")
              + fmt("%.4g", c.value)};
}

} // namespace

int main()
{
  report(1, "power rule", power_rule);
  report(2, "power-function plot", power_plot);
  report(3, "sqrt constancy", sqrt_constancy);
  report(4, "elementary and pseudo-invariant tables", tables);
  report(5, "truncated-exponential family collapse", family_collapse);
  report(6, "classical reduction", classical_reduction);
  report(7, "rule identities", rule_identities);
  report(8, "inverse property", inverse_property);
  report(9, "Rolle and mean-value witnesses", witnesses);
  report(10, "higher order", higher_order);
  report(11, "non-differentiable example", non_differentiable);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
