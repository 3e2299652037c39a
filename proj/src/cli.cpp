#include "fracdiff/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracdiff/expr.hpp"
#include "fracdiff/integral.hpp"
#include "fracdiff/numeric.hpp"
#include "fracdiff/symbolic.hpp"
#include "fracdiff/theorems.hpp"

namespace fracdiff::cli {

namespace {

using json = nlohmann::ordered_json;

/// A verification command found a discrepancy above its tolerance.
class CheckFailed : public Error {
public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "CheckFailed"; }
};

std::string full(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string brief(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string plus_minus(double value, double err) { return full(value) + " ± " + brief(err); }

TruncationOrder parse_k(const std::string& s)
{
  if (s == "inf" || s == "infinity") return TruncationOrder::infinite();
  try {
    std::size_t used = 0;
    const long k = std::stol(s, &used);
    if (used == s.size() && k >= 0) return TruncationOrder::finite(static_cast<unsigned>(k));
  } catch (const std::exception&) {
  }
  throw UsageError("--k expects a non-negative integer or 'inf', got '" + s + "'");
}

std::string k_label(TruncationOrder k) { return k.is_infinite() ? "inf" : std::to_string(k.k()); }

double need(const std::optional<double>& v, const char* flag, const char* command)
{
  if (!v) throw UsageError(std::string(command) + " requires " + flag);
  return *v;
}

void need_expr(const RunConfig& cfg, const char* command)
{
  if (cfg.expression.empty()) throw UsageError(std::string(command) + " requires --expr");
}

void need_unit_alpha(const RunConfig& cfg, const char* command)
{
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0))
    throw UsageError(std::string(command) + " takes --alpha in (0, 1]");
}

std::vector<double> linear_grid(const RunConfig& cfg)
{
  if (cfg.grid_n < 2) throw UsageError("--n must be at least 2");
  if (!(cfg.to > cfg.from)) throw UsageError("--to must exceed --from");
  std::vector<double> grid(cfg.grid_n);
  for (int i = 0; i < cfg.grid_n; ++i)
    grid[i] = i + 1 == cfg.grid_n ? cfg.to : cfg.from + (cfg.to - cfg.from) * i / (cfg.grid_n - 1);
  return grid;
}

LimitConfig limit_config(const RunConfig& cfg)
{
  LimitConfig lc;
  if (cfg.tol) lc.target_rtol = *cfg.tol;
  return lc;
}

// --------------------------------------------------------------------------
// commands

void cmd_deriv(const RunConfig& cfg, std::ostream& out)
{
  need_expr(cfg, "deriv");
  const double t = need(cfg.at, "--at", "deriv");
  const Expr f = parse(cfg.expression);
  const Alpha alpha = Alpha::from_total(cfg.alpha);
  const LimitConfig lc = limit_config(cfg);

  DerivEstimate d;
  if (t == 0.0) {
    if (alpha.n() != 0 || !cfg.k.is_infinite())
      throw UsageError("deriv --at 0 supports alpha in (0, 1] and k = inf only");
    d = alpha_deriv_at_zero(f, alpha, lc);
  } else if (alpha.n() == 0) {
    d = alpha_deriv_k(f, t, alpha, cfg.k, lc);
  } else {
    if (!cfg.k.is_infinite()) throw UsageError("--k is only defined for alpha <= 1");
    d = alpha_deriv_higher(f, t, alpha, lc);
  }

  switch (cfg.format) {
    case Format::text: out << plus_minus(d.value, d.err_estimate) << '\n'; break;
    case Format::csv:
      out << "t,alpha,k,value,err_estimate,levels_used,converged,continuity_residual\n"
          << full(t) << ',' << full(cfg.alpha) << ',' << k_label(cfg.k) << ',' << full(d.value) << ','
          << full(d.err_estimate) << ',' << d.levels_used << ',' << (d.converged ? "true" : "false")
          << ',' << full(d.continuity_residual) << '\n';
      break;
    case Format::json:
      out << json{{"t", t},
                  {"alpha", cfg.alpha},
                  {"k", k_label(cfg.k)},
                  {"value", d.value},
                  {"err_estimate", d.err_estimate},
                  {"levels_used", d.levels_used},
                  {"converged", d.converged},
                  {"continuity_residual", d.continuity_residual}}
                 .dump(2)
          << '\n';
      break;
  }
  require_converged(d, "deriv");
}

void cmd_integ(const RunConfig& cfg, std::ostream& out)
{
  need_expr(cfg, "integ");
  const double a = need(cfg.a, "--a", "integ");
  const double b = need(cfg.b, "--b", "integ");
  const QuadResult r = alpha_integral(parse(cfg.expression), a, b, cfg.alpha, cfg.tol.value_or(1e-10));
  switch (cfg.format) {
    case Format::text: out << plus_minus(r.value, r.err_estimate) << '\n'; break;
    case Format::csv:
      out << "a,t,alpha,value,err_estimate,subdivisions,used_substitution\n"
          << full(a) << ',' << full(b) << ',' << full(cfg.alpha) << ',' << full(r.value) << ','
          << full(r.err_estimate) << ',' << r.subdivisions << ',' << (r.used_substitution ? "true" : "false")
          << '\n';
      break;
    case Format::json:
      out << json{{"a", a},
                  {"t", b},
                  {"alpha", cfg.alpha},
                  {"value", r.value},
                  {"err_estimate", r.err_estimate},
                  {"subdivisions", r.subdivisions},
                  {"used_substitution", r.used_substitution}}
                 .dump(2)
          << '\n';
      break;
  }
}

void cmd_check(const RunConfig& cfg, std::ostream& out)
{
  need_expr(cfg, "check");
  need_unit_alpha(cfg, "check");
  const double t = need(cfg.at, "--at", "check");
  const Expr f = parse(cfg.expression);
  const Alpha alpha(0, cfg.alpha);
  const LimitConfig lc = limit_config(cfg);
  const double tol = 1e-6;

  const double closed = eval(alpha_deriv_closed(f, cfg.alpha), t);
  struct Row {
    std::string method;
    double value;
    double diff;
  };
  std::vector<Row> rows;
  auto add = [&](std::string name, double v) { rows.push_back({std::move(name), v, std::fabs(v - closed)}); };
  add("limit", require_converged(alpha_deriv_limit(f, t, alpha, lc), "limit").value);
  add("conformable_k1",
      require_converged(alpha_deriv_k(f, t, alpha, TruncationOrder::finite(1), lc), "k = 1").value);
  add("closed", closed);
  add("rules", eval(alpha_deriv_rules(f, cfg.alpha).first, t));
  if (cfg.a) {
    const double r = check_inverse(f, *cfg.a, t, cfg.alpha, lc);
    rows.push_back({"inverse_residual", r, r});
  }

  switch (cfg.format) {
    case Format::text:
      for (const Row& r : rows) out << r.method << ' ' << full(r.value) << " (|diff| " << brief(r.diff) << ")\n";
      break;
    case Format::csv:
      out << "method,value,abs_diff\n";
      for (const Row& r : rows) out << r.method << ',' << full(r.value) << ',' << full(r.diff) << '\n';
      break;
    case Format::json: {
      json arr = json::array();
      for (const Row& r : rows) arr.push_back({{"method", r.method}, {"value", r.value}, {"abs_diff", r.diff}});
      out << arr.dump(2) << '\n';
      break;
    }
  }
  for (const Row& r : rows)
    if (!(r.diff <= tol * std::max(1.0, std::fabs(closed))))
      throw CheckFailed(r.method + " differs from the closed form by " + brief(r.diff));
}

void cmd_witness(const RunConfig& cfg, std::ostream& out, bool mvt)
{
  const char* name = mvt ? "mvt" : "rolle";
  need_expr(cfg, name);
  need_unit_alpha(cfg, name);
  const double a = need(cfg.a, "--a", name);
  const double b = need(cfg.b, "--b", name);
  const Expr f = parse(cfg.expression);
  const LimitConfig lc = limit_config(cfg);
  const WitnessResult w = mvt ? find_mvt_point(f, a, b, cfg.alpha, lc) : find_rolle_point(f, a, b, cfg.alpha, lc);

  switch (cfg.format) {
    case Format::text:
      out << "c = " << full(w.c) << '\n'
          << "residual = " << brief(w.residual) << '\n'
          << "bracket = [" << full(w.lo) << ", " << full(w.hi) << "]\n"
          << "iterations = " << w.iterations << '\n'
          << "brackets_found = " << w.brackets_found << '\n';
      if (mvt) out << "slope = " << full(mvt_slope(f, a, b, cfg.alpha)) << '\n';
      break;
    case Format::csv:
      out << "c,residual,lo,hi,iterations,brackets_found\n"
          << full(w.c) << ',' << full(w.residual) << ',' << full(w.lo) << ',' << full(w.hi) << ','
          << w.iterations << ',' << w.brackets_found << '\n';
      break;
    case Format::json:
      out << json{{"c", w.c},
                  {"residual", w.residual},
                  {"lo", w.lo},
                  {"hi", w.hi},
                  {"iterations", w.iterations},
                  {"brackets_found", w.brackets_found}}
                 .dump(2)
          << '\n';
      break;
  }
}

void cmd_table(const RunConfig& cfg, std::ostream& out)
{
  need_unit_alpha(cfg, "table");
  const std::vector<double> grid = linear_grid(cfg);
  const LimitConfig lc = limit_config(cfg);

  if (cfg.which == "rules") {
    const RuleCheckReport report = check_rules_batch(default_rule_corpus(), {cfg.alpha}, grid, lc);
    std::vector<std::size_t> fails(all_identities.size(), 0);
    for (const RuleCheckEntry& e : report.entries)
      if (e.failed) ++fails[static_cast<std::size_t>(e.identity)];

    if (cfg.format == Format::json) {
      json arr = json::array();
      for (Identity id : all_identities)
        arr.push_back({{"identity", to_string(id)},
                       {"max_residual", report.max_for(id)},
                       {"failures", fails[static_cast<std::size_t>(id)]}});
      out << arr.dump(2) << '\n';
    } else {
      if (cfg.format == Format::csv) out << "identity,max_residual,failures\n";
      for (Identity id : all_identities) {
        const char sep = cfg.format == Format::csv ? ',' : ' ';
        out << to_string(id) << sep << full(report.max_for(id)) << sep << fails[static_cast<std::size_t>(id)]
            << '\n';
      }
    }
    if (report.failures > 0)
      throw CheckFailed(std::to_string(report.failures) + " rule-identity checks exceeded their error bounds");
    return;
  }

  std::vector<TableEntry> table;
  if (cfg.which == "theorem4") table = theorem4_table(cfg.alpha, cfg.a.value_or(1.0));
  else if (cfg.which == "theorem5") table = theorem5_table(cfg.alpha);
  else throw UsageError("--which must be theorem4, theorem5 or rules");

  const double tol = 1e-6;
  const std::vector<TableCheck> checks = verify_table(table, cfg.alpha, grid, lc);
  switch (cfg.format) {
    case Format::text:
      for (const TableCheck& c : checks)
        out << c.entry.label << ": D^a[" << render(c.entry.function) << "] = " << render(c.entry.expected)
            << "  max residual " << brief(c.max_residual) << (c.max_residual <= tol ? "  ok" : "  FAIL") << '\n';
      break;
    case Format::csv:
      out << "label,function,expected,max_residual,worst_t\n";
      for (const TableCheck& c : checks)
        out << '"' << c.entry.label << "\",\"" << render(c.entry.function) << "\",\"" << render(c.entry.expected)
            << "\"," << full(c.max_residual) << ',' << full(c.worst_t) << '\n';
      break;
    case Format::json: {
      json arr = json::array();
      for (const TableCheck& c : checks)
        arr.push_back({{"label", c.entry.label},
                       {"function", render(c.entry.function)},
                       {"expected", render(c.entry.expected)},
                       {"max_residual", c.max_residual},
                       {"worst_t", c.worst_t}});
      out << arr.dump(2) << '\n';
      break;
    }
  }
  for (const TableCheck& c : checks)
    if (!(c.max_residual <= tol)) throw CheckFailed(c.entry.label + " residual " + brief(c.max_residual));
}

void cmd_plot(const RunConfig& cfg, std::ostream& out)
{
  need_expr(cfg, "plot");
  const Expr f = parse(cfg.expression);
  const Alpha alpha = Alpha::from_total(cfg.alpha);
  if (alpha.n() != 0 && !cfg.k.is_infinite()) throw UsageError("--k is only defined for alpha <= 1");
  const std::vector<double> grid = linear_grid(cfg);
  const LimitConfig lc = limit_config(cfg);
  const Expr closed = alpha_deriv_closed(f, alpha);

  struct Row {
    double t, numeric, closed;
  };
  std::vector<Row> rows;
  for (double t : grid) {
    const DerivEstimate d =
        alpha.n() == 0 ? alpha_deriv_k(f, t, alpha, cfg.k, lc) : alpha_deriv_higher(f, t, alpha, lc);
    require_converged(d, "plot at t = " + full(t));
    rows.push_back({t, d.value, eval(closed, t)});
  }

  switch (cfg.format) {
    case Format::csv:
      out << "t,deriv_numeric,deriv_closed,abs_diff\n";
      for (const Row& r : rows)
        out << full(r.t) << ',' << full(r.numeric) << ',' << full(r.closed) << ','
            << full(std::fabs(r.numeric - r.closed)) << '\n';
      break;
    case Format::text:
      for (const Row& r : rows)
        out << full(r.t) << ' ' << full(r.numeric) << ' ' << full(r.closed) << ' '
            << brief(std::fabs(r.numeric - r.closed)) << '\n';
      break;
    case Format::json: {
      json arr = json::array();
      for (const Row& r : rows)
        arr.push_back({{"t", r.t},
                       {"deriv_numeric", r.numeric},
                       {"deriv_closed", r.closed},
                       {"abs_diff", std::fabs(r.numeric - r.closed)}});
      out << arr.dump(2) << '\n';
      break;
    }
  }
}

} // namespace

std::optional<RunConfig> parse_args(std::span<const std::string> args, std::ostream& out)
{
  CLI::App app{"Fractional derivatives and integrals of single-variable functions", "fracdiff"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string k_text = "inf";
  std::string format_text = "text";
  std::optional<std::string> out_path;

  struct Sub {
    const char* name;
    const char* help;
    Command command;
  };
  const Sub subs[] = {
      {"deriv", "alpha-derivative at a point (--at 0 takes the t -> 0+ limit)", Command::deriv},
      {"integ", "alpha-integral from --a to --b", Command::integ},
      {"check", "compare limit, conformable, closed-form and rule-engine derivatives", Command::check},
      {"rolle", "Rolle witness point on [--a, --b]", Command::rolle},
      {"mvt", "mean-value witness point on [--a, --b]", Command::mvt},
      {"table", "verify the elementary-function tables or the rule identities", Command::table},
      {"plot", "derivative over a grid as CSV: t,deriv_numeric,deriv_closed,abs_diff", Command::plot},
  };
  std::vector<std::pair<CLI::App*, Command>> apps;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--expr", cfg.expression, "expression in t");
    sub->add_option("--alpha", cfg.alpha, "fractional order");
    sub->add_option("--k", k_text, "truncation order of the exponential (integer or inf)");
    sub->add_option("--at", cfg.at, "evaluation point");
    sub->add_option("--from", cfg.from, "grid start");
    sub->add_option("--to", cfg.to, "grid end");
    sub->add_option("--n", cfg.grid_n, "grid size");
    sub->add_option("--a", cfg.a, "lower bound / table scale");
    sub->add_option("--b", cfg.b, "upper bound");
    sub->add_option("--tol", cfg.tol, "tolerance");
    sub->add_option("--format", format_text, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    sub->add_option("--out", out_path, "write output to this file");
    sub->add_option("--which", cfg.which, "theorem4, theorem5 or rules")
        ->check(CLI::IsMember({"theorem4", "theorem5", "rules"}));
    apps.emplace_back(sub, s.command);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream sink;
    app.exit(e, out, sink);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (const auto& [sub, command] : apps)
    if (sub->parsed()) cfg.command = command;
  cfg.k = parse_k(k_text);
  cfg.format = format_text == "csv" ? Format::csv : format_text == "json" ? Format::json : Format::text;
  cfg.output_path = out_path;
  return cfg;
}

void execute(const RunConfig& cfg, std::ostream& out)
{
  std::ofstream file;
  if (cfg.output_path) {
    file.open(*cfg.output_path);
    if (!file) throw UsageError("cannot open --out path '" + *cfg.output_path + "'");
  }
  std::ostream& sink = cfg.output_path ? static_cast<std::ostream&>(file) : out;

  switch (cfg.command) {
    case Command::deriv: cmd_deriv(cfg, sink); break;
    case Command::integ: cmd_integ(cfg, sink); break;
    case Command::check: cmd_check(cfg, sink); break;
    case Command::rolle: cmd_witness(cfg, sink, false); break;
    case Command::mvt: cmd_witness(cfg, sink, true); break;
    case Command::table: cmd_table(cfg, sink); break;
    case Command::plot: cmd_plot(cfg, sink); break;
  }
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err)
{
  try {
    const std::optional<RunConfig> cfg = parse_args(args, out);
    if (!cfg) return 0;
    execute(*cfg, out);
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "ERROR " << e.kind() << ": " << msg << '\n';
    return 1;
  }
}

} // namespace fracdiff::cli
