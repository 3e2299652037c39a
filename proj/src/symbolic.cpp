#include "fracdiff/symbolic.hpp"

#include <string>

namespace fracdiff {

std::string_view to_string(Rule r) noexcept
{
  switch (r) {
    case Rule::linearity: return "linearity";
    case Rule::power: return "power";
    case Rule::constant: return "constant";
    case Rule::product: return "product";
    case Rule::quotient: return "quotient";
    case Rule::chain: return "chain";
    case Rule::table: return "table";
  }
  return "?";
}

namespace {

void check_alpha(double alpha)
{
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw InvalidArgument("alpha must lie in (0, 1], got " + std::to_string(alpha));
}

Expr t_pow(double exponent) { return pow(var_t(), constant(exponent)); }

/// u'(x) from the classical table, reusing diff_classical on u(t) and
/// substituting x.
Expr outer_derivative(UnaryOp op, const Expr& x)
{
  return compose(diff_classical(Expr::unary(op, var_t())), x);
}

bool free_of_t(const Expr& e)
{
  switch (e.kind()) {
    case Expr::Kind::constant: return true;
    case Expr::Kind::variable: return false;
    case Expr::Kind::unary: return free_of_t(e.child());
    case Expr::Kind::binary: return free_of_t(e.left()) && free_of_t(e.right());
  }
  return false;
}

/// Value of a subtree without t, such as -1 or 1/3, when it evaluates.
bool constant_value(const Expr& e, double& value)
{
  if (!free_of_t(e)) return false;
  try {
    value = eval(e, 0.0);
  } catch (const DomainError&) {
    return false;
  }
  return true;
}

/// Matches a*t or t*a with constant a.
bool linear_in_t(const Expr& e, double& slope)
{
  if (e.kind() != Expr::Kind::binary || e.binary_op() != BinaryOp::mul) return false;
  if (e.left().is_constant() && e.right().is_variable()) {
    slope = e.left().value();
    return true;
  }
  if (e.left().is_variable() && e.right().is_constant()) {
    slope = e.right().value();
    return true;
  }
  return false;
}

class RuleEngine {
public:
  explicit RuleEngine(double alpha) : alpha_(alpha) {}

  Expr derive(const Expr& f)
  {
    switch (f.kind()) {
      case Expr::Kind::constant:
        record(f, Rule::constant);
        return constant(0.0);
      case Expr::Kind::variable:
        record(f, Rule::power);
        return t_pow(1.0 - alpha_);
      case Expr::Kind::unary:
      case Expr::Kind::binary:
        if (free_of_t(f)) {
          record(f, Rule::constant);
          return constant(0.0);
        }
        return f.kind() == Expr::Kind::unary ? derive_unary(f) : derive_binary(f);
    }
    return constant(0.0);
  }

  RuleTrace take_trace() { return std::move(trace_); }

private:
  void record(const Expr& node, Rule rule) { trace_.push_back({node, rule}); }

  Expr derive_unary(const Expr& f)
  {
    const UnaryOp op = f.unary_op();
    const Expr& g = f.child();
    if (op == UnaryOp::abs) throw NotDifferentiable("abs(...) has no alpha-derivative rule");
    if (op == UnaryOp::neg) {
      record(f, Rule::linearity);
      return -derive(g);
    }
    double a = 0.0;
    if (linear_in_t(g, a)) {
      record(f, Rule::table);
      return constant(a) * t_pow(1.0 - alpha_) * outer_derivative(op, g);
    }
    record(f, Rule::chain);
    return outer_derivative(op, g) * derive(g);
  }

  Expr derive_binary(const Expr& f)
  {
    const Expr& u = f.left();
    const Expr& v = f.right();
    switch (f.binary_op()) {
      case BinaryOp::add:
        record(f, Rule::linearity);
        return derive(u) + derive(v);
      case BinaryOp::sub:
        record(f, Rule::linearity);
        return derive(u) - derive(v);
      case BinaryOp::mul:
        if (u.is_constant()) {
          record(f, Rule::linearity);
          return u * derive(v);
        }
        if (v.is_constant()) {
          record(f, Rule::linearity);
          return derive(u) * v;
        }
        record(f, Rule::product);
        {
          Expr du = derive(u);
          Expr dv = derive(v);
          return u * dv + v * du;
        }
      case BinaryOp::div:
        if (v.is_constant()) {
          record(f, Rule::linearity);
          return derive(u) / v;
        }
        record(f, Rule::quotient);
        {
          Expr du = derive(u);
          Expr dv = derive(v);
          return (v * du - u * dv) / pow(v, constant(2.0));
        }
      case BinaryOp::pow: return derive_pow(f);
    }
    return constant(0.0);
  }

  Expr derive_pow(const Expr& f)
  {
    const Expr& base = f.left();
    const Expr& exponent = f.right();
    double c = 0.0;
    if (constant_value(exponent, c)) {
      if (base.is_variable()) {
        record(f, Rule::power);
        return constant(c) * t_pow(c - alpha_);
      }
      // g^c = (u -> u^c) o g
      record(f, Rule::chain);
      return constant(c) * pow(base, constant(c - 1.0)) * derive(base);
    }
    if (free_of_t(base)) {
      // a^h = (u -> a^u) o h
      record(f, Rule::chain);
      return f * apply(UnaryOp::ln, base) * derive(exponent);
    }
    // g^h = exp(h ln g), itself a chain through exp
    record(f, Rule::chain);
    const Expr rewritten = Expr::unary(
        UnaryOp::exp, Expr::binary(BinaryOp::mul, exponent, Expr::unary(UnaryOp::ln, base)));
    return derive(rewritten);
  }

  double alpha_;
  RuleTrace trace_;
};

} // namespace

Expr alpha_deriv_closed(const Expr& f, double alpha)
{
  check_alpha(alpha);
  return t_pow(1.0 - alpha) * diff_classical(f);
}

Expr alpha_deriv_closed(const Expr& f, Alpha alpha)
{
  if (alpha.n() == 0) return alpha_deriv_closed(f, alpha.beta());
  return t_pow(1.0 - alpha.beta()) * nth_diff(f, alpha.n() + 1);
}

std::pair<Expr, RuleTrace> alpha_deriv_rules(const Expr& f, double alpha)
{
  check_alpha(alpha);
  RuleEngine engine(alpha);
  Expr d = engine.derive(f);
  return {d, engine.take_trace()};
}

std::vector<TableEntry> theorem4_table(double alpha, double a)
{
  check_alpha(alpha);
  const Expr t = var_t();
  const Expr ca = constant(a);
  const Expr at = Expr::binary(BinaryOp::mul, ca, t);
  const Expr weight = t_pow(1.0 - alpha);

  std::vector<TableEntry> rows;
  rows.push_back({"(a) t^n", Expr::binary(BinaryOp::pow, t, ca), ca * t_pow(a - alpha)});
  rows.push_back({"(b) 1", constant(1.0), constant(0.0)});
  rows.push_back({"(c) exp(a*t)", Expr::unary(UnaryOp::exp, at),
                  ca * weight * apply(UnaryOp::exp, at)});
  rows.push_back({"(d) sin(a*t)", Expr::unary(UnaryOp::sin, at),
                  ca * weight * apply(UnaryOp::cos, at)});
  rows.push_back({"(e) cos(a*t)", Expr::unary(UnaryOp::cos, at),
                  -(ca * weight * apply(UnaryOp::sin, at))});
  rows.push_back({"(f) t^alpha/alpha", constant(1.0 / alpha) * t_pow(alpha), constant(1.0)});
  return rows;
}

std::vector<TableEntry> theorem5_table(double alpha)
{
  check_alpha(alpha);
  const Expr u = constant(1.0 / alpha) * t_pow(alpha);
  return {
      {"(i) sin(t^alpha/alpha)", apply(UnaryOp::sin, u), apply(UnaryOp::cos, u)},
      {"(ii) cos(t^alpha/alpha)", apply(UnaryOp::cos, u), -apply(UnaryOp::sin, u)},
      {"(iii) exp(t^alpha/alpha)", apply(UnaryOp::exp, u), apply(UnaryOp::exp, u)},
  };
}

} // namespace fracdiff
