#ifndef FRACDIFF_SYMBOLIC_HPP
#define FRACDIFF_SYMBOLIC_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fracdiff/expr.hpp"
#include "fracdiff/numeric.hpp"

namespace fracdiff {

enum class Rule { linearity, power, constant, product, quotient, chain, table };

std::string_view to_string(Rule r) noexcept;

struct RuleRecord {
  Expr node;
  Rule rule;
};

/// Audit trail of alpha_deriv_rules, one record per visited node, in
/// pre-order.
using RuleTrace = std::vector<RuleRecord>;

/// t^(1-alpha) * f'(t), constant-folded. alpha in (0, 1].
Expr alpha_deriv_closed(const Expr& f, double alpha);

/// Any order: t^(n+1-alpha) * f^(n+1)(t) for alpha in (n, n+1].
Expr alpha_deriv_closed(const Expr& f, Alpha alpha);

/// Structural derivative built node by node from the product, quotient,
/// power, constant, linearity and chain rules of the alpha-derivative.
///
/// Unary functions applied to a linear argument a*t are answered from the
/// elementary table (rule `table`), other unary nodes and powers g^c by the
/// chain rule with the classical outer derivative. Powers g^h with both
/// parts non-constant are rewritten as exp(h ln g) first.
std::pair<Expr, RuleTrace> alpha_deriv_rules(const Expr& f, double alpha);

struct TableEntry {
  std::string label;
  Expr function;
  Expr expected;
};

/// Elementary-function table (a)..(f):
/// t^n, 1, e^{at}, sin at, cos at, (1/alpha) t^alpha, with n = a.
std::vector<TableEntry> theorem4_table(double alpha, double a);

/// Pseudo-invariant table (i)..(iii): sin, cos and exp of t^alpha / alpha.
std::vector<TableEntry> theorem5_table(double alpha);

} // namespace fracdiff

#endif // FRACDIFF_SYMBOLIC_HPP
