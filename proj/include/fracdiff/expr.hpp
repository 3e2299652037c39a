#ifndef FRACDIFF_EXPR_HPP
#define FRACDIFF_EXPR_HPP

#include <memory>
#include <string>
#include <string_view>

#include "fracdiff/errors.hpp"

namespace fracdiff {

enum class UnaryOp { neg, sin, cos, exp, ln, sqrt, abs };
enum class BinaryOp { add, sub, mul, div, pow };

std::string_view to_string(UnaryOp op) noexcept;
std::string_view to_string(BinaryOp op) noexcept;

/// Immutable expression tree in the single real variable t.
///
/// Nodes are shared, never mutated, so copies are cheap and an Expr can be
/// used from any number of threads. The raw factories below build exactly
/// the node asked for; the free operators further down constant-fold.
class Expr {
public:
  enum class Kind { constant, variable, unary, binary };

  static Expr constant(double value);
  static Expr variable();
  static Expr unary(UnaryOp op, Expr child);
  static Expr binary(BinaryOp op, Expr left, Expr right);

  Kind kind() const noexcept;
  bool is_constant() const noexcept { return kind() == Kind::constant; }
  bool is_constant(double v) const noexcept { return is_constant() && value() == v; }
  bool is_variable() const noexcept { return kind() == Kind::variable; }

  // Accessors are only meaningful for the matching kind.
  double value() const noexcept;
  UnaryOp unary_op() const noexcept;
  BinaryOp binary_op() const noexcept;
  const Expr& child() const noexcept;
  const Expr& left() const noexcept;
  const Expr& right() const noexcept;

  /// Structural equality; constants compare by value.
  friend bool operator==(const Expr& a, const Expr& b) noexcept;

  std::size_t node_count() const noexcept;

private:
  struct Node;
  Expr() = default; // empty child slot of leaf nodes
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses the infix grammar
///   expr := term (("+"|"-") term)* ;  term := factor (("*"|"/") factor)* ;
///   factor := "-" factor | power ;      power := atom ("^" factor)? ;
///   atom := NUMBER | "t" | "pi" | "e" | FUNC "(" expr ")" | "(" expr ")"
/// Throws ParseError.
Expr parse(std::string_view text);

/// Renders with minimal parentheses; parse(render(e)) == e for every tree
/// that parse can produce.
std::string render(const Expr& e);

/// Bottom-up IEEE evaluation. Throws DomainError outside the natural domain.
double eval(const Expr& e, double t);

/// Classical derivative d/dt. Throws NotDifferentiable on abs.
Expr diff_classical(const Expr& f);

/// n-fold classical derivative; n = 0 returns f unchanged.
Expr nth_diff(const Expr& f, unsigned n);

/// f(inner(t)): replaces every occurrence of t in f.
Expr compose(const Expr& f, const Expr& inner);

// Constant-folding builders. Folding is limited to evaluating all-constant
// nodes and dropping additive zeros / multiplicative ones.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, const Expr& exponent);
Expr apply(UnaryOp op, const Expr& arg);

inline Expr constant(double v) { return Expr::constant(v); }
inline Expr var_t() { return Expr::variable(); }

} // namespace fracdiff

#endif // FRACDIFF_EXPR_HPP
