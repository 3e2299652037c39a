#include "fracdiff/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace fracdiff {

struct Expr::Node {
  Kind kind;
  double value = 0.0;
  UnaryOp unary = UnaryOp::neg;
  BinaryOp binary = BinaryOp::add;
  Expr a;
  Expr b;
};

std::string_view to_string(UnaryOp op) noexcept
{
  switch (op) {
    case UnaryOp::neg: return "neg";
    case UnaryOp::sin: return "sin";
    case UnaryOp::cos: return "cos";
    case UnaryOp::exp: return "exp";
    case UnaryOp::ln: return "ln";
    case UnaryOp::sqrt: return "sqrt";
    case UnaryOp::abs: return "abs";
  }
  return "?";
}

std::string_view to_string(BinaryOp op) noexcept
{
  switch (op) {
    case BinaryOp::add: return "+";
    case BinaryOp::sub: return "-";
    case BinaryOp::mul: return "*";
    case BinaryOp::div: return "/";
    case BinaryOp::pow: return "^";
  }
  return "?";
}

Expr Expr::constant(double value)
{
  return Expr(std::make_shared<const Node>(Node{Kind::constant, value, {}, {}, {}, {}}));
}

Expr Expr::variable()
{
  static const Expr t(std::make_shared<const Node>(Node{Kind::variable, 0.0, {}, {}, {}, {}}));
  return t;
}

Expr Expr::unary(UnaryOp op, Expr child)
{
  return Expr(std::make_shared<const Node>(Node{Kind::unary, 0.0, op, {}, std::move(child), {}}));
}

Expr Expr::binary(BinaryOp op, Expr left, Expr right)
{
  return Expr(std::make_shared<const Node>(
      Node{Kind::binary, 0.0, {}, op, std::move(left), std::move(right)}));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
double Expr::value() const noexcept { return node_->value; }
UnaryOp Expr::unary_op() const noexcept { return node_->unary; }
BinaryOp Expr::binary_op() const noexcept { return node_->binary; }
const Expr& Expr::child() const noexcept { return node_->a; }
const Expr& Expr::left() const noexcept { return node_->a; }
const Expr& Expr::right() const noexcept { return node_->b; }

bool operator==(const Expr& x, const Expr& y) noexcept
{
  if (x.node_ == y.node_) return true;
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Expr::Kind::constant: return x.value() == y.value();
    case Expr::Kind::variable: return true;
    case Expr::Kind::unary: return x.unary_op() == y.unary_op() && x.child() == y.child();
    case Expr::Kind::binary:
      return x.binary_op() == y.binary_op() && x.left() == y.left() && x.right() == y.right();
  }
  return false;
}

std::size_t Expr::node_count() const noexcept
{
  switch (kind()) {
    case Kind::constant:
    case Kind::variable: return 1;
    case Kind::unary: return 1 + child().node_count();
    case Kind::binary: return 1 + left().node_count() + right().node_count();
  }
  return 1;
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

bool is_integer(double x) { return std::isfinite(x) && std::trunc(x) == x; }

std::string num(double x)
{
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

double apply_unary(UnaryOp op, double x)
{
  switch (op) {
    case UnaryOp::neg: return -x;
    case UnaryOp::sin: return std::sin(x);
    case UnaryOp::cos: return std::cos(x);
    case UnaryOp::exp: return std::exp(x);
    case UnaryOp::ln:
      if (!(x > 0.0)) throw DomainError("ln of non-positive argument " + num(x));
      return std::log(x);
    case UnaryOp::sqrt:
      if (x < 0.0) throw DomainError("sqrt of negative argument " + num(x));
      return std::sqrt(x);
    case UnaryOp::abs: return std::fabs(x);
  }
  return x;
}

double apply_binary(BinaryOp op, double x, double y)
{
  switch (op) {
    case BinaryOp::add: return x + y;
    case BinaryOp::sub: return x - y;
    case BinaryOp::mul: return x * y;
    case BinaryOp::div:
      if (y == 0.0) throw DomainError("division by zero");
      return x / y;
    case BinaryOp::pow:
      if (x == 0.0 && y < 0.0) throw DomainError("zero raised to negative power " + num(y));
      // Non-integer powers are defined for positive bases only (0 allowed for y > 0).
      if (x < 0.0 && !is_integer(y))
        throw DomainError("negative base " + num(x) + " raised to non-integer power " + num(y));
      return std::pow(x, y);
  }
  return x;
}

} // namespace

double eval(const Expr& e, double t)
{
  switch (e.kind()) {
    case Expr::Kind::constant: return e.value();
    case Expr::Kind::variable: return t;
    case Expr::Kind::unary: return apply_unary(e.unary_op(), eval(e.child(), t));
    case Expr::Kind::binary:
      return apply_binary(e.binary_op(), eval(e.left(), t), eval(e.right(), t));
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// rendering
//
// Precedence levels follow the grammar: sum 1, product 2, negation 3,
// power 4, atom 5. A power's base must be an atom; its exponent is a factor.

namespace {

int precedence(const Expr& e)
{
  switch (e.kind()) {
    case Expr::Kind::constant: return e.value() < 0.0 || std::signbit(e.value()) ? 0 : 5;
    case Expr::Kind::variable: return 5;
    case Expr::Kind::unary: return e.unary_op() == UnaryOp::neg ? 3 : 5;
    case Expr::Kind::binary:
      switch (e.binary_op()) {
        case BinaryOp::add:
        case BinaryOp::sub: return 1;
        case BinaryOp::mul:
        case BinaryOp::div: return 2;
        case BinaryOp::pow: return 4;
      }
  }
  return 0;
}

void render_into(const Expr& e, std::string& out);

void render_at_least(const Expr& e, int min_prec, std::string& out)
{
  if (precedence(e) < min_prec) {
    out += '(';
    render_into(e, out);
    out += ')';
  } else {
    render_into(e, out);
  }
}

void render_into(const Expr& e, std::string& out)
{
  switch (e.kind()) {
    case Expr::Kind::constant: out += num(e.value()); return;
    case Expr::Kind::variable: out += 't'; return;
    case Expr::Kind::unary:
      if (e.unary_op() == UnaryOp::neg) {
        out += '-';
        render_at_least(e.child(), 3, out);
      } else {
        out += to_string(e.unary_op());
        out += '(';
        render_into(e.child(), out);
        out += ')';
      }
      return;
    case Expr::Kind::binary: {
      const BinaryOp op = e.binary_op();
      if (op == BinaryOp::pow) {
        render_at_least(e.left(), 5, out);
        out += '^';
        render_at_least(e.right(), 3, out);
        return;
      }
      const int own = precedence(e);
      render_at_least(e.left(), own, out);
      out += to_string(op);
      render_at_least(e.right(), own + 1, out);
      return;
    }
  }
}

} // namespace

std::string render(const Expr& e)
{
  std::string out;
  render_into(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// folding builders

namespace {

/// Evaluates an all-constant node; leaves it unfolded if that would throw or
/// produce a non-finite value.
Expr fold_or_keep(const Expr& raw)
{
  try {
    const double v = eval(raw, 0.0);
    if (std::isfinite(v)) return Expr::constant(v);
  } catch (const DomainError&) {
  }
  return raw;
}

} // namespace

Expr operator+(const Expr& a, const Expr& b)
{
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  auto raw = Expr::binary(BinaryOp::add, a, b);
  return a.is_constant() && b.is_constant() ? fold_or_keep(raw) : raw;
}

Expr operator-(const Expr& a, const Expr& b)
{
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return -b;
  auto raw = Expr::binary(BinaryOp::sub, a, b);
  return a.is_constant() && b.is_constant() ? fold_or_keep(raw) : raw;
}

Expr operator*(const Expr& a, const Expr& b)
{
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(-1.0)) return -b;
  if (b.is_constant(-1.0)) return -a;
  auto raw = Expr::binary(BinaryOp::mul, a, b);
  return a.is_constant() && b.is_constant() ? fold_or_keep(raw) : raw;
}

Expr operator/(const Expr& a, const Expr& b)
{
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(0.0) && !b.is_constant(0.0)) return Expr::constant(0.0);
  auto raw = Expr::binary(BinaryOp::div, a, b);
  return a.is_constant() && b.is_constant() ? fold_or_keep(raw) : raw;
}

Expr operator-(const Expr& a)
{
  if (a.is_constant()) return Expr::constant(-a.value());
  if (a.kind() == Expr::Kind::unary && a.unary_op() == UnaryOp::neg) return a.child();
  return Expr::unary(UnaryOp::neg, a);
}

Expr pow(const Expr& base, const Expr& exponent)
{
  if (exponent.is_constant(1.0)) return base;
  if (exponent.is_constant(0.0)) return Expr::constant(1.0);
  auto raw = Expr::binary(BinaryOp::pow, base, exponent);
  return base.is_constant() && exponent.is_constant() ? fold_or_keep(raw) : raw;
}

Expr apply(UnaryOp op, const Expr& arg)
{
  if (op == UnaryOp::neg) return -arg;
  auto raw = Expr::unary(op, arg);
  return arg.is_constant() ? fold_or_keep(raw) : raw;
}

} // namespace fracdiff
