#include "fracdiff/expr.hpp"

namespace fracdiff {

namespace {

/// u'(x) for the unary functions, as an expression in x.
Expr outer_derivative(UnaryOp op, const Expr& x)
{
  switch (op) {
    case UnaryOp::neg: return constant(-1.0);
    case UnaryOp::sin: return apply(UnaryOp::cos, x);
    case UnaryOp::cos: return -apply(UnaryOp::sin, x);
    case UnaryOp::exp: return apply(UnaryOp::exp, x);
    case UnaryOp::ln: return constant(1.0) / x;
    case UnaryOp::sqrt: return constant(1.0) / (constant(2.0) * apply(UnaryOp::sqrt, x));
    case UnaryOp::abs: break;
  }
  throw NotDifferentiable("abs(...) has no symbolic derivative");
}

} // namespace

Expr diff_classical(const Expr& f)
{
  switch (f.kind()) {
    case Expr::Kind::constant: return constant(0.0);
    case Expr::Kind::variable: return constant(1.0);
    case Expr::Kind::unary: {
      if (f.unary_op() == UnaryOp::neg) return -diff_classical(f.child());
      const Expr& g = f.child();
      return outer_derivative(f.unary_op(), g) * diff_classical(g);
    }
    case Expr::Kind::binary: break;
  }

  const Expr& u = f.left();
  const Expr& v = f.right();
  switch (f.binary_op()) {
    case BinaryOp::add: return diff_classical(u) + diff_classical(v);
    case BinaryOp::sub: return diff_classical(u) - diff_classical(v);
    case BinaryOp::mul: return diff_classical(u) * v + u * diff_classical(v);
    case BinaryOp::div:
      return (diff_classical(u) * v - u * diff_classical(v)) / pow(v, constant(2.0));
    case BinaryOp::pow:
      if (v.is_constant()) {
        return v * pow(u, constant(v.value() - 1.0)) * diff_classical(u);
      }
      if (u.is_constant()) {
        return f * apply(UnaryOp::ln, u) * diff_classical(v);
      }
      // u^v = exp(v ln u)
      return f * (diff_classical(v) * apply(UnaryOp::ln, u) + v * diff_classical(u) / u);
  }
  return constant(0.0);
}

Expr nth_diff(const Expr& f, unsigned n)
{
  Expr d = f;
  for (unsigned i = 0; i < n; ++i) d = diff_classical(d);
  return d;
}

Expr compose(const Expr& f, const Expr& inner)
{
  switch (f.kind()) {
    case Expr::Kind::constant: return f;
    case Expr::Kind::variable: return inner;
    case Expr::Kind::unary: return Expr::unary(f.unary_op(), compose(f.child(), inner));
    case Expr::Kind::binary:
      return Expr::binary(f.binary_op(), compose(f.left(), inner), compose(f.right(), inner));
  }
  return f;
}

} // namespace fracdiff
