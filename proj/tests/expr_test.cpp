#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracdiff/expr.hpp"
#include "oracles.hpp"

using namespace fracdiff;

namespace {

Expr random_tree(std::mt19937& rng, int depth)
{
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 3 : 1);
  switch (pick(rng)) {
  case 0: {
    // Non-negative constants of assorted magnitudes and shapes.
    static const double pool[] = {0.0, 1.0, 2.0, 0.5, 3.25, 1e-7, 1e20, 0.1, 123456.789, 2.5e-300};
    std::uniform_int_distribution<std::size_t> i(0, std::size(pool) - 1);
    return Expr::constant(pool[i(rng)]);
  }
  case 1: return Expr::variable();
  case 2: {
    std::uniform_int_distribution<int> op(0, 6);
    return Expr::unary(static_cast<UnaryOp>(op(rng)), random_tree(rng, depth - 1));
  }
  default: {
    std::uniform_int_distribution<int> op(0, 4);
    return Expr::binary(static_cast<BinaryOp>(op(rng)), random_tree(rng, depth - 1),
                        random_tree(rng, depth - 1));
  }
  }
}

bool same_pointwise(const Expr& a, const Expr& b, std::initializer_list<double> ts)
{
  for (double t : ts)
    if (!oracle::close(eval(a, t), eval(b, t), 1e-12)) return false;
  return true;
}

} // namespace

TEST_CASE("parse builds the expected trees")
{
  const Expr t = Expr::variable();
  CHECK(parse("t^2") == Expr::binary(BinaryOp::pow, t, Expr::constant(2)));
  CHECK(parse("sin(t/0.5)")
        == Expr::unary(UnaryOp::sin, Expr::binary(BinaryOp::div, t, Expr::constant(0.5))));
  CHECK(parse("-t^2") == Expr::unary(UnaryOp::neg, parse("t^2")));
  CHECK(parse("2^3^2") == Expr::binary(BinaryOp::pow, Expr::constant(2), parse("3^2")));
  CHECK(parse("1-2-t") == Expr::binary(BinaryOp::sub, parse("1-2"), t));
  CHECK(parse(" 2 * ( t + 1 ) ") == parse("2*(t+1)"));
  CHECK(parse("1.5e2") == Expr::constant(150));
  CHECK(parse("t^-1") == Expr::binary(BinaryOp::pow, t, Expr::unary(UnaryOp::neg, Expr::constant(1))));
}

TEST_CASE("parse reports the offending offset")
{
  try {
    parse("2**t");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 1);
  }
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("(t+1"), ParseError);
  CHECK_THROWS_AS(parse("t+1)"), ParseError);
  CHECK_THROWS_AS(parse("foo(t)"), ParseError);
  CHECK_THROWS_AS(parse("x"), ParseError);
  CHECK_THROWS_AS(parse("sin t"), ParseError);
  CHECK_THROWS_AS(parse("t t"), ParseError);
  CHECK_THROWS_AS(parse("2+"), ParseError);
}

TEST_CASE("eval")
{
  CHECK(eval(parse("t^2"), 4) == 16);
  CHECK(eval(parse("3*t^(1/3)"), 1) == doctest::Approx(3));
  CHECK(eval(parse("pi"), 0) == std::numbers::pi);
  CHECK(eval(parse("e"), 0) == std::numbers::e);
  CHECK(eval(parse("(0-2)^3"), 0) == -8);
  CHECK(eval(parse("abs(t)"), -3) == 3);
  CHECK_THROWS_AS(eval(parse("ln(t)"), 0), DomainError);
  CHECK_THROWS_AS(eval(parse("sqrt(t)"), -1), DomainError);
  CHECK_THROWS_AS(eval(parse("1/t"), 0), DomainError);
  CHECK_THROWS_AS(eval(parse("t^0.5"), -1), DomainError);
  CHECK_THROWS_AS(eval(parse("t^-1"), 0), DomainError);
}

TEST_CASE("eval of t^n matches std::pow")
{
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> tdist(0.01, 10.0), ndist(-4.0, 4.0);
  for (int i = 0; i < 200; ++i) {
    const double t = tdist(rng), n = ndist(rng);
    const Expr e = Expr::binary(BinaryOp::pow, Expr::variable(), Expr::constant(n));
    CHECK(eval(e, t) == std::pow(t, n));
  }
}

TEST_CASE("render round-trips through parse")
{
  std::mt19937 rng(20240611);
  for (int i = 0; i < 2000; ++i) {
    const Expr e = random_tree(rng, 5);
    const std::string text = render(e);
    INFO(text);
    CHECK(parse(text) == e);
  }
  for (const auto& s : oracle::smooth_corpus()) CHECK(parse(render(parse(s))) == parse(s));
}

TEST_CASE("diff_classical examples")
{
  CHECK(same_pointwise(diff_classical(parse("t^3")), parse("3*t^2"), {0.5, 1, 2}));
  CHECK(same_pointwise(diff_classical(parse("sin(t)")), parse("cos(t)"), {0.5, 1, 2}));
  CHECK(same_pointwise(diff_classical(parse("2^t")), parse("ln(2)*2^t"), {0.5, 1, 2}));
  CHECK(same_pointwise(diff_classical(parse("t^t")), parse("t^t*(ln(t)+1)"), {0.5, 1, 2}));
  CHECK(diff_classical(parse("5")) == Expr::constant(0));
  CHECK_THROWS_AS(diff_classical(parse("abs(t)")), NotDifferentiable);
  CHECK_THROWS_AS(diff_classical(parse("t+abs(t)")), NotDifferentiable);
}

TEST_CASE("diff_classical agrees with central differences")
{
  for (const auto& s : oracle::smooth_corpus()) {
    const Expr f = parse(s);
    const Expr df = diff_classical(f);
    for (double t : oracle::smooth_grid()) {
      INFO(s << " at " << t);
      const double fd = oracle::central_difference(oracle::of(f), t);
      CHECK(oracle::close(eval(df, t), fd, 1e-5));
    }
  }
}

TEST_CASE("nth_diff")
{
  CHECK(nth_diff(parse("t^3"), 0) == parse("t^3"));
  CHECK(same_pointwise(nth_diff(parse("t^3"), 2), parse("6*t"), {0.5, 1, 2}));
  CHECK(same_pointwise(nth_diff(parse("exp(t)"), 5), parse("exp(t)"), {0.5, 1, 2}));
  CHECK(same_pointwise(nth_diff(parse("sin(t)"), 4), parse("sin(t)"), {0.5, 1, 2}));
}

TEST_CASE("compose and folding builders")
{
  CHECK(compose(parse("sin(t)+t"), parse("2*t")) == parse("sin(2*t)+2*t"));
  const Expr t = var_t();
  CHECK(constant(0) + t == t);
  CHECK(t * constant(1) == t);
  CHECK(t - constant(0) == t);
  CHECK(constant(0) * t == constant(0));
  CHECK(pow(t, constant(1)) == t);
  CHECK(pow(t, constant(0)) == constant(1));
  CHECK(constant(2) * constant(3) == constant(6));
  // An undefined constant subtree is kept rather than folded to NaN.
  CHECK_FALSE(apply(UnaryOp::ln, constant(-1)).is_constant());
}
