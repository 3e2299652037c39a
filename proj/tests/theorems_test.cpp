#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracdiff/theorems.hpp"
#include "oracles.hpp"

using namespace fracdiff;
using std::numbers::pi;

namespace {

void check_witness(const WitnessResult& w, double a, double b)
{
  CHECK(w.c > a);
  CHECK(w.c < b);
  CHECK(w.lo <= w.c);
  CHECK(w.c <= w.hi);
  CHECK(w.hi - w.lo <= 1e-10 * (b - a));
  CHECK(w.residual <= 1e-7);
  CHECK(w.brackets_found >= 1);
}

} // namespace

TEST_CASE("find_rolle_point examples")
{
  const auto w = find_rolle_point(parse("(t-1)*(t-2)"), 1.0, 2.0, 0.5);
  check_witness(w, 1.0, 2.0);
  CHECK(std::fabs(w.c - 1.5) <= 1e-8);

  const auto s = find_rolle_point(parse("sin(t)"), pi / 6, 5 * pi / 6, 0.5);
  check_witness(s, pi / 6, 5 * pi / 6);
  CHECK(std::fabs(s.c - pi / 2) <= 1e-8);

  CHECK_THROWS_AS(find_rolle_point(parse("t"), 1.0, 2.0, 0.5), PreconditionViolation);
  CHECK_THROWS_AS(find_rolle_point(parse("t^2"), 0.0, 1.0, 0.5), InvalidArgument);
}

TEST_CASE("find_rolle_point failure modes")
{
  // Four roots of D f, all missed by a two-cell scan.
  WitnessOptions coarse;
  coarse.grid_cells = 2;
  CHECK_THROWS_AS(find_rolle_point(parse("sin(4*pi*t)"), 1.0, 2.0, 0.5, {}, coarse), NoSignChange);
  // The sign change of D |t-2| at 2 is a jump, not a root.
  CHECK_THROWS_AS(find_rolle_point(parse("abs(t-2)"), 1.0, 3.0, 0.5), NonConvergence);
}

TEST_CASE("leftmost root is returned and the others are counted")
{
  // f' = 3t^2 - 12t + 11 vanishes at 2 -+ 1/sqrt(3).
  const auto w = find_rolle_point(parse("t^3-6*t^2+11*t"), 1.0, 3.0, 0.5);
  CHECK(std::fabs(w.c - (2.0 - 1.0 / std::sqrt(3.0))) <= 1e-8);
  CHECK(w.brackets_found == 2);
}

TEST_CASE("Rolle points match a classical root finder")
{
  struct Case {
    const char* f;
    double a, b;
  };
  const Case cases[] = {
      {"(t-1)*(t-2)", 1.0, 2.0}, {"sin(t)", pi / 6, 5 * pi / 6}, {"sin(2*t)", pi / 12, 5 * pi / 12},
      {"t^2-3*t", 1.0, 2.0},     {"cos(t)", 1.0, 2 * pi - 1.0}, {"ln(t)/t", 2.0, 4.0},
  };
  for (const auto& k : cases) {
    const Expr f = parse(k.f);
    REQUIRE(std::fabs(eval(f, k.a) - eval(f, k.b)) <= 1e-12);
    const double ref = oracle::bisect(oracle::of(diff_classical(f)), k.a, k.b);
    for (double alpha : {0.25, 0.5, 0.9}) {
      INFO(k.f << " alpha " << alpha);
      const auto w = find_rolle_point(f, k.a, k.b, alpha);
      check_witness(w, k.a, k.b);
      CHECK(std::fabs(w.c - ref) <= 1e-8);
    }
  }
}

TEST_CASE("find_mvt_point examples")
{
  const auto w = find_mvt_point(parse("t"), 1.0, 4.0, 0.5);
  check_witness(w, 1.0, 4.0);
  CHECK(std::fabs(w.c - 2.25) <= 1e-8);
  CHECK(mvt_slope(parse("t"), 1.0, 4.0, 0.5) == doctest::Approx(1.5));

  const auto flat = find_mvt_point(parse("(1/0.5)*t^0.5"), 1.0, 4.0, 0.5);
  CHECK(mvt_slope(parse("(1/0.5)*t^0.5"), 1.0, 4.0, 0.5) == doctest::Approx(1.0));
  CHECK(flat.c > 1.0);
  CHECK(flat.c < 4.0);
  CHECK(flat.residual <= 1e-7);

  const auto classical = find_mvt_point(parse("t^2"), 0.5, 1.5, 1.0);
  CHECK(std::fabs(classical.c - 1.0) <= 1e-8);
}

TEST_CASE("MVT auxiliary vanishes at both ends")
{
  for (const char* s : {"t", "t^3-2*t", "exp(t)", "sin(t)", "ln(t)", "sqrt(t)"})
    for (double alpha : {0.25, 0.5, 1.0}) {
      const Expr f = parse(s);
      const double a = 0.5, b = 3.0;
      const Expr g = mvt_auxiliary(f, a, b, alpha);
      const double scale = std::max({1.0, std::fabs(eval(f, a)), std::fabs(eval(f, b))});
      INFO(s << " alpha " << alpha);
      CHECK(std::fabs(eval(g, a)) <= 1e-12 * scale);
      CHECK(std::fabs(eval(g, b)) <= 1e-12 * scale);
    }
}

TEST_CASE("MVT witnesses satisfy the slope equation")
{
  for (const char* s : {"t^2", "exp(t)", "ln(t)", "t^3-2*t"})
    for (double alpha : {0.25, 0.5, 0.75}) {
      const Expr f = parse(s);
      const auto w = find_mvt_point(f, 0.5, 2.5, alpha);
      INFO(s << " alpha " << alpha);
      check_witness(w, 0.5, 2.5);
      const double slope = mvt_slope(f, 0.5, 2.5, alpha);
      const double dc = std::pow(w.c, 1.0 - alpha) * eval(diff_classical(f), w.c);
      CHECK(std::fabs(dc - slope) <= 1e-7 * std::max(1.0, std::fabs(slope)));
    }
}

TEST_CASE("check_rules_batch examples")
{
  const auto prod = check_rules_batch({{parse("t^2"), parse("sin(t)")}}, {0.5}, {1.0});
  for (const auto& e : prod.entries)
    if (e.identity == Identity::product) CHECK(e.residual <= 1e-6);
  CHECK(prod.failures == 0);

  const auto ones = check_rules_batch({{parse("1"), parse("1")}}, {0.25, 0.5, 1.0}, {0.5, 1.0, 2.0});
  for (Identity id : all_identities) CHECK(ones.max_for(id) <= 1e-12);
  CHECK(ones.failures == 0);

  const auto chain = check_rules_batch({{parse("sin(t)"), parse("(1/0.5)*t^0.5")}}, {0.5}, {0.5, 1.0, 2.0});
  CHECK(chain.max_for(Identity::chain) <= 1e-6);
}

TEST_CASE("check_rules_batch over the default corpus")
{
  const auto corpus = default_rule_corpus();
  CHECK(corpus.size() == 8);
  const auto report = check_rules_batch(corpus, {0.3, 0.5, 0.9}, {0.3, 0.7, 1.0, 2.0, 5.0});
  CHECK(report.failures == 0);
  for (Identity id : all_identities) {
    INFO(to_string(id));
    CHECK(report.max_for(id) <= 1e-5);
  }
}

TEST_CASE("check_rules_batch records errors and skips")
{
  const auto r = check_rules_batch({{parse("sqrt(t-3)"), parse("t-1")}}, {0.5}, {1.0});
  CHECK(r.failures > 0);
  bool noted = false;
  for (const auto& e : r.entries) noted = noted || !e.note.empty();
  CHECK(noted);
}

TEST_CASE("tighter estimator tolerance does not worsen rule residuals")
{
  const auto corpus = default_rule_corpus();
  const std::vector<double> alphas{0.5}, grid{0.7, 2.0};
  LimitConfig loose;
  loose.target_rtol = 1e-6;
  LimitConfig tight = loose;
  tight.target_rtol = loose.target_rtol / 2;
  const auto a = check_rules_batch(corpus, alphas, grid, loose);
  const auto b = check_rules_batch(corpus, alphas, grid, tight);
  for (Identity id : all_identities) {
    INFO(to_string(id));
    // Below 1e-12 both runs sit at the roundoff floor.
    CHECK(b.max_for(id) <= std::max(a.max_for(id), 1e-12));
  }
}
