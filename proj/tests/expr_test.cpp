#include "ank/expr.hpp"

#include <random>
#include <string>
#include <vector>

#include "doctest.h"

using namespace ank;

TEST_CASE("parse builds the grammar-forced trees") {
  Expr e = parse_expr("sin(2*x) - 2*sin(x)");
  Expr want = ex_add(ex_apply(ExprFn::Sin, ex_mul(ex_const(Rational(2)), ex_var())),
                     ex_mul(ex_const(Rational(-2)), ex_apply(ExprFn::Sin, ex_var())));
  CHECK(e == want);

  Expr f = parse_expr("arcsin(2*x/(1+x^2))");
  Expr arg = ex_div(ex_mul(ex_const(Rational(2)), ex_var()),
                    ex_add(ex_const(Rational(1)), ex_powint(ex_var(), 2)));
  CHECK(f == ex_apply(ExprFn::Arcsin, arg));

  CHECK(parse_expr("sqrt(x)") == ex_powrat(ex_var(), Rational(1, 2)));
  CHECK(parse_expr("x^3/2") == ex_powrat(ex_var(), Rational(3, 2)));
  CHECK(parse_expr("x^3/3") ==
        ex_div(ex_powint(ex_var(), 3), ex_const(Rational(3))));
  CHECK(render_expr(ex_div(ex_powint(ex_var(), 3), ex_const(Rational(2)))) ==
        "(x^3)/2");
  CHECK(parse_expr("pi") == ex_pi());
  CHECK(parse_expr("-x") == ex_mul(ex_const(Rational(-1)), ex_var()));
}

TEST_CASE("parse errors carry kinds and offsets") {
  CHECK_THROWS_WITH_AS(parse_expr("x^x"), doctest::Contains("SyntaxError"),
                       Error);
  CHECK_THROWS_WITH_AS(parse_expr("sinh(x)"),
                       doctest::Contains("UnknownIdentifier"), Error);
  CHECK_THROWS_WITH_AS(parse_expr("1 + "), doctest::Contains("SyntaxError"),
                       Error);
  CHECK_THROWS_WITH_AS(parse_expr("(x"), doctest::Contains("SyntaxError"),
                       Error);
  CHECK_THROWS_WITH_AS(parse_expr("x y"), doctest::Contains("SyntaxError"),
                       Error);
  CHECK_THROWS_WITH_AS(parse_expr("log 3"), doctest::Contains("SyntaxError"),
                       Error);
}

TEST_CASE("render/parse round trip on a corpus") {
  const std::vector<std::string> corpus = {
      "x",
      "pi",
      "42",
      "-7",
      "x + 1",
      "x - 1",
      "2*x",
      "-2*x",
      "x*sin(x)",
      "x/2",
      "1/x",
      "x^2",
      "x^-2",
      "x^3/2",
      "sqrt(x)",
      "sqrt(1 + x^2)",
      "x^2/3",
      "sin(x)",
      "cos(x)",
      "tan(x)",
      "cot(x)",
      "exp(x)",
      "log(x)",
      "arcsin(x)",
      "arccos(x)",
      "arctan(x)",
      "arccot(x)",
      "sin(2*x) - 2*sin(x)",
      "cos(2*x) - cos(x)",
      "arcsin(2*x/(1 + x^2))",
      "(x + 1)/(x - 1)",
      "x*(x + 1)",
      "(x + 1)*(x + 2)",
      "x + x^2 + x^3",
      "x - x^2 - x^3",
      "sin(x)/cos(x)",
      "exp(sin(x))",
      "log(1 + x)",
      "sin(x)^2 + cos(x)^2",
      "1/(1 + x^2)",
      "x/(1 + exp(x))",
      "tan(x/2)",
      "arctan(x - x^3/3)",
      "2/3*x",
      "x^2*exp(x)",
      "sqrt(x)*log(x)",
      "pi*x",
      "x - 1/2",
      "cos(x^2)",
      "sin(sin(x))",
  };
  for (const std::string& s : corpus) {
    CAPTURE(s);
    CHECK(render_expr(parse_expr(s)) == s);
  }
}

TEST_CASE("classification") {
  CHECK(classify(parse_expr("tan(x)")) == FnClass::SEF);
  CHECK(classify(parse_expr("arcsin(2*x/(1 + x^2))")) == FnClass::EF);
  CHECK(classify(parse_expr("5")) == FnClass::SEF);
  CHECK(classify(parse_expr("arcsin(x)")) == FnClass::SEF);
  CHECK(classify(parse_expr("arcsin(1/2*sin(x))")) == FnClass::SEF);
  CHECK(classify(parse_expr("sqrt(1 + x^2)")) == FnClass::SEF);
  CHECK(classify(parse_expr("sqrt(x)")) == FnClass::EF);
  CHECK(classify(parse_expr("1/sqrt(1 - x*x)")) == FnClass::SEF);
  CHECK(classify(parse_expr("exp(x)^1/3")) == FnClass::SEF);
  CHECK(classify(parse_expr("arccos(x)")) == FnClass::SEF);
  CHECK(classify(parse_expr("arcsin(sin(x))")) == FnClass::EF);
}

TEST_CASE("derivative table") {
  Expr dtan = differentiate(parse_expr("tan(x)"));
  CHECK(dtan == parse_expr("1/cos(x)^2"));

  Expr dasin = differentiate(parse_expr("arcsin(x)"));
  CHECK(dasin == ex_div(ex_const(Rational(1)),
                        ex_powrat(ex_sub(ex_const(Rational(1)),
                                         ex_mul(ex_var(), ex_var())),
                                  Rational(1, 2))));

  CHECK(differentiate(parse_expr("5")) == ex_const(Rational(0)));
  CHECK(differentiate(ex_pi()) == ex_const(Rational(0)));
  CHECK(differentiate(parse_expr("x")) == ex_const(Rational(1)));
  CHECK(differentiate(parse_expr("exp(x)")) == parse_expr("exp(x)"));
  CHECK(differentiate(parse_expr("log(x)")) == parse_expr("1/x"));
  CHECK(differentiate(parse_expr("sin(x)")) == parse_expr("cos(x)"));
  CHECK(differentiate(parse_expr("cos(x)")) == parse_expr("-sin(x)"));
  CHECK(differentiate(parse_expr("arctan(x)")) == parse_expr("1/(1 + x*x)"));
  CHECK(differentiate(parse_expr("x^3")) == parse_expr("3*x^2"));
}

namespace {

// random SEF generator: compositions the classifier certifies
Expr random_sef(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 11);
  switch (pick(rng)) {
    case 0: return ex_var();
    case 1: return ex_const(Rational(static_cast<long>(rng() % 9) - 4));
    case 2: return ex_pi();
    case 3: return ex_const(Rational(1, 3));
    case 4: return ex_add(random_sef(rng, depth - 1), random_sef(rng, depth - 1));
    case 5: return ex_mul(random_sef(rng, depth - 1), random_sef(rng, depth - 1));
    case 6: return ex_apply(ExprFn::Sin, random_sef(rng, depth - 1));
    case 7: return ex_apply(ExprFn::Exp, random_sef(rng, depth - 1));
    case 8: return ex_apply(ExprFn::Tan, random_sef(rng, depth - 1));
    case 9: return ex_apply(ExprFn::Arctan, random_sef(rng, depth - 1));
    case 10:
      return ex_apply(ExprFn::Arcsin,
                      ex_mul(ex_const(Rational(1, 2)),
                             ex_apply(ExprFn::Cos, random_sef(rng, depth - 1))));
    default:
      return ex_div(random_sef(rng, depth - 1),
                    ex_apply(ExprFn::Exp, random_sef(rng, depth - 1)));
  }
}

}  // namespace

TEST_CASE("SEF closure under differentiation") {
  std::mt19937 rng(23);
  int checked = 0;
  while (checked < 200) {
    Expr e = random_sef(rng, 5);
    if (classify(e) != FnClass::SEF) continue;  // generator aims for SEF
    CHECK(classify(differentiate(e)) == FnClass::SEF);
    ++checked;
  }
}

TEST_CASE("guarded evaluation: enclosures") {
  IntervalValue v = eval_guarded(parse_expr("arcsin(2*x/(1+x^2))"), Rational(3), 64);
  // arcsin(3/5) = 0.6435011...
  CHECK(v.lo() > Rational(64350, 100000));
  CHECK(v.hi() < Rational(64351, 100000));
  CHECK(v.width() <= Rational(1, Integer(1) << 62));

  IntervalValue w = eval_guarded(parse_expr("exp(1)"), Rational(0), 100);
  CHECK(w.lo() > Rational(271828, 100000));
  CHECK(w.hi() < Rational(271829, 100000));
  CHECK(w.width() <= Rational(1, Integer(1) << 98));

  // exact rational subtree evaluates tightly
  IntervalValue r = eval_guarded(parse_expr("(x+1)/(x-1)"), Rational(3), 32);
  CHECK(r.contains(Rational(2)));

  // pi appears exactly
  IntervalValue s = eval_guarded(parse_expr("sin(pi/2)"), Rational(0), 64);
  CHECK(s.contains(Rational(1)));
  CHECK(s.width() <= Rational(1, Integer(1) << 62));
}

TEST_CASE("guarded evaluation: domain errors") {
  CHECK_THROWS_WITH_AS(eval_guarded(parse_expr("tan(pi/2)"), Rational(0), 64),
                       doctest::Contains("cos zero"), Error);
  CHECK_THROWS_WITH_AS(eval_guarded(parse_expr("log(x)"), Rational(0), 64),
                       doctest::Contains("log nonpositive"), Error);
  CHECK_THROWS_WITH_AS(eval_guarded(parse_expr("log(x)"), Rational(-2), 64),
                       doctest::Contains("log nonpositive"), Error);
  CHECK_THROWS_WITH_AS(eval_guarded(parse_expr("1/x"), Rational(0), 64),
                       doctest::Contains("division by zero"), Error);
  CHECK_THROWS_WITH_AS(eval_guarded(parse_expr("sqrt(x)"), Rational(-1), 64),
                       doctest::Contains("negative base"), Error);
  CHECK_THROWS_WITH_AS(eval_guarded(parse_expr("arcsin(x)"), Rational(2), 64),
                       doctest::Contains("arcsin argument"), Error);
  CHECK_THROWS_WITH_AS(eval_guarded(parse_expr("cot(pi)"), Rational(0), 64),
                       doctest::Contains("sin zero"), Error);
  // exactly-on-boundary but decidable: arcsin(1) = pi/2
  IntervalValue v = eval_guarded(parse_expr("arcsin(x)"), Rational(1), 64);
  CHECK(v.lo() > Rational(157079, 100000));
  CHECK(v.hi() < Rational(157080, 100000));
  // 1/(x - x) is exactly zero in the denominator
  CHECK_THROWS_WITH_AS(eval_guarded(parse_expr("1/(x - x)"), Rational(5), 64),
                       doctest::Contains("division by zero"), Error);
}

TEST_CASE("expand_taylor matches the worked examples") {
  TaylorPoly p = expand_taylor(parse_expr("sin(2*x) - 2*sin(x)"), 3);
  CHECK(p == TaylorPoly{Rational(0),
                        {Rational(0), Rational(0), Rational(0), Rational(-1)}});

  TaylorPoly s = expand_taylor(parse_expr("sqrt(1 + sin(x))"), 5);
  TaylorPoly u = tp_compose(maclaurin(BaseFn::pow(Rational(1, 2)), 5),
                            maclaurin(BaseFn::Sin, 5));
  CHECK(s == u);

  CHECK(expand_taylor(parse_expr("exp(x)"), 0) ==
        TaylorPoly::constant(Rational(1), 0));

  TaylorPoly t = expand_taylor(parse_expr("tan(x)"), 5);
  CHECK(t.coeff(1) == Rational(1));
  CHECK(t.coeff(3) == Rational(1, 3));
  CHECK(t.coeff(5) == Rational(2, 15));

  TaylorPoly lg = expand_taylor(parse_expr("log(1 + x)"), 4);
  CHECK(lg.coeff(1) == Rational(1));
  CHECK(lg.coeff(2) == Rational(-1, 2));
  CHECK(lg.coeff(3) == Rational(1, 3));
  CHECK(lg.coeff(4) == Rational(-1, 4));
}

TEST_CASE("expand_taylor error paths") {
  CHECK_THROWS_WITH_AS(expand_taylor(parse_expr("1/x"), 3),
                       doctest::Contains("PoleAtZero"), Error);
  CHECK_THROWS_WITH_AS(expand_taylor(parse_expr("cot(x)"), 3),
                       doctest::Contains("PoleAtZero"), Error);
  CHECK_THROWS_WITH_AS(expand_taylor(parse_expr("log(x)"), 3),
                       doctest::Contains("UnsupportedExpansionPoint"), Error);
  CHECK_THROWS_WITH_AS(expand_taylor(parse_expr("sin(1 + x)"), 3),
                       doctest::Contains("UnsupportedExpansionPoint"), Error);
  CHECK_THROWS_WITH_AS(expand_taylor(ex_pi(), 3),
                       doctest::Contains("UnsupportedExpansionPoint"), Error);
  CHECK_THROWS_WITH_AS(expand_taylor(parse_expr("arccos(x)"), 3),
                       doctest::Contains("UnsupportedExpansionPoint"), Error);
}

TEST_CASE("derivative-Taylor consistency") {
  const std::vector<std::string> exprs = {
      "sin(x)", "exp(x)", "tan(x)", "x^3 + 2*x", "sin(2*x) - 2*sin(x)",
      "1/(1 + x^2)", "sqrt(1 + sin(x))", "log(1 + x)", "arctan(x)",
  };
  for (const std::string& s : exprs) {
    CAPTURE(s);
    Expr e = parse_expr(s);
    for (std::size_t n = 1; n <= 6; ++n) {
      TaylorPoly lhs = tp_derive(expand_taylor(e, n));
      TaylorPoly rhs = expand_taylor(differentiate(e), n - 1);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("numeric derivative check") {
  const std::vector<std::pair<std::string, Rational>> cases = {
      {"sin(x)", Rational(1, 3)},
      {"exp(x)", Rational(1, 2)},
      {"x^3 + 2*x", Rational(2)},
      {"1/(1 + x^2)", Rational(1)},
      {"log(x)", Rational(3)},
      {"arctan(x)", Rational(1, 2)},
      {"tan(x)", Rational(1, 5)},
  };
  Rational h(1, Integer(1) << 20);
  for (const auto& [s, p] : cases) {
    CAPTURE(s);
    Expr e = parse_expr(s);
    IntervalValue fp = eval_guarded(e, p + h, 80);
    IntervalValue fm = eval_guarded(e, p - h, 80);
    Rational diff = (fp.mid() - fm.mid()) / (Rational(2) * h);
    IntervalValue d = eval_guarded(differentiate(e), p, 80);
    // |d - diff| <= width + O(h^2) slack
    Rational slack = d.width() + fp.width() + fm.width() + Rational(100) * h * h;
    CHECK((d.lo() - slack) <= diff);
    CHECK(diff <= (d.hi() + slack));
  }
}
