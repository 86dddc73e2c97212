#include "ank/limits.hpp"

#include <vector>

#include "doctest.h"

using namespace ank;

TEST_CASE("worked ratio limits") {
  Expr num = parse_expr("sin(2*x) - 2*sin(x)");

  LimitResult a = ratio_limit(num, parse_expr("cos(2*x) - cos(x)"), 3);
  CHECK(a.tag == LimitResult::Finite);
  CHECK(a.value == Rational(0));
  CHECK(a.str() == "finite 0");

  LimitResult b = ratio_limit(num, parse_expr("cos(2*x) - cos(x) + 3/2*x^2"), 4);
  CHECK(b.tag == LimitResult::NoLimit);
  CHECK(b.str() == "no-limit");

  LimitResult c = ratio_limit(num, parse_expr("arctan(x) - x + x^3/3"), 5);
  CHECK(c.tag == LimitResult::MinusInfinity);
  CHECK(c.str() == "-inf");
}

TEST_CASE("classic finite limits") {
  LimitResult s = ratio_limit(parse_expr("sin(x)"), parse_expr("x"));
  CHECK(s == LimitResult{LimitResult::Finite, Rational(1), 8});

  LimitResult c = ratio_limit(parse_expr("1 - cos(x)"), parse_expr("x^2"));
  CHECK(c.tag == LimitResult::Finite);
  CHECK(c.value == Rational(1, 2));

  LimitResult e = ratio_limit(parse_expr("exp(x) - 1"), parse_expr("x"));
  CHECK(e.tag == LimitResult::Finite);
  CHECK(e.value == Rational(1));

  LimitResult t = ratio_limit(parse_expr("tan(x) - sin(x)"), parse_expr("x^3"));
  CHECK(t.tag == LimitResult::Finite);
  CHECK(t.value == Rational(1, 2));
}

TEST_CASE("identically-zero numerator against itself is inconclusive") {
  Expr z = parse_expr("sin(x) - sin(x)");
  LimitResult r = ratio_limit(z, z, 4);
  CHECK(r.tag == LimitResult::Inconclusive);
  CHECK(r.max_order_tried == 32);
  CHECK(r.str() == "inconclusive(32)");
}

TEST_CASE("automatic order doubling") {
  // numerator and denominator first differ at order 7 (x^7 coefficients of
  // sin expansions), beyond the starting order 2
  LimitResult r = ratio_limit(parse_expr("sin(x) - x + x^3/6 - x^5/120"),
                              parse_expr("x^7"), 2);
  CHECK(r.tag == LimitResult::Finite);
  CHECK(r.value == Rational(-1, 5040));
}

TEST_CASE("laurent ratio classification") {
  LaurentPoly x = expand_laurent(parse_expr("x"), 4);
  LaurentPoly one = expand_laurent(parse_expr("1"), 4);
  LaurentPoly x2 = expand_laurent(parse_expr("x^2"), 4);

  CHECK(laurent_ratio_limit(x, x) ==
        LimitResult{LimitResult::Finite, Rational(1), 0});
  CHECK(laurent_ratio_limit(one, x2).tag == LimitResult::PlusInfinity);
  CHECK(laurent_ratio_limit(one, x).tag == LimitResult::NoLimit);
  LaurentPoly neg_one = expand_laurent(parse_expr("-1"), 4);
  CHECK(laurent_ratio_limit(neg_one, x2).tag == LimitResult::MinusInfinity);

  LaurentPoly zero;
  zero.mlow = 0;
  zero.coeffs.assign(5, Rational(0));
  CHECK_THROWS_WITH_AS(laurent_ratio_limit(one, zero),
                       doctest::Contains("AllZeroDenominator"), Error);
}

TEST_CASE("poles through reciprocal expansion") {
  // (1/x) / (1/x^2) = x -> 0
  Expr f = parse_expr("1/x");
  Expr g = parse_expr("1/x^2");
  LimitResult r = ratio_limit(f, g);
  CHECK(r == LimitResult{LimitResult::Finite, Rational(0), 8});

  // x / (1/x) = x^2 -> 0 but classified from aligned exponents
  LimitResult s = ratio_limit(parse_expr("x"), parse_expr("1/x"));
  CHECK(s.tag == LimitResult::Finite);
  CHECK(s.value == Rational(0));

  // sin(x)/x^3 ~ 1/x^2 -> +inf
  LimitResult t = ratio_limit(parse_expr("sin(x)"), parse_expr("x^3"));
  CHECK(t.tag == LimitResult::PlusInfinity);

  // cos(x)/x -> no two-sided limit
  LimitResult u = ratio_limit(parse_expr("cos(x)"), parse_expr("x"));
  CHECK(u.tag == LimitResult::NoLimit);
}

TEST_CASE("order monotonicity") {
  struct Case {
    const char* f;
    const char* g;
  };
  const std::vector<Case> cases = {
      {"sin(2*x) - 2*sin(x)", "cos(2*x) - cos(x)"},
      {"sin(2*x) - 2*sin(x)", "cos(2*x) - cos(x) + 3/2*x^2"},
      {"sin(2*x) - 2*sin(x)", "arctan(x) - x + x^3/3"},
      {"sin(x)", "x"},
  };
  for (const auto& [fs, gs] : cases) {
    CAPTURE(fs);
    Expr f = parse_expr(fs), g = parse_expr(gs);
    LimitResult base = ratio_limit(f, g, 6);
    REQUIRE(base.tag != LimitResult::Inconclusive);
    for (std::size_t n = 7; n <= 12; ++n) {
      LimitResult r = ratio_limit(f, g, n);
      CHECK(r.tag == base.tag);
      if (base.tag == LimitResult::Finite) CHECK(r.value == base.value);
    }
  }
}

TEST_CASE("numeric consistency of finite verdicts") {
  struct Case {
    const char* f;
    const char* g;
    Rational limit;
  };
  const std::vector<Case> cases = {
      {"sin(x)", "x", Rational(1)},
      {"1 - cos(x)", "x^2", Rational(1, 2)},
      {"exp(x) - 1", "x", Rational(1)},
  };
  for (const auto& [fs, gs, L] : cases) {
    CAPTURE(fs);
    Expr f = parse_expr(fs), g = parse_expr(gs);
    LimitResult r = ratio_limit(f, g);
    REQUIRE(r.tag == LimitResult::Finite);
    CHECK(r.value == L);
    Rational prev_gap;
    for (int k = 10; k <= 20; k += 5) {
      for (int sgn : {1, -1}) {
        Rational x = Rational(sgn, Integer(1) << k);
        Rational fx = eval_guarded(f, x, 96).mid();
        Rational gx = eval_guarded(g, x, 96).mid();
        Rational gap = (fx / gx - L).abs();
        CHECK(gap < Rational(1, Integer(1) << (k - 2)));
      }
    }
  }
}

TEST_CASE("sign consistency of infinite verdicts") {
  Expr f = parse_expr("sin(x)");
  Expr g = parse_expr("x^3");
  REQUIRE(ratio_limit(f, g).tag == LimitResult::PlusInfinity);
  for (int k = 16; k <= 20; ++k) {
    for (int sgn : {1, -1}) {
      Rational x = Rational(sgn, Integer(1) << k);
      Rational v = eval_guarded(f, x, 96).mid() / eval_guarded(g, x, 96).mid();
      CHECK(v > Rational(1000));
    }
  }
}
