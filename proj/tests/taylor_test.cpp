#include "ank/taylor.hpp"

#include <random>

#include "doctest.h"

using namespace ank;

namespace {

TaylorPoly from_coeffs(std::vector<Rational> c) {
  TaylorPoly p;
  p.center = Rational(0);
  p.coeffs = std::move(c);
  return p;
}

TaylorPoly random_poly(std::mt19937& rng, std::size_t order, bool unit = false) {
  std::uniform_int_distribution<long> d(-6, 6);
  std::vector<Rational> c;
  for (std::size_t j = 0; j <= order; ++j) {
    long den = 1 + std::abs(d(rng));
    c.emplace_back(d(rng), den);
  }
  if (unit && c[0].is_zero()) c[0] = Rational(1);
  return from_coeffs(std::move(c));
}

}  // namespace

TEST_CASE("maclaurin closed forms") {
  CHECK(maclaurin(BaseFn::Exp, 3) ==
        from_coeffs({1, 1, Rational(1, 2), Rational(1, 6)}));
  CHECK(maclaurin(BaseFn::LogGeom, 4) ==
        from_coeffs({0, 1, Rational(1, 2), Rational(1, 3), Rational(1, 4)}));
  CHECK(maclaurin(BaseFn::Log1p, 4) ==
        from_coeffs({0, 1, Rational(-1, 2), Rational(1, 3), Rational(-1, 4)}));
  CHECK(maclaurin(BaseFn::Geometric, 3) == from_coeffs({1, 1, 1, 1}));
  CHECK(maclaurin(BaseFn::Arctan, 5) ==
        from_coeffs({0, 1, 0, Rational(-1, 3), 0, Rational(1, 5)}));

  // arcsin coefficients via the exact rational binomial oracle:
  // a_{2j+1} = binom(j - 1/2, j) / (2j + 1)
  TaylorPoly as = maclaurin(BaseFn::Arcsin, 5);
  for (unsigned long j = 0; 2 * j + 1 <= 5; ++j)
    CHECK(as.coeff(2 * j + 1) ==
          binomial(Rational(2 * static_cast<long>(j) - 1, 2), j) /
              Rational(2 * static_cast<long>(j) + 1));
  CHECK(as == from_coeffs({0, 1, 0, Rational(1, 6), 0, Rational(3, 40)}));

  TaylorPoly sq = maclaurin(BaseFn::pow(Rational(1, 2)), 4);
  CHECK(sq == from_coeffs({1, Rational(1, 2), Rational(-1, 8), Rational(1, 16),
                           Rational(-5, 128)}));
}

TEST_CASE("add and mul worked examples") {
  TaylorPoly s = tp_add(maclaurin(BaseFn::Cos, 4),
                        maclaurin(BaseFn::pow(Rational(1, 2)), 4));
  CHECK(s == from_coeffs({2, Rational(1, 2), Rational(-5, 8), Rational(1, 16),
                          Rational(1, 384)}));

  TaylorPoly m = tp_mul(maclaurin(BaseFn::Exp, 2), maclaurin(BaseFn::LogGeom, 2));
  CHECK(m == from_coeffs({0, 1, Rational(3, 2)}));

  std::mt19937 rng(3);
  TaylorPoly p = random_poly(rng, 5);
  CHECK(tp_add(p, TaylorPoly::constant(Rational(0), 5)) == p);

  CHECK_THROWS_WITH_AS(tp_add(maclaurin(BaseFn::Exp, 3), maclaurin(BaseFn::Exp, 4)),
                       doctest::Contains("OrderMismatch"), Error);
  TaylorPoly shifted = tp_shift_center(p, Rational(1));
  CHECK_THROWS_WITH_AS(tp_mul(p, shifted),
                       doctest::Contains("CenterMismatch"), Error);
}

TEST_CASE("ring laws on random polynomials") {
  std::mt19937 rng(17);
  for (std::size_t n = 1; n <= 8; ++n) {
    TaylorPoly p = random_poly(rng, n), q = random_poly(rng, n),
               r = random_poly(rng, n);
    CHECK(tp_add(p, q) == tp_add(q, p));
    CHECK(tp_mul(p, q) == tp_mul(q, p));
    CHECK(tp_add(tp_add(p, q), r) == tp_add(p, tp_add(q, r)));
    CHECK(tp_mul(tp_mul(p, q), r) == tp_mul(p, tp_mul(q, r)));
    CHECK(tp_mul(p, tp_add(q, r)) == tp_add(tp_mul(p, q), tp_mul(p, r)));
  }
}

TEST_CASE("reciprocal worked examples") {
  // 1/(2 + log(1+x)) at order 3
  TaylorPoly f = tp_add(TaylorPoly::constant(Rational(2), 3),
                        maclaurin(BaseFn::Log1p, 3));
  CHECK(tp_reciprocal(f) ==
        from_coeffs({Rational(1, 2), Rational(-1, 4), Rational(1, 4),
                     Rational(-13, 48)}));

  // 1/cos at order 6
  CHECK(tp_reciprocal(maclaurin(BaseFn::Cos, 6)) ==
        from_coeffs({1, 0, Rational(1, 2), 0, Rational(5, 24), 0,
                     Rational(61, 720)}));

  CHECK(tp_reciprocal(TaylorPoly::constant(Rational(1), 5)) ==
        TaylorPoly::constant(Rational(1), 5));

  CHECK_THROWS_WITH_AS(tp_reciprocal(maclaurin(BaseFn::Sin, 4)),
                       doctest::Contains("ZeroConstantTerm"), Error);
}

TEST_CASE("reciprocal properties") {
  std::mt19937 rng(23);
  for (int i = 0; i < 40; ++i) {
    TaylorPoly p = random_poly(rng, 2 + i % 7, /*unit=*/true);
    TaylorPoly prod = tp_mul(p, tp_reciprocal(p));
    CHECK(prod == TaylorPoly::constant(Rational(1), p.order()));
    // Newton fast path is bit-identical
    CHECK(tp_reciprocal(p, /*newton=*/true) == tp_reciprocal(p));
  }
}

TEST_CASE("compose worked examples") {
  TaylorPoly sin3 = maclaurin(BaseFn::Sin, 3);
  CHECK(tp_compose(sin3, sin3) == from_coeffs({0, 1, 0, Rational(-1, 3)}));

  // sqrt(1 + sin x) at order 5: compose (1+u)^{1/2} with u = sin x
  TaylorPoly outer = maclaurin(BaseFn::pow(Rational(1, 2)), 5);
  TaylorPoly inner = maclaurin(BaseFn::Sin, 5);
  CHECK(tp_compose(outer, inner) ==
        from_coeffs({1, Rational(1, 2), Rational(-1, 8), Rational(-1, 48),
                     Rational(1, 384), Rational(1, 3840)}));

  std::mt19937 rng(29);
  TaylorPoly p = random_poly(rng, 6);
  CHECK(tp_compose(p, TaylorPoly::identity(6)) == p);

  CHECK_THROWS_WITH_AS(tp_compose(maclaurin(BaseFn::Exp, 3),
                                  maclaurin(BaseFn::Exp, 3)),
                       doctest::Contains("CenterIncompatible"), Error);
}

TEST_CASE("composition associativity") {
  std::mt19937 rng(31);
  for (std::size_t n = 2; n <= 6; ++n) {
    TaylorPoly p = random_poly(rng, n), q = random_poly(rng, n),
               r = random_poly(rng, n);
    q.coeffs[0] = Rational(0);
    r.coeffs[0] = Rational(0);
    p.center = Rational(0);
    CHECK(tp_compose(tp_compose(p, q), r) == tp_compose(p, tp_compose(q, r)));
  }
}

TEST_CASE("inverse series: sin after arcsin") {
  TaylorPoly c = tp_compose(maclaurin(BaseFn::Sin, 5), maclaurin(BaseFn::Arcsin, 5));
  CHECK(c == TaylorPoly::identity(5));
}

TEST_CASE("tan via sin times sec") {
  TaylorPoly tan6 = tp_mul(maclaurin(BaseFn::Sin, 6),
                           tp_reciprocal(maclaurin(BaseFn::Cos, 6)));
  CHECK(tan6 == from_coeffs({0, 1, 0, Rational(1, 3), 0, Rational(2, 15), 0}));
  for (std::size_t j = 0; j <= 6; j += 2) CHECK(tan6.coeff(j).is_zero());
}

TEST_CASE("laurent reciprocal") {
  // 1/(x^{-1} + sin x) from T_{-2,3} = x^{-1} + x + x^3/6
  LaurentPoly p;
  p.center = Rational(0);
  p.mlow = -2;
  p.coeffs = {Rational(0), Rational(1), Rational(0), Rational(1), Rational(0),
              Rational(1, 6)};
  LaurentPoly r = lp_reciprocal(p);
  CHECK(r.mlow == 1);
  CHECK(r.mhigh() == 5);
  CHECK(r.coeffs == std::vector<Rational>{1, 0, -1, 0, Rational(5, 6)});

  // monomial a x^m -> (1/a) x^{-m}
  LaurentPoly mono;
  mono.center = Rational(0);
  mono.mlow = 3;
  mono.coeffs = {Rational(4)};
  LaurentPoly rm = lp_reciprocal(mono);
  CHECK(rm.mlow == -3);
  CHECK(rm.coeffs == std::vector<Rational>{Rational(1, 4)});

  // 1 + x as Laurent -> 1 - x (geometric truncation)
  LaurentPoly oneplus;
  oneplus.center = Rational(0);
  oneplus.mlow = 0;
  oneplus.coeffs = {Rational(1), Rational(1)};
  CHECK(lp_reciprocal(oneplus).coeffs == std::vector<Rational>{1, -1});

  LaurentPoly zero;
  zero.center = Rational(0);
  zero.mlow = -1;
  zero.coeffs = {Rational(0), Rational(0)};
  CHECK_THROWS_WITH_AS(lp_reciprocal(zero), doctest::Contains("AllZero"), Error);
}

TEST_CASE("center shift") {
  TaylorPoly p = from_coeffs({1, 1, 1});
  TaylorPoly s = tp_shift_center(p, Rational(1));
  CHECK(s.center == Rational(1));
  CHECK(s.coeffs == std::vector<Rational>{3, 3, 1});

  std::mt19937 rng(37);
  TaylorPoly q = random_poly(rng, 6);
  CHECK(tp_shift_center(q, Rational(0)) == q);

  TaylorPoly c = from_coeffs({1, 1, 1, 1});
  CHECK(tp_shift_center(c, Rational(-1)).coeffs ==
        std::vector<Rational>{0, 2, -2, 1});

  // involutive via explicit binomial re-expansion oracle: shift then poly-eval
  TaylorPoly sh = tp_shift_center(q, Rational(2, 3));
  for (long k = -3; k <= 3; ++k)
    CHECK(sh.eval(Rational(k, 2)) == q.eval(Rational(k, 2)));
}

TEST_CASE("derive and antiderive") {
  CHECK(tp_derive(maclaurin(BaseFn::Sin, 5)) == maclaurin(BaseFn::Cos, 4));
  CHECK(tp_antiderive(maclaurin(BaseFn::Geometric, 4), Rational(0)) ==
        maclaurin(BaseFn::LogGeom, 5));
  TaylorPoly seven = TaylorPoly::constant(Rational(7), 0);
  CHECK(tp_derive(seven) == TaylorPoly::constant(Rational(0), 0));

  std::mt19937 rng(41);
  TaylorPoly p = random_poly(rng, 5);
  CHECK(tp_derive(tp_antiderive(p, Rational(9))) == p);
}

TEST_CASE("lagrange remainder bounds") {
  CHECK(lagrange_remainder_bound(BaseFn::Sin, 5, Rational(1)) ==
        Rational(1, 720));
  CHECK(lagrange_remainder_bound(BaseFn::Exp, 3, Rational(1)) ==
        Rational(1, 8));
  CHECK(lagrange_remainder_bound(BaseFn::Cos, 2, Rational(1, 2)) ==
        Rational(1, 48));
  CHECK_THROWS_WITH_AS(lagrange_remainder_bound(BaseFn::Arctan, 3, Rational(1)),
                       doctest::Contains("UnboundedDerivatives"), Error);
}

TEST_CASE("remainder soundness for sin at 1") {
  for (std::size_t n = 3; n <= 9; n += 2) {
    Rational tn = maclaurin(BaseFn::Sin, n).eval(Rational(1));
    Rational b = lagrange_remainder_bound(BaseFn::Sin, n, Rational(1));
    for (std::size_t m = n + 1; m <= 20; ++m) {
      Rational tm = maclaurin(BaseFn::Sin, m).eval(Rational(1));
      CHECK(tm >= tn - b);
      CHECK(tm <= tn + b);
    }
  }
}

TEST_CASE("operation count stays within the n^5 envelope") {
  auto count_recip = [](std::size_t n) {
    TaylorPoly p = maclaurin(BaseFn::Cos, n);
    tp_mul_count_reset();
    tp_reciprocal(p);
    return tp_mul_count();
  };
  double c4 = static_cast<double>(count_recip(4)) / (4.0 * 4 * 4 * 4 * 4);
  for (std::size_t n : {8u, 16u}) {
    double bound = c4 * std::pow(static_cast<double>(n), 5);
    CHECK(static_cast<double>(count_recip(n)) <= bound);
  }
}

TEST_CASE("render and parse round trip") {
  TaylorPoly t = tp_mul(maclaurin(BaseFn::Sin, 6),
                        tp_reciprocal(maclaurin(BaseFn::Cos, 6)));
  CHECK(t.str() == "0 + x + 1/3*x^3 + 2/15*x^5");
  CHECK(tp_parse(t.str(), 6) == t);

  TaylorPoly s = tp_shift_center(from_coeffs({1, 1, 1}), Rational(1));
  CHECK(s.str() == "3 + 3*(x-1) + (x-1)^2");
  CHECK(tp_parse(s.str()) == s);

  std::mt19937 rng(43);
  for (int i = 0; i < 30; ++i) {
    TaylorPoly p = random_poly(rng, 1 + i % 6);
    CHECK(tp_parse(p.str(), static_cast<long>(p.order())) == p);
  }
}
