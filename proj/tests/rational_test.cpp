#include "ank/rational.hpp"

#include <random>

#include "doctest.h"

using namespace ank;

TEST_CASE("field arithmetic") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(-4, 1) * Rational(-3, 2) == Rational(6));
  CHECK(Rational(-4, 1) < Rational(-3, 2));
  CHECK(Rational(2, 4) == Rational(1, 2));
}

TEST_CASE("division by zero") {
  CHECK_THROWS_WITH_AS(Rational(1) / Rational(0),
                       doctest::Contains("DivisionByZero"), Error);
  CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), Error);
}

TEST_CASE("lowest terms after arithmetic") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> d(-500, 500);
  for (int i = 0; i < 200; ++i) {
    long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    if (b == 0 || e == 0) continue;
    Rational x(a, b), y(c, e);
    for (Rational r : {x + y, x - y, x * y}) {
      CHECK(gcd(abs(r.num()), r.den()) == 1);
      CHECK(r.den() >= 1);
    }
  }
}

TEST_CASE("pow, floor, ceil") {
  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK(Rational(0).pow(0) == Rational(1));
  CHECK(Rational(-45, 11).floor() == -5);
  CHECK(Rational(-45, 11).ceil() == -4);
  CHECK(Rational(7, 2).floor() == 3);
}

TEST_CASE("parse and render") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-45/11").str() == "-45/11");
  CHECK(Rational::parse("7").str() == "7");
  CHECK(Rational::parse("-2.5") == Rational(-5, 2));
  CHECK_THROWS_AS(Rational::parse("a/b"), Error);
}

TEST_CASE("rational binomial") {
  CHECK(binomial(Rational(1, 2), 2) == Rational(-1, 8));
  CHECK(binomial(Rational(5), 2) == Rational(10));
  CHECK(binomial(Rational(1, 2), 0) == Rational(1));
}
