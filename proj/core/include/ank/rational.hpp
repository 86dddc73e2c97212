#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>

#include "ank/error.hpp"

namespace ank {

using Integer = mpz_class;

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design
  Rational(const Integer& n) : v_(n) {}
  Rational(const Integer& num, const Integer& den) {
    if (den == 0) fail("DivisionByZero", "rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// Parses "p", "p/q" or a plain decimal like "-2.5".
  static Rational parse(const std::string& text);

  Integer num() const { return v_.get_num(); }
  Integer den() const { return v_.get_den(); }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_), NoCanon{}); }
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ + b.v_), NoCanon{});
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ - b.v_), NoCanon{});
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ * b.v_), NoCanon{});
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) fail("DivisionByZero", "division by zero rational");
    return Rational(mpq_class(a.v_ / b.v_), NoCanon{});
  }

  Rational& operator+=(const Rational& b) { v_ += b.v_; return *this; }
  Rational& operator-=(const Rational& b) { v_ -= b.v_; return *this; }
  Rational& operator*=(const Rational& b) { v_ *= b.v_; return *this; }
  Rational& operator/=(const Rational& b) { *this = *this / b; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.v_ == b.v_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }

  Rational reciprocal() const {
    if (is_zero()) fail("DivisionByZero", "reciprocal of zero");
    return Rational(mpq_class(1 / v_), NoCanon{});
  }

  /// Integer power; m may be negative (value must be nonzero then).
  Rational pow(long m) const;

  Integer floor() const;
  Integer ceil() const;

  /// Canonical "p/q" rendering; "/q" omitted for integers.
  std::string str() const;

  const mpq_class& raw() const { return v_; }

private:
  struct NoCanon {};
  Rational(mpq_class q, NoCanon) : v_(std::move(q)) {}
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// binom(a, j) for rational a and nonnegative integer j.
Rational binomial(const Rational& a, unsigned long j);

Integer factorial(unsigned long n);

}  // namespace ank
