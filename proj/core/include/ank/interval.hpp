#pragma once

#include <mpfr.h>

#include <string>

#include "ank/rational.hpp"

namespace ank {

/// Certified enclosure [lo, hi] of a real value. Endpoints are dyadic
/// (MPFR) numbers; all operations round outward.
class IntervalValue {
public:
  IntervalValue() : IntervalValue(64) {}
  explicit IntervalValue(mpfr_prec_t prec);
  IntervalValue(const IntervalValue& o);
  IntervalValue(IntervalValue&& o) noexcept;
  IntervalValue& operator=(IntervalValue o);
  ~IntervalValue();

  static IntervalValue exact(const Rational& x, mpfr_prec_t prec);
  /// Enclosure [lo, hi] of given rational endpoints (outward rounded).
  static IntervalValue hull(const Rational& lo, const Rational& hi,
                            mpfr_prec_t prec);
  static IntervalValue pi(mpfr_prec_t prec);
  static IntervalValue euler_gamma(mpfr_prec_t prec);
  /// Enclosure of log x, x > 0.
  static IntervalValue log_of(const Rational& x, mpfr_prec_t prec);
  /// Enclosure of x^{1/n}, x >= 0.
  static IntervalValue nth_root(const Rational& x, unsigned long n,
                                mpfr_prec_t prec);

  mpfr_prec_t precision() const { return prec_; }

  Rational lo() const;  // exact dyadic value of the lower endpoint
  Rational hi() const;
  Rational width() const { return hi() - lo(); }
  Rational mid() const { return (lo() + hi()) / Rational(2); }

  bool contains(const Rational& x) const { return lo() <= x && x <= hi(); }
  bool contains_zero() const;
  int sign() const;  // +1 if lo > 0, -1 if hi < 0, 0 otherwise

  IntervalValue operator-() const;
  friend IntervalValue operator+(const IntervalValue& a, const IntervalValue& b);
  friend IntervalValue operator-(const IntervalValue& a, const IntervalValue& b);
  friend IntervalValue operator*(const IntervalValue& a, const IntervalValue& b);
  /// Requires 0 outside b (caller guards).
  friend IntervalValue operator/(const IntervalValue& a, const IntervalValue& b);

  IntervalValue exp() const;
  IntervalValue log() const;    // requires lo > 0
  IntervalValue sin() const;
  IntervalValue cos() const;
  IntervalValue asin() const;   // requires [lo, hi] within [-1, 1]
  IntervalValue atan() const;
  IntervalValue sqrt() const;   // requires lo >= 0
  IntervalValue pow_int(long m) const;

  /// "[lo, hi]" with outward-rounded decimal endpoints.
  std::string str() const;

private:
  mpfr_prec_t prec_;
  mpfr_t lo_, hi_;
  friend class IntervalOps;
};

}  // namespace ank
