#include "ank/interval.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>
#include <vector>

namespace ank {

namespace {

Rational mpfr_to_rational(const mpfr_t x) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), x);
  return Rational(q);
}

}  // namespace

IntervalValue::IntervalValue(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

IntervalValue::IntervalValue(const IntervalValue& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

IntervalValue::IntervalValue(IntervalValue&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

IntervalValue& IntervalValue::operator=(IntervalValue o) {
  std::swap(prec_, o.prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

IntervalValue::~IntervalValue() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

IntervalValue IntervalValue::exact(const Rational& x, mpfr_prec_t prec) {
  IntervalValue r(prec);
  mpfr_set_q(r.lo_, x.raw().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, x.raw().get_mpq_t(), MPFR_RNDU);
  return r;
}

IntervalValue IntervalValue::hull(const Rational& lo, const Rational& hi,
                                  mpfr_prec_t prec) {
  if (hi < lo) fail("NonCanonical", "hull endpoints out of order");
  IntervalValue r(prec);
  mpfr_set_q(r.lo_, lo.raw().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.raw().get_mpq_t(), MPFR_RNDU);
  return r;
}

IntervalValue IntervalValue::pi(mpfr_prec_t prec) {
  IntervalValue r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

IntervalValue IntervalValue::euler_gamma(mpfr_prec_t prec) {
  IntervalValue r(prec);
  mpfr_const_euler(r.lo_, MPFR_RNDD);
  mpfr_const_euler(r.hi_, MPFR_RNDU);
  return r;
}

IntervalValue IntervalValue::log_of(const Rational& x, mpfr_prec_t prec) {
  return exact(x, prec).log();
}

IntervalValue IntervalValue::nth_root(const Rational& x, unsigned long n,
                                      mpfr_prec_t prec) {
  if (x.sign() < 0) fail("DomainError", "nth_root of a negative value");
  IntervalValue v = exact(x, prec);
  IntervalValue r(prec);
  mpfr_rootn_ui(r.lo_, v.lo_, n, MPFR_RNDD);
  mpfr_rootn_ui(r.hi_, v.hi_, n, MPFR_RNDU);
  return r;
}

Rational IntervalValue::lo() const { return mpfr_to_rational(lo_); }
Rational IntervalValue::hi() const { return mpfr_to_rational(hi_); }

bool IntervalValue::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

int IntervalValue::sign() const {
  if (mpfr_sgn(lo_) > 0) return 1;
  if (mpfr_sgn(hi_) < 0) return -1;
  return 0;
}

IntervalValue IntervalValue::operator-() const {
  IntervalValue r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

IntervalValue operator+(const IntervalValue& a, const IntervalValue& b) {
  IntervalValue r(std::max(a.prec_, b.prec_));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

IntervalValue operator-(const IntervalValue& a, const IntervalValue& b) {
  IntervalValue r(std::max(a.prec_, b.prec_));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

IntervalValue operator*(const IntervalValue& a, const IntervalValue& b) {
  IntervalValue r(std::max(a.prec_, b.prec_));
  mpfr_t t;
  mpfr_init2(t, r.prec_);
  bool first = true;
  for (const auto* x : {&a.lo_, &a.hi_})
    for (const auto* y : {&b.lo_, &b.hi_}) {
      mpfr_mul(t, *x, *y, MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, *x, *y, MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

IntervalValue operator/(const IntervalValue& a, const IntervalValue& b) {
  if (b.contains_zero())
    fail("DivisionByZero", "interval division by an interval containing 0");
  IntervalValue r(std::max(a.prec_, b.prec_));
  mpfr_t t;
  mpfr_init2(t, r.prec_);
  bool first = true;
  for (const auto* x : {&a.lo_, &a.hi_})
    for (const auto* y : {&b.lo_, &b.hi_}) {
      mpfr_div(t, *x, *y, MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_div(t, *x, *y, MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

IntervalValue IntervalValue::exp() const {
  IntervalValue r(prec_);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

IntervalValue IntervalValue::log() const {
  if (mpfr_sgn(lo_) <= 0) fail("DomainError", "log of a nonpositive value");
  IntervalValue r(prec_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

namespace {

// Writes a sound enclosure of f over [xlo, xhi] into [rlo, rhi]: hull of
// the endpoint values widened by the interval width (valid for 1-Lipschitz
// f), clipped to [-1, 1].
void lipschitz_trig(int (*f)(mpfr_t, const mpfr_t, mpfr_rnd_t),
                    mpfr_prec_t prec, const mpfr_t xlo, const mpfr_t xhi,
                    mpfr_t rlo, mpfr_t rhi) {
  mpfr_t fl, fh, w;
  mpfr_inits2(prec, fl, fh, w, (mpfr_ptr) nullptr);
  mpfr_sub(w, xhi, xlo, MPFR_RNDU);
  f(fl, xlo, MPFR_RNDD);
  f(fh, xhi, MPFR_RNDD);
  if (mpfr_cmp(fl, fh) > 0) mpfr_swap(fl, fh);
  mpfr_sub(rlo, fl, w, MPFR_RNDD);
  f(fl, xlo, MPFR_RNDU);
  f(fh, xhi, MPFR_RNDU);
  if (mpfr_cmp(fl, fh) > 0) mpfr_swap(fl, fh);
  mpfr_add(rhi, fh, w, MPFR_RNDU);
  if (mpfr_cmp_si(rlo, -1) < 0) mpfr_set_si(rlo, -1, MPFR_RNDD);
  if (mpfr_cmp_si(rhi, 1) > 0) mpfr_set_si(rhi, 1, MPFR_RNDU);
  mpfr_clears(fl, fh, w, (mpfr_ptr) nullptr);
}

}  // namespace

IntervalValue IntervalValue::sin() const {
  IntervalValue r(prec_);
  lipschitz_trig(mpfr_sin, prec_, lo_, hi_, r.lo_, r.hi_);
  return r;
}

IntervalValue IntervalValue::cos() const {
  IntervalValue r(prec_);
  lipschitz_trig(mpfr_cos, prec_, lo_, hi_, r.lo_, r.hi_);
  return r;
}

IntervalValue IntervalValue::asin() const {
  if (mpfr_cmp_si(lo_, -1) < 0 || mpfr_cmp_si(hi_, 1) > 0)
    fail("DomainError", "asin of a value outside [-1, 1]");
  IntervalValue r(prec_);
  mpfr_asin(r.lo_, lo_, MPFR_RNDD);
  mpfr_asin(r.hi_, hi_, MPFR_RNDU);
  return r;
}

IntervalValue IntervalValue::atan() const {
  IntervalValue r(prec_);
  mpfr_atan(r.lo_, lo_, MPFR_RNDD);
  mpfr_atan(r.hi_, hi_, MPFR_RNDU);
  return r;
}

IntervalValue IntervalValue::sqrt() const {
  if (mpfr_sgn(lo_) < 0) fail("DomainError", "sqrt of a negative value");
  IntervalValue r(prec_);
  mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

IntervalValue IntervalValue::pow_int(long m) const {
  IntervalValue r = exact(Rational(1), prec_);
  if (m == 0) return r;
  IntervalValue base = *this;
  bool inv = m < 0;
  unsigned long e = inv ? static_cast<unsigned long>(-(m + 1)) + 1
                        : static_cast<unsigned long>(m);
  for (unsigned long i = 0; i < e; ++i) r = r * base;
  return inv ? exact(Rational(1), prec_) / r : r;
}

std::string IntervalValue::str() const {
  char lbuf[64], hbuf[64];
  mpfr_snprintf(lbuf, sizeof lbuf, "%.16R*g", MPFR_RNDD, lo_);
  mpfr_snprintf(hbuf, sizeof hbuf, "%.16R*g", MPFR_RNDU, hi_);
  return std::string("[") + lbuf + ", " + hbuf + "]";
}

}  // namespace ank
