#include "ank/transcendental.hpp"

#include <algorithm>
#include <functional>

#include "ank/error.hpp"

namespace ank {

int liouville_digit(unsigned long n) {
  if (n == 0) fail("NonCanonical", "digit positions start at 1");
  Integer fact = 1;
  for (unsigned long m = 1; fact <= n; ++m) {
    if (fact == n) return 1;
    fact *= m + 1;
  }
  return 0;
}

LiouvilleCertificate liouville_certificate(unsigned long m) {
  if (m == 0) fail("NonCanonical", "certificate index starts at 1");
  if (m > 6) fail("BudgetExceeded", "liouville_certificate supports m <= 6");
  auto pow10 = [](const Integer& e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e.get_ui());
    return r;
  };
  LiouvilleCertificate c;
  c.q = pow10(factorial(m));
  c.z = 0;
  for (unsigned long n = 1; n <= m; ++n)
    c.z += pow10(factorial(m) - factorial(n));
  c.gap_bound = Rational(2) * Rational(c.q).pow(-static_cast<long>(m) - 1);
  // the first two tail terms must already fit under the bound (the full
  // tail does too, by the geometric-series estimate)
  Rational tail = Rational(Integer(1), pow10(factorial(m + 1))) +
                  Rational(Integer(1), pow10(factorial(m + 2)));
  if (tail > c.gap_bound)
    fail("CertificateViolated", "liouville gap bound failed");
  return c;
}

Rational poly_eval(const IntPoly& p, const Rational& x) {
  Rational v(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + Rational(*it);
  return v;
}

namespace {

std::size_t poly_degree(const IntPoly& p) {
  for (std::size_t i = p.size(); i > 0; --i)
    if (p[i - 1] != 0) return i - 1;
  fail("NonCanonical", "zero polynomial");
}

}  // namespace

Rational poly_rational_lower_bound(const IntPoly& p, const Rational& x) {
  std::size_t n = poly_degree(p);
  Rational v = poly_eval(p, x).abs();
  if (v.is_zero()) fail("ZeroValue", "polynomial vanishes at " + x.str());
  // |p(a/b)| b^n is a nonzero integer, hence >= 1
  Rational scaled = v * Rational(x.den()).pow(static_cast<long>(n));
  if (!scaled.is_integer() || scaled < Rational(1))
    fail("CertificateViolated", "lower-bound identity failed");
  return v;
}

namespace {

// Minimal k with alpha * 10^k integral; requires a denominator of the form
// 2^i 5^j.
unsigned long decimal_exponent(const Rational& alpha) {
  Integer den = alpha.den();
  unsigned long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1)
    fail("NonCanonical", "not a decimal fraction: " + alpha.str());
  return std::max(twos, fives);
}

Integer pow10z(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

unsigned long nonvanishing_radius(const IntPoly& p, const Rational& alpha) {
  std::size_t n = poly_degree(p);
  if (poly_eval(p, alpha).is_zero())
    fail("ZeroAtAlpha", "polynomial vanishes at alpha = " + alpha.str());
  unsigned long k = decimal_exponent(alpha);
  Integer a = (Rational(pow10z(k)) * alpha).num();
  Integer maxc = 0;
  for (const Integer& c : p) maxc = std::max(maxc, Integer(abs(c)));
  Integer apow;
  mpz_pow_ui(apow.get_mpz_t(), Integer(abs(a) + 1).get_mpz_t(), n);
  Integer b = Integer((n + 1) * (n + 1)) * maxc * apow;
  Integer l = Integer(k) * static_cast<unsigned long>(n) + b;
  if (!l.fits_ulong_p() || l.get_ui() > 1000000)
    fail("BudgetExceeded", "nonvanishing radius exponent too large");
  return l.get_ui();
}

namespace {

// Lexicographically next coefficient tuple of length n+1 with
// sum |a_i| = c and a_n != 0; emits via callback until it returns true.
bool gen_tuples(IntPoly& acc, std::size_t pos, std::size_t n, long remaining,
                const std::function<bool(const IntPoly&)>& emit) {
  if (pos == n) {
    if (remaining < 1) return false;
    acc[pos] = -remaining;
    if (emit(acc)) return true;
    acc[pos] = remaining;
    return emit(acc);
  }
  for (long v = -(remaining - 1); v <= remaining - 1; ++v) {
    acc[pos] = v;
    if (gen_tuples(acc, pos + 1, n, remaining - std::abs(v), emit)) return true;
  }
  return false;
}

}  // namespace

IntPoly enumerate_poly(unsigned long m) {
  if (m == 0) fail("NonCanonical", "polynomial index starts at 1");
  unsigned long seen = 0;
  IntPoly found;
  for (unsigned long size = 1;; ++size) {
    for (std::size_t n = 0; n < size; ++n) {
      long c = static_cast<long>(size - n);
      IntPoly acc(n + 1);
      bool done = gen_tuples(acc, 0, n, c, [&](const IntPoly& p) {
        if (++seen == m) {
          found = p;
          return true;
        }
        return false;
      });
      if (done) return found;
    }
  }
}

CantorResult cantor_stream(unsigned long max_polys, unsigned long max_digits) {
  if (max_polys > 10000 || max_digits > 100000)
    fail("BudgetExceeded", "cantor_stream budget exceeded");
  CantorResult r;
  r.state.alpha = Rational(0);
  r.state.k = 0;
  for (unsigned long m = 1; m <= max_polys; ++m) {
    CantorStep step;
    step.poly = enumerate_poly(m);
    std::size_t deg = poly_degree(step.poly);
    unsigned long delta = 1;
    while (pow10z(delta) <= static_cast<unsigned long>(deg)) ++delta;
    step.k_grid = r.state.k + delta;
    Integer grid = pow10z(delta);
    Rational unit = Rational(Integer(1), pow10z(step.k_grid));
    Rational at;
    bool hit = false;
    for (Integer j = 0; j < grid; ++j) {
      at = r.state.alpha + Rational(j) * unit;
      if (!poly_eval(step.poly, at).is_zero()) {
        step.j = j.get_ui();
        hit = true;
        break;
      }
    }
    if (!hit) fail("CertificateViolated", "grid exhausted without a nonzero");
    step.l = nonvanishing_radius(step.poly, at);
    step.k_next = std::max(step.k_grid, step.l);
    step.z = Integer(step.j) * pow10z(step.k_next - step.k_grid);
    step.alpha = r.state.alpha + Rational(step.z, pow10z(step.k_next));

    std::string block = step.z.get_str();
    unsigned long width = step.k_next - r.state.k;
    if (block.size() < width)
      block.insert(block.begin(), width - block.size(), '0');
    for (char d : block)
      if (r.digits.size() < max_digits) r.digits.push_back(d - '0');

    r.state.alpha = step.alpha;
    r.state.k = step.k_next;
    r.state.m = m;
    r.state.trace.push_back(std::move(step));
  }
  return r;
}

std::string poly_str(const IntPoly& p) {
  std::size_t n = poly_degree(p);
  std::string out;
  for (std::size_t i = n + 1; i > 0; --i) {
    const Integer& c = p[i - 1];
    if (c == 0 && n > 0) continue;
    Integer mag = abs(c);
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    std::size_t e = i - 1;
    if (mag != 1 || e == 0) out += mag.get_str();
    if (e >= 1) out += "x";
    if (e >= 2) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace ank
