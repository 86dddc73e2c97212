#include "ank/codecs.hpp"

#include <map>
#include <sstream>
#include <utility>

namespace ank {

namespace {

Integer pow10(unsigned long e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
  return p;
}

std::vector<int> digits_of(const Integer& n, std::size_t pad) {
  std::string s = n.get_str();
  std::vector<int> d;
  d.reserve(std::max(pad, s.size()));
  for (std::size_t i = s.size(); i < pad; ++i) d.push_back(0);
  for (char c : s) d.push_back(c - '0');
  if (n == 0 && pad > 0) d.resize(pad, 0);  // "0" already contributes one 0
  if (n == 0 && pad == 0) d.clear();
  return d;
}

Integer digits_to_int(const std::vector<int>& d) {
  if (d.empty()) return Integer(0);
  std::string s;
  s.reserve(d.size());
  for (int x : d) s += static_cast<char>('0' + x);
  return Integer(s, 10);
}

// Multiplicative order of 10 modulo m, gcd(m, 10) = 1, m >= 2.
unsigned long order10(const Integer& m) {
  // machine-word fast path (r * 10 cannot overflow below 2^60)
  if (m.fits_ulong_p() && m.get_ui() < (1UL << 60)) {
    unsigned long mm = m.get_ui();
    unsigned long r = 10 % mm, k = 1;
    while (r != 1) {
      r = r * 10 % mm;
      ++k;
    }
    return k;
  }
  Integer r = 10 % m;
  unsigned long k = 1;
  while (r != 1) {
    r = (r * 10) % m;
    ++k;
  }
  return k;
}

}  // namespace

std::string PeriodicDecimal::str() const {
  std::ostringstream os;
  os << (sign < 0 ? '-' : '+') << integer_part.get_str();
  if (!preperiod.empty() || !period.empty()) {
    os << '.';
    for (int d : preperiod) os << static_cast<char>('0' + d);
    if (!period.empty()) {
      os << '(';
      for (int d : period) os << static_cast<char>('0' + d);
      os << ')';
    }
  }
  return os.str();
}

std::string BaseQWord::str() const {
  std::ostringstream os;
  bool wide = base > 10;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (wide && i) os << '.';
    if (digits[i] < 10)
      os << static_cast<char>('0' + digits[i]);
    else
      os << static_cast<char>('a' + digits[i] - 10);
  }
  return os.str();
}

std::string ContinuedFraction::str() const {
  std::ostringstream os;
  os << '[' << c0.get_str();
  if (!partials.empty()) os << ';';
  for (std::size_t i = 0; i < partials.size(); ++i) {
    os << (i ? ", " : " ");
    if (periodic && i == period_start) os << '~';
    os << partials[i].get_str();
  }
  os << ']';
  return os.str();
}

PeriodicDecimal to_periodic_decimal(const Rational& x) {
  PeriodicDecimal pd;
  if (x.is_zero()) return pd;
  pd.sign = x.sign();
  Integer num = abs(x.num());
  Integer den = x.den();
  Integer ip, fn;
  mpz_fdiv_qr(ip.get_mpz_t(), fn.get_mpz_t(), num.get_mpz_t(),
              den.get_mpz_t());
  pd.integer_part = ip;
  if (fn == 0) return pd;

  unsigned long a = 0, b = 0;
  Integer d = den;
  while (d % 2 == 0) { d /= 2; ++a; }
  while (d % 5 == 0) { d /= 5; ++b; }
  unsigned long p = std::max(a, b);

  Integer t = fn * pow10(p);
  Integer pre, rem;
  mpz_fdiv_qr(pre.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t(),
              den.get_mpz_t());
  pd.preperiod = digits_of(pre, p);
  if (rem == 0) return pd;

  Integer g = gcd(rem, den);
  Integer n2 = rem / g, d2 = den / g;
  unsigned long period_len = order10(d2);
  Integer z = n2 * (pow10(period_len) - 1) / d2;
  pd.period = digits_of(z, period_len);
  return pd;
}

Rational from_periodic_decimal(const PeriodicDecimal& pd) {
  if (pd.sign != 1 && pd.sign != -1)
    fail("NonCanonical", "sign must be +1 or -1");
  if (pd.integer_part < 0) fail("NonCanonical", "negative integer part");
  for (int d : pd.preperiod)
    if (d < 0 || d > 9) fail("NonCanonical", "preperiod digit out of range");
  bool all9 = !pd.period.empty();
  for (int d : pd.period) {
    if (d < 0 || d > 9) fail("NonCanonical", "period digit out of range");
    if (d != 9) all9 = false;
  }
  if (all9) fail("NonCanonical", "all-9 period (near decimal)");
  bool zero = pd.integer_part == 0 && digits_to_int(pd.preperiod) == 0 &&
              pd.period.empty();
  if (zero && (pd.sign != 1 || !pd.preperiod.empty()))
    fail("NonCanonical", "zero must be +0 with empty digit lists");

  Rational v(pd.integer_part);
  unsigned long p = pd.preperiod.size();
  if (p > 0) v += Rational(digits_to_int(pd.preperiod), pow10(p));
  if (!pd.period.empty()) {
    unsigned long q = pd.period.size();
    v += Rational(digits_to_int(pd.period), pow10(p) * (pow10(q) - 1));
  }
  return pd.sign < 0 ? -v : v;
}

PeriodicDecimal near_decimal_partner(const PeriodicDecimal& pd) {
  if (!pd.period.empty())
    fail("NonCanonical", "near-decimal partner needs a terminating decimal");
  Rational v = from_periodic_decimal(pd);
  if (v.is_zero()) fail("NonCanonical", "zero has no near-decimal partner");
  unsigned long p = pd.preperiod.size();
  // |v| = w / 10^p with integer w >= 1; the twin is (w-1)/10^p + 0.0...0(9).
  Integer w = pd.integer_part * pow10(p) + digits_to_int(pd.preperiod) - 1;
  PeriodicDecimal out;
  out.sign = pd.sign;
  Integer ip, fr;
  mpz_fdiv_qr(ip.get_mpz_t(), fr.get_mpz_t(), w.get_mpz_t(),
              pow10(p).get_mpz_t());
  out.integer_part = ip;
  out.preperiod = digits_of(fr, p);
  out.period = {9};
  return out;
}

BaseQWord base_q_encode(const Integer& n, long q) {
  if (q < 2) fail("InvalidDigit", "base must be >= 2");
  if (n < 0) fail("InvalidDigit", "encode expects a nonnegative integer");
  BaseQWord w;
  w.base = q;
  Integer m = n;
  if (m == 0) {
    w.digits = {0};
    return w;
  }
  while (m > 0) {
    Integer r = m % q;
    w.digits.push_back(static_cast<int>(r.get_si()));
    m /= q;
  }
  std::reverse(w.digits.begin(), w.digits.end());
  return w;
}

Integer base_q_decode(const BaseQWord& w) {
  if (w.base < 2) fail("InvalidDigit", "base must be >= 2");
  if (w.digits.empty()) fail("InvalidDigit", "empty word");
  if (w.digits.size() > 1 && w.digits.front() == 0)
    fail("LeadingZero", "leading digit must be nonzero");
  Integer v = 0;
  for (int d : w.digits) {
    if (d < 0 || d >= w.base) fail("InvalidDigit", "digit out of range");
    v = v * w.base + d;
  }
  return v;
}

ContinuedFraction cfrac_encode(const Rational& x) {
  ContinuedFraction cf;
  cf.c0 = x.floor();
  Rational r = x - Rational(cf.c0);
  while (!r.is_zero()) {
    Rational y = r.reciprocal();
    Integer c = y.floor();
    cf.partials.push_back(c);
    r = y - Rational(c);
  }
  // canonical form: (..., a, 1) -> (..., a+1)
  if (cf.partials.size() >= 2 && cf.partials.back() == 1) {
    cf.partials.pop_back();
    cf.partials.back() += 1;
  } else if (cf.partials.size() == 1 && cf.partials.back() == 1) {
    cf.c0 += 1;
    cf.partials.clear();
  }
  return cf;
}

ContinuedFraction cfrac_encode(const QuadraticSurd& s, std::size_t max_terms) {
  if (s.b == 0) fail("NonCanonical", "surd with b = 0 is rational");
  if (s.c <= 0) fail("NonCanonical", "surd denominator must be positive");
  if (s.d < 2) fail("NonCanonical", "surd radicand must be >= 2");
  // Normalize to (P + sqrt(D)) / Q with Q | D - P^2.
  Integer P, Q, D = s.b * s.b * s.c * s.c * s.d;
  if (s.b > 0) {
    P = s.a * s.c;
    Q = s.c * s.c;
  } else {
    P = -s.a * s.c;
    Q = -s.c * s.c;
  }
  Integer sq = sqrt(D);  // floor
  if (sq * sq == D) fail("NonCanonical", "radicand is a perfect square");

  ContinuedFraction cf;
  auto step_floor = [&](const Integer& p, const Integer& q) {
    Integer t = p + sq;
    if (q < 0) t += 1;
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), t.get_mpz_t(), q.get_mpz_t());
    return f;
  };
  Integer c = step_floor(P, Q);
  cf.c0 = c;
  P = c * Q - P;
  Q = (D - P * P) / Q;

  std::map<std::pair<Integer, Integer>, std::size_t> seen;
  while (true) {
    auto key = std::make_pair(P, Q);
    auto it = seen.find(key);
    if (it != seen.end()) {
      cf.periodic = true;
      cf.period_start = it->second;
      return cf;
    }
    if (cf.partials.size() >= max_terms)
      fail("BudgetExceeded", "no period within max_terms partial quotients");
    seen.emplace(key, cf.partials.size());
    c = step_floor(P, Q);
    cf.partials.push_back(c);
    P = c * Q - P;
    Q = (D - P * P) / Q;
  }
}

std::vector<Rational> cfrac_convergents(const ContinuedFraction& cf,
                                        std::size_t k) {
  auto partial = [&](std::size_t i) -> Integer {  // 0-based
    if (i < cf.partials.size()) return cf.partials[i];
    if (!cf.periodic) fail("NotEnoughTerms", "finite continued fraction");
    std::size_t plen = cf.partials.size() - cf.period_start;
    return cf.partials[cf.period_start + (i - cf.period_start) % plen];
  };
  if (cf.partials.empty()) {
    // bare-integer CF: its only convergent is the value itself
    if (k > 1) fail("NotEnoughTerms", "finite continued fraction");
    return {Rational(cf.c0)};
  }
  std::vector<Rational> out;
  Integer h0 = 1, h1 = cf.c0, k0 = 0, k1 = 1;
  for (std::size_t j = 0; j < k; ++j) {
    Integer cj = partial(j);
    Integer h2 = cj * h1 + h0, k2 = cj * k1 + k0;
    out.emplace_back(h2, k2);
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
  }
  return out;
}

Rational babylonian_sqrt2(unsigned long n) {
  if (n < 1) fail("NonCanonical", "index must be >= 1");
  Rational a(1);
  for (unsigned long i = 2; i <= n; ++i)
    a = a / Rational(2) + a.reciprocal();
  return a;
}

}  // namespace ank
