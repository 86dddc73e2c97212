#include "ank/taylor.hpp"

#include <atomic>
#include <cctype>
#include <sstream>

namespace ank {

namespace {

std::atomic<std::uint64_t> g_mul_count{0};

Rational counted_mul(const Rational& a, const Rational& b) {
  g_mul_count.fetch_add(1, std::memory_order_relaxed);
  return a * b;
}

void check_compatible(const TaylorPoly& p, const TaylorPoly& q) {
  if (p.center != q.center)
    fail("CenterMismatch", "operands have centers " + p.center.str() + " and " +
                               q.center.str());
  if (p.order() != q.order())
    fail("OrderMismatch", "operands have orders " +
                              std::to_string(p.order()) + " and " +
                              std::to_string(q.order()));
}

// p*q truncated at x^{n+1}, n = order of the inputs.
std::vector<Rational> trunc_mul(const std::vector<Rational>& a,
                                const std::vector<Rational>& b) {
  std::size_t n = a.size();
  std::vector<Rational> c(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n; ++j)
      c[i + j] += counted_mul(a[i], b[j]);
  }
  return c;
}

}  // namespace

std::uint64_t tp_mul_count() { return g_mul_count.load(); }
void tp_mul_count_reset() { g_mul_count.store(0); }

TaylorPoly TaylorPoly::constant(const Rational& c, std::size_t order,
                                const Rational& center) {
  TaylorPoly p;
  p.center = center;
  p.coeffs.assign(order + 1, Rational(0));
  p.coeffs[0] = c;
  return p;
}

TaylorPoly TaylorPoly::identity(std::size_t order) {
  TaylorPoly p = constant(Rational(0), order);
  if (order >= 1) p.coeffs[1] = Rational(1);
  return p;
}

Rational TaylorPoly::eval(const Rational& x) const {
  Rational t = x - center, v(0);
  for (std::size_t j = coeffs.size(); j-- > 0;) v = v * t + coeffs[j];
  return v;
}

TaylorPoly maclaurin(const BaseFn& f, std::size_t order) {
  TaylorPoly p = TaylorPoly::constant(Rational(0), order);
  for (std::size_t j = 0; j <= order; ++j) {
    Rational& a = p.coeffs[j];
    switch (f.tag) {
      case BaseFn::Exp:
        a = Rational(Integer(1), factorial(j));
        break;
      case BaseFn::Sin:
        if (j % 2 == 1)
          a = Rational(Integer((j / 2) % 2 ? -1 : 1), factorial(j));
        break;
      case BaseFn::Cos:
        if (j % 2 == 0)
          a = Rational(Integer((j / 2) % 2 ? -1 : 1), factorial(j));
        break;
      case BaseFn::Log1p:
        if (j >= 1) a = Rational(j % 2 ? 1 : -1, static_cast<long>(j));
        break;
      case BaseFn::LogGeom:
        if (j >= 1) a = Rational(1, static_cast<long>(j));
        break;
      case BaseFn::PowA:
        a = binomial(f.exponent, j);
        break;
      case BaseFn::Arctan:
        if (j % 2 == 1)
          a = Rational((j / 2) % 2 ? -1 : 1, static_cast<long>(j));
        break;
      case BaseFn::Arcsin:
        if (j % 2 == 1) {
          unsigned long m = j / 2;
          Integer num;  // binom(2m, m)
          mpz_bin_uiui(num.get_mpz_t(), 2 * m, m);
          Integer den = Integer(2 * m + 1) << (2 * m);
          a = Rational(num, den);
        }
        break;
      case BaseFn::Geometric:
        a = Rational(1);
        break;
    }
  }
  return p;
}

TaylorPoly tp_add(const TaylorPoly& p, const TaylorPoly& q) {
  check_compatible(p, q);
  TaylorPoly r = p;
  for (std::size_t j = 0; j < r.coeffs.size(); ++j) r.coeffs[j] += q.coeffs[j];
  return r;
}

TaylorPoly tp_mul(const TaylorPoly& p, const TaylorPoly& q) {
  check_compatible(p, q);
  TaylorPoly r;
  r.center = p.center;
  r.coeffs = trunc_mul(p.coeffs, q.coeffs);
  return r;
}

TaylorPoly tp_reciprocal(const TaylorPoly& p, bool newton) {
  const Rational& a0 = p.coeffs[0];
  if (a0.is_zero())
    fail("ZeroConstantTerm", "reciprocal needs p(center) != 0; use the "
                             "Laurent reciprocal instead");
  std::size_t n = p.order();
  if (newton) {
    // r <- r*(2 - p*r), doubling the valid order each round.
    std::vector<Rational> r{a0.reciprocal()};
    while (r.size() < n + 1) {
      std::size_t m = std::min(2 * r.size(), n + 1);
      std::vector<Rational> pm(p.coeffs.begin(), p.coeffs.begin() + m);
      std::vector<Rational> rm = r;
      rm.resize(m, Rational(0));
      std::vector<Rational> t = trunc_mul(pm, rm);
      for (auto& c : t) c = -c;
      t[0] += Rational(2);
      r = trunc_mul(rm, t);
    }
    TaylorPoly out;
    out.center = p.center;
    out.coeffs = std::move(r);
    return out;
  }
  // (1/a0) * sum_{k=0}^n (1 - p/a0)^k  mod x^{n+1}
  std::vector<Rational> u(n + 1, Rational(0));
  Rational inv = a0.reciprocal();
  for (std::size_t j = 1; j <= n; ++j) u[j] = -counted_mul(p.coeffs[j], inv);
  std::vector<Rational> acc(n + 1, Rational(0)), powu(n + 1, Rational(0));
  acc[0] = powu[0] = Rational(1);
  for (std::size_t k = 1; k <= n; ++k) {
    powu = trunc_mul(powu, u);
    for (std::size_t j = 0; j <= n; ++j) acc[j] += powu[j];
  }
  TaylorPoly out;
  out.center = p.center;
  out.coeffs.resize(n + 1);
  for (std::size_t j = 0; j <= n; ++j) out.coeffs[j] = counted_mul(acc[j], inv);
  return out;
}

TaylorPoly tp_compose(const TaylorPoly& p, const TaylorPoly& q) {
  if (p.order() != q.order())
    fail("OrderMismatch", "compose needs equal orders");
  if (q.coeffs[0] != p.center)
    fail("CenterIncompatible", "inner constant term " + q.coeffs[0].str() +
                                   " != outer center " + p.center.str());
  std::size_t n = p.order();
  // sum_k a_k (q - q(0))^k mod x^{n+1}, re-centered at q's center.
  std::vector<Rational> v = q.coeffs;
  v[0] = Rational(0);
  std::vector<Rational> acc(n + 1, Rational(0)), powv(n + 1, Rational(0));
  powv[0] = Rational(1);
  acc[0] = p.coeffs[0];
  for (std::size_t k = 1; k <= n; ++k) {
    powv = trunc_mul(powv, v);
    if (p.coeffs[k].is_zero()) continue;
    for (std::size_t j = 0; j <= n; ++j)
      acc[j] += counted_mul(p.coeffs[k], powv[j]);
  }
  TaylorPoly out;
  out.center = q.center;
  out.coeffs = std::move(acc);
  return out;
}

TaylorPoly tp_shift_center(const TaylorPoly& p, const Rational& b) {
  if (!p.center.is_zero())
    fail("CenterMismatch", "shift expects a center-0 polynomial");
  std::size_t n = p.order();
  TaylorPoly out;
  out.center = b;
  out.coeffs.assign(n + 1, Rational(0));
  // b_i = sum_{k=0}^{n-i} a_{k+i} * binom(k+i, i) * b^k
  for (std::size_t i = 0; i <= n; ++i) {
    Rational bi(0), bpow(1);
    for (std::size_t k = 0; k + i <= n; ++k) {
      Integer ch;
      mpz_bin_uiui(ch.get_mpz_t(), k + i, i);
      bi += p.coeffs[k + i] * Rational(ch) * bpow;
      bpow *= b;
    }
    out.coeffs[i] = bi;
  }
  return out;
}

TaylorPoly tp_derive(const TaylorPoly& p) {
  TaylorPoly out;
  out.center = p.center;
  if (p.order() == 0) {
    out.coeffs = {Rational(0)};  // documented: constant derives to order-0 zero
    return out;
  }
  out.coeffs.resize(p.order());
  for (std::size_t j = 1; j <= p.order(); ++j)
    out.coeffs[j - 1] = Rational(static_cast<long>(j)) * p.coeffs[j];
  return out;
}

TaylorPoly tp_antiderive(const TaylorPoly& p, const Rational& constant_term) {
  TaylorPoly out;
  out.center = p.center;
  out.coeffs.resize(p.order() + 2);
  out.coeffs[0] = constant_term;
  for (std::size_t j = 0; j <= p.order(); ++j)
    out.coeffs[j + 1] = p.coeffs[j] / Rational(static_cast<long>(j) + 1);
  return out;
}

Rational lagrange_remainder_bound(const BaseFn& f, std::size_t n,
                                  const Rational& x) {
  Rational step = x.abs().pow(static_cast<long>(n) + 1) /
                  Rational(factorial(n + 1));
  switch (f.tag) {
    case BaseFn::Sin:
    case BaseFn::Cos:
      return step;  // |f^(n+1)| <= 1
    case BaseFn::Exp: {
      Integer c = x.ceil();
      if (c < 0) c = 0;
      Integer m;  // e^c <= 3^c for c >= 0
      mpz_ui_pow_ui(m.get_mpz_t(), 3, c.get_ui());
      return Rational(m) * step;
    }
    default:
      fail("UnboundedDerivatives",
           "global derivative bounds only for Exp, Sin, Cos");
  }
}

LaurentPoly lp_from_taylor(const TaylorPoly& p) {
  LaurentPoly l;
  l.center = p.center;
  l.mlow = 0;
  l.coeffs = p.coeffs;
  return l;
}

LaurentPoly lp_reciprocal(const LaurentPoly& p) {
  long l = p.mlow;
  std::size_t li = 0;
  while (li < p.coeffs.size() && p.coeffs[li].is_zero()) { ++li; ++l; }
  if (li == p.coeffs.size()) fail("AllZero", "reciprocal of the zero Laurent");
  const Rational& al = p.coeffs[li];
  std::size_t N = p.coeffs.size() - 1 - li;  // mhigh - l
  // p = a_l x^l (1 + sum a'_j x^j); reciprocal of the unit factor at order N.
  TaylorPoly unit = TaylorPoly::constant(Rational(1), N, p.center);
  for (std::size_t j = 1; j <= N; ++j)
    unit.coeffs[j] = p.coeffs[li + j] / al;
  TaylorPoly r = tp_reciprocal(unit);
  LaurentPoly out;
  out.center = p.center;
  out.mlow = -l;
  out.coeffs.resize(N + 1);
  Rational inv = al.reciprocal();
  for (std::size_t j = 0; j <= N; ++j) out.coeffs[j] = r.coeffs[j] * inv;
  return out;
}

LaurentPoly lp_add(const LaurentPoly& p, const LaurentPoly& q, long high) {
  if (p.center != q.center) fail("CenterMismatch", "Laurent add");
  LaurentPoly out;
  out.center = p.center;
  out.mlow = std::min(p.mlow, q.mlow);
  out.coeffs.assign(static_cast<std::size_t>(high - out.mlow + 1), Rational(0));
  for (long j = out.mlow; j <= high; ++j) {
    if (j >= p.mlow && j <= p.mhigh()) out.coeffs[j - out.mlow] += p.coeff(j);
    if (j >= q.mlow && j <= q.mhigh()) out.coeffs[j - out.mlow] += q.coeff(j);
  }
  return out;
}

LaurentPoly lp_mul(const LaurentPoly& p, const LaurentPoly& q, long high) {
  if (p.center != q.center) fail("CenterMismatch", "Laurent mul");
  LaurentPoly out;
  out.center = p.center;
  out.mlow = p.mlow + q.mlow;
  if (high < out.mlow) high = out.mlow;
  out.coeffs.assign(static_cast<std::size_t>(high - out.mlow + 1), Rational(0));
  for (long i = p.mlow; i <= p.mhigh(); ++i) {
    if (p.coeff(i).is_zero()) continue;
    for (long j = q.mlow; j <= q.mhigh() && i + j <= high; ++j)
      out.coeffs[i + j - out.mlow] += counted_mul(p.coeff(i), q.coeff(j));
  }
  return out;
}

namespace {

void render_term(std::ostream& os, const Rational& a, const Rational& center,
                 long j, bool first) {
  Rational c = a;
  if (first) {
    if (c.sign() < 0) { os << '-'; c = -c; }
  } else {
    os << (c.sign() < 0 ? " - " : " + ");
    if (c.sign() < 0) c = -c;
  }
  bool unit = c == Rational(1) && j != 0;
  if (!unit) os << c.str();
  if (j != 0) {
    if (!unit) os << '*';
    if (center.is_zero()) {
      os << 'x';
    } else if (center.sign() > 0) {
      os << "(x-" << center.str() << ')';
    } else {
      os << "(x+" << (-center).str() << ')';
    }
    if (j != 1) os << '^' << j;
  }
}

}  // namespace

std::string TaylorPoly::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (j > 0 && coeffs[j].is_zero()) continue;
    render_term(os, coeffs[j], center, static_cast<long>(j), first);
    first = false;
  }
  return os.str();
}

std::string LaurentPoly::str() const {
  std::ostringstream os;
  bool first = true;
  for (long j = mlow; j <= mhigh(); ++j) {
    if (coeff(j).is_zero() && !(first && j == mhigh())) continue;
    render_term(os, coeff(j), center, j, first);
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

TaylorPoly tp_parse(const std::string& text, long order) {
  struct Term { Rational coeff; long exp; Rational center; };
  std::vector<Term> terms;
  std::size_t i = 0;
  auto skip = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
  auto parse_rat = [&]() -> Rational {
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    while (i < text.size() &&
           (std::isdigit((unsigned char)text[i]) || text[i] == '/' ||
            text[i] == '.'))
      ++i;
    if (i == start) fail("SyntaxError", "expected number at offset " +
                                            std::to_string(start));
    return Rational::parse(text.substr(start, i - start));
  };
  skip();
  bool first = true;
  while (i < text.size()) {
    int sign = 1;
    skip();
    if (!first || text[i] == '+' || text[i] == '-') {
      if (i >= text.size() || (text[i] != '+' && text[i] != '-'))
        fail("SyntaxError", "expected '+' or '-' at offset " + std::to_string(i));
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    }
    first = false;
    Term t{Rational(1), 0, Rational(0)};
    bool have_coeff = false;
    if (i < text.size() && (std::isdigit((unsigned char)text[i]))) {
      t.coeff = parse_rat();
      have_coeff = true;
      skip();
      if (i < text.size() && text[i] == '*') { ++i; skip(); }
    }
    if (i < text.size() && (text[i] == 'x' || text[i] == '(')) {
      if (text[i] == 'x') {
        ++i;
      } else {
        ++i; skip();
        if (i >= text.size() || text[i] != 'x')
          fail("SyntaxError", "expected 'x' at offset " + std::to_string(i));
        ++i; skip();
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
          int cs = text[i] == '-' ? 1 : -1;  // (x-b): center +b
          ++i; skip();
          Rational b = parse_rat();
          t.center = cs < 0 ? -b : b;
        }
        skip();
        if (i >= text.size() || text[i] != ')')
          fail("SyntaxError", "expected ')' at offset " + std::to_string(i));
        ++i;
      }
      t.exp = 1;
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i; skip();
        std::size_t start = i;
        if (i < text.size() && text[i] == '-') ++i;
        while (i < text.size() && std::isdigit((unsigned char)text[i])) ++i;
        t.exp = std::stol(text.substr(start, i - start));
      }
    } else if (!have_coeff) {
      fail("SyntaxError", "expected term at offset " + std::to_string(i));
    }
    t.coeff = sign < 0 ? -t.coeff : t.coeff;
    terms.push_back(t);
    skip();
  }
  if (terms.empty()) fail("SyntaxError", "empty polynomial");
  Rational center(0);
  long maxexp = 0;
  for (const Term& t : terms) {
    if (t.exp > 0 && !t.center.is_zero()) center = t.center;
    maxexp = std::max(maxexp, t.exp);
  }
  long n = order >= 0 ? order : maxexp;
  if (n < maxexp) fail("OrderMismatch", "explicit order below largest exponent");
  TaylorPoly p = TaylorPoly::constant(Rational(0), n, center);
  for (const Term& t : terms) {
    if (t.exp < 0) fail("SyntaxError", "negative exponent in Taylor text");
    if (t.exp > 0 && t.center != center)
      fail("CenterMismatch", "mixed centers in polynomial text");
    p.coeffs[t.exp] += t.coeff;
  }
  return p;
}

}  // namespace ank
