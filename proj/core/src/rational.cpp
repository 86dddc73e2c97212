#include "ank/rational.hpp"

#include <cctype>
#include <ostream>

namespace ank {

Rational Rational::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) fail("SyntaxError", "empty rational literal");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    Integer num, den;
    if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
      fail("SyntaxError", "bad decimal literal '" + text + "'");
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    return Rational(num, den);
  }
  auto slash = s.find('/');
  Integer num, den(1);
  std::string np = slash == std::string::npos ? s : s.substr(0, slash);
  if (mpz_set_str(num.get_mpz_t(), np.c_str(), 10) != 0)
    fail("SyntaxError", "bad rational literal '" + text + "'");
  if (slash != std::string::npos) {
    std::string dp = s.substr(slash + 1);
    if (dp.empty() || dp[0] == '-' ||
        mpz_set_str(den.get_mpz_t(), dp.c_str(), 10) != 0)
      fail("SyntaxError", "bad rational literal '" + text + "'");
  }
  return Rational(num, den);
}

Rational Rational::pow(long m) const {
  if (m == 0) return Rational(1);
  bool inv = m < 0;
  unsigned long e = inv ? static_cast<unsigned long>(-(m + 1)) + 1
                        : static_cast<unsigned long>(m);
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), e);
  Rational r(n, d);
  return inv ? r.reciprocal() : r;
}

Integer Rational::floor() const {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return q;
}

Integer Rational::ceil() const {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return q;
}

std::string Rational::str() const {
  std::string s = v_.get_num().get_str();
  if (v_.get_den() != 1) s += "/" + v_.get_den().get_str();
  return s;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

Rational binomial(const Rational& a, unsigned long j) {
  Rational r(1);
  for (unsigned long i = 0; i < j; ++i)
    r *= (a - Rational(static_cast<long>(i))) / Rational(static_cast<long>(i) + 1);
  return r;
}

Integer factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace ank
