#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ank/rational.hpp"

namespace ank {

/// Truncated Taylor polynomial: center b, explicit order n, exactly n+1
/// coefficients (trailing zeros are stored, the order is never inferred).
struct TaylorPoly {
  Rational center;
  std::vector<Rational> coeffs;  // a_0 .. a_n

  std::size_t order() const { return coeffs.size() - 1; }
  const Rational& coeff(std::size_t j) const { return coeffs[j]; }

  static TaylorPoly constant(const Rational& c, std::size_t order,
                             const Rational& center = Rational(0));
  static TaylorPoly identity(std::size_t order);  // x, center 0

  Rational eval(const Rational& x) const;

  /// "a0 + a1*x + ..." (or powers of (x-b)); zero terms omitted except a0.
  std::string str() const;
  bool operator==(const TaylorPoly&) const = default;
};

/// Truncated Laurent polynomial: exponent range [mlow, mhigh], center b.
struct LaurentPoly {
  Rational center;
  long mlow = 0;
  std::vector<Rational> coeffs;  // a_mlow .. a_mhigh

  long mhigh() const { return mlow + static_cast<long>(coeffs.size()) - 1; }
  const Rational& coeff(long j) const { return coeffs[j - mlow]; }

  std::string str() const;
  bool operator==(const LaurentPoly&) const = default;
};

struct BaseFn {
  enum Tag { Exp, Sin, Cos, Log1p, LogGeom, PowA, Arctan, Arcsin, Geometric };
  Tag tag;
  Rational exponent;  // PowA only

  BaseFn(Tag t) : tag(t) {}
  BaseFn(Tag t, Rational a) : tag(t), exponent(std::move(a)) {}
  static BaseFn pow(Rational a) { return BaseFn(PowA, std::move(a)); }
};

/// Maclaurin polynomial of a base function, exact coefficients, center 0.
TaylorPoly maclaurin(const BaseFn& f, std::size_t order);

TaylorPoly tp_add(const TaylorPoly& p, const TaylorPoly& q);
TaylorPoly tp_mul(const TaylorPoly& p, const TaylorPoly& q);

/// 1/p mod x^{n+1} via the power-sum formula. `newton` switches to the
/// doubling fast path (bit-identical output).
TaylorPoly tp_reciprocal(const TaylorPoly& p, bool newton = false);

/// p(q(x)) mod x^{n+1}; q's constant term must equal p's center.
TaylorPoly tp_compose(const TaylorPoly& p, const TaylorPoly& q);

/// Re-expands a center-0 polynomial in powers of (x - b).
TaylorPoly tp_shift_center(const TaylorPoly& p, const Rational& b);

TaylorPoly tp_derive(const TaylorPoly& p);
TaylorPoly tp_antiderive(const TaylorPoly& p, const Rational& constant_term);

/// Exact B with |f(x) - T_n(x)| <= B, for f in {Exp, Sin, Cos}.
Rational lagrange_remainder_bound(const BaseFn& f, std::size_t n,
                                  const Rational& x);

LaurentPoly lp_from_taylor(const TaylorPoly& p);
LaurentPoly lp_reciprocal(const LaurentPoly& p);
LaurentPoly lp_add(const LaurentPoly& p, const LaurentPoly& q, long high);
LaurentPoly lp_mul(const LaurentPoly& p, const LaurentPoly& q, long high);

/// Parses the rendering of TaylorPoly::str. The order defaults to the
/// largest exponent present; pass `order` to keep explicit trailing zeros.
TaylorPoly tp_parse(const std::string& text, long order = -1);

/// Running count of coefficient multiplications performed by the ops above
/// (complexity instrumentation).
std::uint64_t tp_mul_count();
void tp_mul_count_reset();

}  // namespace ank
