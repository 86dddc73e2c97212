#include "ank/limits.hpp"

#include <algorithm>

namespace ank {

std::string LimitResult::str() const {
  switch (tag) {
    case Finite: return "finite " + value.str();
    case PlusInfinity: return "+inf";
    case MinusInfinity: return "-inf";
    case NoLimit: return "no-limit";
    case Inconclusive:
      return "inconclusive(" + std::to_string(max_order_tried) + ")";
  }
  return "?";
}

LaurentPoly expand_laurent(const Expr& e, long order) {
  switch (e.kind()) {
    case ExprKind::Add: {
      LaurentPoly l = expand_laurent(e.left(), order);
      LaurentPoly r = expand_laurent(e.right(), order);
      return lp_add(l, r, std::min({l.mhigh(), r.mhigh(), order}));
    }
    case ExprKind::Mul: {
      LaurentPoly l = expand_laurent(e.left(), order);
      LaurentPoly r = expand_laurent(e.right(), order);
      long high = std::min({l.mhigh() + r.mlow, r.mhigh() + l.mlow, order});
      return lp_mul(l, r, high);
    }
    case ExprKind::Div: {
      LaurentPoly l = expand_laurent(e.left(), order);
      LaurentPoly inv = lp_reciprocal(expand_laurent(e.right(), order));
      long high = std::min({l.mhigh() + inv.mlow, inv.mhigh() + l.mlow, order});
      return lp_mul(l, inv, high);
    }
    case ExprKind::PowInt: {
      long m = e.int_exponent();
      LaurentPoly b = expand_laurent(e.left(), order);
      if (m < 0) {
        b = lp_reciprocal(b);
        m = -m;
      }
      LaurentPoly acc = lp_from_taylor(
          TaylorPoly::constant(Rational(1), static_cast<std::size_t>(
                                                std::max<long>(order, 0))));
      for (long i = 0; i < m; ++i) {
        long high = std::min({acc.mhigh() + b.mlow, b.mhigh() + acc.mlow, order});
        acc = lp_mul(acc, b, high);
      }
      return acc;
    }
    default:
      // Const, Var, Pi, PowRat, Apply: pure Taylor subtrees
      return lp_from_taylor(
          expand_taylor(e, static_cast<std::size_t>(std::max<long>(order, 0))));
  }
}

LimitResult laurent_ratio_limit(const LaurentPoly& p, const LaurentPoly& q) {
  bool q_nonzero = false;
  for (const Rational& c : q.coeffs)
    if (!c.is_zero()) q_nonzero = true;
  if (!q_nonzero)
    fail("AllZeroDenominator", "denominator expansion is identically zero");

  long lo = std::min(p.mlow, q.mlow);
  long hi = std::min(p.mhigh(), q.mhigh());
  auto pc = [&](long j) {
    return j >= p.mlow && j <= p.mhigh() ? p.coeff(j) : Rational(0);
  };
  auto qc = [&](long j) {
    return j >= q.mlow && j <= q.mhigh() ? q.coeff(j) : Rational(0);
  };

  for (long m = lo; m <= hi; ++m) {
    Rational am = pc(m), bm = qc(m);
    if (am.is_zero() && bm.is_zero()) continue;
    if (!bm.is_zero())
      return {LimitResult::Finite, am / bm, 0};
    // a_m != 0, b_m = 0: find the denominator's leading index l > m
    for (long l = m + 1; l <= hi; ++l) {
      Rational bl = qc(l);
      if (bl.is_zero()) continue;
      if ((l - m) % 2 == 0)
        return {am.sign() * bl.sign() > 0 ? LimitResult::PlusInfinity
                                          : LimitResult::MinusInfinity,
                Rational(0), 0};
      return {LimitResult::NoLimit, Rational(0), 0};
    }
    break;  // denominator all zero within the trusted window
  }
  return {LimitResult::Inconclusive, Rational(0),
          static_cast<std::size_t>(std::max<long>(hi, 0))};
}

LimitResult ratio_limit(const Expr& f, const Expr& g, std::size_t order) {
  if (order == 0) fail("NonCanonical", "order must be positive");
  std::size_t cap = std::max<std::size_t>(order, 32);
  std::size_t n = order;
  LimitResult last{LimitResult::Inconclusive, Rational(0), order};
  while (true) {
    LaurentPoly p = expand_laurent(f, static_cast<long>(n));
    LaurentPoly q = expand_laurent(g, static_cast<long>(n));
    bool q_nonzero = false;
    for (const Rational& c : q.coeffs)
      if (!c.is_zero()) q_nonzero = true;
    last = q_nonzero ? laurent_ratio_limit(p, q)
                     : LimitResult{LimitResult::Inconclusive, Rational(0), n};
    last.max_order_tried = n;
    if (last.tag != LimitResult::Inconclusive || n >= cap) return last;
    n = std::min(cap, n * 2);
  }
}

}  // namespace ank
