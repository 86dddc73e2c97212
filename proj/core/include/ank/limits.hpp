#pragma once

#include <string>

#include "ank/expr.hpp"
#include "ank/taylor.hpp"

namespace ank {

struct LimitResult {
  enum Tag { Finite, PlusInfinity, MinusInfinity, NoLimit, Inconclusive };
  Tag tag = Inconclusive;
  Rational value;                  // Finite only
  std::size_t max_order_tried = 0; // Inconclusive only

  /// "finite p/q", "+inf", "-inf", "no-limit" or "inconclusive(N)".
  std::string str() const;
  bool operator==(const LimitResult&) const = default;
};

/// Laurent expansion of e at 0 with coefficients trusted up to the returned
/// mhigh (poles handled through lp_reciprocal).
LaurentPoly expand_laurent(const Expr& e, long order);

/// Limit of f(x)/g(x) as x -> 0 classified from the exact expansions. The
/// given order is doubled automatically (up to max(32, order)) while the
/// verdict stays inconclusive.
LimitResult ratio_limit(const Expr& f, const Expr& g, std::size_t order = 8);

/// Classifies lim p(x)/q(x) at 0 from coefficient vectors directly.
/// Throws Error kind AllZeroDenominator when q has no nonzero coefficient.
LimitResult laurent_ratio_limit(const LaurentPoly& p, const LaurentPoly& q);

}  // namespace ank
