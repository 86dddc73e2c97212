#pragma once

#include <string>
#include <vector>

#include "ank/rational.hpp"

namespace ank {

/// n-th decimal digit of lambda = sum 10^{-m!}: 1 iff n is a factorial.
int liouville_digit(unsigned long n);

/// Proof data for the m-th convergent z/q of lambda: q = 10^{m!}, z the
/// numerator of the partial sum, and |lambda - z/q| < gap_bound = 2 q^{-m-1}.
struct LiouvilleCertificate {
  Integer z, q;
  Rational gap_bound;
};

/// Throws Error kind BudgetExceeded for m > 6.
LiouvilleCertificate liouville_certificate(unsigned long m);

/// Integer polynomial a_0 + a_1 x + ... + a_n x^n as its coefficient tuple.
using IntPoly = std::vector<Integer>;

Rational poly_eval(const IntPoly& p, const Rational& x);

/// Exact |p(x)| together with the certificate |p(x)| >= den(x)^{-deg p}.
/// Throws Error kind ZeroValue when p(x) = 0.
Rational poly_rational_lower_bound(const IntPoly& p, const Rational& x);

/// Radius exponent l such that p has no zero on [alpha, alpha + 10^{-l}],
/// from the derivative bound b = (n+1)^2 max|a_i| (|a|+1)^n and l = kn + b,
/// where alpha = a/10^k in the reduced decimal representation. Throws Error
/// kinds ZeroAtAlpha (p(alpha) = 0), NonCanonical (alpha not a decimal
/// fraction), and BudgetExceeded (l does not fit a machine word).
unsigned long nonvanishing_radius(const IntPoly& p, const Rational& alpha);

/// One processed polynomial of the root-avoiding digit construction.
struct CantorStep {
  IntPoly poly;
  unsigned long j = 0;       // first grid offset where poly is nonzero
  unsigned long k_grid = 0;  // grid exponent (k > k_m, 10^{k-k_m} > deg)
  unsigned long l = 0;       // nonvanishing radius exponent at the grid point
  unsigned long k_next = 0;  // max(k_grid, l)
  Integer z;                 // emitted block value
  Rational alpha;            // interval left end after the step
};

struct CantorState {
  unsigned long m = 0;  // polynomials processed
  Rational alpha;       // denominator exactly 10^k
  unsigned long k = 0;
  std::vector<CantorStep> trace;
};

struct CantorResult {
  std::vector<int> digits;  // first digits of the stream (at most max_digits)
  CantorState state;
};

/// Deterministic enumeration of nonzero integer polynomials: ordered by
/// size = degree + sum |a_i|, then by degree, then lexicographically by
/// coefficient tuple. 1-based.
IntPoly enumerate_poly(unsigned long m);

/// Runs the digit construction over the first max_polys enumerated
/// polynomials; the resulting interval [alpha, alpha + 10^{-k}] contains no
/// root of any of them, and the digit stream is the decimal expansion of
/// its left end.
CantorResult cantor_stream(unsigned long max_polys, unsigned long max_digits);

std::string poly_str(const IntPoly& p);

}  // namespace ank
