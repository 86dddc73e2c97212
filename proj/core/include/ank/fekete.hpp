#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ank/interval.hpp"
#include "ank/rational.hpp"

namespace ank {

enum class FeketeMode {
  Subadditive,
  Superadditive,
  Submultiplicative,
  Supermultiplicative,
};

/// Limit estimation for sequences with a sub/super-additivity certificate:
/// every a_n/n (additive) or a_n^{1/n} (multiplicative) bounds the limit
/// from the appropriate side once the certificate holds.
struct FeketeReport {
  FeketeMode mode = FeketeMode::Subadditive;
  std::vector<Rational> prefix;           // a_1 .. a_N
  std::vector<IntervalValue> normalized;  // a_n/n, or an enclosure of a_n^{1/n}
  /// Running one-sided limit bound: for sub modes the min of the enclosure
  /// upper endpoints so far, for super modes the max of the lower endpoints.
  std::vector<Rational> bound;
  bool certificate_ok = false;
};

/// Verifies the mode's inequality on every pair m + n <= N and reports the
/// normalized sequence with its running limit bound. Multiplicative modes
/// require strictly positive terms. Throws Error kind CertificateViolated
/// naming the first violating pair.
FeketeReport fekete_estimate(const std::function<Rational(unsigned long)>& seq,
                             FeketeMode mode, unsigned long N);

/// Exact number of self-avoiding walks of length n on the square lattice
/// starting at the origin (depth-first enumeration). Throws Error kind
/// BudgetExceeded for n > 14.
Integer saw_count(unsigned long n);

}  // namespace ank
