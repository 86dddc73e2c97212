#pragma once

#include <string>
#include <vector>

#include "ank/rational.hpp"

namespace ank {

/// Eventually periodic decimal expansion. An empty period means the
/// expansion terminates. The canonical form never uses an all-9 period.
struct PeriodicDecimal {
  int sign = +1;                    // +1 or -1
  Integer integer_part = 0;         // nonnegative
  std::vector<int> preperiod;       // digits 0..9
  std::vector<int> period;          // digits 0..9, minimal, not all-9

  /// "s I.PRE(PER)" rendering, e.g. "+27.(27)", "-0.5", "+0.58(3)".
  std::string str() const;

  bool operator==(const PeriodicDecimal&) const = default;
};

/// Word e_n...e_0 over {0..q-1}; no leading zero except the word "0".
struct BaseQWord {
  long base = 10;
  std::vector<int> digits;  // most significant first

  std::string str() const;
  bool operator==(const BaseQWord&) const = default;
};

/// c0 + 1/(c1 + 1/(c2 + ...)). For surds `period_start` marks the index in
/// `partials` (0-based) where the periodic block begins; the block repeats
/// forever. For finite CFs `periodic` is false and the canonical form has
/// last partial >= 2 unless the CF is (c0) alone.
struct ContinuedFraction {
  Integer c0;
  std::vector<Integer> partials;
  bool periodic = false;
  std::size_t period_start = 0;

  /// "[c0; a1, a2, ...]"; the periodic block carries a "~" prefix,
  /// e.g. "[1; ~2]" for sqrt(2).
  std::string str() const;
  bool operator==(const ContinuedFraction&) const = default;
};

/// (a + b*sqrt(d)) / c with c > 0, d squarefree, b != 0.
struct QuadraticSurd {
  Integer a;
  Integer b;
  Integer c;
  Integer d;
};

PeriodicDecimal to_periodic_decimal(const Rational& x);
Rational from_periodic_decimal(const PeriodicDecimal& pd);

/// Maps a terminating decimal to its all-9 "near decimal" twin
/// (e.g. +0.5 -> +0.4(9)). Errors with NonCanonical for non-terminating
/// input or zero.
PeriodicDecimal near_decimal_partner(const PeriodicDecimal& pd);

BaseQWord base_q_encode(const Integer& n, long q);
Integer base_q_decode(const BaseQWord& w);

ContinuedFraction cfrac_encode(const Rational& x);
ContinuedFraction cfrac_encode(const QuadraticSurd& s, std::size_t max_terms);

/// Convergents d_1..d_k (d_j uses partial quotients c_1..c_j), expanding a
/// periodic tail as needed. Errors with NotEnoughTerms for short finite CFs.
std::vector<Rational> cfrac_convergents(const ContinuedFraction& cf,
                                        std::size_t k);

/// a_1 = 1, a_n = a_{n-1}/2 + 1/a_{n-1}.
Rational babylonian_sqrt2(unsigned long n);

}  // namespace ank
