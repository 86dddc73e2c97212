#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ank/interval.hpp"
#include "ank/rational.hpp"

namespace ank {

/// Term generator a_1, a_2, ... of exact rationals. The closed-form tag is
/// what makes limsup-style convergence tests sound: untagged (Custom)
/// generators can only ever produce Inconclusive or certificate failures.
struct SeriesTerms {
  enum Form { Custom, Geometric, Zeta, AltHarmonic, FactorialRatio };
  Form form = Custom;
  Rational param;  // Geometric: q; Zeta: integer s; FactorialRatio: x

  std::function<Rational(unsigned long)> term;  // 1-based

  bool cert_nonneg_decreasing = false;
  bool cert_alternating_leibniz = false;
  bool cert_riemannian = false;

  Rational at(unsigned long n) const { return term(n); }

  static SeriesTerms geometric(const Rational& q);     // q^{n-1}
  static SeriesTerms zeta(const Rational& s);          // 1/n^s, integer s >= 0
  static SeriesTerms harmonic();                       // zeta(1) certified
  static SeriesTerms alternating_harmonic();           // (-1)^{n+1}/n
  static SeriesTerms factorial_ratio(const Rational& x);  // x^{n-1}/(n-1)!
  static SeriesTerms custom(std::function<Rational(unsigned long)> f);
};

struct Verdict {
  enum Tag { Converges, DivergesPlusInf, DivergesMinusInf, NoSum, Inconclusive };
  Tag tag = Inconclusive;
  std::string test;     // the named test that produced the verdict
  std::string witness;  // its witness parameters

  bool operator==(const Verdict& o) const { return tag == o.tag; }
};

enum class TestKind { Root, Ratio, Condensation, Comparison, NCC };

struct TestOptions {
  TestKind sub_test = TestKind::Root;              // Condensation
  std::optional<SeriesTerms> majorant;             // Comparison
};

std::vector<Rational> partial_sums(const SeriesTerms& t, unsigned long n);

/// Verdicts are emitted only when sound: strict-inequality tests need the
/// generator's closed form. Throws Error kind CertificateViolated when a
/// precondition fails on the inspected window.
Verdict convergence_test(TestKind kind, const SeriesTerms& t,
                         unsigned long window, const TestOptions& opts = {});

/// Exact classification of the zeta series for any rational exponent.
Verdict zeta_classify(const Rational& s);

/// (s_{2n}, s_{2n-1}) bracketing the sum of a Leibniz series.
std::pair<Rational, Rational> leibniz_bracket(const SeriesTerms& t,
                                              unsigned long n);

/// 0-based Cauchy product: c_n = sum_{j=0}^n a_j b_{n-j}.
SeriesTerms cauchy_product(const SeriesTerms& a, const SeriesTerms& b);

/// Blockwise grouping; `sizes` repeats its last element indefinitely.
SeriesTerms group_terms(const SeriesTerms& t, std::vector<unsigned long> sizes);

struct SumTarget {
  enum Kind { Finite, PlusInf, MinusInf, NoSum };
  Kind kind = Finite;
  Rational value;

  static SumTarget finite(const Rational& v) { return {Finite, v}; }
  static SumTarget plus_inf() { return {PlusInf, Rational(0)}; }
  static SumTarget minus_inf() { return {MinusInf, Rational(0)}; }
  static SumTarget no_sum() { return {NoSum, Rational(0)}; }
};

struct RearrangementPlan {
  SumTarget target;
  std::vector<unsigned long> emitted;       // injective original indices
  std::vector<Rational> sums;               // partial sums (or products)
  std::vector<std::size_t> phase_switches;  // positions where the greedy
                                            // construction changed direction
};

/// Greedy Riemann rearrangement: emits the first emit_count indices of the
/// alternation that drives the partial sums to the target. Throws Error
/// kind NotRiemannian when the prefix check fails.
RearrangementPlan rearrange_to_target(const SeriesTerms& t,
                                      const SumTarget& target,
                                      std::size_t emit_count);

struct ProductTarget {
  enum Kind { Finite, PlusInf, Zero };
  Kind kind = Finite;
  Rational value;  // Finite: > 0

  static ProductTarget finite(const Rational& v) { return {Finite, v}; }
  static ProductTarget plus_inf() { return {PlusInf, Rational(0)}; }
  static ProductTarget zero() { return {Zero, Rational(0)}; }
};

/// Rearranges an infinite product of factors a_n -> 1; the greedy
/// comparisons run on the exact rational partial products (equivalently,
/// on their logarithms). Throws Error kind NotRiemannianProduct.
RearrangementPlan rearrange_product_to_target(const SeriesTerms& factors,
                                              const ProductTarget& target,
                                              std::size_t emit_count);

/// Exact h_n together with a certified enclosure of h_n - ln n - gamma.
std::pair<Rational, IntervalValue> harmonic_gamma_check(unsigned long n);

/// Enclosure of the Euler-Mascheroni constant from the stored 30-digit
/// decimal expansion.
IntervalValue euler_gamma_30();

struct BinomialDomain {
  bool whole_line = false;
  bool lo_open = false, hi_open = false;  // endpoints -1 and 1
  std::string str() const;
  bool operator==(const BinomialDomain&) const = default;
};

/// Convergence domain of the binomial series (1+x)^a.
BinomialDomain binomial_series_domain(const Rational& a);

}  // namespace ank
