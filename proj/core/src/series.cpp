#include "ank/series.hpp"

#include <algorithm>
#include <utility>

namespace ank {

// ---------------------------------------------------------------- generators

SeriesTerms SeriesTerms::geometric(const Rational& q) {
  SeriesTerms t;
  t.form = Geometric;
  t.param = q;
  t.term = [q](unsigned long n) { return q.pow(static_cast<long>(n) - 1); };
  if (q.sign() >= 0 && q < Rational(1)) t.cert_nonneg_decreasing = true;
  return t;
}

SeriesTerms SeriesTerms::zeta(const Rational& s) {
  if (!s.is_integer() || s.sign() < 0)
    fail("NonCanonical", "zeta term generator needs an integer s >= 0");
  SeriesTerms t;
  t.form = Zeta;
  t.param = s;
  long si = static_cast<long>(s.num().get_si());
  t.term = [si](unsigned long n) {
    return Rational(Integer(n)).pow(si).reciprocal();
  };
  t.cert_nonneg_decreasing = si >= 0;
  return t;
}

SeriesTerms SeriesTerms::harmonic() { return zeta(Rational(1)); }

SeriesTerms SeriesTerms::alternating_harmonic() {
  SeriesTerms t;
  t.form = AltHarmonic;
  t.term = [](unsigned long n) {
    Rational v(1, Integer(n));
    return n % 2 == 1 ? v : -v;
  };
  t.cert_alternating_leibniz = true;
  t.cert_riemannian = true;
  return t;
}

SeriesTerms SeriesTerms::factorial_ratio(const Rational& x) {
  SeriesTerms t;
  t.form = FactorialRatio;
  t.param = x;
  t.term = [x](unsigned long n) {
    return x.pow(static_cast<long>(n) - 1) / Rational(factorial(n - 1));
  };
  return t;
}

SeriesTerms SeriesTerms::custom(std::function<Rational(unsigned long)> f) {
  SeriesTerms t;
  t.term = std::move(f);
  return t;
}

// ------------------------------------------------------------- partial sums

std::vector<Rational> partial_sums(const SeriesTerms& t, unsigned long n) {
  std::vector<Rational> out;
  out.reserve(n);
  Rational s(0);
  for (unsigned long k = 1; k <= n; ++k) {
    s += t.at(k);
    out.push_back(s);
  }
  return out;
}

// -------------------------------------------------------- convergence tests

namespace {

void check_window_nonneg(const SeriesTerms& t, unsigned long window,
                         bool strict) {
  for (unsigned long n = 1; n <= window; ++n) {
    int s = t.at(n).sign();
    if (s < 0 || (strict && s == 0))
      fail("CertificateViolated",
           std::string(strict ? "positive" : "nonnegative") +
               " terms required on the window (index " + std::to_string(n) +
               ")");
  }
}

void check_nonneg_decreasing(const SeriesTerms& t, unsigned long window) {
  Rational prev = t.at(1);
  if (prev.sign() < 0)
    fail("CertificateViolated", "NonnegativeDecreasing fails at index 1");
  for (unsigned long n = 2; n <= window; ++n) {
    Rational cur = t.at(n);
    if (cur.sign() < 0 || cur > prev)
      fail("CertificateViolated",
           "NonnegativeDecreasing fails at index " + std::to_string(n));
    prev = cur;
  }
}

Verdict inconclusive(const std::string& test, const std::string& why) {
  return {Verdict::Inconclusive, test, why};
}

// sound classification from the closed form of the generator; used by the
// comparison test for its majorant as well
Verdict classify_closed_form(const SeriesTerms& t) {
  switch (t.form) {
    case SeriesTerms::Geometric: {
      Rational a = t.param.abs();
      if (a < Rational(1))
        return {Verdict::Converges, "closed-form", "|q| = " + a.str() + " < 1"};
      if (t.param >= Rational(1))
        return {Verdict::DivergesPlusInf, "closed-form", "q >= 1"};
      return {Verdict::NoSum, "closed-form", "q <= -1"};
    }
    case SeriesTerms::Zeta:
      return zeta_classify(t.param);
    case SeriesTerms::FactorialRatio:
      return {Verdict::Converges, "closed-form", "x^n/n! ratio -> 0"};
    case SeriesTerms::AltHarmonic:
      return {Verdict::Converges, "closed-form", "Leibniz series"};
    case SeriesTerms::Custom: break;
  }
  return inconclusive("closed-form", "untagged generator");
}

}  // namespace

Verdict convergence_test(TestKind kind, const SeriesTerms& t,
                         unsigned long window, const TestOptions& opts) {
  switch (kind) {
    case TestKind::Root: {
      check_window_nonneg(t, window, false);
      switch (t.form) {
        case SeriesTerms::Geometric: {
          const Rational& q = t.param;
          if (q < Rational(1))
            return {Verdict::Converges, "root", "limsup a_n^{1/n} = " + q.str()};
          if (q > Rational(1))
            return {Verdict::DivergesPlusInf, "root",
                    "limsup a_n^{1/n} = " + q.str() + " > 1"};
          return inconclusive("root", "limsup = 1");
        }
        case SeriesTerms::FactorialRatio:
          return {Verdict::Converges, "root", "limsup a_n^{1/n} = 0"};
        case SeriesTerms::Zeta:
          return inconclusive("root", "limsup = 1");
        default:
          return inconclusive("root", "no closed form for the limsup");
      }
    }
    case TestKind::Ratio: {
      check_window_nonneg(t, window, true);
      switch (t.form) {
        case SeriesTerms::Geometric: {
          const Rational& q = t.param;
          if (q < Rational(1))
            return {Verdict::Converges, "ratio", "a_{n+1}/a_n = " + q.str()};
          if (q > Rational(1))
            return {Verdict::DivergesPlusInf, "ratio",
                    "a_{n+1}/a_n = " + q.str() + " > 1"};
          return inconclusive("ratio", "ratio = 1");
        }
        case SeriesTerms::FactorialRatio:
          return {Verdict::Converges, "ratio", "a_{n+1}/a_n -> 0"};
        case SeriesTerms::Zeta:
          return inconclusive("ratio", "ratio -> 1");
        default:
          return inconclusive("ratio", "no closed form for the ratio");
      }
    }
    case TestKind::Condensation: {
      if (!t.cert_nonneg_decreasing)
        fail("CertificateViolated",
             "condensation requires the NonnegativeDecreasing certificate");
      check_nonneg_decreasing(t, window);
      switch (t.form) {
        case SeriesTerms::Zeta: {
          // 2^n a_{2^n} = (2^{1-s})^n, an exact geometric ratio
          long s = static_cast<long>(t.param.num().get_si());
          Rational r = Rational(2).pow(1 - s);
          if (r < Rational(1))
            return {Verdict::Converges, "condensation",
                    "transformed ratio 2^{1-s} = " + r.str()};
          return {Verdict::DivergesPlusInf, "condensation",
                  "transformed terms (2^{1-s})^n = " + r.str() +
                      "^n do not vanish"};
        }
        case SeriesTerms::Geometric:
          if (t.param < Rational(1) && t.param.sign() >= 0)
            return {Verdict::Converges, "condensation",
                    "transformed terms 2^n q^{2^n} -> 0 superexponentially"};
          return inconclusive("condensation", "transformed form unknown");
        default:
          return inconclusive("condensation",
                              "no closed form for the transformed series");
      }
    }
    case TestKind::Comparison: {
      if (!opts.majorant)
        fail("CertificateViolated", "comparison requires a majorant series");
      const SeriesTerms& m = *opts.majorant;
      for (unsigned long n = 1; n <= window; ++n) {
        Rational an = t.at(n);
        if (an.sign() < 0)
          fail("CertificateViolated",
               "comparison requires nonnegative terms (index " +
                   std::to_string(n) + ")");
        if (an > m.at(n))
          return inconclusive("comparison",
                              "domination fails at index " + std::to_string(n));
      }
      Verdict mv = classify_closed_form(m);
      if (mv.tag == Verdict::Converges)
        return {Verdict::Converges, "comparison",
                "dominated by a convergent majorant (" + mv.witness + ")"};
      return inconclusive("comparison", "majorant not certified convergent");
    }
    case TestKind::NCC: {
      switch (t.form) {
        case SeriesTerms::Geometric:
          if (t.param >= Rational(1))
            return {Verdict::DivergesPlusInf, "ncc", "terms do not vanish"};
          if (t.param <= Rational(-1))
            return {Verdict::NoSum, "ncc", "terms do not vanish"};
          return inconclusive("ncc", "terms vanish; NCC is only necessary");
        case SeriesTerms::Zeta:
          if (t.param.sign() <= 0)
            return {Verdict::DivergesPlusInf, "ncc", "terms do not vanish"};
          return inconclusive("ncc", "terms vanish; NCC is only necessary");
        default:
          return inconclusive("ncc", "no closed form for the term limit");
      }
    }
  }
  return inconclusive("?", "unknown test kind");
}

Verdict zeta_classify(const Rational& s) {
  if (s <= Rational(1))
    return {Verdict::DivergesPlusInf, "zeta", "s = " + s.str() + " <= 1"};
  return {Verdict::Converges, "zeta", "s = " + s.str() + " > 1"};
}

// ----------------------------------------------------------------- Leibniz

std::pair<Rational, Rational> leibniz_bracket(const SeriesTerms& t,
                                              unsigned long n) {
  if (!t.cert_alternating_leibniz)
    fail("CertificateViolated",
         "leibniz_bracket requires the AlternatingLeibniz certificate");
  Rational prev_mag;
  for (unsigned long k = 1; k <= 2 * n; ++k) {
    Rational a = t.at(k);
    if ((k % 2 == 1 && a.sign() < 0) || (k % 2 == 0 && a.sign() > 0))
      fail("CertificateViolated",
           "AlternatingLeibniz sign pattern fails at index " +
               std::to_string(k));
    Rational mag = a.abs();
    if (k > 1 && mag > prev_mag)
      fail("CertificateViolated",
           "AlternatingLeibniz magnitudes increase at index " +
               std::to_string(k));
    prev_mag = mag;
  }
  std::vector<Rational> s = partial_sums(t, 2 * n);
  return {s[2 * n - 1], s[2 * n - 2]};  // (s_{2n}, s_{2n-1})
}

// ---------------------------------------------------- products and grouping

SeriesTerms cauchy_product(const SeriesTerms& a, const SeriesTerms& b) {
  SeriesTerms c;
  auto fa = a.term, fb = b.term;
  c.term = [fa, fb](unsigned long k) {
    // 0-based c_{k-1} = sum_{j=0}^{k-1} a_j b_{k-1-j}
    Rational s(0);
    for (unsigned long j = 1; j <= k; ++j) s += fa(j) * fb(k + 1 - j);
    return s;
  };
  return c;
}

SeriesTerms group_terms(const SeriesTerms& t, std::vector<unsigned long> sizes) {
  if (sizes.empty() || std::any_of(sizes.begin(), sizes.end(),
                                   [](unsigned long s) { return s == 0; }))
    fail("NonCanonical", "block sizes must be positive");
  SeriesTerms g;
  auto f = t.term;
  g.term = [f, sizes = std::move(sizes)](unsigned long k) {
    unsigned long start = 1;
    unsigned long len = sizes.back();
    for (unsigned long i = 0; i + 1 < k; ++i)
      start += i < sizes.size() ? sizes[i] : sizes.back();
    if (k - 1 < sizes.size()) len = sizes[k - 1];
    Rational s(0);
    for (unsigned long j = 0; j < len; ++j) s += f(start + j);
    return s;
  };
  return g;
}

// ------------------------------------------------------------ rearrangement

namespace {

// advances *cursor to the next index whose term satisfies pred; returns it
template <typename Pred>
unsigned long next_index(const SeriesTerms& t, unsigned long* cursor,
                         Pred pred) {
  while (true) {
    ++*cursor;
    if (pred(t.at(*cursor))) return *cursor;
  }
}

void check_riemannian(const SeriesTerms& t, const Rational& target_abs,
                      std::size_t emit_count) {
  if (!t.cert_riemannian)
    fail("NotRiemannian", "rearrangement requires the Riemannian certificate");
  unsigned long prefix =
      std::max<unsigned long>(4000, 4 * static_cast<unsigned long>(emit_count));
  // divergence capacity of both signed parts, calibrated to the target
  Rational need = Rational(1) + target_abs;
  Rational pos(0), neg(0), max_tail(0);
  for (unsigned long n = 1; n <= prefix; ++n) {
    Rational a = t.at(n);
    if (a.sign() > 0) pos += a;
    if (a.sign() < 0) neg -= a;
    if (n > 3 * prefix / 4) max_tail = std::max(max_tail, a.abs());
  }
  if (pos < need || neg < need)
    fail("NotRiemannian",
         "signed parts do not exceed the divergence threshold on the prefix");
  if (max_tail >= Rational(1, 1000))
    fail("NotRiemannian", "terms do not vanish on the tail of the prefix");
}

}  // namespace

RearrangementPlan rearrange_to_target(const SeriesTerms& t,
                                      const SumTarget& target,
                                      std::size_t emit_count) {
  if (emit_count == 0) fail("NonCanonical", "emit_count must be positive");
  check_riemannian(
      t, target.kind == SumTarget::Finite ? target.value.abs() : Rational(1),
      emit_count);

  RearrangementPlan plan;
  plan.target = target;
  unsigned long pos_cur = 0, neg_cur = 0;
  Rational s(0);
  auto take_pos = [&]() {
    unsigned long i =
        next_index(t, &pos_cur, [](const Rational& a) { return a.sign() >= 0; });
    s += t.at(i);
    plan.emitted.push_back(i);
    plan.sums.push_back(s);
  };
  auto take_neg = [&]() {
    unsigned long i =
        next_index(t, &neg_cur, [](const Rational& a) { return a.sign() < 0; });
    s += t.at(i);
    plan.emitted.push_back(i);
    plan.sums.push_back(s);
  };

  bool positive_phase = true;
  auto switch_phase = [&](bool to_positive) {
    if (positive_phase != to_positive) {
      positive_phase = to_positive;
      if (!plan.emitted.empty())
        plan.phase_switches.push_back(plan.emitted.size());
    }
  };

  switch (target.kind) {
    case SumTarget::Finite: {
      const Rational& A = target.value;
      while (plan.emitted.size() < emit_count) {
        if (s <= A) {
          switch_phase(true);
          take_pos();
        } else {
          switch_phase(false);
          take_neg();
        }
      }
      break;
    }
    case SumTarget::PlusInf:
    case SumTarget::MinusInf: {
      bool up = target.kind == SumTarget::PlusInf;
      Rational milestone = up ? Rational(1) : Rational(-1);
      while (plan.emitted.size() < emit_count) {
        if (up ? s < milestone : s > milestone) {
          switch_phase(up);
          up ? take_pos() : take_neg();
        } else {
          // one opposite-sign term keeps the enumeration fair
          switch_phase(!up);
          up ? take_neg() : take_pos();
          milestone += up ? Rational(1) : Rational(-1);
        }
      }
      break;
    }
    case SumTarget::NoSum: {
      bool rising = true;
      while (plan.emitted.size() < emit_count) {
        if (rising) {
          switch_phase(true);
          take_pos();
          if (s >= Rational(1)) rising = false;
        } else {
          switch_phase(false);
          take_neg();
          if (s <= Rational(-1)) rising = true;
        }
      }
      break;
    }
  }
  return plan;
}

RearrangementPlan rearrange_product_to_target(const SeriesTerms& factors,
                                              const ProductTarget& target,
                                              std::size_t emit_count) {
  if (emit_count == 0) fail("NonCanonical", "emit_count must be positive");
  unsigned long prefix =
      std::max<unsigned long>(4000, 4 * static_cast<unsigned long>(emit_count));
  Rational target_mag =
      target.kind == ProductTarget::Finite ? target.value : Rational(2);
  if (target.kind == ProductTarget::Finite && target.value.sign() <= 0)
    fail("NotRiemannianProduct", "finite product target must be positive");
  Rational up_need = Rational(2) * (Rational(1) + target_mag);
  Rational up(1), down(1), max_tail(0);
  for (unsigned long n = 1; n <= prefix; ++n) {
    Rational f = factors.at(n);
    if (f.is_zero())
      fail("NotRiemannianProduct", "zero factor at index " + std::to_string(n));
    if (f.sign() < 0)
      fail("NotRiemannianProduct",
           "negative factor at index " + std::to_string(n) +
               ": only nonnegative targets are reachable");
    if (f > Rational(1)) up *= f;
    if (f < Rational(1)) down *= f;
    if (n > 3 * prefix / 4) max_tail = std::max(max_tail, (f - Rational(1)).abs());
  }
  if (up < up_need || down > up_need.reciprocal())
    fail("NotRiemannianProduct",
         "factor parts do not exceed the divergence threshold on the prefix");
  if (max_tail >= Rational(1, 1000))
    fail("NotRiemannianProduct", "factors do not tend to 1 on the prefix tail");

  RearrangementPlan plan;
  plan.target.kind = target.kind == ProductTarget::PlusInf ? SumTarget::PlusInf
                     : target.kind == ProductTarget::Zero  ? SumTarget::MinusInf
                                                           : SumTarget::Finite;
  plan.target.value = target.value;
  unsigned long up_cur = 0, down_cur = 0;
  Rational p(1);
  auto take_up = [&]() {
    unsigned long i = next_index(factors, &up_cur, [](const Rational& f) {
      return f >= Rational(1);
    });
    p *= factors.at(i);
    plan.emitted.push_back(i);
    plan.sums.push_back(p);
  };
  auto take_down = [&]() {
    unsigned long i = next_index(factors, &down_cur, [](const Rational& f) {
      return f < Rational(1);
    });
    p *= factors.at(i);
    plan.emitted.push_back(i);
    plan.sums.push_back(p);
  };
  bool up_phase = true;
  auto switch_phase = [&](bool to_up) {
    if (up_phase != to_up) {
      up_phase = to_up;
      if (!plan.emitted.empty())
        plan.phase_switches.push_back(plan.emitted.size());
    }
  };

  switch (target.kind) {
    case ProductTarget::Finite: {
      const Rational& A = target.value;
      while (plan.emitted.size() < emit_count) {
        if (p <= A) {
          switch_phase(true);
          take_up();
        } else {
          switch_phase(false);
          take_down();
        }
      }
      break;
    }
    case ProductTarget::PlusInf:
    case ProductTarget::Zero: {
      bool upward = target.kind == ProductTarget::PlusInf;
      Rational milestone = upward ? Rational(2) : Rational(1, 2);
      while (plan.emitted.size() < emit_count) {
        if (upward ? p < milestone : p > milestone) {
          switch_phase(upward);
          upward ? take_up() : take_down();
        } else {
          switch_phase(!upward);
          upward ? take_down() : take_up();
          milestone = upward ? milestone * Rational(2) : milestone / Rational(2);
        }
      }
      break;
    }
  }
  return plan;
}

// ------------------------------------------------------------------- gamma

IntervalValue euler_gamma_30() {
  // Euler-Mascheroni constant, first 30 decimal digits (OEIS A001620):
  // 0.577215664901532860606512090082(40...); truncation gives a lower
  // bound, adding one ulp of the last digit an upper bound.
  static const Integer digits("577215664901532860606512090082");
  Integer scale = Integer(10);
  mpz_pow_ui(scale.get_mpz_t(), scale.get_mpz_t(), 30);
  Rational lo(digits, scale);
  Rational hi(digits + 1, scale);
  return IntervalValue::hull(lo, hi, 128);
}

std::pair<Rational, IntervalValue> harmonic_gamma_check(unsigned long n) {
  if (n < 1) fail("NonCanonical", "n must be >= 1");
  Rational h(0);
  for (unsigned long k = 1; k <= n; ++k) h += Rational(1, Integer(k));
  mpfr_prec_t prec = 192;
  IntervalValue residual = IntervalValue::exact(h, prec) -
                           IntervalValue::log_of(Rational(Integer(n)), prec) -
                           euler_gamma_30();
  return {h, residual};
}

// ---------------------------------------------------------- binomial domain

std::string BinomialDomain::str() const {
  if (whole_line) return "R";
  return std::string(lo_open ? "(" : "[") + "-1, 1" + (hi_open ? ")" : "]");
}

BinomialDomain binomial_series_domain(const Rational& a) {
  BinomialDomain d;
  if (a.is_integer() && a.sign() >= 0) {
    d.whole_line = true;
    return d;
  }
  if (a.sign() > 0) return d;                      // [-1, 1]
  if (a > Rational(-1)) return {false, true, false};  // (-1, 1]
  return {false, true, true};                      // (-1, 1)
}

}  // namespace ank
