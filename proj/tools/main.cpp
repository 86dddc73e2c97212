// Command-line front-end for the analysis kernel. Output is line-oriented
// "key: value" text; --format tsv switches series/fekete tables to
// tab-separated rows. Exit codes: 0 success, 1 domain/math error, 2 usage.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ank/codecs.hpp"
#include "ank/error.hpp"
#include "ank/expr.hpp"
#include "ank/fekete.hpp"
#include "ank/limits.hpp"
#include "ank/series.hpp"
#include "ank/taylor.hpp"
#include "ank/transcendental.hpp"

using namespace ank;

namespace {

std::string class_name(FnClass c) {
  switch (c) {
    case FnClass::SEF: return "SEF";
    case FnClass::EF: return "EF";
    case FnClass::NotEF: return "not-EF";
  }
  return "?";
}

PeriodicDecimal parse_periodic_decimal(const std::string& text) {
  PeriodicDecimal pd;
  std::size_t i = 0;
  auto bad = [&] [[noreturn]] () {
    fail("SyntaxError", "bad periodic decimal: " + text);
  };
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    pd.sign = text[i] == '-' ? -1 : +1;
    ++i;
  }
  std::size_t start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
    ++i;
  if (i == start) bad();
  pd.integer_part = Integer(text.substr(start, i - start));
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      pd.preperiod.push_back(text[i++] - '0');
  }
  if (i < text.size() && text[i] == '(') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      pd.period.push_back(text[i++] - '0');
    if (i >= text.size() || text[i] != ')' || pd.period.empty()) bad();
    ++i;
  }
  if (i != text.size()) bad();
  return pd;
}

IntPoly parse_poly(const std::string& text) {
  IntPoly p;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) p.emplace_back(tok);
  if (p.empty()) fail("SyntaxError", "empty polynomial");
  return p;
}

SeriesTerms make_series(const std::string& kind, const std::string& param) {
  auto need = [&] {
    if (param.empty()) fail("SyntaxError", kind + " needs --param");
    return Rational::parse(param);
  };
  if (kind == "geometric") return SeriesTerms::geometric(need());
  if (kind == "zeta") return SeriesTerms::zeta(need());
  if (kind == "harmonic") return SeriesTerms::harmonic();
  if (kind == "altharmonic") return SeriesTerms::alternating_harmonic();
  if (kind == "factorial") return SeriesTerms::factorial_ratio(need());
  fail("SyntaxError", "unknown series kind: " + kind);
}

std::string verdict_str(const Verdict& v) {
  std::string tag;
  switch (v.tag) {
    case Verdict::Converges: tag = "converges"; break;
    case Verdict::DivergesPlusInf: tag = "diverges-to-+inf"; break;
    case Verdict::DivergesMinusInf: tag = "diverges-to--inf"; break;
    case Verdict::NoSum: tag = "no-sum"; break;
    case Verdict::Inconclusive: tag = "inconclusive"; break;
  }
  if (!v.test.empty()) tag += " (" + v.test + ": " + v.witness + ")";
  return tag;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic real-analysis kernel"};
  app.require_subcommand(1);
  std::string format = "text";

  // diff
  auto* diff = app.add_subcommand("diff", "differentiate an expression");
  std::string diff_expr;
  diff->add_option("expr", diff_expr, "expression")->required();
  diff->callback([&] {
    Expr e = parse_expr(diff_expr);
    std::cout << "class: " << class_name(classify(e)) << "\n";
    std::cout << "derivative: " << render_expr(differentiate(e)) << "\n";
  });

  // taylor
  auto* taylor = app.add_subcommand("taylor", "Taylor expansion at 0");
  std::string ty_expr, ty_eval;
  long ty_order = 6;
  unsigned long ty_bits = 64;
  std::string ty_center;
  bool ty_laurent = false;
  taylor->add_option("expr", ty_expr, "expression")->required();
  taylor->add_option("--order", ty_order, "truncation order");
  taylor->add_option("--center", ty_center, "re-expand in powers of (x - b)");
  taylor->add_flag("--laurent", ty_laurent, "Laurent expansion (poles allowed)");
  taylor->add_option("--eval", ty_eval, "certified enclosure at a point");
  taylor->add_option("--bits", ty_bits, "enclosure precision bits");
  taylor->callback([&] {
    Expr e = parse_expr(ty_expr);
    if (!ty_eval.empty()) {
      IntervalValue v = eval_guarded(e, Rational::parse(ty_eval),
                                     static_cast<long>(ty_bits));
      std::cout << "value: " << v.str() << "\n";
      return;
    }
    if (ty_laurent) {
      LaurentPoly p = expand_laurent(e, ty_order);
      std::cout << "laurent: " << p.str() << "\n";
      for (long j = p.mlow; j <= p.mhigh(); ++j)
        std::cout << "a" << j << ": " << p.coeff(j).str() << "\n";
      return;
    }
    TaylorPoly p = expand_taylor(e, static_cast<std::size_t>(ty_order));
    if (!ty_center.empty()) p = tp_shift_center(p, Rational::parse(ty_center));
    std::cout << "polynomial: " << p.str() << "\n";
    for (std::size_t j = 0; j <= p.order(); ++j)
      std::cout << "a" << j << ": " << p.coeff(j).str() << "\n";
  });

  // limit
  auto* limit = app.add_subcommand("limit", "limit of f/g at 0");
  std::string li_f, li_g;
  unsigned long li_order = 8;
  limit->add_option("f", li_f, "numerator expression")->required();
  limit->add_option("g", li_g, "denominator expression")->required();
  limit->add_option("--order", li_order, "initial expansion order");
  limit->callback([&] {
    LimitResult r = ratio_limit(parse_expr(li_f), parse_expr(li_g), li_order);
    std::cout << "verdict: " << r.str() << "\n";
  });

  // cfrac
  auto* cfrac = app.add_subcommand("cfrac", "continued fraction of a rational");
  std::string cf_value;
  unsigned long cf_conv = 0;
  cfrac->add_option("value", cf_value, "rational p/q")->required();
  cfrac->add_option("--convergents", cf_conv, "print the first k convergents");
  cfrac->callback([&] {
    ContinuedFraction cf = cfrac_encode(Rational::parse(cf_value));
    std::cout << "cfrac: " << cf.str() << "\n";
    if (cf_conv > 0) {
      std::size_t k = cf_conv;
      if (!cf.periodic) k = std::min(k, cf.partials.size());
      for (const Rational& d : cfrac_convergents(cf, k))
        std::cout << "convergent: " << d.str() << "\n";
    }
  });

  // decimal
  auto* decimal = app.add_subcommand("decimal", "periodic decimal codec");
  std::string de_value;
  bool de_decode = false, de_near = false;
  decimal->add_option("value", de_value, "rational, or decimal with --decode")
      ->required();
  decimal->add_flag("--decode", de_decode, "value is a periodic decimal");
  decimal->add_flag("--near", de_near, "print the all-9 near-decimal partner");
  decimal->callback([&] {
    if (de_decode) {
      PeriodicDecimal pd = parse_periodic_decimal(de_value);
      std::cout << "rational: " << from_periodic_decimal(pd).str() << "\n";
      return;
    }
    PeriodicDecimal pd = to_periodic_decimal(Rational::parse(de_value));
    std::cout << "decimal: " << pd.str() << "\n";
    if (de_near)
      std::cout << "near: " << near_decimal_partner(pd).str() << "\n";
  });

  // baseq
  auto* baseq = app.add_subcommand("baseq", "base-q integer codec");
  std::string bq_value;
  long bq_base = 10;
  bool bq_decode = false;
  baseq->add_option("value", bq_value, "integer, or digit word with --decode")
      ->required();
  baseq->add_option("--base", bq_base, "base q >= 2");
  baseq->add_flag("--decode", bq_decode, "value is a digit word");
  baseq->callback([&] {
    if (bq_decode) {
      BaseQWord w;
      w.base = bq_base;
      for (char c : bq_value) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
          fail("InvalidDigit", "bad digit in word: " + bq_value);
        w.digits.push_back(c - '0');
      }
      std::cout << "integer: " << base_q_decode(w).get_str() << "\n";
      return;
    }
    std::cout << "word: " << base_q_encode(Integer(bq_value), bq_base).str()
              << "\n";
  });

  // series
  auto* series = app.add_subcommand("series", "series procedures");
  std::string se_kind = "harmonic", se_param, se_test, se_target, se_zeta,
              se_rearr_kind = "sum";
  unsigned long se_window = 50, se_partial = 0, se_leibniz = 0, se_emit = 200,
                se_group = 0, se_gamma = 0;
  bool se_cauchy = false;
  series->add_option("--kind", se_kind,
                     "geometric|zeta|harmonic|altharmonic|factorial");
  series->add_option("--param", se_param, "series parameter (rational)");
  series->add_option("--test", se_test, "root|ratio|condensation|ncc");
  series->add_option("--window", se_window, "inspected prefix length");
  series->add_option("--partial", se_partial, "print the first n partial sums");
  series->add_option("--leibniz", se_leibniz, "bracket (s_2n, s_2n-1)");
  series->add_option("--group", se_group, "group into fixed-size blocks");
  series->add_flag("--cauchy", se_cauchy, "Cauchy-square the series");
  series->add_option("--rearrange", se_target,
                     "greedy rearrangement target: rational, +inf, -inf, none");
  series->add_option("--rearrange-kind", se_rearr_kind, "sum|product");
  series->add_option("--emit", se_emit, "rearrangement emission count");
  series->add_option("--gamma-check", se_gamma,
                     "harmonic number vs log + gamma at n");
  series->add_option("--zeta-classify", se_zeta, "classify zeta(s)");
  series->callback([&] {
    const char* sep = format == "tsv" ? "\t" : ": ";
    if (!se_zeta.empty()) {
      std::cout << "verdict: "
                << verdict_str(zeta_classify(Rational::parse(se_zeta))) << "\n";
      return;
    }
    if (se_gamma > 0) {
      auto [h, resid] = harmonic_gamma_check(se_gamma);
      std::cout << "h_n: " << h.str() << "\n";
      std::cout << "residual: " << resid.str() << "\n";
      return;
    }
    SeriesTerms t = make_series(se_kind, se_param);
    if (!se_test.empty()) {
      TestKind k;
      if (se_test == "root") k = TestKind::Root;
      else if (se_test == "ratio") k = TestKind::Ratio;
      else if (se_test == "condensation") k = TestKind::Condensation;
      else if (se_test == "ncc") k = TestKind::NCC;
      else fail("SyntaxError", "unknown test: " + se_test);
      std::cout << "verdict: " << verdict_str(convergence_test(k, t, se_window))
                << "\n";
      return;
    }
    if (se_leibniz > 0) {
      auto [lo, hi] = leibniz_bracket(t, se_leibniz);
      std::cout << "bracket: [" << lo.str() << ", " << hi.str() << "]\n";
      return;
    }
    if (!se_target.empty()) {
      RearrangementPlan plan;
      if (se_rearr_kind == "product") {
        ProductTarget pt = se_target == "+inf" ? ProductTarget::plus_inf()
                           : se_target == "0"
                               ? ProductTarget::zero()
                               : ProductTarget::finite(Rational::parse(se_target));
        plan = rearrange_product_to_target(t, pt, se_emit);
      } else {
        SumTarget st = se_target == "+inf"   ? SumTarget::plus_inf()
                       : se_target == "-inf" ? SumTarget::minus_inf()
                       : se_target == "none"
                           ? SumTarget::no_sum()
                           : SumTarget::finite(Rational::parse(se_target));
        plan = rearrange_to_target(t, st, se_emit);
      }
      for (std::size_t i = 0; i < plan.emitted.size(); ++i)
        std::cout << plan.emitted[i] << sep << plan.sums[i].str() << "\n";
      std::cout << "phase-switches: " << plan.phase_switches.size() << "\n";
      return;
    }
    if (se_group > 0) t = group_terms(t, {se_group});
    if (se_cauchy) t = cauchy_product(t, t);
    unsigned long n = se_partial > 0 ? se_partial : 10;
    std::vector<Rational> sums = partial_sums(t, n);
    for (unsigned long i = 1; i <= n; ++i)
      std::cout << (format == "tsv"
                        ? std::to_string(i) + "\t" + t.at(i).str() + "\t" +
                              sums[i - 1].str()
                        : "s" + std::to_string(i) + ": " + sums[i - 1].str())
                << "\n";
  });

  // fekete
  auto* fekete = app.add_subcommand("fekete", "Fekete limit bounds");
  std::string fk_subject = "saw";
  unsigned long fk_max = 12;
  fekete->add_option("subject", fk_subject, "saw")->check(CLI::IsMember({"saw"}));
  fekete->add_option("--max-n", fk_max, "largest walk length");
  fekete->callback([&] {
    std::vector<Integer> saw(fk_max + 1);
    for (unsigned long n = 0; n <= fk_max; ++n) saw[n] = saw_count(n);
    FeketeReport r = fekete_estimate(
        [&](unsigned long n) { return Rational(saw[n]); },
        FeketeMode::Submultiplicative, fk_max);
    const char* sep = format == "tsv" ? "\t" : "  ";
    std::cout << "n" << sep << "saw" << sep << "root-enclosure" << sep
              << "kappa-bound\n";
    for (unsigned long n = 1; n <= fk_max; ++n)
      std::cout << n << sep << saw[n].get_str() << sep
                << r.normalized[n - 1].str() << sep << r.bound[n - 1].str()
                << "\n";
  });

  // trans
  auto* trans = app.add_subcommand("trans", "constructive transcendentals");
  std::string tr_subject, tr_poly, tr_x, tr_alpha;
  unsigned long tr_digits = 30, tr_polys = 10, tr_m = 3;
  bool tr_trace = false;
  trans->add_option("subject", tr_subject, "lambda|cantor|cert|bound|radius")
      ->required()
      ->check(CLI::IsMember({"lambda", "cantor", "cert", "bound", "radius"}));
  trans->add_option("--digits", tr_digits, "digit count");
  trans->add_option("--polys", tr_polys, "polynomials to process");
  trans->add_flag("--trace", tr_trace, "print per-polynomial trace");
  trans->add_option("--m", tr_m, "certificate index");
  trans->add_option("--poly", tr_poly, "coefficients a0,a1,...,an");
  trans->add_option("--x", tr_x, "rational evaluation point");
  trans->add_option("--alpha", tr_alpha, "decimal fraction");
  trans->callback([&] {
    if (tr_subject == "lambda") {
      std::string d;
      for (unsigned long n = 1; n <= tr_digits; ++n)
        d += static_cast<char>('0' + liouville_digit(n));
      std::cout << "digits: 0." << d << "\n";
      return;
    }
    if (tr_subject == "cert") {
      LiouvilleCertificate c = liouville_certificate(tr_m);
      std::cout << "z: " << c.z.get_str() << "\n";
      std::cout << "q: " << c.q.get_str() << "\n";
      std::cout << "gap-bound: " << c.gap_bound.str() << "\n";
      return;
    }
    if (tr_subject == "bound") {
      Rational v = poly_rational_lower_bound(parse_poly(tr_poly),
                                             Rational::parse(tr_x));
      std::cout << "abs-value: " << v.str() << "\n";
      return;
    }
    if (tr_subject == "radius") {
      unsigned long l =
          nonvanishing_radius(parse_poly(tr_poly), Rational::parse(tr_alpha));
      std::cout << "l: " << l << "\n";
      return;
    }
    CantorResult r = cantor_stream(tr_polys, tr_digits);
    if (tr_trace)
      for (const CantorStep& s : r.state.trace)
        std::cout << "step: p = " << poly_str(s.poly) << ", j = " << s.j
                  << ", l = " << s.l << ", k = " << s.k_next
                  << ", alpha = " << s.alpha.str() << "\n";
    std::string d;
    for (int digit : r.digits) d += static_cast<char>('0' + digit);
    std::cout << "digits: 0." << d << "\n";
    std::cout << "alpha: " << r.state.alpha.str() << "\n";
    std::cout << "k: " << r.state.k << "\n";
  });

  // sqrt2
  auto* sqrt2 = app.add_subcommand("sqrt2", "Babylonian approximations");
  unsigned long sq_iters = 6;
  sqrt2->add_option("--iters", sq_iters, "iteration count");
  sqrt2->callback([&] {
    for (unsigned long n = 1; n <= sq_iters; ++n) {
      Rational a = babylonian_sqrt2(n);
      Rational err = (a * a - Rational(2)).abs();
      std::cout << "a" << n << ": " << a.str() << " (|a^2-2| = " << err.str()
                << ")\n";
    }
    QuadraticSurd s{Integer(0), Integer(1), Integer(1), Integer(2)};
    std::cout << "cfrac: " << cfrac_encode(s, 8).str() << "\n";
  });

  for (CLI::App* sub : {taylor, limit, series, fekete, trans, cfrac, decimal,
                        baseq, diff, sqrt2})
    sub->add_option("--format", format, "text|tsv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
