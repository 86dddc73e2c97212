#pragma once

#include <memory>
#include <string>

#include "ank/interval.hpp"
#include "ank/rational.hpp"
#include "ank/taylor.hpp"

namespace ank {

enum class ExprKind { Const, Pi, Var, Add, Mul, Div, PowInt, PowRat, Apply };

enum class ExprFn {
  Exp, Log, Sin, Cos, Tan, Cot, Arcsin, Arccos, Arctan, Arccot
};

/// Immutable expression tree over simple elementary functions in one
/// variable x. Structural equality is decidable (operator==).
class Expr {
public:
  Expr() = default;  // empty handle; using it is a programming error

  ExprKind kind() const;
  /// Const value, or the PowRat exponent.
  const Rational& value() const;
  long int_exponent() const;
  const Rational& rat_exponent() const;
  ExprFn fn() const;
  /// Left operand / power base / Apply argument.
  const Expr& left() const;
  const Expr& right() const;

  bool empty() const { return !p_; }

  friend bool operator==(const Expr& a, const Expr& b);

  struct Node;

private:
  explicit Expr(std::shared_ptr<const Node> p) : p_(std::move(p)) {}
  const Node& node() const { return *p_; }
  std::shared_ptr<const Node> p_;

  friend Expr make_expr(Node n);
};

struct Expr::Node {
  ExprKind kind = ExprKind::Const;
  Rational value;             // Const value or PowRat exponent
  long ipow = 0;              // PowInt exponent
  ExprFn fn = ExprFn::Exp;    // Apply only
  Expr a, b;
};

inline ExprKind Expr::kind() const { return node().kind; }
inline const Rational& Expr::value() const { return node().value; }
inline long Expr::int_exponent() const { return node().ipow; }
inline const Rational& Expr::rat_exponent() const { return node().value; }
inline ExprFn Expr::fn() const { return node().fn; }
inline const Expr& Expr::left() const { return node().a; }
inline const Expr& Expr::right() const { return node().b; }

Expr ex_const(const Rational& c);
Expr ex_pi();
Expr ex_var();
Expr ex_add(const Expr& l, const Expr& r);
/// l - r, folded into Add with a negated leading constant on r.
Expr ex_sub(const Expr& l, const Expr& r);
Expr ex_neg(const Expr& e);
Expr ex_mul(const Expr& l, const Expr& r);
Expr ex_div(const Expr& l, const Expr& r);
Expr ex_powint(const Expr& base, long m);
/// Exponent must be a non-integer rational.
Expr ex_powrat(const Expr& base, const Rational& a);
Expr ex_apply(ExprFn fn, const Expr& arg);

enum class FnClass { SEF, EF, NotEF };

/// Parses the expression grammar (precedence ^ > unary - > * / > + -).
/// sqrt(u) becomes PowRat(u, 1/2). Errors: SyntaxError (with byte
/// offset), UnknownIdentifier.
Expr parse_expr(const std::string& text);

/// Parseable rendering; render(parse(t)) == t on canonically spaced input.
std::string render_expr(const Expr& e);

/// SEF when the tree rewrites into the generator set {constants, exp,
/// log, sin, arcsin on an open interval}; EF when it needs a fractional
/// power of a possibly-nonpositive base or arcsin/arccos reaching the
/// closed endpoints +-1. Conservative: EF is returned when SEF cannot
/// be certified structurally.
FnClass classify(const Expr& e);

Expr differentiate(const Expr& e);

/// Certified enclosure of e(point) with width <= 2^{-precision_bits+2}.
/// Guards (division by zero, log <= 0, |arcsin arg| > 1, fractional power
/// of a negative base, tan/cot poles) are decided exactly via a rational/
/// pi-linear pre-pass when possible, otherwise by interval refinement up
/// to ANALYSIS_KERNEL_MAX_PRECISION bits (default 4096). Throws Error
/// kind DomainError on a definite violation, Uncertain when a guard
/// boundary cannot be decided.
IntervalValue eval_guarded(const Expr& e, const Rational& point,
                           long precision_bits);

/// Exact Taylor polynomial of e at center 0, order n. Throws Error kind
/// UnsupportedExpansionPoint when an inner constant term does not match
/// the required expansion point, PoleAtZero when a denominator vanishes
/// at 0 (use the Laurent path instead).
TaylorPoly expand_taylor(const Expr& e, std::size_t order);

}  // namespace ank
