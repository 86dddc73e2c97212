#include "ank/expr.hpp"

#include <cctype>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <utility>

namespace ank {

// ---------------------------------------------------------------- factories

Expr make_expr(Expr::Node n) {
  return Expr(std::make_shared<const Expr::Node>(std::move(n)));
}

Expr ex_const(const Rational& c) {
  Expr::Node n;
  n.kind = ExprKind::Const;
  n.value = c;
  return make_expr(std::move(n));
}

Expr ex_pi() {
  Expr::Node n;
  n.kind = ExprKind::Pi;
  return make_expr(std::move(n));
}

Expr ex_var() {
  Expr::Node n;
  n.kind = ExprKind::Var;
  return make_expr(std::move(n));
}

namespace {

Expr binary(ExprKind k, const Expr& l, const Expr& r) {
  Expr::Node n;
  n.kind = k;
  n.a = l;
  n.b = r;
  return make_expr(std::move(n));
}

bool is_const(const Expr& e) { return e.kind() == ExprKind::Const; }

}  // namespace

Expr ex_add(const Expr& l, const Expr& r) {
  if (is_const(l) && is_const(r)) return ex_const(l.value() + r.value());
  return binary(ExprKind::Add, l, r);
}

Expr ex_neg(const Expr& e) {
  if (is_const(e)) return ex_const(-e.value());
  if (e.kind() == ExprKind::Mul && is_const(e.left())) {
    Rational c = -e.left().value();
    if (c == Rational(1)) return e.right();
    return binary(ExprKind::Mul, ex_const(c), e.right());
  }
  return binary(ExprKind::Mul, ex_const(Rational(-1)), e);
}

Expr ex_sub(const Expr& l, const Expr& r) { return ex_add(l, ex_neg(r)); }

Expr ex_mul(const Expr& l, const Expr& r) {
  if (is_const(l) && is_const(r)) return ex_const(l.value() * r.value());
  return binary(ExprKind::Mul, l, r);
}

Expr ex_div(const Expr& l, const Expr& r) {
  if (is_const(l) && is_const(r) && !r.value().is_zero())
    return ex_const(l.value() / r.value());
  return binary(ExprKind::Div, l, r);
}

Expr ex_powint(const Expr& base, long m) {
  Expr::Node n;
  n.kind = ExprKind::PowInt;
  n.a = base;
  n.ipow = m;
  return make_expr(std::move(n));
}

Expr ex_powrat(const Expr& base, const Rational& a) {
  if (a.is_integer())
    fail("NonCanonical", "PowRat exponent must be a non-integer rational");
  Expr::Node n;
  n.kind = ExprKind::PowRat;
  n.a = base;
  n.value = a;
  return make_expr(std::move(n));
}

Expr ex_apply(ExprFn fn, const Expr& arg) {
  Expr::Node n;
  n.kind = ExprKind::Apply;
  n.fn = fn;
  n.a = arg;
  return make_expr(std::move(n));
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.p_ == b.p_) return true;
  if (!a.p_ || !b.p_) return false;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ExprKind::Const: return a.value() == b.value();
    case ExprKind::Pi:
    case ExprKind::Var: return true;
    case ExprKind::Add:
    case ExprKind::Mul:
    case ExprKind::Div:
      return a.left() == b.left() && a.right() == b.right();
    case ExprKind::PowInt:
      return a.int_exponent() == b.int_exponent() && a.left() == b.left();
    case ExprKind::PowRat:
      return a.rat_exponent() == b.rat_exponent() && a.left() == b.left();
    case ExprKind::Apply: return a.fn() == b.fn() && a.left() == b.left();
  }
  return false;
}

// ------------------------------------------------------------------- parser

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  [[noreturn]] void err(const std::string& what) const {
    fail("SyntaxError", what + " at byte " + std::to_string(pos));
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  Integer integer() {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == digits) err("expected an integer");
    return Integer(s.substr(start, pos - start));
  }

  // int ('/' posint)?  -- used only in exponent position. The '/' binds to
  // the exponent only when the literal p/q is a non-integer already in
  // lowest terms; otherwise it stays ordinary division. So "x^1/2" means
  // x^(1/2) while "x^3/3" and "x^3/6" divide a cube by a constant.
  Rational int_or_rat() {
    Integer n = integer();
    if (pos + 1 < s.size() && s[pos] == '/' &&
        std::isdigit(static_cast<unsigned char>(s[pos + 1]))) {
      std::size_t slash = pos;
      ++pos;
      Integer d = integer();
      Rational q(n, d);
      if (d > 1 && q.den() == d) return q;
      pos = slash;
    }
    return Rational(n);
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos])))
      ++pos;
    return s.substr(start, pos - start);
  }

  Expr atom() {
    skip_ws();
    if (pos >= s.size()) err("unexpected end of input");
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return ex_const(Rational(integer()));
    }
    if (c == '(') {
      ++pos;
      Expr e = expr();
      if (!eat(')')) err("expected ')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t at = pos;
      std::string name = ident();
      if (name == "x") return ex_var();
      if (name == "pi") return ex_pi();
      static const std::pair<const char*, ExprFn> fns[] = {
          {"exp", ExprFn::Exp},       {"log", ExprFn::Log},
          {"sin", ExprFn::Sin},       {"cos", ExprFn::Cos},
          {"tan", ExprFn::Tan},       {"cot", ExprFn::Cot},
          {"arcsin", ExprFn::Arcsin}, {"arccos", ExprFn::Arccos},
          {"arctan", ExprFn::Arctan}, {"arccot", ExprFn::Arccot}};
      std::optional<ExprFn> fn;
      bool sqrt = name == "sqrt";
      for (const auto& [fname, f] : fns)
        if (name == fname) fn = f;
      if (!fn && !sqrt) {
        pos = at;
        fail("UnknownIdentifier",
             "unknown identifier '" + name + "' at byte " + std::to_string(at));
      }
      if (!eat('(')) err("expected '(' after function name");
      Expr arg = expr();
      if (!eat(')')) err("expected ')'");
      if (sqrt) return ex_powrat(arg, Rational(1, 2));
      return ex_apply(*fn, arg);
    }
    err("expected an atom");
  }

  Expr factor() {
    if (eat('-')) return ex_neg(factor());
    Expr base = atom();
    if (eat('^')) {
      skip_ws();
      if (pos < s.size() && !std::isdigit(static_cast<unsigned char>(s[pos])) &&
          s[pos] != '-' && s[pos] != '+')
        err("exponent must be an integer or rational literal");
      Rational a = int_or_rat();
      if (a.is_integer()) {
        if (!a.num().fits_slong_p()) err("integer exponent out of range");
        return ex_powint(base, a.num().get_si());
      }
      return ex_powrat(base, a);
    }
    return base;
  }

  Expr term() {
    Expr e = factor();
    while (true) {
      if (eat('*'))
        e = ex_mul(e, factor());
      else if (eat('/'))
        e = ex_div(e, factor());
      else
        return e;
    }
  }

  Expr expr() {
    Expr e = term();
    while (true) {
      if (eat('+'))
        e = ex_add(e, term());
      else if (eat('-'))
        e = ex_sub(e, term());
      else
        return e;
    }
  }
};

}  // namespace

Expr parse_expr(const std::string& text) {
  Parser p(text);
  Expr e = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.err("unexpected trailing input");
  return e;
}

// ----------------------------------------------------------------- renderer

namespace {

// precedence: Add 1, Mul/Div 2, unary minus 3, Pow 4, atom 5
int prec_of(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Add: return 1;
    case ExprKind::Mul:
      return is_const(e.left()) && e.left().value().sign() < 0 ? 3 : 2;
    case ExprKind::Div: return 2;
    case ExprKind::PowInt:
    case ExprKind::PowRat: return 4;
    case ExprKind::Const: return e.value().sign() < 0 ? 3 : 5;
    default: return 5;
  }
}

const char* fn_name(ExprFn f) {
  switch (f) {
    case ExprFn::Exp: return "exp";
    case ExprFn::Log: return "log";
    case ExprFn::Sin: return "sin";
    case ExprFn::Cos: return "cos";
    case ExprFn::Tan: return "tan";
    case ExprFn::Cot: return "cot";
    case ExprFn::Arcsin: return "arcsin";
    case ExprFn::Arccos: return "arccos";
    case ExprFn::Arctan: return "arctan";
    case ExprFn::Arccot: return "arccot";
  }
  return "?";
}

void render(const Expr& e, std::ostream& os, int min_prec);

void render_child(const Expr& e, std::ostream& os, int min_prec) {
  if (prec_of(e) < min_prec) {
    os << '(';
    render(e, os, 0);
    os << ')';
  } else {
    render(e, os, 0);
  }
}

// true when e renders with a leading '-' that can fold into a binary minus
bool negative_headed(const Expr& e) {
  if (is_const(e)) return e.value().sign() < 0;
  return e.kind() == ExprKind::Mul && is_const(e.left()) &&
         e.left().value().sign() < 0;
}

void render(const Expr& e, std::ostream& os, int min_prec) {
  switch (e.kind()) {
    case ExprKind::Const: {
      const Rational& c = e.value();
      os << c.str();
      break;
    }
    case ExprKind::Pi: os << "pi"; break;
    case ExprKind::Var: os << 'x'; break;
    case ExprKind::Add:
      render_child(e.left(), os, 1);
      if (negative_headed(e.right())) {
        os << " - ";
        render_child(ex_neg(e.right()), os, 2);
      } else {
        os << " + ";
        render_child(e.right(), os, 2);
      }
      break;
    case ExprKind::Mul:
      if (is_const(e.left()) && e.left().value() == Rational(-1)) {
        os << '-';
        render_child(e.right(), os, 3);
        break;
      }
      render_child(e.left(), os, 2);
      os << '*';
      render_child(e.right(), os, 3);
      break;
    case ExprKind::Div: {
      // "b^m/c" reparses as b^(m/c) when m/c is a non-integer rational;
      // parenthesize the power in that case
      bool ambiguous = false;
      if (e.left().kind() == ExprKind::PowInt && is_const(e.right()) &&
          e.right().value().is_integer() && e.right().value() > Rational(1)) {
        Integer m = abs(Integer(e.left().int_exponent()));
        ambiguous = gcd(m, e.right().value().num()) == 1;
      }
      render_child(e.left(), os, ambiguous ? 6 : 2);
      os << '/';
      render_child(e.right(), os, 3);
      break;
    }
    case ExprKind::PowInt:
      render_child(e.left(), os, 5);
      os << '^' << e.int_exponent();
      break;
    case ExprKind::PowRat:
      if (e.rat_exponent() == Rational(1, 2)) {
        os << "sqrt(";
        render(e.left(), os, 0);
        os << ')';
      } else {
        render_child(e.left(), os, 5);
        os << '^' << e.rat_exponent().str();
      }
      break;
    case ExprKind::Apply:
      os << fn_name(e.fn()) << '(';
      render(e.left(), os, 0);
      os << ')';
      break;
  }
  (void)min_prec;
}

}  // namespace

std::string render_expr(const Expr& e) {
  std::ostringstream os;
  render(e, os, 0);
  return os.str();
}

// ------------------------------------------------------------ classification

namespace {

// Conservative range bound: value with a finite/infinite flag and openness.
struct Bnd {
  bool finite = false;
  Rational v;
  bool strict = false;  // endpoint not attained
};

struct Rng {
  Bnd lo, hi;  // infinite lo means -inf, infinite hi means +inf
};

Rng full_line() { return {}; }

Rng point_range(const Rational& c) { return {{true, c, false}, {true, c, false}}; }

Rng closed(const Rational& a, const Rational& b) {
  return {{true, a, false}, {true, b, false}};
}

Rng range_of(const Expr& e);

Rng range_add(const Rng& x, const Rng& y) {
  Rng r;
  if (x.lo.finite && y.lo.finite)
    r.lo = {true, x.lo.v + y.lo.v, x.lo.strict || y.lo.strict};
  if (x.hi.finite && y.hi.finite)
    r.hi = {true, x.hi.v + y.hi.v, x.hi.strict || y.hi.strict};
  return r;
}

Rng range_mul(const Rng& x, const Rng& y) {
  if (!x.lo.finite || !x.hi.finite || !y.lo.finite || !y.hi.finite)
    return full_line();
  Rational cands[4] = {x.lo.v * y.lo.v, x.lo.v * y.hi.v, x.hi.v * y.lo.v,
                       x.hi.v * y.hi.v};
  Rational mn = cands[0], mx = cands[0];
  for (const Rational& c : cands) {
    if (c < mn) mn = c;
    if (c > mx) mx = c;
  }
  return closed(mn, mx);  // closed bounds: conservative superset
}

// range of u^2 when both factors are the same subtree
Rng range_square(const Rng& u) {
  Rng r;
  r.lo = {true, Rational(0), false};
  if (u.lo.finite && u.lo.v > 0) r.lo = {true, u.lo.v * u.lo.v, u.lo.strict};
  if (u.hi.finite && u.hi.v < 0) r.lo = {true, u.hi.v * u.hi.v, u.hi.strict};
  if (u.lo.finite && u.hi.finite) {
    Rational m = std::max(u.lo.v.abs(), u.hi.v.abs());
    r.hi = {true, m * m, false};
  }
  return r;
}

Rng range_of(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Const: return point_range(e.value());
    case ExprKind::Pi: return closed(Rational(31415, 10000), Rational(31416, 10000));
    case ExprKind::Var: return full_line();
    case ExprKind::Add: return range_add(range_of(e.left()), range_of(e.right()));
    case ExprKind::Mul:
      if (e.left() == e.right()) return range_square(range_of(e.left()));
      return range_mul(range_of(e.left()), range_of(e.right()));
    case ExprKind::Div: return full_line();
    case ExprKind::PowInt: {
      long m = e.int_exponent();
      Rng b = range_of(e.left());
      if (m == 0) return point_range(Rational(1));
      if (m < 0) {
        // reciprocal powers: positive when the base is strictly positive
        if (b.lo.finite && (b.lo.v > 0 || (b.lo.v == Rational(0) && b.lo.strict)))
          return {{true, Rational(0), true}, {}};
        return full_line();
      }
      if (m % 2 == 0) {
        Rng sq = range_square(b);
        Rng r;
        r.lo = {true, sq.lo.v.pow(m / 2), sq.lo.strict};
        if (sq.hi.finite) r.hi = {true, sq.hi.v.pow(m / 2), sq.hi.strict};
        return r;
      }
      Rng r;
      if (b.lo.finite) r.lo = {true, b.lo.v.pow(m), b.lo.strict};
      if (b.hi.finite) r.hi = {true, b.hi.v.pow(m), b.hi.strict};
      return r;
    }
    case ExprKind::PowRat: {
      Rng b = range_of(e.left());
      bool bpos = b.lo.finite &&
                  (b.lo.v > 0 || (b.lo.v == Rational(0) && b.lo.strict));
      return {{true, Rational(0), bpos}, {}};
    }
    case ExprKind::Apply:
      switch (e.fn()) {
        case ExprFn::Sin:
        case ExprFn::Cos: return closed(Rational(-1), Rational(1));
        case ExprFn::Exp: return {{true, Rational(0), true}, {}};
        case ExprFn::Arcsin:
        case ExprFn::Arctan:
          return closed(Rational(-15708, 10000), Rational(15708, 10000));
        case ExprFn::Arccos:
        case ExprFn::Arccot:
          return closed(Rational(0), Rational(31416, 10000));
        default: return full_line();
      }
  }
  return full_line();
}

bool strictly_positive(const Expr& e) {
  Rng r = range_of(e);
  return r.lo.finite && (r.lo.v > 0 || (r.lo.v == Rational(0) && r.lo.strict));
}

// |u| certified strictly below 1 over the whole line (open-interval arcsin)
bool strictly_inside_unit(const Expr& u) {
  if (u.kind() == ExprKind::Var) return true;  // generator, open restriction
  Rng r = range_of(u);
  bool lo_ok = r.lo.finite &&
               (r.lo.v > Rational(-1) || (r.lo.v == Rational(-1) && r.lo.strict));
  bool hi_ok = r.hi.finite &&
               (r.hi.v < Rational(1) || (r.hi.v == Rational(1) && r.hi.strict));
  return lo_ok && hi_ok;
}

// denom_ctx: the subtree sits (multiplicatively) in a denominator, so the
// surrounding domain already excludes its zero set.
bool sef_ok(const Expr& e, bool denom_ctx) {
  switch (e.kind()) {
    case ExprKind::Const:
    case ExprKind::Pi:
    case ExprKind::Var: return true;
    case ExprKind::Add:
      return sef_ok(e.left(), false) && sef_ok(e.right(), false);
    case ExprKind::Mul:
      return sef_ok(e.left(), denom_ctx) && sef_ok(e.right(), denom_ctx);
    case ExprKind::Div:
      return sef_ok(e.left(), denom_ctx) && sef_ok(e.right(), true);
    case ExprKind::PowInt:
      return sef_ok(e.left(), denom_ctx || e.int_exponent() < 0);
    case ExprKind::PowRat: {
      bool base_ok = denom_ctx || e.rat_exponent().sign() < 0 ||
                     strictly_positive(e.left());
      return base_ok && sef_ok(e.left(), false);
    }
    case ExprKind::Apply: {
      if (!sef_ok(e.left(), false)) return false;
      if (e.fn() == ExprFn::Arcsin || e.fn() == ExprFn::Arccos)
        return strictly_inside_unit(e.left());
      return true;
    }
  }
  return false;
}

}  // namespace

FnClass classify(const Expr& e) {
  return sef_ok(e, false) ? FnClass::SEF : FnClass::EF;
}

// ----------------------------------------------------------- differentiation

namespace {

bool is_const_val(const Expr& e, long v) {
  return is_const(e) && e.value() == Rational(v);
}

Expr f_add(const Expr& l, const Expr& r) {
  if (is_const_val(l, 0)) return r;
  if (is_const_val(r, 0)) return l;
  return ex_add(l, r);
}

Expr f_mul(const Expr& l, const Expr& r) {
  if (is_const_val(l, 0) || is_const_val(r, 0)) return ex_const(Rational(0));
  if (is_const_val(l, 1)) return r;
  if (is_const_val(r, 1)) return l;
  return ex_mul(l, r);
}

Expr f_div(const Expr& l, const Expr& r) {
  if (is_const_val(l, 0)) return ex_const(Rational(0));
  if (is_const_val(r, 1)) return l;
  return ex_div(l, r);
}

Expr f_sub(const Expr& l, const Expr& r) {
  if (is_const_val(r, 0)) return l;
  return ex_sub(l, r);
}

Expr f_powint(const Expr& b, long m) {
  if (m == 1) return b;
  if (m == 0) return ex_const(Rational(1));
  return ex_powint(b, m);
}

Expr one_minus_square(const Expr& u) {
  return f_sub(ex_const(Rational(1)), f_mul(u, u));
}

Expr one_plus_square(const Expr& u) {
  return f_add(ex_const(Rational(1)), f_mul(u, u));
}

}  // namespace

Expr differentiate(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Const:
    case ExprKind::Pi: return ex_const(Rational(0));
    case ExprKind::Var: return ex_const(Rational(1));
    case ExprKind::Add:
      return f_add(differentiate(e.left()), differentiate(e.right()));
    case ExprKind::Mul:
      return f_add(f_mul(differentiate(e.left()), e.right()),
                   f_mul(e.left(), differentiate(e.right())));
    case ExprKind::Div:
      return f_div(f_sub(f_mul(differentiate(e.left()), e.right()),
                         f_mul(e.left(), differentiate(e.right()))),
                   f_powint(e.right(), 2));
    case ExprKind::PowInt: {
      long m = e.int_exponent();
      if (m == 0) return ex_const(Rational(0));
      return f_mul(f_mul(ex_const(Rational(m)), f_powint(e.left(), m - 1)),
                   differentiate(e.left()));
    }
    case ExprKind::PowRat: {
      const Rational& a = e.rat_exponent();
      return f_mul(
          f_mul(ex_const(a), ex_powrat(e.left(), a - Rational(1))),
          differentiate(e.left()));
    }
    case ExprKind::Apply: {
      const Expr& u = e.left();
      Expr du = differentiate(u);
      switch (e.fn()) {
        case ExprFn::Exp: return f_mul(e, du);
        case ExprFn::Log: return f_div(du, u);
        case ExprFn::Sin: return f_mul(ex_apply(ExprFn::Cos, u), du);
        case ExprFn::Cos:
          return ex_neg(f_mul(ex_apply(ExprFn::Sin, u), du));
        case ExprFn::Tan:
          return f_div(du, ex_powint(ex_apply(ExprFn::Cos, u), 2));
        case ExprFn::Cot:
          return ex_neg(f_div(du, ex_powint(ex_apply(ExprFn::Sin, u), 2)));
        case ExprFn::Arcsin:
          return f_div(du, ex_powrat(one_minus_square(u), Rational(1, 2)));
        case ExprFn::Arccos:
          return ex_neg(
              f_div(du, ex_powrat(one_minus_square(u), Rational(1, 2))));
        case ExprFn::Arctan: return f_div(du, one_plus_square(u));
        case ExprFn::Arccot: return ex_neg(f_div(du, one_plus_square(u)));
      }
      break;
    }
  }
  fail("SyntaxError", "malformed expression tree");
}

// --------------------------------------------------------- guarded evaluation

namespace {

// Exact value a + b*pi with rational a, b; pi irrational makes zero tests
// and many guard decisions exact.
struct QPi {
  Rational a, b;
  bool rational() const { return b.is_zero(); }
  bool zero() const { return a.is_zero() && b.is_zero(); }
};

std::optional<QPi> qpi_mul(const QPi& x, const QPi& y) {
  if (x.rational()) return QPi{x.a * y.a, x.a * y.b};
  if (y.rational()) return QPi{y.a * x.a, y.a * x.b};
  return std::nullopt;  // a pi^2 term would leave the representation
}

std::optional<Rational> exact_rat_pow(const Rational& base, const Rational& e) {
  // base^{p/q} when the result is rational (perfect q-th powers)
  if (base.sign() < 0) return std::nullopt;
  Integer p = e.num(), q = e.den();
  if (base.is_zero()) {
    if (p > 0) return Rational(0);
    return std::nullopt;
  }
  Rational v = p < 0 ? base.reciprocal() : base;
  Integer pa = abs(p);
  if (!pa.fits_ulong_p() || !q.fits_ulong_p()) return std::nullopt;
  Rational w = v.pow(static_cast<long>(pa.get_ui()));
  Integer rn, rd;
  unsigned long qq = q.get_ui();
  int exact_n = mpz_root(rn.get_mpz_t(), w.num().get_mpz_t(), qq);
  int exact_d = mpz_root(rd.get_mpz_t(), w.den().get_mpz_t(), qq);
  if (!exact_n || !exact_d) return std::nullopt;
  return Rational(rn, rd);
}

std::optional<QPi> exact_of(const Expr& e, const Rational& point) {
  switch (e.kind()) {
    case ExprKind::Const: return QPi{e.value(), Rational(0)};
    case ExprKind::Pi: return QPi{Rational(0), Rational(1)};
    case ExprKind::Var: return QPi{point, Rational(0)};
    case ExprKind::Add: {
      auto l = exact_of(e.left(), point), r = exact_of(e.right(), point);
      if (!l || !r) return std::nullopt;
      return QPi{l->a + r->a, l->b + r->b};
    }
    case ExprKind::Mul: {
      auto l = exact_of(e.left(), point), r = exact_of(e.right(), point);
      if (!l || !r) return std::nullopt;
      return qpi_mul(*l, *r);
    }
    case ExprKind::Div: {
      auto l = exact_of(e.left(), point), r = exact_of(e.right(), point);
      if (!l || !r || r->zero()) return std::nullopt;
      if (r->rational()) return QPi{l->a / r->a, l->b / r->a};
      if (l->a.is_zero() && r->a.is_zero())
        return QPi{l->b / r->b, Rational(0)};
      if (l->zero()) return QPi{Rational(0), Rational(0)};
      return std::nullopt;
    }
    case ExprKind::PowInt: {
      auto b = exact_of(e.left(), point);
      if (!b) return std::nullopt;
      long m = e.int_exponent();
      if (m == 0) return QPi{Rational(1), Rational(0)};
      if (b->rational()) {
        if (b->a.is_zero() && m < 0) return std::nullopt;
        return QPi{b->a.pow(m), Rational(0)};
      }
      if (m < 0) return std::nullopt;
      QPi acc{Rational(1), Rational(0)};
      for (long i = 0; i < m; ++i) {
        auto nxt = qpi_mul(acc, *b);
        if (!nxt) return std::nullopt;
        acc = *nxt;
      }
      return acc;
    }
    case ExprKind::PowRat: {
      auto b = exact_of(e.left(), point);
      if (!b || !b->rational()) return std::nullopt;
      auto v = exact_rat_pow(b->a, e.rat_exponent());
      if (!v) return std::nullopt;
      return QPi{*v, Rational(0)};
    }
    case ExprKind::Apply: {
      auto u = exact_of(e.left(), point);
      if (!u) return std::nullopt;
      auto half_turns = [&]() -> std::optional<long> {
        // arg = k*pi/2 exactly?  returns k
        if (!u->a.is_zero()) return std::nullopt;
        Rational t = u->b * Rational(2);
        if (!t.is_integer() || !t.num().fits_slong_p()) return std::nullopt;
        return t.num().get_si();
      };
      switch (e.fn()) {
        case ExprFn::Exp:
          if (u->zero()) return QPi{Rational(1), Rational(0)};
          return std::nullopt;
        case ExprFn::Log:
          if (u->rational() && u->a == Rational(1))
            return QPi{Rational(0), Rational(0)};
          return std::nullopt;
        case ExprFn::Sin: {
          auto k = half_turns();
          if (!k) return std::nullopt;
          static const long tab[4] = {0, 1, 0, -1};
          return QPi{Rational(tab[((*k % 4) + 4) % 4]), Rational(0)};
        }
        case ExprFn::Cos: {
          auto k = half_turns();
          if (!k) return std::nullopt;
          static const long tab[4] = {1, 0, -1, 0};
          return QPi{Rational(tab[((*k % 4) + 4) % 4]), Rational(0)};
        }
        case ExprFn::Tan: {
          auto k = half_turns();
          if (k && *k % 2 == 0) return QPi{Rational(0), Rational(0)};
          return std::nullopt;
        }
        case ExprFn::Cot: return std::nullopt;
        case ExprFn::Arcsin: {
          if (!u->rational()) return std::nullopt;
          const Rational& v = u->a;
          if (v.is_zero()) return QPi{Rational(0), Rational(0)};
          if (v == Rational(1)) return QPi{Rational(0), Rational(1, 2)};
          if (v == Rational(-1)) return QPi{Rational(0), Rational(-1, 2)};
          if (v == Rational(1, 2)) return QPi{Rational(0), Rational(1, 6)};
          if (v == Rational(-1, 2)) return QPi{Rational(0), Rational(-1, 6)};
          return std::nullopt;
        }
        case ExprFn::Arccos: {
          if (!u->rational()) return std::nullopt;
          const Rational& v = u->a;
          if (v == Rational(1)) return QPi{Rational(0), Rational(0)};
          if (v.is_zero()) return QPi{Rational(0), Rational(1, 2)};
          if (v == Rational(-1)) return QPi{Rational(0), Rational(1)};
          if (v == Rational(1, 2)) return QPi{Rational(0), Rational(1, 3)};
          if (v == Rational(-1, 2)) return QPi{Rational(0), Rational(2, 3)};
          return std::nullopt;
        }
        case ExprFn::Arctan: {
          if (!u->rational()) return std::nullopt;
          const Rational& v = u->a;
          if (v.is_zero()) return QPi{Rational(0), Rational(0)};
          if (v == Rational(1)) return QPi{Rational(0), Rational(1, 4)};
          if (v == Rational(-1)) return QPi{Rational(0), Rational(-1, 4)};
          return std::nullopt;
        }
        case ExprFn::Arccot: {
          if (!u->rational()) return std::nullopt;
          const Rational& v = u->a;
          if (v.is_zero()) return QPi{Rational(0), Rational(1, 2)};
          if (v == Rational(1)) return QPi{Rational(0), Rational(1, 4)};
          if (v == Rational(-1)) return QPi{Rational(0), Rational(3, 4)};
          return std::nullopt;
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

struct RefineNeeded {};

struct Evaluator {
  Rational point;
  mpfr_prec_t prec;

  // sign of a subexpression value: definite +1/-1/0, or RefineNeeded.
  // exact zero is decidable because a + b*pi = 0 iff a = b = 0.
  int value_sign(const Expr& e, const IntervalValue& iv) const {
    auto ev = exact_of(e, point);
    if (ev) {
      if (ev->zero()) return 0;
      if (ev->rational()) return ev->a.sign();
    }
    int s = iv.sign();
    if (s != 0) return s;
    throw RefineNeeded{};
  }

  IntervalValue eval(const Expr& e) const {
    switch (e.kind()) {
      case ExprKind::Const: return IntervalValue::exact(e.value(), prec);
      case ExprKind::Pi: return IntervalValue::pi(prec);
      case ExprKind::Var: return IntervalValue::exact(point, prec);
      case ExprKind::Add: return eval(e.left()) + eval(e.right());
      case ExprKind::Mul: return eval(e.left()) * eval(e.right());
      case ExprKind::Div: {
        IntervalValue den = eval(e.right());
        if (value_sign(e.right(), den) == 0)
          fail("DomainError", "division by zero");
        if (den.contains_zero()) throw RefineNeeded{};
        return eval(e.left()) / den;
      }
      case ExprKind::PowInt: {
        IntervalValue b = eval(e.left());
        long m = e.int_exponent();
        if (m < 0) {
          if (value_sign(e.left(), b) == 0)
            fail("DomainError", "division by zero");
          if (b.contains_zero()) throw RefineNeeded{};
        }
        return b.pow_int(m);
      }
      case ExprKind::PowRat: {
        IntervalValue b = eval(e.left());
        auto eb = exact_of(e.left(), point);
        if (eb && eb->rational()) {
          if (eb->a.sign() < 0)
            fail("DomainError", "fractional power of a negative base");
          if (eb->a.is_zero()) {
            if (e.rat_exponent().sign() < 0)
              fail("DomainError",
                   "fractional power of zero with a negative exponent");
            return IntervalValue::exact(Rational(0), prec);
          }
          b = IntervalValue::exact(eb->a, prec);  // tight, certainly positive
        } else {
          int s = value_sign(e.left(), b);
          if (s < 0) fail("DomainError", "fractional power of a negative base");
          if (s == 0)
            fail("DomainError", "fractional power of zero");
          if (b.lo().sign() <= 0) throw RefineNeeded{};
        }
        const Rational& a = e.rat_exponent();
        return (b.log() * IntervalValue::exact(a, prec)).exp();
      }
      case ExprKind::Apply: {
        const Expr& arg = e.left();
        switch (e.fn()) {
          case ExprFn::Exp: return eval(arg).exp();
          case ExprFn::Log: {
            IntervalValue u = eval(arg);
            int s = value_sign(arg, u);
            if (s <= 0) fail("DomainError", "log nonpositive");
            if (u.lo().sign() <= 0) throw RefineNeeded{};
            return u.log();
          }
          case ExprFn::Sin: return eval(arg).sin();
          case ExprFn::Cos: return eval(arg).cos();
          case ExprFn::Tan: {
            auto eu = exact_of(arg, point);
            if (eu && eu->a.is_zero()) {
              Rational t = eu->b - Rational(1, 2);
              if (t.is_integer()) fail("DomainError", "cos zero");
            }
            IntervalValue u = eval(arg);
            IntervalValue c = u.cos();
            if (c.contains_zero()) throw RefineNeeded{};
            return u.sin() / c;
          }
          case ExprFn::Cot: {
            auto eu = exact_of(arg, point);
            if (eu && eu->a.is_zero() && eu->b.is_integer())
              fail("DomainError", "sin zero");
            IntervalValue u = eval(arg);
            IntervalValue s = u.sin();
            if (s.contains_zero()) throw RefineNeeded{};
            return u.cos() / s;
          }
          case ExprFn::Arcsin:
          case ExprFn::Arccos: {
            IntervalValue u = eval(arg);
            auto eu = exact_of(arg, point);
            if (eu && eu->rational()) {
              if (eu->a.abs() > Rational(1))
                fail("DomainError", "arcsin argument outside [-1, 1]");
              u = IntervalValue::exact(eu->a, prec);
            } else {
              if (u.lo() > Rational(1) || u.hi() < Rational(-1))
                fail("DomainError", "arcsin argument outside [-1, 1]");
              if (u.hi() > Rational(1) || u.lo() < Rational(-1))
                throw RefineNeeded{};
            }
            IntervalValue as = u.asin();
            if (e.fn() == ExprFn::Arcsin) return as;
            IntervalValue half_pi =
                IntervalValue::pi(prec) * IntervalValue::exact(Rational(1, 2), prec);
            return half_pi - as;
          }
          case ExprFn::Arctan: return eval(arg).atan();
          case ExprFn::Arccot: {
            IntervalValue half_pi =
                IntervalValue::pi(prec) * IntervalValue::exact(Rational(1, 2), prec);
            return half_pi - eval(arg).atan();
          }
        }
        break;
      }
    }
    fail("SyntaxError", "malformed expression tree");
  }
};

mpfr_prec_t max_precision() {
  const char* env = std::getenv("ANALYSIS_KERNEL_MAX_PRECISION");
  if (env) {
    long v = std::atol(env);
    if (v >= 64) return static_cast<mpfr_prec_t>(v);
  }
  return 4096;
}

}  // namespace

IntervalValue eval_guarded(const Expr& e, const Rational& point,
                           long precision_bits) {
  if (precision_bits < 8) fail("NonCanonical", "precisionBits must be >= 8");
  Rational target =
      Rational(1, Integer(1) << static_cast<unsigned long>(precision_bits - 2));
  mpfr_prec_t limit = max_precision();
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(precision_bits + 32);
  if (prec < 64) prec = 64;
  while (true) {
    try {
      Evaluator ev{point, prec};
      IntervalValue v = ev.eval(e);
      if (v.width() <= target) return v;
    } catch (const RefineNeeded&) {
    }
    if (prec >= limit)
      fail("Uncertain",
           "guard or width target undecided at maximum precision " +
               std::to_string(static_cast<long>(limit)));
    prec = std::min<mpfr_prec_t>(prec * 2, limit);
  }
}

// ------------------------------------------------------------ Taylor pipeline

namespace {

[[noreturn]] void unsupported(const Expr& e) {
  fail("UnsupportedExpansionPoint",
       "cannot expand at 0: " + render_expr(e));
}

TaylorPoly tp_power(const TaylorPoly& p, unsigned long m, std::size_t n) {
  TaylorPoly acc = TaylorPoly::constant(Rational(1), n);
  for (unsigned long i = 0; i < m; ++i) acc = tp_mul(acc, p);
  return acc;
}

}  // namespace

TaylorPoly expand_taylor(const Expr& e, std::size_t order) {
  switch (e.kind()) {
    case ExprKind::Const: return TaylorPoly::constant(e.value(), order);
    case ExprKind::Pi: unsupported(e);
    case ExprKind::Var: return TaylorPoly::identity(order);
    case ExprKind::Add:
      return tp_add(expand_taylor(e.left(), order),
                    expand_taylor(e.right(), order));
    case ExprKind::Mul:
      return tp_mul(expand_taylor(e.left(), order),
                    expand_taylor(e.right(), order));
    case ExprKind::Div: {
      TaylorPoly q = expand_taylor(e.right(), order);
      if (q.coeff(0).is_zero())
        fail("PoleAtZero", "denominator vanishes at 0: " + render_expr(e.right()));
      return tp_mul(expand_taylor(e.left(), order), tp_reciprocal(q));
    }
    case ExprKind::PowInt: {
      long m = e.int_exponent();
      TaylorPoly p = expand_taylor(e.left(), order);
      if (m >= 0) return tp_power(p, static_cast<unsigned long>(m), order);
      if (p.coeff(0).is_zero())
        fail("PoleAtZero", "base vanishes at 0: " + render_expr(e.left()));
      return tp_power(tp_reciprocal(p), static_cast<unsigned long>(-m), order);
    }
    case ExprKind::PowRat: {
      TaylorPoly p = expand_taylor(e.left(), order);
      if (p.coeff(0) != Rational(1)) unsupported(e);
      p.coeffs[0] = Rational(0);
      return tp_compose(maclaurin(BaseFn::pow(e.rat_exponent()), order), p);
    }
    case ExprKind::Apply: {
      TaylorPoly p = expand_taylor(e.left(), order);
      const Rational& c0 = p.coeff(0);
      switch (e.fn()) {
        case ExprFn::Exp:
          if (!c0.is_zero()) unsupported(e);
          return tp_compose(maclaurin(BaseFn::Exp, order), p);
        case ExprFn::Sin:
          if (!c0.is_zero()) unsupported(e);
          return tp_compose(maclaurin(BaseFn::Sin, order), p);
        case ExprFn::Cos:
          if (!c0.is_zero()) unsupported(e);
          return tp_compose(maclaurin(BaseFn::Cos, order), p);
        case ExprFn::Arctan:
          if (!c0.is_zero()) unsupported(e);
          return tp_compose(maclaurin(BaseFn::Arctan, order), p);
        case ExprFn::Arcsin:
          if (!c0.is_zero()) unsupported(e);
          return tp_compose(maclaurin(BaseFn::Arcsin, order), p);
        case ExprFn::Tan: {
          if (!c0.is_zero()) unsupported(e);
          TaylorPoly s = tp_compose(maclaurin(BaseFn::Sin, order), p);
          TaylorPoly c = tp_compose(maclaurin(BaseFn::Cos, order), p);
          return tp_mul(s, tp_reciprocal(c));
        }
        case ExprFn::Cot:
          if (c0.is_zero())
            fail("PoleAtZero", "cot has a pole where sin vanishes: " +
                                   render_expr(e));
          unsupported(e);
        case ExprFn::Log: {
          if (c0 != Rational(1)) unsupported(e);
          TaylorPoly q = p;
          q.coeffs[0] = Rational(0);
          return tp_compose(maclaurin(BaseFn::Log1p, order), q);
        }
        case ExprFn::Arccos:
        case ExprFn::Arccot:
          unsupported(e);  // the pi/2 offset is not a rational coefficient
      }
      break;
    }
  }
  fail("SyntaxError", "malformed expression tree");
}

}  // namespace ank
