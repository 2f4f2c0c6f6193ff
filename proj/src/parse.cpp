#include "monalg/parse.hpp"

#include <cctype>
#include <utility>

namespace monalg {

namespace {

// Exponents of the dense polynomial types are capped so a typo cannot
// request a gigantic coefficient vector.
constexpr unsigned long kMaxDenseExponent = 1ul << 16;
// Dyadic exponents are sparse, but downstream algorithms lift f(x^{2^N});
// keep N small enough that such lifts stay representable.
constexpr unsigned long kMaxDyadicLevel = 32;

struct Cursor {
  const std::string& text;
  std::size_t i = 0;

  bool done() const { return i >= text.size(); }
  char peek() const { return text[i]; }
  void skip_ws() {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  }
};

[[noreturn]] void fail(const std::string& message, std::size_t position) {
  throw ParseError(message, position);
}

Int parse_digits(Cursor& c, const char* what) {
  c.skip_ws();
  const std::size_t start = c.i;
  while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek())))
    ++c.i;
  if (c.i == start) fail(std::string("expected ") + what, start);
  return Int(c.text.substr(start, c.i - start));
}

// number := ['+'|'-'] digits ['/' digits]; the sign is only accepted where
// the grammar allows it (inside exponents).
Rat parse_number(Cursor& c, bool allow_sign, const char* what) {
  c.skip_ws();
  int sign = 1;
  if (allow_sign && !c.done() && (c.peek() == '+' || c.peek() == '-')) {
    if (c.peek() == '-') sign = -1;
    ++c.i;
  }
  Int n = parse_digits(c, what);
  c.skip_ws();
  if (!c.done() && c.peek() == '/') {
    ++c.i;
    const std::size_t den_pos = c.i;
    Int d = parse_digits(c, "a denominator");
    if (d == 0) fail("zero denominator", den_pos);
    return make_rat(sign < 0 ? Int(-n) : n, d);
  }
  return Rat(sign < 0 ? Int(-n) : n);
}

// term := <coeff> | <coeff> '*' xpart | xpart, where
// xpart := 'x' ['^' exp] and exp := number | '(' number ')'.
ParsedTerm parse_term(Cursor& c) {
  c.skip_ws();
  const std::size_t pos = c.i;
  ParsedTerm term;
  term.coeff = 1;
  term.exponent = 0;
  term.position = pos;

  bool have_coeff = false;
  if (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
    term.coeff = parse_number(c, false, "a coefficient");
    have_coeff = true;
    c.skip_ws();
  }

  bool want_x = !have_coeff;
  if (have_coeff && !c.done() && c.peek() == '*') {
    ++c.i;
    c.skip_ws();
    want_x = true;
  }
  if (!want_x) return term;  // plain constant

  if (c.done() || c.peek() != 'x')
    fail(have_coeff ? "expected 'x' after '*'" : "expected a term", c.i);
  ++c.i;
  term.exponent = 1;

  c.skip_ws();
  if (!c.done() && c.peek() == '^') {
    ++c.i;
    c.skip_ws();
    if (!c.done() && c.peek() == '(') {
      ++c.i;
      term.exponent = parse_number(c, true, "an exponent");
      c.skip_ws();
      if (c.done() || c.peek() != ')')
        fail("expected ')' closing the exponent", c.i);
      ++c.i;
    } else {
      term.exponent = parse_number(c, true, "an exponent");
    }
  }
  return term;
}

void require_nonnegative(const ParsedTerm& t) {
  if (t.exponent < 0) fail("negative exponent", t.position);
}

unsigned long dense_exponent(const ParsedTerm& t) {
  require_nonnegative(t);
  if (!is_integer(t.exponent)) fail("exponent not an integer", t.position);
  const Int e = num(t.exponent);
  if (e > Int(kMaxDenseExponent)) fail("exponent too large", t.position);
  return e.get_ui();
}

}  // namespace

std::vector<ParsedTerm> parse_terms(const std::string& text) {
  Cursor c{text};
  c.skip_ws();
  if (c.done()) fail("empty expression", 0);

  std::vector<ParsedTerm> out;
  int sign = 1;
  if (c.peek() == '+' || c.peek() == '-') {
    if (c.peek() == '-') sign = -1;
    ++c.i;
  }
  for (;;) {
    ParsedTerm t = parse_term(c);
    if (sign < 0) t.coeff = -t.coeff;
    out.push_back(std::move(t));
    c.skip_ws();
    if (c.done()) break;
    const char op = c.peek();
    if (op != '+' && op != '-')
      fail("expected '+' or '-' between terms", c.i);
    sign = op == '-' ? -1 : 1;
    ++c.i;
  }
  return out;
}

ZPoly zpoly_from_terms(const std::vector<ParsedTerm>& terms) {
  std::vector<Int> cs;
  for (const ParsedTerm& t : terms) {
    const unsigned long e = dense_exponent(t);
    if (!is_integer(t.coeff))
      fail("coefficient not an integer", t.position);
    if (cs.size() <= e) cs.resize(e + 1);
    cs[e] += num(t.coeff);
  }
  return ZPoly(std::move(cs));
}

QPoly qpoly_from_terms(const std::vector<ParsedTerm>& terms) {
  std::vector<Rat> cs;
  for (const ParsedTerm& t : terms) {
    const unsigned long e = dense_exponent(t);
    if (cs.size() <= e) cs.resize(e + 1);
    cs[e] += t.coeff;
  }
  return QPoly(std::move(cs));
}

DyadicPoly dyadic_from_terms(const std::vector<ParsedTerm>& terms) {
  DyadicPoly acc;
  for (const ParsedTerm& t : terms) {
    require_nonnegative(t);
    Int d = den(t.exponent);
    unsigned long log_den = 0;
    while (mpz_even_p(d.get_mpz_t())) {
      d /= 2;
      ++log_den;
    }
    if (d != 1) fail("exponent not dyadic", t.position);
    if (log_den > kMaxDyadicLevel)
      fail("exponent denominator too large", t.position);
    if (t.coeff == 0) continue;
    acc = acc + DyadicPoly::monomial(
                    t.coeff, make_dyadic_exp(num(t.exponent), log_den));
  }
  return acc;
}

MExpr mexpr_from_terms(const std::vector<ParsedTerm>& terms,
                       const MonoidHandle& monoid) {
  std::vector<MExpr::Term> ts;
  ts.reserve(terms.size());
  for (const ParsedTerm& t : terms) {
    if (t.coeff == 0) continue;
    switch (monoid.membership(t.exponent)) {
      case Outcome::Proved:
        break;
      case Outcome::Refuted:
        fail("exponent " + t.exponent.get_str() + " not in " + monoid.name(),
             t.position);
      case Outcome::Unknown:
        fail("exponent " + t.exponent.get_str() +
                 " membership undecided in " + monoid.name(),
             t.position);
    }
    ts.push_back(MExpr::Term{t.exponent, t.coeff});
  }
  return make_expr(monoid, std::move(ts));
}

ZPoly parse_zpoly(const std::string& text) {
  return zpoly_from_terms(parse_terms(text));
}

QPoly parse_qpoly(const std::string& text) {
  return qpoly_from_terms(parse_terms(text));
}

DyadicPoly parse_dyadic(const std::string& text) {
  return dyadic_from_terms(parse_terms(text));
}

MExpr parse_mexpr(const std::string& text, const MonoidHandle& monoid) {
  return mexpr_from_terms(parse_terms(text), monoid);
}

}  // namespace monalg
