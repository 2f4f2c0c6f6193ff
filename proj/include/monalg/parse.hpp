#ifndef MONALG_PARSE_HPP
#define MONALG_PARSE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "monalg/dyadic.hpp"
#include "monalg/malg.hpp"
#include "monalg/numeric.hpp"
#include "monalg/qpoly.hpp"
#include "monalg/zpoly.hpp"

namespace monalg {

// Raised when expression text (or a term list) cannot be converted into the
// requested type. position() locates the problem: a byte offset into the
// source text for the text front ends, or the index of the offending term
// for the list builders.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// One syntactic term coeff * x^exponent. position records where the term
// began (byte offset in text, list index when built from a term list).
struct ParsedTerm {
  Rat coeff;
  Rat exponent;
  std::size_t position = 0;
};

// Splits expression text such as "2*x^(3/2) - x + 5/2" into signed terms.
// Grammar: terms are <coeff>, <coeff>*x^<exp>, x^<exp>, or x, joined by
// '+' / '-' with an optional leading sign; <coeff> and <exp> are integers
// or a/b rationals, and exponents may be parenthesized. Whitespace between
// tokens is ignored. Throws ParseError with the byte offset of the first
// character that does not fit.
std::vector<ParsedTerm> parse_terms(const std::string& text);

// Builders from term lists. Terms with equal exponents are summed and zero
// coefficients dropped. Each throws ParseError carrying the position field
// of the offending term:
//   zpoly_from_terms   - exponents must be nonnegative integers and the
//                        coefficients integers;
//   qpoly_from_terms   - exponents must be nonnegative integers;
//   dyadic_from_terms  - exponents must be nonnegative with power-of-two
//                        denominator ("exponent not dyadic" otherwise);
//   mexpr_from_terms   - exponents must be certified members of the given
//                        monoid (a Refuted or Unknown membership oracle
//                        answer is reported, never guessed around).
ZPoly zpoly_from_terms(const std::vector<ParsedTerm>& terms);
QPoly qpoly_from_terms(const std::vector<ParsedTerm>& terms);
DyadicPoly dyadic_from_terms(const std::vector<ParsedTerm>& terms);
MExpr mexpr_from_terms(const std::vector<ParsedTerm>& terms,
                       const MonoidHandle& monoid);

// Text front ends: parse_terms followed by the matching builder. Round
// trips parse(to_string(f)) == f hold for every value, including zero.
ZPoly parse_zpoly(const std::string& text);
QPoly parse_qpoly(const std::string& text);
DyadicPoly parse_dyadic(const std::string& text);
MExpr parse_mexpr(const std::string& text, const MonoidHandle& monoid);

}  // namespace monalg

#endif  // MONALG_PARSE_HPP
