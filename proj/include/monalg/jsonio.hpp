#ifndef MONALG_JSONIO_HPP
#define MONALG_JSONIO_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "monalg/betam.hpp"
#include "monalg/dyadic.hpp"
#include "monalg/malg.hpp"
#include "monalg/parse.hpp"
#include "monalg/qpoly.hpp"
#include "monalg/suites.hpp"
#include "monalg/verdict.hpp"
#include "monalg/zpoly.hpp"

namespace monalg {

// Order-preserving JSON type: objects serialize their keys in insertion
// order, so equal inputs always produce byte-identical dumps.
using Json = nlohmann::ordered_json;

// Exact decimal/rational text for a rational value ("3", "-7/2").
std::string rat_to_string(const Rat& q);
// Inverse of rat_to_string; throws std::invalid_argument on malformed text
// or a zero denominator.
Rat rat_from_string(const std::string& text);

const char* outcome_name(Outcome o);            // proved / refuted / unknown
const char* check_status_name(CheckStatus s);   // pass / fail / skip

// Expressions serialize as {"terms": [{"e": "<exponent>", "c": "<coeff>"}]}
// with exact rational strings, terms listed by strictly decreasing
// exponent, and no zero coefficients; the zero expression is the empty
// list. Readers also accept integer JSON numbers for either field.
Json zpoly_to_json(const ZPoly& f);
Json qpoly_to_json(const QPoly& f);
Json dyadic_to_json(const DyadicPoly& f);
Json mexpr_to_json(const MExpr& f);

// Term lists from the wire format above; the reported error position is the
// term's index in the array. The typed readers funnel through the same
// validating builders as the text parser.
std::vector<ParsedTerm> terms_from_json(const Json& j);
ZPoly zpoly_from_json(const Json& j);
QPoly qpoly_from_json(const Json& j);
DyadicPoly dyadic_from_json(const Json& j);
MExpr mexpr_from_json(const Json& j, const MonoidHandle& monoid);

// {"pairs": [["q1", "p1"], ...]} with exact integer strings. Loading
// re-validates every ladder invariant and throws on violations.
Json schedule_to_json(const PrimeSchedule& sched);
PrimeSchedule schedule_from_json(const Json& j);

// Versioned report envelope. Runtimes are deliberately omitted so that
// identical (seed, schedule, samples) runs serialize byte-identically.
Json suite_report_to_json(const SuiteReport& rep);

}  // namespace monalg

#endif  // MONALG_JSONIO_HPP
