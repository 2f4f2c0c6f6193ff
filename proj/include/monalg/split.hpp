#ifndef MONALG_SPLIT_HPP
#define MONALG_SPLIT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "monalg/zpoly.hpp"

namespace monalg {

// Square-Lemma data for an irreducible R with R(x^2) reducible:
// a*b = R(x^2), R associate to p^2 - x*q^2, a = +-(p(x^2) + x*q(x^2)),
// b = +-(p(x^2) - x*q(x^2)); a, b, q stored with positive leading
// coefficient.
struct SquareSplit {
  ZPoly a, b, p, q;
};
std::optional<SquareSplit> square_split(const ZPoly& r);

// P is n-good when P(x^{2^m}) == P(x)^{2^m} (mod 2^{m+1}) for all m <= n.
// Every polynomial is 0-good.
bool is_n_good(const ZPoly& p, unsigned n);

struct GoodnessReport {
  ZPoly polynomial;
  unsigned level = 0;          // max n <= checked_up_to with P n-good
  unsigned checked_up_to = 0;  // n_max of the request
};
GoodnessReport goodness_level(const ZPoly& p, unsigned n_max);

// For n-good P, Q with P == Q (mod 2), returns whether P == Q
// (mod 2^{n+1}). Preconditions are verified and their failure throws,
// distinctly from a false return.
bool match_and_lift_check(const ZPoly& p, const ZPoly& q, unsigned n);

enum class SplitLetter { L, S };
enum class SplitChooser { Lex, AntiLex };

// Successive terms of a splitting sequence: after L the square lifting,
// after S the chooser's pick of the two Square-Lemma factors. letters[i]
// describes terms[i]; the final term's letter is not yet determined.
struct SplittingTrace {
  std::vector<ZPoly> terms;
  std::vector<SplitLetter> letters;
  SplitChooser chooser = SplitChooser::Lex;
};
SplittingTrace splitting_trace(const ZPoly& p, unsigned depth,
                               SplitChooser chooser = SplitChooser::Lex);
std::string letters_string(const SplittingTrace& t);

// 1-based positions a_1 < a_2 < ... of S in the letter string.
std::vector<std::size_t> s_positions(const SplittingTrace& t);
// Gaps b_n = a_n - a_{n-1} with a_0 = 0.
std::vector<std::size_t> gap_sequence(const SplittingTrace& t);
// |{n : b_n > 2}| within the trace; a lower bound for specialness. The
// first term must be nice.
unsigned special_count(const SplittingTrace& t);

// With l = #{j in [m, m+k) : letters[j] = L}, checks that terms[m+k]
// divides terms[m](x^{2^l}); terms[m] must be irreducible.
bool verify_divisibility_lemma(const SplittingTrace& t, std::size_t m,
                               std::size_t k);

enum class LemmaStatus { NotApplicable, HypothesisAbsent, Checked };

// Assertion results for the two string-feature implications, with terms
// indexed from 1 as P_1, P_2, ... and letters s_1, s_2, ... so that
// s_j describes P_j. Feature one needs s_i s_{i+1} = LS with P_i
// (k-1)-good and P_{i+2} k-good; it asserts P_i k-good and
// P_i == P_{i+2} (mod 2^{k+1}). Feature two needs s_{i-1} s_i s_{i+1} =
// LLS with P_i and P_{i+2} k-good; it asserts P_i (k+1)-good.
struct StringLemmaReport {
  LemmaStatus feature_one = LemmaStatus::NotApplicable;
  bool f1_goodness = false;
  bool f1_congruence = false;
  LemmaStatus feature_two = LemmaStatus::NotApplicable;
  bool f2_goodness = false;

  bool all_pass() const {
    bool any = false, ok = true;
    if (feature_one == LemmaStatus::Checked) {
      any = true;
      ok = ok && f1_goodness && f1_congruence;
    }
    if (feature_two == LemmaStatus::Checked) {
      any = true;
      ok = ok && f2_goodness;
    }
    return any && ok;
  }
};
StringLemmaReport verify_string_lemmas(const SplittingTrace& t, std::size_t i,
                                       unsigned k);

// Irreducible with leading and constant coefficients in {+-1}.
bool is_nice(const ZPoly& p);

}  // namespace monalg

#endif  // MONALG_SPLIT_HPP
