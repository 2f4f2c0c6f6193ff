#include "monalg/split.hpp"

#include <cstdint>
#include <stdexcept>

#include "monalg/factorz.hpp"

namespace monalg {

namespace {

// Mod 2^{m+1} congruence P(x^{2^m}) == P(x)^{2^m}, checked with machine-word
// coefficients: products wrap mod 2^64, and masking to the low m+1 bits
// afterwards is exact for a power-of-two modulus.
bool goodness_congruence_at(const ZPoly& p, unsigned m) {
  if (m == 0) return true;
  if (m + 1 > 62)
    throw std::invalid_argument("goodness check: modulus wider than 62 bits");
  if (p.is_zero() || p.degree() == 0) {
    // Constants: both sides are c vs c^{2^m}; reduce directly.
    unsigned long mod = 1UL << (m + 1);
    std::uint64_t c =
        p.is_zero() ? 0 : mpz_fdiv_ui(p.coeff(0).get_mpz_t(), mod);
    std::uint64_t mask = mod - 1;
    std::uint64_t pw = c;
    for (unsigned s = 0; s < m; ++s) pw = (pw * pw) & mask;
    return pw == c;
  }
  const unsigned long target_deg = static_cast<unsigned long>(p.degree()) << m;
  if (target_deg > (1UL << 24))
    throw std::invalid_argument("goodness check: lifted degree too large");
  const unsigned long mod = 1UL << (m + 1);
  const std::uint64_t mask = mod - 1;
  std::vector<std::uint64_t> cur(p.coeffs().size());
  for (std::size_t i = 0; i < cur.size(); ++i)
    cur[i] = mpz_fdiv_ui(p.coeff(i).get_mpz_t(), mod);
  for (unsigned s = 0; s < m; ++s) {
    std::vector<std::uint64_t> sq(2 * cur.size() - 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (cur[i] == 0) continue;
      for (std::size_t j = 0; j < cur.size(); ++j)
        sq[i + j] = (sq[i + j] + cur[i] * cur[j]) & mask;
    }
    cur = std::move(sq);
  }
  std::vector<std::uint64_t> lhs(target_deg + 1, 0);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    lhs[i << m] = mpz_fdiv_ui(p.coeff(i).get_mpz_t(), mod);
  return cur == lhs;
}

struct FactorShape {
  bool irreducible = false;
  ZPoly child_lex, child_antilex;  // the two Square-Lemma factors when
                                   // reducible (equal when repeated)
};

// Factors a trace term and checks the Square-Lemma shape: either
// irreducible, or exactly two irreducible factors counted with
// multiplicity.
FactorShape analyze_term(const ZPoly& cur) {
  ZFactorization fz = factor_z(cur);
  FactorShape shape;
  if (abs(fz.content) != 1)
    throw std::logic_error("splitting trace: term not primitive");
  if (fz.factors.size() == 1 && fz.factors[0].second == 1) {
    shape.irreducible = true;
    return shape;
  }
  if (fz.factors.size() == 1 && fz.factors[0].second == 2) {
    shape.child_lex = shape.child_antilex = fz.factors[0].first;
    return shape;
  }
  if (fz.factors.size() == 2 && fz.factors[0].second == 1 &&
      fz.factors[1].second == 1) {
    shape.child_lex = fz.factors[0].first;
    shape.child_antilex = fz.factors[1].first;
    return shape;
  }
  throw std::logic_error("splitting trace: factorization violates Square Lemma");
}

Int pow2(unsigned e) {
  Int r = 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), e);
  return r;
}

}  // namespace

std::optional<SquareSplit> square_split(const ZPoly& r) {
  ZPoly rn = (!r.is_zero() && r.leading() < 0) ? -r : r;
  if (!is_irreducible_z(rn))
    throw std::invalid_argument("square_split: input reducible");
  ZPoly r2 = rn.compose_monomial(2);
  FactorShape shape = analyze_term(r2);
  if (shape.irreducible) return std::nullopt;
  const ZPoly& f1 = shape.child_lex;
  const ZPoly& f2 = shape.child_antilex;
  if (f1.degree() != rn.degree() || f2.degree() != rn.degree())
    throw std::logic_error("square_split: factor degrees violate Square Lemma");
  EvenOddSplit s1 = even_odd_split(f1);
  EvenOddSplit s2 = even_odd_split(f2);
  bool o1pos = !s1.odd.is_zero() && s1.odd.leading() > 0;
  bool o2pos = !s2.odd.is_zero() && s2.odd.leading() > 0;
  SquareSplit out;
  bool pick_first;
  if (o1pos != o2pos) {
    pick_first = o1pos;
  } else if (o1pos && o2pos) {
    // Odd degree: both factors carry +x*q(x^2); even parts differ in sign.
    pick_first = s1.even.is_zero() || s1.even.leading() > 0;
  } else {
    throw std::logic_error("square_split: no factor with positive odd part");
  }
  if (pick_first) {
    out.a = f1;
    out.b = f2;
    out.p = s1.even;
    out.q = s1.odd;
  } else {
    out.a = f2;
    out.b = f1;
    out.p = s2.even;
    out.q = s2.odd;
  }
  ZPoly w = out.p * out.p - ZPoly::x() * out.q * out.q;
  if (!(w == rn || w == -rn))
    throw std::logic_error("square_split: p^2 - x*q^2 not associate to input");
  if (!(out.a * out.b == r2))
    throw std::logic_error("square_split: factor product mismatch");
  return out;
}

bool is_n_good(const ZPoly& p, unsigned n) {
  for (unsigned m = 1; m <= n; ++m)
    if (!goodness_congruence_at(p, m)) return false;
  return true;
}

GoodnessReport goodness_level(const ZPoly& p, unsigned n_max) {
  GoodnessReport rep;
  rep.polynomial = p;
  rep.checked_up_to = n_max;
  rep.level = n_max;
  for (unsigned m = 1; m <= n_max; ++m) {
    if (!goodness_congruence_at(p, m)) {
      rep.level = m - 1;
      break;
    }
  }
  return rep;
}

bool match_and_lift_check(const ZPoly& p, const ZPoly& q, unsigned n) {
  if (!congruent_mod(p, q, Int(2)))
    throw std::invalid_argument("match_and_lift_check: inputs differ mod 2");
  if (!is_n_good(p, n) || !is_n_good(q, n))
    throw std::invalid_argument("match_and_lift_check: inputs not n-good");
  return congruent_mod(p, q, pow2(n + 1));
}

SplittingTrace splitting_trace(const ZPoly& p, unsigned depth,
                               SplitChooser chooser) {
  if (depth < 1)
    throw std::invalid_argument("splitting_trace: depth must be positive");
  ZPoly start = (!p.is_zero() && p.leading() < 0) ? -p : p;
  if (!is_irreducible_z(start))
    throw std::invalid_argument("splitting_trace: input reducible");
  SplittingTrace t;
  t.chooser = chooser;
  t.terms.push_back(start);
  for (unsigned step = 0; step < depth; ++step) {
    const ZPoly cur = t.terms.back();
    FactorShape shape = analyze_term(cur);
    if (shape.irreducible) {
      t.letters.push_back(SplitLetter::L);
      t.terms.push_back(cur.compose_monomial(2));
    } else {
      if (!t.letters.empty() && t.letters.back() == SplitLetter::S)
        throw std::logic_error("splitting_trace: consecutive reducible terms");
      t.letters.push_back(SplitLetter::S);
      t.terms.push_back(chooser == SplitChooser::Lex ? shape.child_lex
                                                     : shape.child_antilex);
    }
  }
  return t;
}

std::string letters_string(const SplittingTrace& t) {
  std::string s;
  s.reserve(t.letters.size());
  for (SplitLetter l : t.letters) s.push_back(l == SplitLetter::L ? 'L' : 'S');
  return s;
}

std::vector<std::size_t> s_positions(const SplittingTrace& t) {
  std::vector<std::size_t> a;
  for (std::size_t i = 0; i < t.letters.size(); ++i)
    if (t.letters[i] == SplitLetter::S) a.push_back(i + 1);
  return a;
}

std::vector<std::size_t> gap_sequence(const SplittingTrace& t) {
  std::vector<std::size_t> b;
  std::size_t prev = 0;
  for (std::size_t a : s_positions(t)) {
    b.push_back(a - prev);
    prev = a;
  }
  return b;
}

unsigned special_count(const SplittingTrace& t) {
  if (t.terms.empty() || !is_nice(t.terms.front()))
    throw std::invalid_argument("special_count: first term not nice");
  unsigned count = 0;
  for (std::size_t g : gap_sequence(t))
    if (g > 2) ++count;
  return count;
}

bool verify_divisibility_lemma(const SplittingTrace& t, std::size_t m,
                               std::size_t k) {
  if (m + k >= t.terms.size())
    throw std::invalid_argument("verify_divisibility_lemma: index out of range");
  if (!is_irreducible_z(t.terms[m]))
    throw std::invalid_argument("verify_divisibility_lemma: terms[m] reducible");
  unsigned l = 0;
  for (std::size_t j = m; j < m + k; ++j)
    if (t.letters[j] == SplitLetter::L) ++l;
  ZPoly lifted = t.terms[m].compose_monomial(1UL << l);
  ZPoly q;
  return try_exact_divide(lifted, t.terms[m + k], &q);
}

StringLemmaReport verify_string_lemmas(const SplittingTrace& t, std::size_t i,
                                       unsigned k) {
  if (k < 1)
    throw std::invalid_argument("verify_string_lemmas: k must be positive");
  if (i < 1 || i + 1 >= t.terms.size())
    throw std::invalid_argument("verify_string_lemmas: index out of range");
  auto term = [&](std::size_t j) -> const ZPoly& { return t.terms[j - 1]; };
  auto letter = [&](std::size_t j) { return t.letters[j - 1]; };
  StringLemmaReport rep;
  bool ls_at_i = i + 1 <= t.letters.size() && letter(i) == SplitLetter::L &&
                 letter(i + 1) == SplitLetter::S;
  bool lls_at_im1 = i >= 2 && ls_at_i && letter(i - 1) == SplitLetter::L;
  bool any_pattern = ls_at_i || lls_at_im1;
  if (ls_at_i) {
    if (is_n_good(term(i), k - 1) && is_n_good(term(i + 2), k)) {
      rep.feature_one = LemmaStatus::Checked;
      rep.f1_goodness = is_n_good(term(i), k);
      rep.f1_congruence = congruent_mod(term(i), term(i + 2), pow2(k + 1));
    } else {
      rep.feature_one = LemmaStatus::HypothesisAbsent;
    }
  }
  if (lls_at_im1) {
    if (is_n_good(term(i), k) && is_n_good(term(i + 2), k)) {
      rep.feature_two = LemmaStatus::Checked;
      rep.f2_goodness = is_n_good(term(i), k + 1);
    } else {
      rep.feature_two = LemmaStatus::HypothesisAbsent;
    }
  }
  if (!any_pattern)
    throw std::invalid_argument("verify_string_lemmas: no LS/LLS pattern at i");
  if (rep.feature_one != LemmaStatus::Checked &&
      rep.feature_two != LemmaStatus::Checked)
    throw std::invalid_argument(
        "verify_string_lemmas: goodness hypotheses absent");
  return rep;
}

bool is_nice(const ZPoly& p) {
  if (p.is_zero() || p.degree() < 1) return false;
  if (abs(p.leading()) != 1 || abs(p.constant_term()) != 1) return false;
  return is_irreducible_z(p);
}

}  // namespace monalg
