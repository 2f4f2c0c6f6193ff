#ifndef MONALG_MALG_HPP
#define MONALG_MALG_HPP

#include <memory>
#include <string>
#include <vector>

#include "monalg/betam.hpp"
#include "monalg/mr.hpp"
#include "monalg/numeric.hpp"
#include "monalg/verdict.hpp"

namespace monalg {

// Hex FNV-1a digest of a schedule's prime pairs; used to key handles and to
// stamp reports that depend on one specific schedule.
std::string schedule_fingerprint(const PrimeSchedule& sched);

// A pluggable exponent monoid for polynomial expressions: a display name
// plus deterministic membership and atom oracles over the nonnegative
// rationals. Copies share one immutable context; two handles compare equal
// exactly when their construction keys (family, parameters, and schedule
// fingerprint where applicable) coincide.
class MonoidHandle {
 public:
  // Finite sums of powers (3/4)^i; membership by bounded digit search, so
  // extreme denominators can come back Unknown.
  static MonoidHandle m34(unsigned deg_max = 24);
  // Nonnegative dyadic rationals; membership is exact.
  static MonoidHandle m12();
  // The near-unit monoid M built over a prime schedule; membership by the
  // bounded certificate search of membership_M.
  static MonoidHandle beta_monoid(PrimeSchedule sched,
                                  unsigned long beta_bound = 40);

  const std::string& name() const;

  // Membership of q in the monoid; negative q is Refuted outright. Proved
  // outcomes are backed by a recomposition-checked certificate inside the
  // wrapped module.
  Outcome membership(const Rat& q) const;

  // Atom status of q. Proved/Refuted where the atom set is decidable or
  // boundedly searchable (ratio 3/4: exactly the powers; dyadics: none,
  // since q = q/2 + q/2 splits every positive member; near-unit monoid:
  // bounded split search). Zero and nonmembers are Refuted; a member whose
  // search is inconclusive stays Unknown.
  Outcome atom_status(const Rat& q) const;

  // Family accessors; null when the handle does not carry the object.
  // Pointers remain valid while any copy of the handle is alive.
  const PrimeSchedule* schedule() const;
  const MrContext* mr_context() const;
  bool is_dyadic() const;
  unsigned long beta_bound() const;
  unsigned deg_max() const;

  friend bool operator==(const MonoidHandle& a, const MonoidHandle& b);
  friend bool operator!=(const MonoidHandle& a, const MonoidHandle& b) {
    return !(a == b);
  }

 private:
  struct Impl;
  explicit MonoidHandle(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

struct FmAccpCert;

// Polynomial expression over Q whose exponents are certified members of the
// handle's monoid. Terms are sorted by strictly decreasing exponent and
// carry nonzero coefficients; the empty term list is the zero expression.
class MExpr {
 public:
  struct Term {
    Rat exponent;
    Rat coeff;
    friend bool operator==(const Term& a, const Term& b) {
      return a.exponent == b.exponent && a.coeff == b.coeff;
    }
  };

  const MonoidHandle& handle() const { return h_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;  // zero or a single exponent-zero term
  bool is_monomial() const { return terms_.size() == 1; }

  // Largest/smallest exponent and top coefficient; require a nonzero
  // expression.
  const Rat& degree() const;
  const Rat& order() const;
  const Rat& leading_coeff() const;

  std::string to_string() const;

  friend bool operator==(const MExpr& a, const MExpr& b) {
    return a.h_ == b.h_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MExpr& a, const MExpr& b) { return !(a == b); }

 private:
  MExpr(MonoidHandle h, std::vector<Term> terms);
  // Normalizes without consulting the membership oracle; callers must know
  // every exponent is a member (monoid closure of already certified ones).
  static MExpr certified(MonoidHandle h, std::vector<Term> terms);

  friend MExpr make_expr(const MonoidHandle&, std::vector<Term>);
  friend MExpr make_zero(const MonoidHandle&);
  friend MExpr add(const MExpr&, const MExpr&);
  friend MExpr sub(const MExpr&, const MExpr&);
  friend MExpr mul(const MExpr&, const MExpr&);
  friend Verdict<MExpr> divides_fm(const MExpr&, const MExpr&, unsigned long);
  friend Verdict<FmAccpCert, std::vector<MExpr>> chain_search_fm(
      const MExpr&, unsigned long, unsigned long);

  MonoidHandle h_;
  std::vector<Term> terms_;
};

// Builds an expression after certifying every exponent through the handle's
// membership oracle (duplicates merged and zero coefficients dropped first).
// Throws invalid_argument when a certificate cannot be obtained, whether the
// exponent is Refuted or merely Unknown at the configured bound.
MExpr make_expr(const MonoidHandle& h, std::vector<MExpr::Term> terms);
MExpr make_zero(const MonoidHandle& h);
MExpr make_monomial(const MonoidHandle& h, const Rat& exponent,
                    const Rat& coeff);
MExpr make_constant(const MonoidHandle& h, const Rat& value);

// Ring operations. Sums reuse the operands' certificates; products certify
// exponent sums by monoid closure, so no oracle calls are made.
MExpr add(const MExpr& f, const MExpr& g);
MExpr sub(const MExpr& f, const MExpr& g);
MExpr mul(const MExpr& f, const MExpr& g);

// Greedy leading-term division of g by f (f != 0, shared handle required).
// Since exponents are totally ordered and the monoid is cancellative, the
// quotient is forced term by term, so the greedy walk is complete: Proved
// carries h with f*h = g; Refuted means no quotient exists in the algebra
// (a forced exponent went negative or failed membership); Unknown is
// reported when a membership query was inconclusive or the step budget ran
// out, never as a disguised "no".
Verdict<MExpr> divides_fm(const MExpr& f, const MExpr& g,
                          unsigned long max_steps = 4096);

// ACCP support for an expression over the ratio-3/4 monoid: Proved when
// some exponent in the support is 0 or an atom (such an element's divisor
// set is trivial, so principal-ideal chains through it stabilize). Never
// Refuted -- absence of a supporting exponent at this depth proves nothing.
struct AccpSupportCert {
  Rat exponent;       // the supporting exponent
  MrAccpCert element; // why that exponent stabilizes
};
Verdict<AccpSupportCert> accp_supported(const MExpr& f, unsigned depth = 8);

// Minimum, over the support, of the greatest-near-unit-part count. Only
// defined over the near-unit monoid; requires f != 0 and exponents small
// enough for the exhaustive count (see indicator_inf).
unsigned long indicator_inf_expr(const MExpr& f);

// Maximum, over the support, of the per-rung indicator at rung n. Requires
// deg f <= q_n / 100 (the window where the indicator is additive).
Int indicator_n_expr(const MExpr& f, unsigned long n);

// Concrete check of the indicator laws on a pair within the rung-n window:
//   - the infinite indicator is superadditive under products;
//   - the rung-n indicator is additive when deg(fg) fits the window;
//   - if the infinite indicator of f is zero, its rung indicators are
//     nonnegative from n on;
//   - past a computed rung k0 every rung indicator of f vanishes.
// Tail assertions sample rungs up to the schedule end; throws when the
// degree window or handle preconditions fail.
struct IndicatorLemmaReport {
  unsigned long inf_f = 0, inf_g = 0, inf_fg = 0;
  Int n_f, n_g, n_fg;                      // rung-n indicator values
  bool product_inf_superadditive = false;  // inf_fg >= inf_f + inf_g
  bool product_n_additive = false;         // n_fg == n_f + n_g
  bool zero_inf_case = false;              // inf_f == 0, tail check applies
  bool nonnegative_tail = true;            // rung values >= 0 from n on
  unsigned long k0 = 0;                    // rung with zero tail beyond it
  bool vanishing_tail = true;              // rung values == 0 from k0 on
  bool pass = false;
};
IndicatorLemmaReport verify_indicator_expr_lemmas(const MExpr& f,
                                                  const MExpr& g,
                                                  unsigned long n);

// Chain search at f: the Refuted witness lists f = f_0, f_1, ..., f_steps
// where each f_{i+1} is a proper divisor of f_i (every link re-verified by
// exact division), i.e. the principal ideals strictly ascend for `steps`
// steps. The built-in descent patterns (near-unit doubles, ratio-power
// steps, dyadic halving, split factors) provably extend without bound, so a
// found chain is genuine evidence against the ACCP at f. Proved is reserved
// for expressions whose divisor set is exactly computable: nonzero
// constants (units), monomials with an atomic exponent, and dyadic
// expressions certified irreducible. Everything else stays Unknown; budget
// caps the per-step candidate scans.
struct FmAccpCert {
  enum class Kind { Unit, AtomExponent, AtomExpression };
  Kind kind = Kind::Unit;
  Rat exponent;  // the atomic exponent when kind == AtomExponent
};
Verdict<FmAccpCert, std::vector<MExpr>> chain_search_fm(
    const MExpr& f, unsigned long steps, unsigned long budget = 32);

}  // namespace monalg

#endif  // MONALG_MALG_HPP
