#ifndef MONALG_BETAM_HPP
#define MONALG_BETAM_HPP

#include "monalg/numeric.hpp"
#include "monalg/verdict.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace monalg {

// A rank-one monoid built from a ladder of prime pairs (q_n, p_n). The small
// ratios alpha_n = q_n / p_n generate an ambient monoid N; the near-unit
// values beta_n = 1 - (alpha_1 + ... + alpha_n) together with the doubled and
// tripled alpha patterns generate the monoid M studied here. M is atomic but
// carries a strictly ascending chain of principal ideals, which this module
// produces and verifies exactly.

// One rung of the ladder: a pair of primes q < p whose ratio alpha = q/p at
// least halves from each rung to the next.
struct SchedulePair {
  Int q;
  Int p;
};

// Frozen, deterministic list of prime pairs, 1-indexed. Immutable once built,
// so concurrent reads are safe. Invariants, verified at construction:
//   100 < q_1,  q_n < p_n < q_{n+1},  alpha_1 < 1/200,
//   alpha_{n+1} < alpha_n / 2, and the full series of alphas stays < 1/100.
// Consequently every beta_n lies in (99/100, 1] and strictly decreases.
class PrimeSchedule {
 public:
  std::size_t size() const { return pairs_.size(); }
  const std::vector<SchedulePair>& pairs() const { return pairs_; }
  const Int& q(unsigned long n) const;  // throws when n = 0 or n > size()
  const Int& p(unsigned long n) const;
  Rat alpha(unsigned long n) const;  // q_n / p_n
  // beta(0) = 1 and beta(n) = 1 - (alpha_1 + ... + alpha_n); needs n <= size().
  const Rat& beta(unsigned long n) const;

 private:
  std::vector<SchedulePair> pairs_;
  std::vector<Rat> betas_;  // betas_[n] = beta(n) for n = 0..size()

  friend PrimeSchedule gen_primes(unsigned long k);
  friend PrimeSchedule schedule_from_pairs(std::vector<SchedulePair> pairs);
};

// Deterministic generator: q_1 is the smallest prime above 100, p_1 the
// smallest prime above 200*q_1; afterwards p_n is the smallest prime above
// max(ceil(2 q_n p_{n-1} / q_{n-1}), q_n) and q_{n+1} the smallest prime
// above p_n. All schedule invariants are re-verified after generation.
PrimeSchedule gen_primes(unsigned long k);

// Validates an externally supplied ladder (primality plus every invariant
// above); throws std::invalid_argument when the pairs do not qualify.
PrimeSchedule schedule_from_pairs(std::vector<SchedulePair> pairs);

// Canonical form of an element of the ambient monoid N = span of the alphas:
//   value = nu + sum over n of c[n] * alpha_n,  0 < c[n] < p_n,
// with nu a member of the numerical monoid generated by the q_n. The form is
// unique because distinct rungs use distinct primes.
struct NCanonical {
  Int nu;
  std::map<unsigned long, Int> c;  // rung -> coefficient, nonzero entries only

  Int sigma() const;  // sum of the stored coefficients
};

// Exact membership of an integer in the numerical monoid generated by the
// q_n. Generators above nu cannot contribute; values beyond the two-generator
// Frobenius bound q_1 q_2 - q_1 - q_2 are always members. Throws on nu < 0.
bool member_N0(const Int& nu, const PrimeSchedule& sched);

// Computes the canonical form of q, or nullopt when q is not in N: some
// denominator prime is foreign to the ladder or repeated, or the residue
// left after removing the forced alpha coefficients is not a certified
// member of the numerical monoid. Throws on q < 0.
std::optional<NCanonical> canonical_decompose_N(const Rat& q,
                                                const PrimeSchedule& sched);

// Evaluates a canonical form back to the rational it represents.
Rat recompose_N(const NCanonical& form, const PrimeSchedule& sched);

// Profile classes of the distinguished subsets of N: A1 collects sums of
// distinct alphas, A2 those with exactly one doubled rung, A3 those with
// exactly one tripled rung (all other rungs distinct, no integer residue).
enum class AClass { A1, A2, A3, NotInA123 };

// Classifies q > 0 by its canonical profile; the three labelled classes are
// mutually exclusive by uniqueness of the canonical form. Throws when q <= 0
// or q is not in the ambient monoid.
AClass classify_A(const Rat& q, const PrimeSchedule& sched);

// Exact membership in the span of the A2 and A3 patterns: true iff q = 0 or
// q lies in N with a positive integer residue or some coefficient >= 2. The
// characterization is complete: a positive residue expands into a doubled
// pattern through q_j = p_j alpha_j, and sums of distinct alphas are exactly
// the elements excluded. Throws on q < 0.
bool in_gen_A(const Rat& q, const PrimeSchedule& sched);

// Certificate that q lies in M: q equals the sum of the listed betas plus a
// residual whose canonical form passes in_gen_A.
struct MCertificate {
  std::vector<unsigned long> beta_indices;  // ascending multiset
  NCanonical a_part;
};

using MVerdict = Verdict<MCertificate>;

// Three-valued membership in M. The search enumerates beta multisets
// shortest-first over indices bounded by min(n* + 1, beta_bound), where n*
// is the largest rung whose prime divides den(q): any certificate can be
// rewritten rung by rung into that index window without changing its number
// of beta summands, so when n* + 1 <= beta_bound, 2q < p_1, and the node
// budget is not exhausted, a failed search is a genuine refutation.
// Denominators with foreign or repeated prime support refute immediately.
// Throws when q < 0 or beta_bound = 0.
MVerdict membership_M(const Rat& q, const PrimeSchedule& sched,
                      unsigned long beta_bound = 40);

// Largest m such that some sum of m betas (indices <= index_bound) divides b
// in M. The rewriting argument above preserves counts, so the result is the
// exact value whenever index_bound >= n* + 1 and 2b < p_1; beyond that it is
// a lower bound over the index window. Cost grows with b; intended for small
// certified elements. Throws when b cannot be certified in M.
unsigned long indicator_inf(const Rat& b, const PrimeSchedule& sched,
                            unsigned long index_bound = 40);

// The unique s with |s| <= (p_n - 1)/2 and v_{p_n}(b - s alpha_n) >= 0,
// computed as the symmetric residue of the alpha_n coefficient mod p_n.
// b may be any rational combination over 1 and the alphas (in particular a
// difference of M elements). Throws when n is outside the generated schedule
// or den(b) is not a squarefree product of ladder primes.
Int indicator_n(const Rat& b, unsigned long n, const PrimeSchedule& sched);

// Atom certificate: a beta (index recorded) or a doubled/tripled pattern
// (the special rung recorded).
struct MAtomCert {
  enum class Kind { BetaAtom, A2Atom, A3Atom };
  Kind kind = Kind::BetaAtom;
  unsigned long index = 0;
};

using MAtomVerdict = Verdict<MAtomCert, std::pair<Rat, Rat>>;

// Atom test inside M. Proved identifies q as a beta or an A2/A3 pattern
// (these exhaust the atoms of M); Refuted carries a two-part split into
// nonzero certified members; otherwise Unknown(bound). Throws when q cannot
// be certified in M or q = 0 (a unit, not an atom candidate).
MAtomVerdict is_atom_M(const Rat& q, const PrimeSchedule& sched,
                       unsigned long bound = 40);

// Prefix of the strictly ascending chain of principal ideals: elements
// 2 beta_0, ..., 2 beta_count with differences 2 alpha_1, ..., 2 alpha_count.
struct MChain {
  std::vector<Rat> elements;
  std::vector<Rat> differences;
};

// Builds the chain prefix and verifies each relation
//   2 beta_n = 2 beta_{n+1} + 2 alpha_{n+1}
// exactly, with every difference classified A2 (hence a nonzero member of
// M). Throws when count = 0 or count > sched.size().
MChain non_accp_chain_M(unsigned long count, const PrimeSchedule& sched);

}  // namespace monalg

#endif  // MONALG_BETAM_HPP
