#pragma once

#include <map>
#include <vector>

#include "monalg/numeric.hpp"
#include "monalg/verdict.hpp"

namespace monalg {

// The additive monoid N0[r] generated by the nonnegative powers of a fixed
// rational ratio 0 < r < 1.
class MrContext {
 public:
  explicit MrContext(const Rat& r);
  static MrContext mr34();  // r = 3/4; the power cache is exactly its atom set

  const Rat& ratio() const { return r_; }
  const Rat& power(unsigned long i) const;  // r^i, cached

 private:
  Rat r_;
  mutable std::vector<Rat> pows_;
};

// Sparse exponent -> multiplicity view of a membership certificate.
struct MrFactorization {
  std::map<unsigned long, Int> coeffs;
  Rat evaluate(const MrContext& ctx) const;
};
MrFactorization to_factorization(const std::vector<Int>& dense);

using MrVerdict = Verdict<std::vector<Int>>;

// Membership q in N0[r], certificate c with q = sum c[i] r^i. Exact except
// when the minimal viable representation degree exceeds deg_max (or the
// search budget), which yields Unknown:
//  - a prime of den(q) outside den(r) refutes membership at every degree;
//  - otherwise any representation reduces, via den(r)*r^i = num(r)*r^{i-1},
//    to one of degree at most k0 = min{k : den(q) | den(r)^k}, so the digit
//    search at depth k0 is a complete decision procedure.
MrVerdict membership_mr(const Rat& q, const MrContext& ctx, unsigned deg_max);

// Divisibility a | b in the monoid: the certificate factors b - a. Both
// inputs must themselves certify as members.
MrVerdict divides_mr(const Rat& a, const Rat& b, const MrContext& ctx,
                     unsigned deg_max);

// (3/4)^0 .. (3/4)^{n_max}, each re-verified atomic by a bounded search for
// a two-part decomposition into nonzero members.
std::vector<Rat> atoms_mr34(unsigned long n_max);

// Witness that M_{3/4} fails the ACCP: b_n = 3*(3/4)^n descends by exactly
// one atom per step, so the principal ideals b_n + M_{3/4} strictly ascend.
struct MrChain34 {
  std::vector<Rat> elements;     // b_0 .. b_count
  std::vector<Rat> differences;  // b_n - b_{n+1} = (3/4)^{n+1}
};
MrChain34 non_accp_chain_mr34(unsigned long count);

struct MrAccpCert {
  enum class Kind { Zero, Atom };
  Kind kind = Kind::Zero;
  unsigned long atom_index = 0;  // n with q = (3/4)^n when kind == Atom
};

// Per-element ACCP verdict in M_{3/4}. Proved only for 0 and atoms (their
// divisor sets are trivial); Refuted carries a strictly descending
// proper-divisor chain of the requested length, found by bounded search
// over atom-difference steps; everything else stays Unknown.
Verdict<MrAccpCert, std::vector<Rat>> satisfies_accp_mr34(const Rat& q,
                                                          unsigned depth);

}  // namespace monalg
