#ifndef MONALG_FACTORZ_HPP
#define MONALG_FACTORZ_HPP

#include <set>
#include <utility>
#include <vector>

#include "monalg/verdict.hpp"
#include "monalg/zpoly.hpp"

namespace monalg {

// Complete factorization over the integers: signed content times primitive
// irreducible factors with positive leading coefficients, pairwise distinct,
// sorted by (degree, lexicographic coefficient order from the top).
struct ZFactorization {
  Int content = 1;
  std::vector<std::pair<ZPoly, unsigned>> factors;

  ZPoly expand() const;
};

ZFactorization factor_z(const ZPoly& f);

// True iff f is irreducible in Z[x] (primitive, nonconstant, single factor).
bool is_irreducible_z(const ZPoly& f);

unsigned long euler_phi(unsigned long n);
int moebius(unsigned long n);

// n-th cyclotomic polynomial, memoized (thread-safe cache).
ZPoly cyclotomic(unsigned long n);

// Checks Phi_n(x^{2^m}) = prod_{i=0..m} Phi_{n*2^i} by exact multiplication.
bool verify_cyclotomic_lift(unsigned long n, unsigned m);

// f = +-x^k * prod Phi_{n_i}; Refuted carries the non-cyclotomic residual.
struct CycloMonomialForm {
  unsigned long x_order = 0;
  std::multiset<unsigned long> indices;
};
Verdict<CycloMonomialForm, ZPoly> cyclotomic_monomial_form(const ZPoly& f);

// Exact trichotomy for monic irreducibles: x itself, a cyclotomic, or a
// polynomial with a root outside the closed unit disc.
enum class KroneckerKind { IsX, IsCyclotomic, RootOutsideDisc };
struct KroneckerClass {
  KroneckerKind kind = KroneckerKind::RootOutsideDisc;
  unsigned long n = 0;  // cyclotomic index when kind == IsCyclotomic
};
Verdict<KroneckerClass> kronecker_classify(const ZPoly& f);

}  // namespace monalg

#endif  // MONALG_FACTORZ_HPP
