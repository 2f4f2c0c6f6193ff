#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monalg/numeric.hpp"
#include "monalg/qpoly.hpp"
#include "monalg/verdict.hpp"
#include "monalg/zpoly.hpp"

namespace monalg {

// Nonnegative dyadic rational num / 2^log_den, normalized so that either
// log_den == 0 or num is odd.
struct DyadicExp {
  Int num = 0;
  unsigned long log_den = 0;
};

DyadicExp make_dyadic_exp(Int num, unsigned long log_den);
DyadicExp dyadic_add(const DyadicExp& a, const DyadicExp& b);
bool operator==(const DyadicExp& a, const DyadicExp& b);
bool operator!=(const DyadicExp& a, const DyadicExp& b);
// Strict value order.
bool dyadic_less(const DyadicExp& a, const DyadicExp& b);
std::string exp_to_string(const DyadicExp& e);

// Polynomial expression with dyadic exponents and rational coefficients.
// Terms are kept sorted by strictly decreasing exponent with no zero
// coefficients; the empty term list is the zero expression.
class DyadicPoly {
 public:
  using Term = std::pair<DyadicExp, Rat>;

  DyadicPoly() = default;
  explicit DyadicPoly(const Rat& c);
  explicit DyadicPoly(std::vector<Term> terms);

  // F(x^{1/2^level}) for an ordinary polynomial F.
  static DyadicPoly from_qpoly(const QPoly& f, unsigned long level);
  static DyadicPoly from_zpoly(const ZPoly& f, unsigned long level);
  static DyadicPoly monomial(const Rat& c, const DyadicExp& e);
  static DyadicPoly x();

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const std::vector<Term>& terms() const { return terms_; }
  // Largest/smallest exponent; both require a nonzero expression.
  DyadicExp degree() const;
  DyadicExp order() const;
  // Smallest N with f(x^{2^N}) an ordinary polynomial (0 for the zero
  // expression).
  unsigned long level() const;
  bool integer_coefficients() const;

  DyadicPoly operator+(const DyadicPoly& o) const;
  DyadicPoly operator-(const DyadicPoly& o) const;
  DyadicPoly operator*(const DyadicPoly& o) const;
  friend bool operator==(const DyadicPoly& a, const DyadicPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const DyadicPoly& a, const DyadicPoly& b) {
    return !(a == b);
  }

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

// (N, F) with N minimal such that F = f(x^{2^N}) is an ordinary polynomial;
// the round trip F(x^{1/2^N}) recovers f. Throws on the zero expression.
std::pair<unsigned long, QPoly> normalize_level(const DyadicPoly& f);

// f(x^{2^n}) for n at least the level of f.
QPoly lift_at(const DyadicPoly& f, unsigned long n);

// Whether some 2-power lift of f is irreducible over the integers;
// equivalently, whether the minimal-level lift is. Requires a nonconstant
// expression with integer coefficients.
bool is_quasi_irreducible(const DyadicPoly& f);

// Exact irreducibility certificate for the Proved outcome: either all lifts
// share an Eisenstein prime, or the minimal lift is a cyclotomic polynomial
// with even index (whose 2-power lifts are again cyclotomic).
struct Qm12IrredCert {
  enum class Kind { EisensteinStable, EvenCyclotomic };
  Kind kind = Kind::EisensteinStable;
  Int prime = 0;
  unsigned long cyclo_index = 0;
};

struct DyadicFactorPair {
  DyadicPoly a, b;  // a * b equals the refuted input
};

// Irreducibility in the dyadic-exponent algebra holds iff every 2-power
// lift is irreducible over the rationals. Lifts at levels N..N+n_max are
// checked exactly; Proved needs one of the stable certificates above.
Verdict<Qm12IrredCert, DyadicFactorPair> irreducible_qm12(
    const DyadicPoly& f, unsigned long n_max);

struct AtomicityReport {
  bool atomic = false;
  // Offending factor (a non-atomic irreducible-over-Z divisor class or a
  // monomial) when non-atomic.
  std::optional<DyadicPoly> offender;
  // Integer-irreducible factor list of the minimal lift when atomic, each
  // of which is an atomic element; repeated per multiplicity.
  std::vector<DyadicPoly> factors;
};

// Exact atomicity decision: nonzero constants are units; expressions with
// positive order are non-atomic; otherwise f is atomic iff no integer
// irreducible factor of its minimal lift is x or an odd-index cyclotomic.
AtomicityReport is_atomic_qm12(const DyadicPoly& f);

// Binary split tree of a quasi-irreducible expression. Each internal node
// equals the exact product of its two children, obtained from the minimal
// reducible 2-power lift; children are ordered with the smaller integer
// factor on the left. Leaves record how many lifts were verified
// irreducible (their evidence bound).
struct SplitTree {
  DyadicPoly root;
  std::unique_ptr<SplitTree> left, right;
  unsigned long evidence_bound = 0;
  bool is_leaf() const { return left == nullptr; }
};

SplitTree splitting_tree(const DyadicPoly& f, unsigned long depth);

// The n+1 exact factors Phi_{2^j}(x^{1/2^n}), j in [0, n]; their product
// is x - 1, and the factors with j >= 1 are pairwise non-associate
// irreducibles.
std::vector<DyadicPoly> enumerate_divisors_x_minus_1(unsigned long n);

// Quotient h with f * h = g when it exists (division at the common lift
// level is exact for dyadic exponents). Requires f nonzero.
std::optional<DyadicPoly> divides_qm12(const DyadicPoly& f,
                                       const DyadicPoly& g);

}  // namespace monalg
