#ifndef MONALG_ZPOLY_HPP
#define MONALG_ZPOLY_HPP

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "monalg/numeric.hpp"

namespace monalg {

// degree(0) sentinel; compares below every finite degree.
inline constexpr long kNegInfDegree = std::numeric_limits<long>::min();

// Dense univariate polynomial over Z. Invariant: no trailing zero
// coefficients, so degree() == c_.size() - 1 for nonzero values.
class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(const Int& constant);
  explicit ZPoly(long constant) : ZPoly(Int(constant)) {}
  explicit ZPoly(std::vector<Int> coeffs);  // coeffs[i] multiplies x^i

  static ZPoly x();
  static ZPoly monomial(const Int& coeff, std::size_t exp);

  bool is_zero() const { return c_.empty(); }
  long degree() const { return c_.empty() ? kNegInfDegree : static_cast<long>(c_.size()) - 1; }
  // Index of the lowest nonzero coefficient; requires a nonzero polynomial.
  long order() const;

  const Int& coeff(std::size_t i) const;  // zero beyond the degree
  const Int& leading() const;
  const Int& constant_term() const { return coeff(0); }
  const std::vector<Int>& coeffs() const { return c_; }

  ZPoly operator-() const;
  ZPoly& operator+=(const ZPoly& g);
  ZPoly& operator-=(const ZPoly& g);
  friend ZPoly operator+(ZPoly f, const ZPoly& g) { return f += g; }
  friend ZPoly operator-(ZPoly f, const ZPoly& g) { return f -= g; }
  friend ZPoly operator*(const ZPoly& f, const ZPoly& g);
  ZPoly& operator*=(const ZPoly& g) { return *this = *this * g; }
  ZPoly& operator*=(const Int& a);
  friend ZPoly operator*(ZPoly f, const Int& a) { return f *= a; }

  friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const ZPoly& a, const ZPoly& b) { return !(a == b); }

  ZPoly derivative() const;
  // f(x^l); l >= 1.
  ZPoly compose_monomial(unsigned long l) const;
  Int evaluate(const Int& at) const;
  // Strips x^k; requires k <= order().
  ZPoly shift_down(long k) const;

  // gcd of coefficients with the sign of the leading coefficient; content of
  // the zero polynomial is 0.
  Int content() const;
  ZPoly primitive_part() const;  // positive leading coefficient

  // Exact division: returns the quotient iff g divides f in Z[x].
  friend bool try_exact_divide(const ZPoly& f, const ZPoly& g, ZPoly* quotient);

  // Pseudo-division: lc(g)^(deg f - deg g + 1) * f = q*g + r with
  // deg r < deg g. Requires g != 0.
  friend void pseudo_divrem(const ZPoly& f, const ZPoly& g, ZPoly* q, ZPoly* r);

  // Ordering used for canonical factor lists: by degree, then coefficient
  // vectors compared from the leading coefficient down.
  friend bool lex_less(const ZPoly& a, const ZPoly& b);

  std::string to_string() const;

 private:
  void trim();
  std::vector<Int> c_;
};

// f(x) = A(x^2) + x*B(x^2).
struct EvenOddSplit {
  ZPoly even;  // A
  ZPoly odd;   // B
};
EvenOddSplit even_odd_split(const ZPoly& f);

// Coefficientwise congruence f == g (mod m); m != 0.
bool congruent_mod(const ZPoly& f, const ZPoly& g, const Int& m);

// gcd in Z[x]: primitive with positive leading coefficient, scaled by the
// gcd of the contents. gcd(0, 0) = 0.
ZPoly gcd_z(const ZPoly& f, const ZPoly& g);

}  // namespace monalg

#endif  // MONALG_ZPOLY_HPP
