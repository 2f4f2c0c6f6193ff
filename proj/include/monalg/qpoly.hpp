#ifndef MONALG_QPOLY_HPP
#define MONALG_QPOLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "monalg/zpoly.hpp"

namespace monalg {

// Dense univariate polynomial over Q. Invariant: no trailing zeros.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(const Rat& constant);
  explicit QPoly(std::vector<Rat> coeffs);
  explicit QPoly(const ZPoly& f);

  static QPoly x();
  static QPoly monomial(const Rat& coeff, std::size_t exp);

  bool is_zero() const { return c_.empty(); }
  long degree() const { return c_.empty() ? kNegInfDegree : static_cast<long>(c_.size()) - 1; }
  long order() const;

  const Rat& coeff(std::size_t i) const;
  const Rat& leading() const;
  const std::vector<Rat>& coeffs() const { return c_; }

  QPoly operator-() const;
  QPoly& operator+=(const QPoly& g);
  QPoly& operator-=(const QPoly& g);
  friend QPoly operator+(QPoly f, const QPoly& g) { return f += g; }
  friend QPoly operator-(QPoly f, const QPoly& g) { return f -= g; }
  friend QPoly operator*(const QPoly& f, const QPoly& g);
  QPoly& operator*=(const QPoly& g) { return *this = *this * g; }
  QPoly& operator*=(const Rat& a);
  friend QPoly operator*(QPoly f, const Rat& a) { return f *= a; }

  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

  QPoly derivative() const;
  QPoly compose_monomial(unsigned long l) const;
  Rat evaluate(const Rat& at) const;
  QPoly monic() const;  // requires nonzero

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rat> c_;
};

// Field division: f = q*g + r, deg r < deg g; g != 0.
void divrem_q(const QPoly& f, const QPoly& g, QPoly* q, QPoly* r);

// Monic gcd in Q[x]; gcd(0, 0) = 0.
QPoly gcd_q(const QPoly& f, const QPoly& g);

// f = content * primitive with primitive in Z[x], positive leading
// coefficient; content carries the sign. Requires f != 0.
std::pair<Rat, ZPoly> content_primitive(const QPoly& f);

// c_i = c_(n-i) for all i (zero and constants count as palindromic).
bool is_palindromic(const QPoly& f);

// Power sums p_1..p_k of the roots of a monic P, by the recurrence
// k*c_(n-k) + sum_{j<k} c_(n-j)*p_(k-j) = 0, with c_j = 0 for j < 0.
std::vector<Rat> newton_power_sums(const QPoly& P, std::size_t k);

// Least k >= 1 with p_k != 0. Requires monic P != x^n; the result equals
// min{k >= 1 : c_(n-k) != 0}, which is checked internally.
std::size_t first_nonzero_power_sum(const QPoly& P, std::size_t k_max = 0);

}  // namespace monalg

#endif  // MONALG_QPOLY_HPP
