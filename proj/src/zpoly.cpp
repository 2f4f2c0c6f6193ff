#include "monalg/zpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace monalg {

namespace {
const Int kZero = 0;
}

ZPoly::ZPoly(const Int& constant) {
  if (constant != 0) c_.push_back(constant);
}

ZPoly::ZPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

ZPoly ZPoly::x() { return monomial(1, 1); }

ZPoly ZPoly::monomial(const Int& coeff, std::size_t exp) {
  ZPoly f;
  if (coeff != 0) {
    f.c_.assign(exp + 1, Int(0));
    f.c_[exp] = coeff;
  }
  return f;
}

void ZPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

long ZPoly::order() const {
  if (is_zero()) throw std::invalid_argument("ZPoly::order: zero polynomial");
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<long>(i);
  return 0;  // unreachable
}

const Int& ZPoly::coeff(std::size_t i) const {
  return i < c_.size() ? c_[i] : kZero;
}

const Int& ZPoly::leading() const {
  if (is_zero()) throw std::invalid_argument("ZPoly::leading: zero polynomial");
  return c_.back();
}

ZPoly ZPoly::operator-() const {
  ZPoly r = *this;
  for (auto& a : r.c_) a = -a;
  return r;
}

ZPoly& ZPoly::operator+=(const ZPoly& g) {
  if (c_.size() < g.c_.size()) c_.resize(g.c_.size(), Int(0));
  for (std::size_t i = 0; i < g.c_.size(); ++i) c_[i] += g.c_[i];
  trim();
  return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& g) {
  if (c_.size() < g.c_.size()) c_.resize(g.c_.size(), Int(0));
  for (std::size_t i = 0; i < g.c_.size(); ++i) c_[i] -= g.c_[i];
  trim();
  return *this;
}

ZPoly operator*(const ZPoly& f, const ZPoly& g) {
  if (f.is_zero() || g.is_zero()) return ZPoly();
  ZPoly r;
  r.c_.assign(f.c_.size() + g.c_.size() - 1, Int(0));
  for (std::size_t i = 0; i < f.c_.size(); ++i) {
    if (f.c_[i] == 0) continue;
    for (std::size_t j = 0; j < g.c_.size(); ++j) {
      if (g.c_[j] == 0) continue;
      r.c_[i + j] += f.c_[i] * g.c_[j];
    }
  }
  r.trim();
  return r;
}

ZPoly& ZPoly::operator*=(const Int& a) {
  if (a == 0) {
    c_.clear();
    return *this;
  }
  for (auto& v : c_) v *= a;
  return *this;
}

ZPoly ZPoly::derivative() const {
  if (c_.size() <= 1) return ZPoly();
  ZPoly r;
  r.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * Int(i);
  r.trim();
  return r;
}

ZPoly ZPoly::compose_monomial(unsigned long l) const {
  if (l == 0) throw std::invalid_argument("compose_monomial: l must be >= 1");
  if (is_zero() || l == 1) return *this;
  ZPoly r;
  r.c_.assign((c_.size() - 1) * l + 1, Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * l] = c_[i];
  return r;
}

Int ZPoly::evaluate(const Int& at) const {
  Int acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc *= at;
    acc += c_[i];
  }
  return acc;
}

ZPoly ZPoly::shift_down(long k) const {
  if (k == 0) return *this;
  if (is_zero() || k < 0 || k > order())
    throw std::invalid_argument("ZPoly::shift_down: k exceeds order");
  ZPoly r;
  r.c_.assign(c_.begin() + k, c_.end());
  return r;
}

Int ZPoly::content() const {
  Int g = 0;
  for (const auto& a : c_) g = gcd_int(g, a);
  if (!is_zero() && leading() < 0) g = -g;
  return g;
}

ZPoly ZPoly::primitive_part() const {
  if (is_zero()) return ZPoly();
  Int c = content();
  ZPoly r = *this;
  for (auto& a : r.c_) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
  return r;
}

bool try_exact_divide(const ZPoly& f, const ZPoly& g, ZPoly* quotient) {
  if (g.is_zero()) throw std::invalid_argument("try_exact_divide: zero divisor");
  if (f.is_zero()) {
    if (quotient) *quotient = ZPoly();
    return true;
  }
  if (f.degree() < g.degree()) return false;
  std::vector<Int> rem = f.c_;
  std::vector<Int> quo(f.c_.size() - g.c_.size() + 1, Int(0));
  const Int& lg = g.leading();
  for (std::size_t i = rem.size(); i-- >= g.c_.size();) {
    if (rem[i] != 0) {
      Int q, r;
      mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem[i].get_mpz_t(), lg.get_mpz_t());
      if (r != 0) return false;
      std::size_t shift = i - (g.c_.size() - 1);
      quo[shift] = q;
      for (std::size_t j = 0; j < g.c_.size(); ++j) rem[shift + j] -= q * g.c_[j];
    }
    if (i == 0) break;  // guards size_t wraparound when deg g == 0
  }
  for (const auto& a : rem)
    if (a != 0) return false;
  if (quotient) *quotient = ZPoly(std::move(quo));
  return true;
}

void pseudo_divrem(const ZPoly& f, const ZPoly& g, ZPoly* q, ZPoly* r) {
  if (g.is_zero()) throw std::invalid_argument("pseudo_divrem: zero divisor");
  const long dg = g.degree();
  if (f.is_zero() || f.degree() < dg) {
    // Scaling exponent is clamped at zero, so the identity is f = 0*g + f.
    if (q) *q = ZPoly();
    if (r) *r = f;
    return;
  }
  const Int lg = g.leading();
  const long scalings = f.degree() - dg + 1;
  ZPoly quo;
  ZPoly rem = f;
  long used = 0;
  while (!rem.is_zero() && rem.degree() >= dg) {
    ZPoly t = ZPoly::monomial(rem.leading(), static_cast<std::size_t>(rem.degree() - dg));
    quo *= lg;
    quo += t;
    rem *= lg;
    rem -= t * g;
    ++used;
  }
  // Postcondition fixes the total scaling at lc(g)^(deg f - deg g + 1).
  Int deficit = pow_int(lg, static_cast<unsigned long>(scalings - used));
  quo *= deficit;
  rem *= deficit;
  if (q) *q = quo;
  if (r) *r = rem;
}

bool lex_less(const ZPoly& a, const ZPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.c_.size(); i-- > 0;) {
    int c = cmp(a.c_[i], b.c_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::string ZPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Int& a = c_[i];
    if (a == 0) continue;
    Int mag = abs(a);
    if (first) {
      if (a < 0) out << "-";
      first = false;
    } else {
      out << (a < 0 ? " - " : " + ");
    }
    if (i == 0) {
      out << mag.get_str();
    } else {
      if (mag != 1) out << mag.get_str() << "*";
      out << "x";
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

EvenOddSplit even_odd_split(const ZPoly& f) {
  EvenOddSplit s;
  std::vector<Int> even, odd;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i % 2 == 0)
      even.push_back(f.coeffs()[i]);
    else
      odd.push_back(f.coeffs()[i]);
  }
  s.even = ZPoly(std::move(even));
  s.odd = ZPoly(std::move(odd));
  return s;
}

bool congruent_mod(const ZPoly& f, const ZPoly& g, const Int& m) {
  if (m == 0) throw std::invalid_argument("congruent_mod: zero modulus");
  ZPoly d = f - g;
  for (const auto& a : d.coeffs())
    if (!mpz_divisible_p(a.get_mpz_t(), m.get_mpz_t())) return false;
  return true;
}

}  // namespace monalg
