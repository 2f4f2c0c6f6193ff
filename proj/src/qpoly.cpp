#include "monalg/qpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace monalg {

namespace {
const Rat kZeroQ = 0;
}

QPoly::QPoly(const Rat& constant) {
  if (constant != 0) c_.push_back(constant);
}

QPoly::QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly::QPoly(const ZPoly& f) {
  c_.reserve(f.coeffs().size());
  for (const auto& a : f.coeffs()) c_.emplace_back(a);
}

QPoly QPoly::x() { return monomial(1, 1); }

QPoly QPoly::monomial(const Rat& coeff, std::size_t exp) {
  QPoly f;
  if (coeff != 0) {
    f.c_.assign(exp + 1, Rat(0));
    f.c_[exp] = coeff;
  }
  return f;
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

long QPoly::order() const {
  if (is_zero()) throw std::invalid_argument("QPoly::order: zero polynomial");
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<long>(i);
  return 0;
}

const Rat& QPoly::coeff(std::size_t i) const {
  return i < c_.size() ? c_[i] : kZeroQ;
}

const Rat& QPoly::leading() const {
  if (is_zero()) throw std::invalid_argument("QPoly::leading: zero polynomial");
  return c_.back();
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& a : r.c_) a = -a;
  return r;
}

QPoly& QPoly::operator+=(const QPoly& g) {
  if (c_.size() < g.c_.size()) c_.resize(g.c_.size(), Rat(0));
  for (std::size_t i = 0; i < g.c_.size(); ++i) c_[i] += g.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& g) {
  if (c_.size() < g.c_.size()) c_.resize(g.c_.size(), Rat(0));
  for (std::size_t i = 0; i < g.c_.size(); ++i) c_[i] -= g.c_[i];
  trim();
  return *this;
}

QPoly operator*(const QPoly& f, const QPoly& g) {
  if (f.is_zero() || g.is_zero()) return QPoly();
  QPoly r;
  r.c_.assign(f.c_.size() + g.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < f.c_.size(); ++i) {
    if (f.c_[i] == 0) continue;
    for (std::size_t j = 0; j < g.c_.size(); ++j) r.c_[i + j] += f.c_[i] * g.c_[j];
  }
  r.trim();
  return r;
}

QPoly& QPoly::operator*=(const Rat& a) {
  if (a == 0) {
    c_.clear();
    return *this;
  }
  for (auto& v : c_) v *= a;
  return *this;
}

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return QPoly();
  QPoly r;
  r.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * Rat(i);
  r.trim();
  return r;
}

QPoly QPoly::compose_monomial(unsigned long l) const {
  if (l == 0) throw std::invalid_argument("compose_monomial: l must be >= 1");
  if (is_zero() || l == 1) return *this;
  QPoly r;
  r.c_.assign((c_.size() - 1) * l + 1, Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * l] = c_[i];
  return r;
}

Rat QPoly::evaluate(const Rat& at) const {
  Rat acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc *= at;
    acc += c_[i];
  }
  return acc;
}

QPoly QPoly::monic() const {
  if (is_zero()) throw std::invalid_argument("QPoly::monic: zero polynomial");
  QPoly r = *this;
  Rat inv = 1 / leading();
  for (auto& a : r.c_) a *= inv;
  return r;
}

std::string QPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Rat& a = c_[i];
    if (a == 0) continue;
    Rat mag = abs(a);
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

void divrem_q(const QPoly& f, const QPoly& g, QPoly* q, QPoly* r) {
  if (g.is_zero()) throw std::invalid_argument("divrem_q: zero divisor");
  QPoly quo;
  QPoly rem = f;
  const long dg = g.degree();
  const Rat inv = 1 / g.leading();
  while (!rem.is_zero() && rem.degree() >= dg) {
    QPoly t = QPoly::monomial(rem.leading() * inv, static_cast<std::size_t>(rem.degree() - dg));
    quo += t;
    rem -= t * g;
  }
  if (q) *q = quo;
  if (r) *r = rem;
}

QPoly gcd_q(const QPoly& f, const QPoly& g) {
  QPoly a = f, b = g;
  while (!b.is_zero()) {
    QPoly r;
    divrem_q(a, b, nullptr, &r);
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  return a.monic();
}

std::pair<Rat, ZPoly> content_primitive(const QPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("content_primitive: zero polynomial");
  Int den_lcm = 1;
  for (const auto& a : f.coeffs()) {
    if (a == 0) continue;
    Int d = den(a);
    den_lcm = den_lcm / gcd_int(den_lcm, d) * d;
  }
  std::vector<Int> scaled(f.coeffs().size());
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    Rat v = f.coeffs()[i] * Rat(den_lcm);
    scaled[i] = num(v);
  }
  ZPoly z{std::move(scaled)};
  Int c = z.content();  // signed with lc(z)
  ZPoly prim = z.primitive_part();
  return {Rat(c) / Rat(den_lcm), prim};
}

bool is_palindromic(const QPoly& f) {
  if (f.is_zero()) return true;
  const auto& c = f.coeffs();
  std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i)
    if (c[i] != c[n - 1 - i]) return false;
  return true;
}

std::vector<Rat> newton_power_sums(const QPoly& P, std::size_t k) {
  if (P.is_zero() || P.leading() != 1)
    throw std::invalid_argument("newton_power_sums: P must be monic");
  const long n = P.degree();
  std::vector<Rat> p(k + 1, Rat(0));  // p[0] unused
  for (std::size_t m = 1; m <= k; ++m) {
    Rat acc = 0;
    long idx = n - static_cast<long>(m);
    if (idx >= 0) acc += Rat(m) * P.coeff(static_cast<std::size_t>(idx));
    for (std::size_t j = 1; j < m; ++j) {
      long c_idx = n - static_cast<long>(j);
      if (c_idx < 0) continue;
      acc += P.coeff(static_cast<std::size_t>(c_idx)) * p[m - j];
    }
    p[m] = -acc;
  }
  return std::vector<Rat>(p.begin() + 1, p.end());
}

std::size_t first_nonzero_power_sum(const QPoly& P, std::size_t k_max) {
  if (P.is_zero() || P.leading() != 1)
    throw std::invalid_argument("first_nonzero_power_sum: P must be monic");
  const long n = P.degree();
  if (n < 1) throw std::invalid_argument("first_nonzero_power_sum: P must be nonconstant");
  std::size_t coeff_min = 0;
  for (long kk = 1; kk <= n; ++kk) {
    if (P.coeff(static_cast<std::size_t>(n - kk)) != 0) {
      coeff_min = static_cast<std::size_t>(kk);
      break;
    }
  }
  if (coeff_min == 0)
    throw std::invalid_argument("first_nonzero_power_sum: P is a pure power of x");
  std::size_t limit = k_max == 0 ? coeff_min : k_max;
  auto sums = newton_power_sums(P, limit);
  for (std::size_t i = 0; i < sums.size(); ++i) {
    if (sums[i] != 0) {
      std::size_t k = i + 1;
      // The first nonzero power sum index coincides with the first index
      // below n carrying a nonzero coefficient.
      if (k != coeff_min)
        throw std::logic_error("first_nonzero_power_sum: index mismatch");
      return k;
    }
  }
  throw std::logic_error("first_nonzero_power_sum: no nonzero sum within bound");
}

ZPoly gcd_z(const ZPoly& f, const ZPoly& g) {
  if (f.is_zero() && g.is_zero()) return ZPoly();
  if (f.is_zero()) return g.primitive_part() * abs(g.content());
  if (g.is_zero()) return f.primitive_part() * abs(f.content());
  Int cf = f.content(), cg = g.content();
  Int c = gcd_int(cf, cg);
  if (c < 0) c = -c;
  QPoly gq = gcd_q(QPoly(f), QPoly(g));
  auto [cc, prim] = content_primitive(gq);
  (void)cc;
  return prim * c;
}

}  // namespace monalg
