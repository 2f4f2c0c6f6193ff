#include "fppoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace monalg::detail {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

}  // namespace

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  // Fermat; p prime and a != 0 mod p.
  std::uint64_t r = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = mulmod(r, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return r;
}

FpPoly fp_from_zpoly(const ZPoly& f, std::uint64_t p) {
  FpPoly r;
  r.p = p;
  r.c.reserve(f.coeffs().size());
  Int pz(static_cast<unsigned long>(p));
  for (const auto& a : f.coeffs()) {
    Int m;
    mpz_mod(m.get_mpz_t(), a.get_mpz_t(), pz.get_mpz_t());  // result in [0, p)
    r.c.push_back(m.get_ui());
  }
  r.trim();
  return r;
}

FpPoly fp_x(std::uint64_t p) {
  FpPoly r;
  r.p = p;
  r.c = {0, 1};
  return r;
}

FpPoly fp_const(std::uint64_t a, std::uint64_t p) {
  FpPoly r;
  r.p = p;
  if (a % p) r.c = {a % p};
  return r;
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b) {
  FpPoly r;
  r.p = a.p;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    std::uint64_t v = (i < a.c.size() ? a.c[i] : 0) + (i < b.c.size() ? b.c[i] : 0);
    r.c[i] = v >= a.p ? v - a.p : v;
  }
  r.trim();
  return r;
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b) {
  FpPoly r;
  r.p = a.p;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    std::uint64_t x = i < a.c.size() ? a.c[i] : 0;
    std::uint64_t y = i < b.c.size() ? b.c[i] : 0;
    r.c[i] = x >= y ? x - y : x + a.p - y;
  }
  r.trim();
  return r;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
  FpPoly r;
  r.p = a.p;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    unsigned __int128 ai = a.c[i];
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j] == 0) continue;
      unsigned __int128 v = ai * b.c[j] + r.c[i + j];
      r.c[i + j] = static_cast<std::uint64_t>(v % a.p);
    }
  }
  r.trim();
  return r;
}

FpPoly fp_monic(const FpPoly& a) {
  if (a.is_zero()) return a;
  FpPoly r = a;
  if (r.leading() == 1) return r;
  std::uint64_t inv = inv_mod(r.leading(), r.p);
  for (auto& v : r.c) v = mulmod(v, inv, r.p);
  return r;
}

void fp_divrem(const FpPoly& a, const FpPoly& b, FpPoly* q, FpPoly* r) {
  if (b.is_zero()) throw std::invalid_argument("fp_divrem: zero divisor");
  FpPoly rem = a;
  FpPoly quo;
  quo.p = a.p;
  long db = b.degree();
  if (rem.degree() >= db) quo.c.assign(rem.c.size() - b.c.size() + 1, 0);
  std::uint64_t inv = inv_mod(b.leading(), a.p);
  while (!rem.is_zero() && rem.degree() >= db) {
    std::size_t shift = static_cast<std::size_t>(rem.degree() - db);
    std::uint64_t coef = mulmod(rem.leading(), inv, a.p);
    quo.c[shift] = coef;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      std::uint64_t sub = mulmod(coef, b.c[j], a.p);
      std::uint64_t& tgt = rem.c[shift + j];
      tgt = tgt >= sub ? tgt - sub : tgt + a.p - sub;
    }
    rem.trim();
  }
  quo.trim();
  if (q) *q = quo;
  if (r) *r = rem;
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& m) {
  FpPoly r;
  fp_divrem(a, m, nullptr, &r);
  return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = fp_mod(a, b);
    a = b;
    b = r;
  }
  return fp_monic(a);
}

FpPoly fp_xgcd(const FpPoly& a, const FpPoly& b, FpPoly* s, FpPoly* t) {
  FpPoly r0 = a, r1 = b;
  FpPoly s0 = fp_const(1, a.p), s1 = fp_const(0, a.p);
  FpPoly t0 = fp_const(0, a.p), t1 = fp_const(1, a.p);
  while (!r1.is_zero()) {
    FpPoly q, r;
    fp_divrem(r0, r1, &q, &r);
    r0 = r1;
    r1 = r;
    FpPoly s2 = fp_sub(s0, fp_mul(q, s1));
    s0 = s1;
    s1 = s2;
    FpPoly t2 = fp_sub(t0, fp_mul(q, t1));
    t0 = t1;
    t1 = t2;
  }
  if (r0.is_zero()) throw std::invalid_argument("fp_xgcd: both inputs zero");
  std::uint64_t inv = inv_mod(r0.leading(), a.p);
  FpPoly scale = fp_const(inv, a.p);
  *s = fp_mul(s0, scale);
  *t = fp_mul(t0, scale);
  return fp_mul(r0, scale);
}

FpPoly fp_derivative(const FpPoly& a) {
  FpPoly r;
  r.p = a.p;
  if (a.c.size() <= 1) return r;
  r.c.resize(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i)
    r.c[i - 1] = mulmod(a.c[i], i % a.p, a.p);
  r.trim();
  return r;
}

FpPoly fp_powmod(const FpPoly& base, const Int& e, const FpPoly& m) {
  FpPoly result = fp_const(1, base.p);
  FpPoly b = fp_mod(base, m);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = fp_mod(fp_mul(result, result), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = fp_mod(fp_mul(result, b), m);
  }
  return result;
}

namespace {

bool fp_less(const FpPoly& a, const FpPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.c.size(); i-- > 0;)
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
  return false;
}

FpPoly random_poly_below(long deg, std::uint64_t p, Rng& rng) {
  FpPoly r;
  r.p = p;
  r.c.resize(static_cast<std::size_t>(deg));
  for (auto& v : r.c) v = rng.below(p);
  r.trim();
  return r;
}

// Equal-degree splitting (Cantor-Zassenhaus, p odd): f monic squarefree,
// all irreducible factors of degree d.
void fp_edf(const FpPoly& f, long d, Rng& rng, std::vector<FpPoly>* out) {
  if (f.degree() == d) {
    out->push_back(fp_monic(f));
    return;
  }
  Int exponent = (pow_int(Int(static_cast<unsigned long>(f.p)),
                          static_cast<unsigned long>(d)) -
                  1) /
                 2;
  for (;;) {
    FpPoly a = random_poly_below(f.degree(), f.p, rng);
    if (a.degree() < 1) continue;
    FpPoly g = fp_gcd(a, f);
    if (!g.is_one() && g.degree() < f.degree()) {
      FpPoly h;
      fp_divrem(f, g, &h, nullptr);
      fp_edf(g, d, rng, out);
      fp_edf(h, d, rng, out);
      return;
    }
    FpPoly s = fp_powmod(a, exponent, f);
    s = fp_sub(s, fp_const(1, f.p));
    g = fp_gcd(s, f);
    if (!g.is_one() && g.degree() < f.degree()) {
      FpPoly h;
      fp_divrem(f, g, &h, nullptr);
      fp_edf(g, d, rng, out);
      fp_edf(h, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<FpPoly> fp_factor_squarefree(const FpPoly& f, Rng& rng) {
  std::vector<FpPoly> out;
  FpPoly rest = fp_monic(f);
  // Distinct-degree stage: h tracks x^(p^d) mod f.
  FpPoly h = fp_x(f.p);
  Int p_int(static_cast<unsigned long>(f.p));
  long d = 0;
  while (rest.degree() > 0) {
    ++d;
    if (2 * d > rest.degree()) {
      out.push_back(rest);  // what is left is irreducible
      break;
    }
    h = fp_powmod(h, p_int, rest);
    FpPoly g = fp_gcd(fp_sub(h, fp_x(f.p)), rest);
    if (g.degree() > 0) {
      fp_edf(g, d, rng, &out);
      FpPoly q;
      fp_divrem(rest, g, &q, nullptr);
      rest = q;
      h = fp_mod(h, rest);
    }
  }
  std::sort(out.begin(), out.end(), fp_less);
  return out;
}

}  // namespace monalg::detail
