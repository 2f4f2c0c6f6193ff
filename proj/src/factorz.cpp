#include "monalg/factorz.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "fppoly.hpp"

namespace monalg {

namespace {

ZPoly reduce_mod(const ZPoly& a, const Int& m) {
  std::vector<Int> c = a.coeffs();
  for (Int& v : c) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return ZPoly(std::move(c));
}

ZPoly sym_mod(const ZPoly& a, const Int& m) {
  std::vector<Int> c = a.coeffs();
  Int half = m / 2;
  for (Int& v : c) {
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    if (v > half) v -= m;
  }
  return ZPoly(std::move(c));
}

// a = q*h + r mod m with h monic and deg r < deg h; coefficients in [0, m).
void divrem_monic_mod(const ZPoly& a, const ZPoly& h, const Int& m, ZPoly* q,
                      ZPoly* r) {
  if (h.is_zero() || h.leading() != 1)
    throw std::logic_error("divrem_monic_mod: divisor not monic");
  ZPoly rem = reduce_mod(a, m);
  ZPoly quo;
  while (rem.degree() >= h.degree()) {
    ZPoly t = ZPoly::monomial(rem.leading(), rem.degree() - h.degree());
    quo = quo + t;
    rem = reduce_mod(rem - t * h, m);
  }
  if (q) *q = quo;
  if (r) *r = rem;
}

ZPoly zpoly_from_fp(const detail::FpPoly& f) {
  std::vector<Int> c(f.c.size());
  for (std::size_t i = 0; i < f.c.size(); ++i) c[i] = Int(f.c[i]);
  return ZPoly(std::move(c));
}

// Quadratic Hensel lifting of f = g*h (mod p), h monic, gcd(g, h) = 1 in
// F_p[x], to modulus m >= target (m a power of p). Returns the lifted pair
// with h monic and the final modulus.
struct PairLift {
  ZPoly g, h;
  Int modulus;
};

PairLift hensel_pair(const ZPoly& f, const detail::FpPoly& g0,
                     const detail::FpPoly& h0, std::uint64_t p,
                     const Int& target) {
  detail::FpPoly s0, t0;
  detail::FpPoly one = fp_xgcd(g0, h0, &s0, &t0);
  if (!one.is_one())
    throw std::logic_error("hensel_pair: factors not coprime mod p");
  ZPoly g = zpoly_from_fp(g0), h = zpoly_from_fp(h0);
  ZPoly s = zpoly_from_fp(s0), t = zpoly_from_fp(t0);
  Int m(static_cast<unsigned long>(p));
  while (m < target) {
    Int m2 = m * m;
    ZPoly e = reduce_mod(f - g * h, m2);
    ZPoly qq, rr;
    divrem_monic_mod(s * e, h, m2, &qq, &rr);
    ZPoly g1 = reduce_mod(g + t * e + qq * g, m2);
    ZPoly h1 = reduce_mod(h + rr, m2);
    ZPoly b = reduce_mod(s * g1 + t * h1 - ZPoly(1), m2);
    ZPoly cc, dd;
    divrem_monic_mod(s * b, h1, m2, &cc, &dd);
    s = reduce_mod(s - dd, m2);
    t = reduce_mod(t - t * b - cc * g1, m2);
    g = g1;
    h = h1;
    if (g.degree() != g0.degree() || h.degree() != h0.degree() ||
        h.leading() != 1)
      throw std::logic_error("hensel_pair: degree drift");
    m = m2;
  }
  return {g, h, m};
}

// Lifts the modular factorization work = lc * prod(fac_i) (mod p) to monic
// factors mod M (M = p^K > target lower bound), by peeling one factor at a
// time. Returns factors reduced mod M.
std::vector<ZPoly> lift_factorization(const ZPoly& work,
                                      std::vector<detail::FpPoly> facs,
                                      std::uint64_t p, const Int& M) {
  std::vector<ZPoly> lifted;
  ZPoly rest = work;
  for (std::size_t i = 0; i + 1 < facs.size(); ++i) {
    std::uint64_t lc_mod =
        mpz_fdiv_ui(rest.leading().get_mpz_t(), static_cast<unsigned long>(p));
    detail::FpPoly g0 =
        detail::fp_mul(detail::fp_const(lc_mod, p), facs[i]);
    detail::FpPoly h0 = detail::fp_const(1, p);
    for (std::size_t j = i + 1; j < facs.size(); ++j)
      h0 = detail::fp_mul(h0, facs[j]);
    PairLift pl = hensel_pair(rest, g0, h0, p, M);
    // Monicize g: its leading coefficient is a unit mod the p-power modulus.
    ZPoly gM = reduce_mod(pl.g, M);
    Int lc = gM.leading(), inv;
    if (mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), M.get_mpz_t()) == 0)
      throw std::logic_error("lift_factorization: lc not invertible");
    lifted.push_back(reduce_mod(gM * ZPoly(inv), M));
    rest = reduce_mod(pl.h, M);
  }
  lifted.push_back(rest);
  return lifted;
}

// Coefficient bound: any factor h of g over Z (scaled by lc g) satisfies
// |coeff| <= (n+1) * 2^n * H(g) * |lc g| with n = deg g, H = height.
Int factor_coeff_bound(const ZPoly& g) {
  long n = g.degree();
  Int height = 0;
  for (const Int& c : g.coeffs()) {
    Int a = abs(c);
    if (a > height) height = a;
  }
  Int b = Int(n + 1) * height * abs(g.leading());
  mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
  return b;
}

// Zassenhaus recombination: g primitive, positive lc, squarefree, deg >= 2.
// Inputs: monic p-adic factors mod M of g. Appends the irreducible integer
// factors of g to out.
void recombine(ZPoly g, std::vector<ZPoly> padic, const Int& M,
               std::vector<ZPoly>* out) {
  std::vector<std::size_t> active(padic.size());
  for (std::size_t i = 0; i < padic.size(); ++i) active[i] = i;
  std::size_t s = 1;
  while (2 * s <= active.size()) {
    // Enumerate index subsets of the active list of cardinality s.
    std::vector<std::size_t> pick(s);
    for (std::size_t i = 0; i < s; ++i) pick[i] = i;
    bool removed = false;
    while (true) {
      ZPoly cand = ZPoly(g.leading());
      for (std::size_t i : pick)
        cand = reduce_mod(cand * padic[active[i]], M);
      cand = sym_mod(cand, M);
      ZPoly prim = cand.primitive_part();
      ZPoly quot;
      if (prim.degree() >= 1 && try_exact_divide(g, prim, &quot)) {
        out->push_back(prim);
        g = quot.primitive_part();
        std::vector<std::size_t> next;
        for (std::size_t i = 0; i < active.size(); ++i)
          if (std::find(pick.begin(), pick.end(), i) == pick.end())
            next.push_back(active[i]);
        active = std::move(next);
        removed = true;
        break;
      }
      // Next subset in lexicographic order.
      std::size_t k = s;
      while (k > 0 && pick[k - 1] == active.size() - s + (k - 1)) --k;
      if (k == 0) break;
      ++pick[k - 1];
      for (std::size_t i = k; i < s; ++i) pick[i] = pick[i - 1] + 1;
    }
    if (!removed) ++s;
  }
  if (g.degree() > 0) out->push_back(g);
}

// g primitive, positive lc, squarefree, nonconstant, g(0) != 0 allowed to be
// anything. Returns irreducible factors (primitive, positive lc), unsorted.
std::vector<ZPoly> factor_squarefree_primitive(const ZPoly& g) {
  std::vector<ZPoly> out;
  if (g.degree() == 1) {
    out.push_back(g);
    return out;
  }
  // Pick an odd prime keeping g squarefree with full degree; among the first
  // few admissible primes prefer the fewest modular factors.
  const int kPrimesToTry = 5;
  std::uint64_t best_p = 0;
  std::vector<detail::FpPoly> best_facs;
  int tried = 0;
  for (std::uint64_t p = 3; tried < kPrimesToTry; p += 2) {
    if (!is_prime(Int(static_cast<unsigned long>(p)))) continue;
    if (mpz_fdiv_ui(g.leading().get_mpz_t(), static_cast<unsigned long>(p)) ==
        0)
      continue;
    detail::FpPoly gp = detail::fp_from_zpoly(g, p);
    detail::FpPoly d = detail::fp_derivative(gp);
    if (d.is_zero() || !detail::fp_gcd(gp, d).is_one()) continue;
    ++tried;
    Rng rng(0x6d6f6e616c67ULL ^ p);
    std::vector<detail::FpPoly> facs =
        detail::fp_factor_squarefree(detail::fp_monic(gp), rng);
    if (facs.size() == 1) {
      out.push_back(g);
      return out;
    }
    if (best_p == 0 || facs.size() < best_facs.size()) {
      best_p = p;
      best_facs = std::move(facs);
    }
  }
  if (best_p == 0)
    throw std::logic_error("factor_squarefree_primitive: no admissible prime");
  Int bound = factor_coeff_bound(g);
  Int M(static_cast<unsigned long>(best_p));
  while (M <= 2 * bound) M *= static_cast<unsigned long>(best_p);
  std::vector<ZPoly> padic = lift_factorization(g, best_facs, best_p, M);
  ZPoly check = ZPoly(g.leading());
  for (const ZPoly& u : padic) check = reduce_mod(check * u, M);
  if (!(check == reduce_mod(g, M)))
    throw std::logic_error("factor_squarefree_primitive: lift check failed");
  recombine(g, std::move(padic), M, &out);
  return out;
}

// Yun's squarefree decomposition of a primitive, positive-lc, nonconstant
// polynomial: returns pairwise coprime squarefree parts with multiplicities.
std::vector<std::pair<ZPoly, unsigned>> yun_squarefree(const ZPoly& f) {
  std::vector<std::pair<ZPoly, unsigned>> out;
  ZPoly fp = f.derivative();
  ZPoly a0 = gcd_z(f, fp);
  if (a0.degree() == 0) {
    out.emplace_back(f, 1);
    return out;
  }
  ZPoly b, c;
  if (!try_exact_divide(f, a0, &b) || !try_exact_divide(fp, a0, &c))
    throw std::logic_error("yun_squarefree: inexact division");
  ZPoly d = c - b.derivative();
  unsigned i = 1;
  while (b.degree() > 0) {
    ZPoly a = gcd_z(b, d);
    if (a.degree() > 0) out.emplace_back(a, i);
    ZPoly b2, c2;
    if (!try_exact_divide(b, a, &b2) || !try_exact_divide(d, a, &c2))
      throw std::logic_error("yun_squarefree: inexact division");
    b = b2;
    d = c2 - b.derivative();
    ++i;
  }
  return out;
}

}  // namespace

ZPoly ZFactorization::expand() const {
  ZPoly r(content);
  for (const auto& [f, mult] : factors)
    for (unsigned i = 0; i < mult; ++i) r = r * f;
  return r;
}

ZFactorization factor_z(const ZPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("factor_z: zero polynomial");
  ZFactorization out;
  out.content = f.content();
  ZPoly w = f.primitive_part();
  if (w.degree() <= 0) return out;
  long ord = w.order();
  if (ord > 0) {
    out.factors.emplace_back(ZPoly::x(), static_cast<unsigned>(ord));
    w = w.shift_down(ord);
  }
  if (w.degree() > 0) {
    for (const auto& [part, mult] : yun_squarefree(w))
      for (const ZPoly& irr : factor_squarefree_primitive(part))
        out.factors.emplace_back(irr, mult);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
  return out;
}

bool is_irreducible_z(const ZPoly& f) {
  if (f.is_zero() || f.degree() < 1)
    throw std::invalid_argument("is_irreducible_z: constant input");
  ZFactorization fz = factor_z(f);
  return abs(fz.content) == 1 && fz.factors.size() == 1 &&
         fz.factors[0].second == 1;
}

unsigned long euler_phi(unsigned long n) {
  if (n == 0) throw std::invalid_argument("euler_phi: n = 0");
  unsigned long r = n;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    r -= r / p;
    while (n % p == 0) n /= p;
  }
  if (n > 1) r -= r / n;
  return r;
}

int moebius(unsigned long n) {
  if (n == 0) throw std::invalid_argument("moebius: n = 0");
  int sign = 1;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

ZPoly cyclotomic(unsigned long n) {
  if (n == 0) throw std::invalid_argument("cyclotomic: n = 0");
  static std::mutex mu;
  static std::map<unsigned long, ZPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  ZPoly phi;
  if (n == 1) {
    phi = ZPoly::x() - ZPoly(1);
  } else {
    ZPoly num = ZPoly::monomial(1, static_cast<long>(n)) - ZPoly(1);
    ZPoly den(1);
    for (unsigned long d = 1; d < n; ++d)
      if (n % d == 0) den = den * cyclotomic(d);
    if (!try_exact_divide(num, den, &phi))
      throw std::logic_error("cyclotomic: inexact division");
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(n, phi);
  return phi;
}

bool verify_cyclotomic_lift(unsigned long n, unsigned m) {
  if (n == 0 || n % 2 == 0)
    throw std::invalid_argument("verify_cyclotomic_lift: n must be odd");
  ZPoly lhs = cyclotomic(n).compose_monomial(1L << m);
  ZPoly rhs(1);
  unsigned long idx = n;
  for (unsigned i = 0; i <= m; ++i, idx *= 2) rhs = rhs * cyclotomic(idx);
  return lhs == rhs;
}

Verdict<CycloMonomialForm, ZPoly> cyclotomic_monomial_form(const ZPoly& f) {
  if (f.is_zero())
    throw std::invalid_argument("cyclotomic_monomial_form: zero polynomial");
  using V = Verdict<CycloMonomialForm, ZPoly>;
  CycloMonomialForm form;
  ZPoly work = f;
  form.x_order = static_cast<unsigned long>(work.order());
  work = work.shift_down(work.order());
  if (abs(work.content()) != 1) return V::refuted(work);
  if (work.leading() < 0) work = -work;
  // Every cyclotomic divisor Phi_m has phi(m) <= deg work, so m <= 2 deg^2.
  for (unsigned long m = 1; work.degree() > 0 &&
                            m <= 2 * static_cast<unsigned long>(work.degree()) *
                                     static_cast<unsigned long>(work.degree());
       ++m) {
    if (euler_phi(m) > static_cast<unsigned long>(work.degree())) continue;
    ZPoly phi = cyclotomic(m), quot;
    while (work.degree() >= phi.degree() &&
           try_exact_divide(work, phi, &quot)) {
      form.indices.insert(m);
      work = quot;
    }
  }
  if (work.degree() == 0) return V::proved(std::move(form));
  return V::refuted(work);
}

Verdict<KroneckerClass> kronecker_classify(const ZPoly& f) {
  if (f.is_zero() || f.degree() < 1 || f.leading() != 1)
    throw std::invalid_argument("kronecker_classify: input not monic");
  if (!is_irreducible_z(f))
    throw std::invalid_argument("kronecker_classify: input reducible");
  using V = Verdict<KroneckerClass>;
  if (f == ZPoly::x()) return V::proved({KroneckerKind::IsX, 0});
  auto form = cyclotomic_monomial_form(f);
  if (form.is_proved()) {
    // Irreducible and not x: exactly one cyclotomic index, no x power.
    if (form.certificate->x_order != 0 || form.certificate->indices.size() != 1)
      throw std::logic_error("kronecker_classify: malformed cyclotomic form");
    return V::proved(
        {KroneckerKind::IsCyclotomic, *form.certificate->indices.begin()});
  }
  // Kronecker: a monic irreducible with all roots in the closed unit disc is
  // x or cyclotomic, so a non-cyclotomic has a root of magnitude > 1.
  return V::proved({KroneckerKind::RootOutsideDisc, 0});
}

}  // namespace monalg
