#include "monalg/dyadic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "monalg/factorz.hpp"
#include "monalg/split.hpp"

namespace monalg {

namespace {

// Hard cap on lifted polynomial size; keeps dense arithmetic honest.
constexpr unsigned long kMaxLiftDegree = 1ul << 14;

Int shifted_num(const DyadicExp& e, unsigned long level) {
  if (level < e.log_den)
    throw std::logic_error("dyadic exponent above requested level");
  Int r;
  mpz_mul_2exp(r.get_mpz_t(), e.num.get_mpz_t(), level - e.log_den);
  return r;
}

// Exact conversion; every coefficient must already be an integer.
ZPoly to_zpoly_exact(const QPoly& f) {
  std::vector<Int> c;
  c.reserve(f.coeffs().size());
  for (const Rat& q : f.coeffs()) {
    if (!is_integer(q))
      throw std::logic_error("to_zpoly_exact: non-integer coefficient");
    c.push_back(num(q));
  }
  return ZPoly(std::move(c));
}

}  // namespace

DyadicExp make_dyadic_exp(Int num, unsigned long log_den) {
  if (num < 0)
    throw std::invalid_argument("make_dyadic_exp: negative numerator");
  if (num == 0) return DyadicExp{};
  while (log_den > 0 && mpz_even_p(num.get_mpz_t())) {
    mpz_fdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), 1);
    --log_den;
  }
  return DyadicExp{std::move(num), log_den};
}

DyadicExp dyadic_add(const DyadicExp& a, const DyadicExp& b) {
  unsigned long level = std::max(a.log_den, b.log_den);
  return make_dyadic_exp(shifted_num(a, level) + shifted_num(b, level), level);
}

bool operator==(const DyadicExp& a, const DyadicExp& b) {
  return a.log_den == b.log_den && a.num == b.num;
}

bool operator!=(const DyadicExp& a, const DyadicExp& b) { return !(a == b); }

bool dyadic_less(const DyadicExp& a, const DyadicExp& b) {
  unsigned long level = std::max(a.log_den, b.log_den);
  return shifted_num(a, level) < shifted_num(b, level);
}

std::string exp_to_string(const DyadicExp& e) {
  if (e.log_den == 0) return e.num.get_str();
  return e.num.get_str() + "/" + pow_int(Int(2), e.log_den).get_str();
}

DyadicPoly::DyadicPoly(const Rat& c) {
  if (c != 0) terms_.push_back({DyadicExp{}, c});
}

DyadicPoly::DyadicPoly(std::vector<Term> terms) {
  for (Term& t : terms) t.first = make_dyadic_exp(t.first.num, t.first.log_den);
  std::sort(terms.begin(), terms.end(), [](const Term& s, const Term& t) {
    return dyadic_less(t.first, s.first);
  });
  for (Term& t : terms) {
    if (!terms_.empty() && terms_.back().first == t.first)
      terms_.back().second += t.second;
    else
      terms_.push_back(std::move(t));
    if (terms_.back().second == 0) terms_.pop_back();
  }
}

DyadicPoly DyadicPoly::from_qpoly(const QPoly& f, unsigned long level) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i)
    if (f.coeff(i) != 0)
      terms.push_back({make_dyadic_exp(Int(static_cast<unsigned long>(i)), level),
                       f.coeff(i)});
  return DyadicPoly(std::move(terms));
}

DyadicPoly DyadicPoly::from_zpoly(const ZPoly& f, unsigned long level) {
  return from_qpoly(QPoly(f), level);
}

DyadicPoly DyadicPoly::monomial(const Rat& c, const DyadicExp& e) {
  if (c == 0) return DyadicPoly();
  return DyadicPoly({{make_dyadic_exp(e.num, e.log_den), c}});
}

DyadicPoly DyadicPoly::x() { return monomial(Rat(1), DyadicExp{Int(1), 0}); }

bool DyadicPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.num == 0);
}

DyadicExp DyadicPoly::degree() const {
  if (is_zero()) throw std::invalid_argument("DyadicPoly::degree: zero expression");
  return terms_.front().first;
}

DyadicExp DyadicPoly::order() const {
  if (is_zero()) throw std::invalid_argument("DyadicPoly::order: zero expression");
  return terms_.back().first;
}

unsigned long DyadicPoly::level() const {
  unsigned long n = 0;
  for (const Term& t : terms_) n = std::max(n, t.first.log_den);
  return n;
}

bool DyadicPoly::integer_coefficients() const {
  for (const Term& t : terms_)
    if (!is_integer(t.second)) return false;
  return true;
}

DyadicPoly DyadicPoly::operator+(const DyadicPoly& o) const {
  std::vector<Term> terms = terms_;
  terms.insert(terms.end(), o.terms_.begin(), o.terms_.end());
  return DyadicPoly(std::move(terms));
}

DyadicPoly DyadicPoly::operator-(const DyadicPoly& o) const {
  std::vector<Term> terms = terms_;
  for (const Term& t : o.terms_) terms.push_back({t.first, -t.second});
  return DyadicPoly(std::move(terms));
}

DyadicPoly DyadicPoly::operator*(const DyadicPoly& o) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size() * o.terms_.size());
  for (const Term& s : terms_)
    for (const Term& t : o.terms_)
      terms.push_back({dyadic_add(s.first, t.first), s.second * t.second});
  return DyadicPoly(std::move(terms));
}

std::string DyadicPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const Term& t : terms_) {
    const Rat& c = t.second;
    Rat mag = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (t.first.num == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << "x";
    if (t.first.log_den == 0) {
      if (t.first.num != 1) out << "^" << t.first.num.get_str();
    } else {
      out << "^(" << exp_to_string(t.first) << ")";
    }
  }
  return out.str();
}

std::pair<unsigned long, QPoly> normalize_level(const DyadicPoly& f) {
  if (f.is_zero())
    throw std::invalid_argument("normalize_level: zero expression");
  unsigned long n = f.level();
  Int top = shifted_num(f.degree(), n);
  if (top > kMaxLiftDegree)
    throw std::invalid_argument("normalize_level: lifted degree too large");
  std::vector<Rat> coeffs(top.get_ui() + 1, Rat(0));
  for (const auto& t : f.terms())
    coeffs[shifted_num(t.first, n).get_ui()] = t.second;
  return {n, QPoly(std::move(coeffs))};
}

QPoly lift_at(const DyadicPoly& f, unsigned long n) {
  if (f.is_zero()) return QPoly();
  auto [lvl, base] = normalize_level(f);
  if (n < lvl) throw std::invalid_argument("lift_at: level below minimum");
  unsigned long shift = n - lvl;
  if (shift >= 64 ||
      static_cast<unsigned long>(base.degree()) > (kMaxLiftDegree >> shift))
    throw std::invalid_argument("lift_at: lifted degree too large");
  return base.compose_monomial(1ul << shift);
}

bool is_quasi_irreducible(const DyadicPoly& f) {
  if (f.is_constant())
    throw std::invalid_argument("is_quasi_irreducible: constant expression");
  if (!f.integer_coefficients())
    throw std::invalid_argument(
        "is_quasi_irreducible: coefficients must be integers");
  // A factorization of the minimal lift maps through x -> x^2 to one of every
  // higher lift, so irreducibility at the minimal level decides all levels.
  return is_irreducible_z(to_zpoly_exact(normalize_level(f).second));
}

Verdict<Qm12IrredCert, DyadicFactorPair> irreducible_qm12(
    const DyadicPoly& f, unsigned long n_max) {
  using V = Verdict<Qm12IrredCert, DyadicFactorPair>;
  if (f.is_constant())
    throw std::invalid_argument("irreducible_qm12: constant expression");
  auto [lvl, base] = normalize_level(f);
  auto [cont, fz] = content_primitive(base);

  // Stable certificates decide every lift at once.
  if (fz.constant_term() != 0 && fz.degree() >= 1) {
    // Lifting x -> x^{2^j} reuses the same nonzero coefficients (leading and
    // constant included), so one Eisenstein prime covers all lifts.
    Int g = 0;
    for (long i = 0; i < fz.degree(); ++i)
      g = gcd_int(g, fz.coeff(static_cast<std::size_t>(i)));
    Int rest = g;
    std::vector<Int> primes;
    for (Int d = 2; d * d <= rest && d < 100000; d = (d == 2 ? Int(3) : d + 2))
      if (mpz_divisible_p(rest.get_mpz_t(), d.get_mpz_t())) {
        primes.push_back(d);
        while (mpz_divisible_p(rest.get_mpz_t(), d.get_mpz_t()))
          mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), d.get_mpz_t());
      }
    if (rest > 1 && is_prime(rest)) primes.push_back(rest);
    for (const Int& p : primes)
      if (!mpz_divisible_p(fz.constant_term().get_mpz_t(),
                           Int(p * p).get_mpz_t()))
        return V::proved({Qm12IrredCert::Kind::EisensteinStable, p, 0});
  }
  if (fz.leading() == 1) {
    // Phi_k(x^2) = Phi_{2k} whenever k is even, so the lifts stay cyclotomic.
    auto form = cyclotomic_monomial_form(fz);
    if (form.is_proved() && form.certificate->x_order == 0 &&
        form.certificate->indices.size() == 1) {
      unsigned long k = *form.certificate->indices.begin();
      if (k % 2 == 0)
        return V::proved({Qm12IrredCert::Kind::EvenCyclotomic, Int(0), k});
    }
  }

  for (unsigned long j = 0; j <= n_max; ++j) {
    if (j >= 64 ||
        static_cast<unsigned long>(fz.degree()) > (kMaxLiftDegree >> j))
      return V::unknown(j == 0 ? -1 : static_cast<long>(j) - 1);
    ZPoly lift = fz.compose_monomial(1ul << j);
    ZFactorization fact = factor_z(lift);
    unsigned pieces = 0;
    for (const auto& [p, mult] : fact.factors) {
      (void)p;
      pieces += mult;
    }
    if (pieces < 2) continue;
    ZPoly cof;
    if (!try_exact_divide(lift, fact.factors[0].first, &cof))
      throw std::logic_error("irreducible_qm12: factor does not divide lift");
    DyadicFactorPair w;
    w.a = DyadicPoly::from_zpoly(fact.factors[0].first, lvl + j);
    w.b = DyadicPoly::from_qpoly(QPoly(cof) * cont, lvl + j);
    return V::refuted(std::move(w));
  }
  return V::unknown(static_cast<long>(n_max));
}

// Atomicity reduces to the integer factor set of the minimal lift:
//  - ord f > 0: the monomial x^{ord f} divides f and has the infinite
//    non-associate divisor chain x^{ord f / 2^k}, so f cannot be atomic.
//  - x and the odd-index cyclotomics gain a fresh irreducible factor at every
//    lift (Phi_d(x^2) = Phi_d * Phi_{2d} for odd d > 1), giving unboundedly
//    many non-associate divisors; any multiple inherits them.
//  - every other integer-irreducible factor has finitely many non-associate
//    divisors, and divisors of a product split factorwise level by level, so
//    finiteness multiplies up and the product is a finite product of atoms.
AtomicityReport is_atomic_qm12(const DyadicPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("is_atomic_qm12: zero expression");
  AtomicityReport rep;
  if (f.is_constant()) {
    rep.atomic = true;  // nonzero constants are units
    return rep;
  }
  if (f.order() != DyadicExp{}) {
    rep.atomic = false;
    rep.offender = DyadicPoly::monomial(Rat(1), f.order());
    return rep;
  }
  auto [lvl, base] = normalize_level(f);
  ZFactorization fact = factor_z(content_primitive(base).second);
  for (const auto& [p, mult] : fact.factors) {
    (void)mult;
    if (p.leading() != 1) continue;  // non-monic irreducibles are never x/Phi
    auto kc = kronecker_classify(p);
    bool bad = kc.certificate->kind == KroneckerKind::IsX ||
               (kc.certificate->kind == KroneckerKind::IsCyclotomic &&
                kc.certificate->n % 2 == 1);
    if (bad) {
      rep.atomic = false;
      rep.offender = DyadicPoly::from_zpoly(p, lvl);
      return rep;
    }
  }
  rep.atomic = true;
  for (const auto& [p, mult] : fact.factors)
    for (unsigned i = 0; i < mult; ++i)
      rep.factors.push_back(DyadicPoly::from_zpoly(p, lvl));
  return rep;
}

namespace {

// Budget counts lift levels below this node; the minimal-m search is capped
// by it and children inherit what the split did not consume.
SplitTree explore_splits(const ZPoly& g, unsigned long lvl,
                         unsigned long budget) {
  SplitTree node;
  node.root = DyadicPoly::from_zpoly(g, lvl);
  for (unsigned long m = 1; m <= budget; ++m) {
    if (m >= 64 ||
        static_cast<unsigned long>(g.degree()) > (kMaxLiftDegree >> m)) {
      node.evidence_bound = m - 1;
      return node;
    }
    if (is_irreducible_z(g.compose_monomial(1ul << m))) continue;
    auto sp = square_split(g.compose_monomial(1ul << (m - 1)));
    if (!sp)
      throw std::logic_error("explore_splits: reducible lift did not split");
    ZPoly a = sp->a;
    ZPoly b = sp->b;
    if (g.leading() < 0) b = -b;  // split normalizes sign; restore the product
    if (lex_less(b, a)) std::swap(a, b);
    node.left = std::make_unique<SplitTree>(
        explore_splits(a, lvl + m, budget - m));
    node.right = std::make_unique<SplitTree>(
        explore_splits(b, lvl + m, budget - m));
    return node;
  }
  node.evidence_bound = budget;
  return node;
}

}  // namespace

SplitTree splitting_tree(const DyadicPoly& f, unsigned long depth) {
  if (depth == 0)
    throw std::invalid_argument("splitting_tree: depth must be positive");
  if (!is_quasi_irreducible(f))
    throw std::invalid_argument(
        "splitting_tree: expression must be quasi-irreducible");
  auto [lvl, base] = normalize_level(f);
  return explore_splits(to_zpoly_exact(base), lvl, depth);
}

std::vector<DyadicPoly> enumerate_divisors_x_minus_1(unsigned long n) {
  if (n == 0)
    throw std::invalid_argument("enumerate_divisors_x_minus_1: n must be positive");
  std::vector<DyadicPoly> out;
  out.reserve(n + 1);
  for (unsigned long j = 0; j <= n; ++j)
    out.push_back(DyadicPoly::from_zpoly(cyclotomic(1ul << j), n));
  return out;
}

std::optional<DyadicPoly> divides_qm12(const DyadicPoly& f,
                                       const DyadicPoly& g) {
  if (f.is_zero()) throw std::invalid_argument("divides_qm12: zero divisor");
  if (g.is_zero()) return DyadicPoly();
  // Lifts are graded by exponent class mod 2^{L-level}, so a quotient in the
  // algebra always descends to the common lift level.
  unsigned long level = std::max(f.level(), g.level());
  QPoly q, r;
  divrem_q(lift_at(g, level), lift_at(f, level), &q, &r);
  if (!r.is_zero()) return std::nullopt;
  return DyadicPoly::from_qpoly(q, level);
}

}  // namespace monalg
