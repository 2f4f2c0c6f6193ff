#include "monalg/mr.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

namespace monalg {

namespace {

// Smallest k with den | base^k; both inputs positive, den's primes divide
// base (checked by the caller).
unsigned long min_power_covering(const Int& den, const Int& base) {
  Int cur = 1;
  unsigned long k = 0;
  while (!mpz_divisible_p(cur.get_mpz_t(), den.get_mpz_t())) {
    cur *= base;
    ++k;
  }
  return k;
}

// True iff every prime of v divides b.
bool primes_within(Int v, const Int& b) {
  while (v > 1) {
    Int g = gcd_int(v, b);
    if (g == 1) return false;
    while (mpz_divisible_p(v.get_mpz_t(), g.get_mpz_t()))
      mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
  return true;
}

struct DigitSearch {
  Int a, b;
  std::map<std::pair<Rat, unsigned>, bool> failed;
  unsigned long budget = 200000;
  bool exhausted = false;

  // Digits c with q = c + r*q' and den(q - c) divisible by a; the residue
  // class of c mod a is forced, so the branching is only over carries.
  std::optional<std::vector<Int>> solve(const Rat& q, unsigned levels) {
    if (q == 0) return std::vector<Int>{};
    if (levels == 0) {
      if (is_integer(q) && q > 0) return std::vector<Int>{num(q)};
      return std::nullopt;
    }
    auto key = std::make_pair(q, levels);
    if (failed.count(key)) return std::nullopt;
    if (budget == 0) {
      exhausted = true;
      return std::nullopt;
    }
    --budget;
    Int t = 0;
    if (a > 1) {
      Int vinv;
      if (!mpz_invert(vinv.get_mpz_t(), den(q).get_mpz_t(), a.get_mpz_t()))
        throw std::logic_error("membership_mr: denominator not invertible");
      t = num(q) * vinv;
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t());
    }
    for (Rat c(t); c <= q; c += a) {
      Rat rest = (q - c) * make_rat(b, a);
      auto sub = solve(rest, levels - 1);
      if (sub.has_value()) {
        sub->insert(sub->begin(), num(c));
        return sub;
      }
    }
    failed.emplace(std::move(key), true);
    return std::nullopt;
  }
};

Rat evaluate_cert(const std::vector<Int>& c, const MrContext& ctx) {
  Rat acc(0);
  for (std::size_t i = 0; i < c.size(); ++i)
    acc += Rat(c[i]) * ctx.power(i);
  return acc;
}

}  // namespace

MrContext::MrContext(const Rat& r) : r_(r) {
  if (!(r > 0 && r < 1))
    throw std::invalid_argument("MrContext: ratio must satisfy 0 < r < 1");
  pows_.push_back(Rat(1));
}

MrContext MrContext::mr34() { return MrContext(make_rat(Int(3), Int(4))); }

const Rat& MrContext::power(unsigned long i) const {
  while (pows_.size() <= i) pows_.push_back(pows_.back() * r_);
  return pows_[i];
}

Rat MrFactorization::evaluate(const MrContext& ctx) const {
  Rat acc(0);
  for (const auto& [n, c] : coeffs) acc += Rat(c) * ctx.power(n);
  return acc;
}

MrFactorization to_factorization(const std::vector<Int>& dense) {
  MrFactorization f;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] < 0)
      throw std::invalid_argument("to_factorization: negative multiplicity");
    if (dense[i] != 0) f.coeffs[i] = dense[i];
  }
  return f;
}

MrVerdict membership_mr(const Rat& q, const MrContext& ctx, unsigned deg_max) {
  if (q < 0) throw std::invalid_argument("membership_mr: q must be nonnegative");
  if (deg_max == 0)
    throw std::invalid_argument("membership_mr: deg_max must be positive");
  if (q == 0) return MrVerdict::proved({});

  Int a = num(ctx.ratio());
  Int b = den(ctx.ratio());
  if (!primes_within(den(q), b)) {
    MrVerdict v;
    v.outcome = Outcome::Refuted;
    return v;  // den(q) can never divide den(r)^k
  }
  unsigned long k0 = min_power_covering(den(q), b);
  if (k0 > deg_max) return MrVerdict::unknown(static_cast<long>(deg_max));

  if (a == 1) {
    // r = 1/b: every admissible denominator is reachable with one term.
    std::vector<Int> cert(k0 + 1, Int(0));
    cert[k0] = num(q) * (pow_int(b, k0) / den(q));
    while (!cert.empty() && cert.back() == 0) cert.pop_back();
    return MrVerdict::proved(std::move(cert));
  }

  DigitSearch search{a, b, {}, 200000, false};
  auto sol = search.solve(q, static_cast<unsigned>(k0));
  if (sol.has_value()) {
    while (!sol->empty() && sol->back() == 0) sol->pop_back();
    if (evaluate_cert(*sol, ctx) != q)
      throw std::logic_error("membership_mr: certificate mismatch");
    return MrVerdict::proved(std::move(*sol));
  }
  if (search.exhausted) return MrVerdict::unknown(static_cast<long>(deg_max));
  MrVerdict v;
  v.outcome = Outcome::Refuted;  // the depth-k0 search is complete
  return v;
}

MrVerdict divides_mr(const Rat& a, const Rat& b, const MrContext& ctx,
                     unsigned deg_max) {
  if (!membership_mr(a, ctx, deg_max).is_proved() ||
      !membership_mr(b, ctx, deg_max).is_proved())
    throw std::invalid_argument("divides_mr: inputs must certify as members");
  if (b < a) {
    MrVerdict v;
    v.outcome = Outcome::Refuted;
    return v;
  }
  return membership_mr(b - a, ctx, deg_max);
}

std::vector<Rat> atoms_mr34(unsigned long n_max) {
  MrContext ctx = MrContext::mr34();
  std::vector<Rat> out;
  for (unsigned long n = 0; n <= n_max; ++n) {
    Rat q = ctx.power(n);  // copy: the cache reallocates as it grows
    // Any two-part decomposition into nonzero members splits off a power,
    // so it suffices to test q - r^j for membership.
    unsigned long j_cap = n + 6;
    for (unsigned long j = 0; j <= j_cap; ++j) {
      Rat rest = q - ctx.power(j);
      if (rest <= 0) continue;
      if (membership_mr(rest, ctx, static_cast<unsigned>(j_cap) + 2)
              .is_proved())
        throw std::logic_error("atoms_mr34: generator power decomposed");
    }
    out.push_back(q);
  }
  return out;
}

MrChain34 non_accp_chain_mr34(unsigned long count) {
  if (count == 0)
    throw std::invalid_argument("non_accp_chain_mr34: count must be positive");
  MrContext ctx = MrContext::mr34();
  MrChain34 chain;
  for (unsigned long n = 0; n <= count; ++n)
    chain.elements.push_back(Rat(3) * ctx.power(n));
  for (unsigned long n = 0; n < count; ++n) {
    Rat diff = chain.elements[n] - chain.elements[n + 1];
    if (diff != ctx.power(n + 1))
      throw std::logic_error("non_accp_chain_mr34: step is not an atom");
    if (!membership_mr(diff, ctx, static_cast<unsigned>(n) + 2).is_proved())
      throw std::logic_error("non_accp_chain_mr34: step failed membership");
    chain.differences.push_back(diff);
  }
  return chain;
}

namespace {

// 1 member, 0 non-member, -1 undecidable within the working bounds.
int member34_tristate(const Rat& q, const MrContext& ctx) {
  if (q < 0) return 0;
  if (q == 0) return 1;
  if (!primes_within(den(q), den(ctx.ratio()))) return 0;
  unsigned long k0 = min_power_covering(den(q), den(ctx.ratio()));
  if (k0 > 64) return -1;
  auto v = membership_mr(q, ctx, static_cast<unsigned>(k0 ? k0 : 1));
  if (v.is_unknown()) return -1;
  return v.is_proved() ? 1 : 0;
}

bool extend_chain(const Rat& cur, unsigned remaining, const MrContext& ctx,
                  std::vector<Rat>* chain,
                  std::map<std::pair<Rat, unsigned>, bool>* failed) {
  if (remaining == 0) return true;
  auto key = std::make_pair(cur, remaining);
  if (failed->count(key)) return false;
  unsigned long j_cap =
      (den(cur) == 1 ? 0 : min_power_covering(den(cur), den(ctx.ratio()))) + 6;
  for (unsigned long j = 0; j <= j_cap; ++j) {
    Rat next = cur - ctx.power(j);
    if (next <= 0) continue;
    if (member34_tristate(next, ctx) != 1) continue;
    chain->push_back(next);
    if (extend_chain(next, remaining - 1, ctx, chain, failed)) return true;
    chain->pop_back();
  }
  failed->emplace(std::move(key), true);
  return false;
}

}  // namespace

Verdict<MrAccpCert, std::vector<Rat>> satisfies_accp_mr34(const Rat& q,
                                                          unsigned depth) {
  using V = Verdict<MrAccpCert, std::vector<Rat>>;
  if (depth == 0)
    throw std::invalid_argument("satisfies_accp_mr34: depth must be positive");
  MrContext ctx = MrContext::mr34();
  if (member34_tristate(q, ctx) != 1)
    throw std::invalid_argument("satisfies_accp_mr34: q is not a certified member");
  if (q == 0) return V::proved({MrAccpCert::Kind::Zero, 0});
  // Atoms have divisor set {0, q}: any chain through them stabilizes.
  for (unsigned long n = 0;; ++n) {
    Rat p = ctx.power(n);
    if (p < q) break;
    if (p == q) return V::proved({MrAccpCert::Kind::Atom, n});
  }
  std::vector<Rat> chain{q};
  std::map<std::pair<Rat, unsigned>, bool> failed;
  if (extend_chain(q, depth, ctx, &chain, &failed))
    return V::refuted(std::move(chain));
  return V::unknown(static_cast<long>(depth));
}

}  // namespace monalg
