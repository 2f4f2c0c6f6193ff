#include "monalg/betam.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace monalg {
namespace {

// Extension stops here: rung sizes grow super-exponentially, so inputs whose
// denominators require more rungs than this are rejected rather than chased.
constexpr std::size_t kLadderCap = 96;

// Node allowance for the beta-multiset searches; exhaustion downgrades a
// would-be refutation to Unknown.
constexpr std::size_t kSearchBudget = 4000000;

Int ceil_div(const Int& a, const Int& b) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int mod_nonneg(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;  // mpz_mod already yields a value in [0, m)
}

Int mod_inverse(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::logic_error("mod_inverse: arguments are not coprime");
  return r;
}

SchedulePair first_pair() {
  SchedulePair pr;
  pr.q = next_prime_above(100);
  pr.p = next_prime_above(200 * pr.q);
  return pr;
}

SchedulePair next_pair(const SchedulePair& prev) {
  SchedulePair pr;
  pr.q = next_prime_above(prev.p);
  Int threshold = ceil_div(2 * pr.q * prev.p, prev.q);
  if (threshold < pr.q) threshold = pr.q;
  pr.p = next_prime_above(threshold);
  return pr;
}

// Working copy of a schedule that can grow past the frozen rungs. Growth is
// deterministic (the same generator rule), so results never depend on how
// many rungs the caller froze; the schedule itself is never mutated.
struct Ladder {
  std::vector<SchedulePair> pairs;
  std::vector<Rat> betas;  // betas[j] = beta_j for j = 0..pairs.size()

  explicit Ladder(const PrimeSchedule& sched) : pairs(sched.pairs()) {
    betas.reserve(pairs.size() + 1);
    betas.emplace_back(1);
    for (const SchedulePair& pr : pairs)
      betas.push_back(betas.back() - make_rat(pr.q, pr.p));
  }

  std::size_t size() const { return pairs.size(); }
  const Int& q(unsigned long n) const { return pairs[n - 1].q; }
  const Int& p(unsigned long n) const { return pairs[n - 1].p; }
  Rat alpha(unsigned long n) const { return make_rat(q(n), p(n)); }
  const Rat& beta(unsigned long j) const { return betas[j]; }

  void ensure(std::size_t n) {
    if (n <= pairs.size()) return;
    if (n > kLadderCap)
      throw std::invalid_argument(
          "PrimeSchedule: input needs rungs beyond the extension cap");
    while (pairs.size() < n) {
      pairs.push_back(next_pair(pairs.back()));
      betas.push_back(betas.back() -
                      make_rat(pairs.back().q, pairs.back().p));
    }
  }
};

// Splits d > 0 into ladder primes, extending the ladder as needed. Returns
// the ascending rungs whose prime divides d, or nullopt when d has a foreign
// or repeated prime factor (no element of N or M has such a denominator).
std::optional<std::vector<unsigned long>> split_denominator(Int d,
                                                            Ladder& lad) {
  std::vector<unsigned long> rungs;
  for (unsigned long n = 1; d > 1; ++n) {
    lad.ensure(n);
    const Int& pn = lad.p(n);
    if (pn > d) return std::nullopt;  // leftover factors are foreign
    if (mpz_divisible_p(d.get_mpz_t(), pn.get_mpz_t())) {
      mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), pn.get_mpz_t());
      if (mpz_divisible_p(d.get_mpz_t(), pn.get_mpz_t()))
        return std::nullopt;  // repeated prime: valuation below -1
      rungs.push_back(n);
    }
  }
  return rungs;
}

bool member_N0_ladder(const Int& nu, Ladder& lad) {
  if (nu < 0) throw std::invalid_argument("member_N0: nu must be nonnegative");
  if (nu == 0) return true;
  lad.ensure(2);
  Int q1 = lad.q(1);
  if (nu > q1 * lad.q(2) - q1 - lad.q(2)) return true;  // past the Frobenius gap
  // Generators above nu cannot contribute, so collect the rest and enumerate
  // multiplicities of the larger ones; divisibility settles the smallest.
  std::vector<Int> gens{q1};
  for (unsigned long i = 2;; ++i) {
    lad.ensure(i);
    if (lad.q(i) > nu) break;
    gens.push_back(lad.q(i));
  }
  struct Rec {
    const std::vector<Int>& gens;
    bool run(const Int& rest, std::size_t k) const {
      if (k == 0)
        return mpz_divisible_p(rest.get_mpz_t(), gens[0].get_mpz_t()) != 0;
      for (Int used = 0; used <= rest; used += gens[k])
        if (run(rest - used, k - 1)) return true;
      return false;
    }
  };
  return Rec{gens}.run(nu, gens.size() - 1);
}

std::optional<NCanonical> decompose_ladder(const Rat& q, Ladder& lad) {
  if (q < 0)
    throw std::invalid_argument(
        "canonical_decompose_N: q must be nonnegative");
  auto rungs = split_denominator(den(q), lad);
  if (!rungs) return std::nullopt;
  NCanonical form;
  Rat rest = q;
  for (unsigned long n : *rungs) {
    // The unique residue c in [0, p_n) with v_{p_n}(q - c alpha_n) >= 0
    // solves c * q_n * (den(q)/p_n) = num(q) modulo p_n.
    const Int& pn = lad.p(n);
    Int w = den(q) / pn;
    Int c = mod_nonneg(
        num(q) * mod_inverse(mod_nonneg(lad.q(n) * w, pn), pn), pn);
    if (c == 0) throw std::logic_error("canonical_decompose_N: zero residue");
    rest -= Rat(c) * lad.alpha(n);
    form.c.emplace(n, c);
  }
  if (!is_integer(rest) || rest < 0) return std::nullopt;
  form.nu = num(rest);
  if (!member_N0_ladder(form.nu, lad)) return std::nullopt;
  return form;
}

// Membership of a canonical form in the span of the A2/A3 patterns.
bool form_in_gen_A(const NCanonical& form) {
  if (form.nu > 0) return true;
  for (const auto& [n, c] : form.c)
    if (c >= 2) return true;
  return form.c.empty();  // only the zero element remains eligible
}

struct BetaSearchNode {
  Rat residual;
  unsigned long min_index = 0;
  std::vector<unsigned long> picks;
};

// Expands one breadth-first level of the beta-multiset search: children pick
// a beta with index >= the parent's last pick, keeping residuals nonnegative.
std::vector<BetaSearchNode> expand_level(const std::vector<BetaSearchNode>& level,
                                         unsigned long max_index,
                                         Ladder& lad) {
  std::vector<BetaSearchNode> next;
  for (const BetaSearchNode& node : level) {
    for (unsigned long j = node.min_index; j <= max_index; ++j) {
      Rat r = node.residual - lad.beta(j);
      if (r < 0) continue;  // later betas are smaller, so keep scanning
      BetaSearchNode child{std::move(r), j, node.picks};
      child.picks.push_back(j);
      next.push_back(std::move(child));
    }
  }
  return next;
}

}  // namespace

const Int& PrimeSchedule::q(unsigned long n) const {
  if (n == 0 || n > pairs_.size())
    throw std::invalid_argument("PrimeSchedule::q: rung out of range");
  return pairs_[n - 1].q;
}

const Int& PrimeSchedule::p(unsigned long n) const {
  if (n == 0 || n > pairs_.size())
    throw std::invalid_argument("PrimeSchedule::p: rung out of range");
  return pairs_[n - 1].p;
}

Rat PrimeSchedule::alpha(unsigned long n) const { return make_rat(q(n), p(n)); }

const Rat& PrimeSchedule::beta(unsigned long n) const {
  if (n > pairs_.size())
    throw std::invalid_argument("PrimeSchedule::beta: rung out of range");
  return betas_[n];
}

namespace {

// Returns nullptr when the pair list satisfies every schedule invariant, or
// a description of the first violation. Primality is optional because pairs
// fresh from the generator are prime by construction.
const char* check_invariants(const std::vector<SchedulePair>& pairs,
                             bool check_primality) {
  if (pairs.empty()) return "schedule must have at least one rung";
  if (pairs.front().q <= 100) return "q_1 must exceed 100";
  Rat partial_sum = 0;
  Rat prev_alpha;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const SchedulePair& pr = pairs[i];
    if (check_primality && (!is_prime(pr.q) || !is_prime(pr.p)))
      return "schedule entries must be prime";
    if (pr.q >= pr.p || (i + 1 < pairs.size() && pr.p >= pairs[i + 1].q))
      return "rungs must interleave as q_n < p_n < q_{n+1}";
    Rat a = make_rat(pr.q, pr.p);
    if (i == 0 && 200 * a >= 1) return "alpha_1 must stay below 1/200";
    if (i > 0 && 2 * a >= prev_alpha)
      return "alpha must at least halve per rung";
    partial_sum += a;
    prev_alpha = a;
  }
  // Halving makes the tail beyond the last rung smaller than its alpha, so
  // this bound certifies the full series.
  if (partial_sum + prev_alpha >= make_rat(1, 100))
    return "alpha series must sum below 1/100";
  return nullptr;
}

}  // namespace

PrimeSchedule gen_primes(unsigned long k) {
  if (k == 0) throw std::invalid_argument("gen_primes: k must be positive");
  std::vector<SchedulePair> pairs;
  pairs.reserve(k);
  pairs.push_back(first_pair());
  while (pairs.size() < k) pairs.push_back(next_pair(pairs.back()));
  if (const char* err = check_invariants(pairs, false))
    throw std::logic_error(std::string("gen_primes: ") + err);
  PrimeSchedule sched;
  sched.pairs_ = std::move(pairs);
  sched.betas_.reserve(sched.pairs_.size() + 1);
  sched.betas_.emplace_back(1);
  for (const SchedulePair& pr : sched.pairs_)
    sched.betas_.push_back(sched.betas_.back() - make_rat(pr.q, pr.p));
  return sched;
}

PrimeSchedule schedule_from_pairs(std::vector<SchedulePair> pairs) {
  if (const char* err = check_invariants(pairs, true))
    throw std::invalid_argument(std::string("schedule_from_pairs: ") + err);
  PrimeSchedule sched;
  sched.pairs_ = std::move(pairs);
  sched.betas_.reserve(sched.pairs_.size() + 1);
  sched.betas_.emplace_back(1);
  for (const SchedulePair& pr : sched.pairs_)
    sched.betas_.push_back(sched.betas_.back() - make_rat(pr.q, pr.p));
  return sched;
}

Int NCanonical::sigma() const {
  Int s = 0;
  for (const auto& [n, cn] : c) s += cn;
  return s;
}

bool member_N0(const Int& nu, const PrimeSchedule& sched) {
  Ladder lad(sched);
  return member_N0_ladder(nu, lad);
}

std::optional<NCanonical> canonical_decompose_N(const Rat& q,
                                                const PrimeSchedule& sched) {
  Ladder lad(sched);
  return decompose_ladder(q, lad);
}

Rat recompose_N(const NCanonical& form, const PrimeSchedule& sched) {
  Ladder lad(sched);
  Rat acc(form.nu);
  for (const auto& [n, cn] : form.c) {
    if (n == 0 || cn <= 0)
      throw std::invalid_argument("recompose_N: malformed canonical form");
    lad.ensure(n);
    acc += Rat(cn) * lad.alpha(n);
  }
  return acc;
}

AClass classify_A(const Rat& q, const PrimeSchedule& sched) {
  if (q <= 0) throw std::invalid_argument("classify_A: q must be positive");
  Ladder lad(sched);
  auto form = decompose_ladder(q, lad);
  if (!form)
    throw std::invalid_argument("classify_A: q is not in the ambient monoid");
  if (form->nu != 0) return AClass::NotInA123;
  std::size_t twos = 0, threes = 0;
  for (const auto& [n, c] : form->c) {
    if (c >= 4) return AClass::NotInA123;
    if (c == 2) ++twos;
    if (c == 3) ++threes;
  }
  if (twos == 0 && threes == 0) return AClass::A1;  // q > 0: support nonempty
  if (twos == 1 && threes == 0) return AClass::A2;
  if (twos == 0 && threes == 1) return AClass::A3;
  return AClass::NotInA123;
}

bool in_gen_A(const Rat& q, const PrimeSchedule& sched) {
  if (q < 0) throw std::invalid_argument("in_gen_A: q must be nonnegative");
  Ladder lad(sched);
  auto form = decompose_ladder(q, lad);
  return form.has_value() && form_in_gen_A(*form);
}

MVerdict membership_M(const Rat& q, const PrimeSchedule& sched,
                      unsigned long beta_bound) {
  if (q < 0) throw std::invalid_argument("membership_M: q must be nonnegative");
  if (beta_bound == 0)
    throw std::invalid_argument("membership_M: beta_bound must be positive");
  Ladder lad(sched);
  auto rungs = split_denominator(den(q), lad);
  if (!rungs) {
    MVerdict v;
    v.outcome = Outcome::Refuted;  // denominator support alone obstructs
    return v;
  }
  unsigned long nstar = rungs->empty() ? 0 : rungs->back();
  unsigned long max_index = std::min<unsigned long>(nstar + 1, beta_bound);
  lad.ensure(max_index);
  // The index-collapse rewriting needs every multiset size to stay below
  // p_1; beyond that the exhausted search no longer proves absence.
  bool exhaustive = nstar + 1 <= beta_bound && 2 * q < Rat(lad.p(1));
  std::size_t nodes = 0;
  std::vector<BetaSearchNode> level{BetaSearchNode{q, 0, {}}};
  while (!level.empty()) {
    for (const BetaSearchNode& node : level) {
      if (++nodes > kSearchBudget) return MVerdict::unknown(beta_bound);
      auto form = decompose_ladder(node.residual, lad);
      if (form && form_in_gen_A(*form))
        return MVerdict::proved(MCertificate{node.picks, std::move(*form)});
    }
    level = expand_level(level, max_index, lad);
  }
  if (exhaustive) {
    MVerdict v;
    v.outcome = Outcome::Refuted;
    v.bound = static_cast<long>(max_index);
    return v;
  }
  return MVerdict::unknown(beta_bound);
}

unsigned long indicator_inf(const Rat& b, const PrimeSchedule& sched,
                            unsigned long index_bound) {
  if (!membership_M(b, sched, index_bound).is_proved())
    throw std::invalid_argument(
        "indicator_inf: element is not certified in the monoid");
  Ladder lad(sched);
  auto rungs = split_denominator(den(b), lad);
  unsigned long nstar = rungs->empty() ? 0 : rungs->back();
  unsigned long max_index = std::min<unsigned long>(nstar + 1, index_bound);
  lad.ensure(max_index);
  unsigned long best = 0;
  unsigned long depth = 0;
  std::vector<BetaSearchNode> level{BetaSearchNode{b, 0, {}}};
  while (!level.empty()) {
    for (const BetaSearchNode& node : level) {
      auto form = decompose_ladder(node.residual, lad);
      if (form && form_in_gen_A(*form)) {
        best = depth;  // depth equals the number of betas subtracted
        break;
      }
    }
    level = expand_level(level, max_index, lad);
    ++depth;
  }
  return best;
}

Int indicator_n(const Rat& b, unsigned long n, const PrimeSchedule& sched) {
  if (n == 0 || n > sched.size())
    throw std::invalid_argument(
        "indicator_n: n is outside the generated schedule");
  if (b == 0) return 0;
  Ladder lad(sched);
  Int d = den(b);
  if (!split_denominator(d, lad))
    throw std::invalid_argument(
        "indicator_n: b is not representable over the generators");
  const Int& pn = sched.p(n);
  if (!mpz_divisible_p(d.get_mpz_t(), pn.get_mpz_t())) return 0;
  // b = u / (p_n w): the condition v_{p_n}(b - s alpha_n) >= 0 forces
  // s = u (q_n w)^{-1} mod p_n; fold into the symmetric range.
  Int w = d / pn;
  Int s = mod_nonneg(
      num(b) * mod_inverse(mod_nonneg(sched.q(n) * w, pn), pn), pn);
  if (2 * s > pn - 1) s -= pn;
  return s;
}

MAtomVerdict is_atom_M(const Rat& q, const PrimeSchedule& sched,
                       unsigned long bound) {
  if (!membership_M(q, sched, bound).is_proved())
    throw std::invalid_argument(
        "is_atom_M: element is not certified in the monoid");
  if (q == 0)
    throw std::invalid_argument(
        "is_atom_M: zero is a unit, not an atom candidate");
  Ladder lad(sched);
  auto rungs = split_denominator(den(q), lad);
  unsigned long nstar = rungs->empty() ? 0 : rungs->back();
  // q equals a beta only if its denominator carries every rung prime up to
  // n*, so a single comparison settles membership in B.
  if (q == lad.beta(nstar))
    return MAtomVerdict::proved({MAtomCert::Kind::BetaAtom, nstar});
  auto form = decompose_ladder(q, lad);
  if (form && form->nu == 0) {
    std::size_t twos = 0, threes = 0;
    unsigned long special = 0;
    bool plain = true;
    for (const auto& [rung, c] : form->c) {
      if (c == 2) ++twos, special = rung;
      if (c == 3) ++threes, special = rung;
      if (c >= 4) plain = false;
    }
    if (plain && twos + threes == 1)
      return MAtomVerdict::proved({twos == 1 ? MAtomCert::Kind::A2Atom
                                             : MAtomCert::Kind::A3Atom,
                                   special});
  }
  // Two-part splits: a non-atom admits a factorization whose first atom is a
  // beta in the collapsed index window or a doubled/tripled alpha on a rung
  // bounded by the value itself.
  auto refute = [&](const Rat& part) -> std::optional<MAtomVerdict> {
    Rat other = q - part;
    if (other <= 0 || part <= 0) return std::nullopt;
    if (!membership_M(part, sched, bound).is_proved()) return std::nullopt;
    if (!membership_M(other, sched, bound).is_proved()) return std::nullopt;
    return MAtomVerdict::refuted({part, other});
  };
  for (unsigned long j = 0; j <= std::min<unsigned long>(nstar + 1, bound);
       ++j) {
    lad.ensure(j);
    if (lad.beta(j) >= q) continue;
    if (auto r = refute(lad.beta(j))) return *r;
  }
  unsigned long rung_cap = nstar + 1;
  while (rung_cap + 1 <= kLadderCap &&
         (lad.ensure(rung_cap + 1), Rat(lad.q(rung_cap + 1)) <= q))
    ++rung_cap;
  for (unsigned long i = 1; i <= rung_cap; ++i) {
    lad.ensure(i);
    for (int mult = 2; mult <= 3; ++mult) {
      if (auto r = refute(Rat(mult) * lad.alpha(i))) return *r;
    }
  }
  return MAtomVerdict::unknown(static_cast<long>(bound));
}

MChain non_accp_chain_M(unsigned long count, const PrimeSchedule& sched) {
  if (count == 0)
    throw std::invalid_argument("non_accp_chain_M: count must be positive");
  if (count > sched.size())
    throw std::invalid_argument(
        "non_accp_chain_M: schedule has fewer rungs than count");
  MChain chain;
  chain.elements.reserve(count + 1);
  chain.differences.reserve(count);
  for (unsigned long n = 0; n <= count; ++n)
    chain.elements.push_back(2 * sched.beta(n));
  for (unsigned long n = 0; n < count; ++n) {
    Rat diff = 2 * sched.alpha(n + 1);
    if (chain.elements[n] != chain.elements[n + 1] + diff)
      throw std::logic_error("non_accp_chain_M: chain relation failed");
    if (classify_A(diff, sched) != AClass::A2)
      throw std::logic_error("non_accp_chain_M: difference is not doubled");
    chain.differences.push_back(std::move(diff));
  }
  return chain;
}

}  // namespace monalg
