#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "monalg/betam.hpp"
#include "monalg/malg.hpp"
#include "monalg/mr.hpp"
#include "monalg/numeric.hpp"
#include "monalg/verdict.hpp"

using namespace monalg;

namespace {

Rat R(long n, long d) { return make_rat(Int(n), Int(d)); }

const PrimeSchedule& S12() {
  static const PrimeSchedule s = gen_primes(12);
  return s;
}

const MonoidHandle& HM() {
  static const MonoidHandle h = MonoidHandle::beta_monoid(S12());
  return h;
}

const MonoidHandle& H34() {
  static const MonoidHandle h = MonoidHandle::m34();
  return h;
}

const MonoidHandle& H12() {
  static const MonoidHandle h = MonoidHandle::m12();
  return h;
}

using Term = MExpr::Term;

MExpr mono(const MonoidHandle& h, const Rat& e, long c = 1) {
  return make_monomial(h, e, Rat(c));
}

Rat pow34(unsigned long j) { return pow_rat(R(3, 4), j); }

// Draws a nonzero expression whose exponents come from a certified pool.
MExpr random_expr(Rng& rng, const MonoidHandle& h, const std::vector<Rat>& pool,
                  int max_terms) {
  for (;;) {
    int k = static_cast<int>(rng.range(1, max_terms));
    std::vector<Term> ts;
    for (int i = 0; i < k; ++i) {
      const Rat& e = pool[static_cast<std::size_t>(rng.below(pool.size()))];
      long c = rng.range(-3, 3);
      if (c == 0) c = 1;
      ts.push_back({e, Rat(c)});
    }
    MExpr f = make_expr(h, std::move(ts));
    if (!f.is_zero()) return f;
  }
}

std::vector<Rat> pool_m34() {
  return {Rat(0), Rat(1),  Rat(2),  R(3, 4),  R(9, 16),
          R(27, 64), R(3, 2), R(9, 4), R(21, 16)};
}

std::vector<Rat> pool_m12() {
  return {Rat(0), Rat(1), R(1, 2), R(3, 4), R(5, 8), Rat(2), R(7, 4),
          R(3, 16)};
}

std::vector<Rat> pool_beta() {
  const PrimeSchedule& s = S12();
  return {Rat(0),
          Rat(1),
          Rat(2),
          2 * s.alpha(1),
          3 * s.alpha(1),
          2 * s.alpha(2),
          2 * s.alpha(1) + s.alpha(2),
          s.beta(1),
          s.beta(3),
          2 * s.beta(2),
          s.beta(1) + s.beta(2)};
}

std::vector<Rat> pool_beta_doubled() {
  const PrimeSchedule& s = S12();
  return {Rat(0),
          2 * s.alpha(1),
          3 * s.alpha(1),
          2 * s.alpha(2),
          3 * s.alpha(2),
          2 * s.alpha(1) + s.alpha(2),
          s.alpha(1) + 2 * s.alpha(2)};
}

// A refutation chain must start at f and strictly descend by proper
// divisors; re-verify every link by exact division.
void check_chain(const MExpr& f, const std::vector<MExpr>& chain,
                 std::size_t expect_size) {
  REQUIRE(chain.size() == expect_size);
  CHECK(chain.front() == f);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    auto dv = divides_fm(chain[i + 1], chain[i]);
    REQUIRE(dv.is_proved());
    CHECK(!dv.certificate->is_constant());
  }
}

}  // namespace

TEST_CASE("monoid handles expose deterministic oracles") {
  const PrimeSchedule& s = S12();

  SUBCASE("names and accessors") {
    CHECK(H34().name() == "m34");
    CHECK(H12().name() == "m12");
    CHECK(HM().name() == "monoidM");
    CHECK(H34().mr_context() != nullptr);
    CHECK(H34().mr_context()->ratio() == R(3, 4));
    CHECK(H34().schedule() == nullptr);
    CHECK(H34().deg_max() == 24);
    CHECK(!H34().is_dyadic());
    CHECK(H12().is_dyadic());
    CHECK(H12().mr_context() == nullptr);
    REQUIRE(HM().schedule() != nullptr);
    CHECK(HM().schedule()->size() == 12);
    CHECK(HM().beta_bound() == 40);
    CHECK(!HM().is_dyadic());
    CHECK_THROWS_AS(MonoidHandle::m34(0), std::invalid_argument);
    CHECK_THROWS_AS(MonoidHandle::beta_monoid(s, 0), std::invalid_argument);
  }

  SUBCASE("membership oracles") {
    CHECK(H34().membership(R(3, 2)) == Outcome::Proved);
    CHECK(H34().membership(R(9, 4)) == Outcome::Proved);
    CHECK(H34().membership(Rat(0)) == Outcome::Proved);
    CHECK(H34().membership(pow34(5)) == Outcome::Proved);
    CHECK(H34().membership(R(1, 4)) == Outcome::Refuted);
    CHECK(H34().membership(R(1, 3)) == Outcome::Refuted);
    CHECK(H34().membership(R(-1, 2)) == Outcome::Refuted);

    CHECK(H12().membership(R(5, 4)) == Outcome::Proved);
    CHECK(H12().membership(Rat(0)) == Outcome::Proved);
    CHECK(H12().membership(R(1, 1024)) == Outcome::Proved);
    CHECK(H12().membership(R(1, 3)) == Outcome::Refuted);
    CHECK(H12().membership(R(-1, 2)) == Outcome::Refuted);

    CHECK(HM().membership(2 * s.alpha(1)) == Outcome::Proved);
    CHECK(HM().membership(s.beta(1)) == Outcome::Proved);
    CHECK(HM().membership(Rat(2)) == Outcome::Proved);
    CHECK(HM().membership(s.alpha(1)) == Outcome::Refuted);
    CHECK(HM().membership(R(1, 2)) == Outcome::Refuted);
  }

  SUBCASE("atom oracles") {
    CHECK(H34().atom_status(Rat(1)) == Outcome::Proved);
    CHECK(H34().atom_status(pow34(5)) == Outcome::Proved);
    CHECK(H34().atom_status(R(3, 2)) == Outcome::Refuted);
    CHECK(H34().atom_status(R(9, 4)) == Outcome::Refuted);
    CHECK(H34().atom_status(R(1, 4)) == Outcome::Refuted);
    CHECK(H34().atom_status(Rat(0)) == Outcome::Refuted);
    CHECK(H34().atom_status(Rat(-1)) == Outcome::Refuted);

    CHECK(H12().atom_status(R(1, 2)) == Outcome::Refuted);
    CHECK(H12().atom_status(Rat(1)) == Outcome::Refuted);

    CHECK(HM().atom_status(Rat(1)) == Outcome::Proved);
    CHECK(HM().atom_status(s.beta(3)) == Outcome::Proved);
    CHECK(HM().atom_status(2 * s.alpha(1)) == Outcome::Proved);
    CHECK(HM().atom_status(Rat(2)) == Outcome::Refuted);
    CHECK(HM().atom_status(s.alpha(1)) == Outcome::Refuted);
  }

  SUBCASE("handle identity follows construction keys") {
    CHECK(MonoidHandle::m34() == MonoidHandle::m34());
    CHECK(MonoidHandle::m34(16) != MonoidHandle::m34());
    CHECK(MonoidHandle::m12() == MonoidHandle::m12());
    CHECK(MonoidHandle::beta_monoid(s) == MonoidHandle::beta_monoid(s));
    CHECK(MonoidHandle::beta_monoid(gen_primes(12)) == HM());
    CHECK(MonoidHandle::beta_monoid(gen_primes(4)) != HM());
    CHECK(MonoidHandle::beta_monoid(s, 1) != HM());
    CHECK(H12() != H34());
  }

  SUBCASE("schedule fingerprints are stable hex digests") {
    std::string fp = schedule_fingerprint(s);
    CHECK(fp.size() == 16);
    for (char c : fp) CHECK(std::isxdigit(static_cast<unsigned char>(c)));
    CHECK(fp == schedule_fingerprint(gen_primes(12)));
    CHECK(fp != schedule_fingerprint(gen_primes(4)));
  }
}

TEST_CASE("expression construction validates and normalizes") {
  const PrimeSchedule& s = S12();

  SUBCASE("terms merge, sort, and drop zeros") {
    MExpr f = make_expr(H34(), {{R(3, 4), Rat(1)}, {Rat(0), Rat(-1)},
                                {R(3, 4), Rat(2)}});
    REQUIRE(f.terms().size() == 2);
    CHECK(f.terms()[0].exponent == R(3, 4));
    CHECK(f.terms()[0].coeff == Rat(3));
    CHECK(f.terms()[1].exponent == Rat(0));
    CHECK(f.terms()[1].coeff == Rat(-1));
    CHECK(f.degree() == R(3, 4));
    CHECK(f.order() == Rat(0));
    CHECK(f.leading_coeff() == Rat(3));
    CHECK(!f.is_zero());
    CHECK(!f.is_constant());
    CHECK(!f.is_monomial());

    MExpr z = make_expr(H34(), {{R(3, 4), Rat(1)}, {R(3, 4), Rat(-1)}});
    CHECK(z.is_zero());
    CHECK(z.terms().empty());
    CHECK(z.is_constant());
    CHECK(z == make_zero(H34()));
    CHECK_THROWS_AS(z.degree(), std::invalid_argument);
    CHECK_THROWS_AS(z.order(), std::invalid_argument);
    CHECK_THROWS_AS(z.leading_coeff(), std::invalid_argument);

    MExpr c = make_constant(HM(), Rat(7));
    CHECK(c.is_constant());
    CHECK(c.is_monomial());
    CHECK(c.degree() == Rat(0));
    MExpr m = mono(HM(), Rat(2));
    CHECK(m.is_monomial());
    CHECK(!m.is_constant());
  }

  SUBCASE("every exponent must certify in the handle's monoid") {
    CHECK_THROWS_AS(mono(H34(), R(1, 4)), std::invalid_argument);
    CHECK_THROWS_AS(mono(H12(), R(1, 3)), std::invalid_argument);
    CHECK_THROWS_AS(mono(HM(), s.alpha(1)), std::invalid_argument);
    CHECK_THROWS_AS(mono(H12(), R(-1, 2)), std::invalid_argument);
    // Unresolved membership is rejected too: with a single beta index the
    // bounded search can neither certify nor refute this element.
    MonoidHandle tight = MonoidHandle::beta_monoid(s, 1);
    CHECK(tight.membership(2 * s.beta(2) + 2 * s.alpha(3)) ==
          Outcome::Unknown);
    CHECK_THROWS_AS(mono(tight, 2 * s.beta(2) + 2 * s.alpha(3)),
                    std::invalid_argument);
  }

  SUBCASE("rendering") {
    CHECK(make_expr(H34(), {{R(3, 2), Rat(1)}, {Rat(0), Rat(-1)}})
              .to_string() == "x^(3/2) - 1");
    CHECK(make_expr(H34(), {{R(3, 4), Rat(2)}, {Rat(0), Rat(3)}})
              .to_string() == "2*x^(3/4) + 3");
    CHECK(mono(H12(), Rat(1)).to_string() == "x");
    CHECK(mono(H12(), Rat(2), -1).to_string() == "-x^2");
    CHECK(make_zero(H12()).to_string() == "0");
    CHECK(make_constant(H34(), R(5, 2)).to_string() == "5/2");
  }
}

TEST_CASE("ring operations follow monoid algebra laws") {
  SUBCASE("difference of squares") {
    MExpr f = make_expr(H34(), {{R(3, 4), Rat(1)}, {Rat(0), Rat(1)}});
    MExpr g = make_expr(H34(), {{R(3, 4), Rat(1)}, {Rat(0), Rat(-1)}});
    MExpr fg = mul(f, g);
    CHECK(fg == make_expr(H34(), {{R(3, 2), Rat(1)}, {Rat(0), Rat(-1)}}));
    CHECK(sub(f, f).is_zero());
    CHECK(add(f, g) == make_expr(H34(), {{R(3, 4), Rat(2)}}));
  }

  SUBCASE("operations require one shared handle") {
    MExpr a = mono(H34(), Rat(1));
    MExpr b = mono(H12(), Rat(1));
    CHECK_THROWS_AS(add(a, b), std::invalid_argument);
    CHECK_THROWS_AS(mul(a, b), std::invalid_argument);
    CHECK_THROWS_AS(divides_fm(a, b), std::invalid_argument);
    // Equal construction keys interoperate even across factory calls.
    MExpr c = mono(MonoidHandle::beta_monoid(S12()), Rat(1));
    MExpr d = mono(MonoidHandle::beta_monoid(gen_primes(12)), Rat(1));
    CHECK(mul(c, d) == mono(HM(), Rat(2)));
  }

  SUBCASE("random products: distributivity, support, degree, lead") {
    struct Setup {
      const MonoidHandle& h;
      std::vector<Rat> pool;
    };
    const Setup setups[] = {{H34(), pool_m34()},
                            {H12(), pool_m12()},
                            {HM(), pool_beta()}};
    Rng rng(0x5eed0001ULL);
    for (const Setup& su : setups) {
      for (int it = 0; it < 40; ++it) {
        MExpr f = random_expr(rng, su.h, su.pool, 3);
        MExpr g = random_expr(rng, su.h, su.pool, 3);
        MExpr h = random_expr(rng, su.h, su.pool, 3);
        CHECK(mul(add(f, g), h) == add(mul(f, h), mul(g, h)));
        MExpr fg = mul(f, g);
        REQUIRE(!fg.is_zero());
        CHECK(fg.degree() == f.degree() + g.degree());
        CHECK(fg.leading_coeff() == f.leading_coeff() * g.leading_coeff());
        for (const Term& t : fg.terms()) {
          bool is_sum = false;
          for (const Term& a : f.terms()) {
            for (const Term& b : g.terms())
              if (a.exponent + b.exponent == t.exponent) {
                is_sum = true;
                break;
              }
            if (is_sum) break;
          }
          CHECK(is_sum);
        }
      }
    }
  }
}

TEST_CASE("greedy division decides divisibility with certificates") {
  const PrimeSchedule& s = S12();

  SUBCASE("binomial quotients and self-division") {
    MExpr f = make_expr(H34(), {{R(3, 4), Rat(1)}, {Rat(0), Rat(1)}});
    MExpr g = make_expr(H34(), {{R(3, 2), Rat(1)}, {Rat(0), Rat(-1)}});
    auto v = divides_fm(f, g);
    REQUIRE(v.is_proved());
    CHECK(*v.certificate ==
          make_expr(H34(), {{R(3, 4), Rat(1)}, {Rat(0), Rat(-1)}}));
    auto self = divides_fm(g, g);
    REQUIRE(self.is_proved());
    CHECK(*self.certificate == make_constant(H34(), Rat(1)));
  }

  SUBCASE("refutations") {
    MExpr f = make_expr(H12(), {{Rat(1), Rat(1)}, {Rat(0), Rat(2)}});
    MExpr g = make_expr(H12(), {{Rat(1), Rat(1)}, {Rat(0), Rat(-1)}});
    CHECK(divides_fm(f, g).is_refuted());
    // Leading exponent difference outside the monoid.
    CHECK(divides_fm(mono(H34(), R(3, 4)), mono(H34(), Rat(1))).is_refuted());
    CHECK(divides_fm(mono(HM(), s.beta(0)), mono(HM(), s.beta(1)))
              .is_refuted());
  }

  SUBCASE("near-unit quotients certify through the membership search") {
    auto v = divides_fm(mono(HM(), s.beta(1)), mono(HM(), Rat(2)));
    REQUIRE(v.is_proved());
    CHECK(*v.certificate == mono(HM(), Rat(1) + s.alpha(1)));
  }

  SUBCASE("rational coefficients divide exactly") {
    MExpr f = make_expr(H12(), {{R(1, 2), Rat(2)}, {Rat(0), Rat(1)}});
    MExpr h = make_expr(H12(), {{R(1, 2), R(1, 2)}, {Rat(0), Rat(-3)}});
    auto v = divides_fm(f, mul(f, h));
    REQUIRE(v.is_proved());
    CHECK(*v.certificate == h);
  }

  SUBCASE("edge cases and reporting discipline") {
    MExpr f = make_expr(H12(), {{Rat(1), Rat(1)}, {Rat(0), Rat(2)}});
    auto onzero = divides_fm(f, make_zero(H12()));
    REQUIRE(onzero.is_proved());
    CHECK(onzero.certificate->is_zero());
    CHECK_THROWS_AS(divides_fm(make_zero(H12()), f), std::invalid_argument);
    // A binding step budget is reported as Unknown, never as a refutation.
    MExpr h = make_expr(H12(), {{Rat(2), Rat(1)}, {Rat(1), Rat(1)},
                                {Rat(0), Rat(1)}});
    auto capped = divides_fm(f, mul(f, h), 1);
    REQUIRE(capped.is_unknown());
    CHECK(capped.bound == 1);
    auto full = divides_fm(f, mul(f, h));
    REQUIRE(full.is_proved());
    CHECK(*full.certificate == h);
  }

  SUBCASE("random round trips recover the cofactor exactly") {
    struct Setup {
      const MonoidHandle& h;
      std::vector<Rat> pool;
    };
    const Setup setups[] = {{H34(), pool_m34()},
                            {H12(), pool_m12()},
                            {HM(), pool_beta()}};
    Rng rng(0x5eed0002ULL);
    for (const Setup& su : setups) {
      for (int it = 0; it < 120; ++it) {
        MExpr f = random_expr(rng, su.h, su.pool, 3);
        MExpr h = random_expr(rng, su.h, su.pool, 3);
        auto v = divides_fm(f, mul(f, h));
        REQUIRE(v.is_proved());
        CHECK(*v.certificate == h);
      }
    }
  }
}

TEST_CASE("accp support scans exponents for stable elements") {
  SUBCASE("an atom exponent settles the question") {
    MExpr f = make_expr(H34(), {{R(3, 4), Rat(1)}, {R(3, 2), Rat(1)}});
    auto v = accp_supported(f);
    REQUIRE(v.is_proved());
    CHECK(v.certificate->exponent == R(3, 4));
    CHECK(v.certificate->element.kind == MrAccpCert::Kind::Atom);
    CHECK(v.certificate->element.atom_index == 1);
  }

  SUBCASE("a constant term settles it through zero") {
    MExpr f = make_expr(H34(), {{Rat(0), Rat(1)}, {R(3, 2), Rat(1)}});
    auto v = accp_supported(f);
    REQUIRE(v.is_proved());
    CHECK(v.certificate->exponent == Rat(0));
    CHECK(v.certificate->element.kind == MrAccpCert::Kind::Zero);
  }

  SUBCASE("monomials on a power exponent qualify") {
    auto v = accp_supported(mono(H34(), pow34(2), 5));
    REQUIRE(v.is_proved());
    CHECK(v.certificate->exponent == R(9, 16));
    CHECK(v.certificate->element.atom_index == 2);
  }

  SUBCASE("non-atoms stay unresolved at the stated depth") {
    MExpr f = make_expr(H34(), {{Rat(3), Rat(1)}, {R(3, 2), Rat(1)}});
    auto v = accp_supported(f);
    REQUIRE(v.is_unknown());
    CHECK(v.bound == 8);
    CHECK(accp_supported(f, 3).bound == 3);
  }

  SUBCASE("domain errors") {
    CHECK_THROWS_AS(accp_supported(make_zero(H34())), std::invalid_argument);
    CHECK_THROWS_AS(accp_supported(mono(H12(), R(1, 2))),
                    std::invalid_argument);
    CHECK_THROWS_AS(accp_supported(mono(HM(), Rat(1))), std::invalid_argument);
  }
}

TEST_CASE("expression indicators take extrema over the support") {
  const PrimeSchedule& s = S12();

  SUBCASE("infinite indicator is the minimum") {
    CHECK(indicator_inf_expr(make_expr(
              HM(), {{s.beta(0), Rat(1)}, {2 * s.alpha(1), Rat(1)}})) == 0);
    CHECK(indicator_inf_expr(make_expr(
              HM(), {{s.beta(0), Rat(1)}, {s.beta(1), Rat(1)}})) == 1);
    CHECK(indicator_inf_expr(mono(HM(), 2 * s.beta(3))) == 2);
    CHECK(indicator_inf_expr(make_constant(HM(), Rat(1))) == 0);
    CHECK_THROWS_AS(indicator_inf_expr(make_zero(HM())),
                    std::invalid_argument);
    CHECK_THROWS_AS(indicator_inf_expr(mono(H34(), Rat(1))),
                    std::invalid_argument);
  }

  SUBCASE("rung indicator is the maximum") {
    CHECK(indicator_n_expr(mono(HM(), 2 * s.alpha(2)), 2) == 2);
    CHECK(indicator_n_expr(mono(HM(), s.beta(1)), 1) == -1);
    CHECK(indicator_n_expr(make_constant(HM(), Rat(1)), 1) == 0);
    MExpr mixed =
        make_expr(HM(), {{s.beta(1), Rat(1)}, {2 * s.alpha(1), Rat(1)}});
    CHECK(indicator_n_expr(mixed, 1) == 2);
    CHECK(indicator_inf_expr(mixed) == 0);
    CHECK(indicator_n_expr(mono(HM(), Rat(2)), 2) == 0);
  }

  SUBCASE("rung window and domain errors") {
    CHECK_THROWS_AS(indicator_n_expr(mono(HM(), Rat(2)), 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(indicator_n_expr(mono(HM(), Rat(1)), 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(indicator_n_expr(mono(HM(), Rat(1)), 13),
                    std::invalid_argument);
    CHECK_THROWS_AS(indicator_n_expr(make_zero(HM()), 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(indicator_n_expr(mono(H12(), Rat(1)), 1),
                    std::invalid_argument);
  }
}

TEST_CASE("indicator laws verify on concrete pairs") {
  const PrimeSchedule& s = S12();

  SUBCASE("near-unit square at rung two") {
    MExpr f = mono(HM(), s.beta(0));
    auto rep = verify_indicator_expr_lemmas(f, f, 2);
    CHECK(rep.inf_f == 1);
    CHECK(rep.inf_g == 1);
    CHECK(rep.inf_fg == 2);
    CHECK(rep.product_inf_superadditive);
    CHECK(rep.n_f == 0);
    CHECK(rep.n_fg == 0);
    CHECK(rep.product_n_additive);
    CHECK(!rep.zero_inf_case);
    CHECK(rep.k0 == 2);
    CHECK(rep.nonnegative_tail);
    CHECK(rep.vanishing_tail);
    CHECK(rep.pass);
  }

  SUBCASE("doubled-pattern additivity at rung one") {
    MExpr f = mono(HM(), 2 * s.alpha(1));
    MExpr g = mono(HM(), 3 * s.alpha(1));
    auto rep = verify_indicator_expr_lemmas(f, g, 1);
    CHECK(rep.n_f == 2);
    CHECK(rep.n_g == 3);
    CHECK(rep.n_fg == 5);
    CHECK(rep.product_n_additive);
    CHECK(rep.inf_f == 0);
    CHECK(rep.zero_inf_case);
    CHECK(rep.k0 == 2);
    CHECK(rep.nonnegative_tail);
    CHECK(rep.vanishing_tail);
    CHECK(rep.pass);
  }

  SUBCASE("window and handle errors") {
    MExpr one = mono(HM(), Rat(1));
    CHECK_THROWS_AS(verify_indicator_expr_lemmas(one, one, 1),
                    std::invalid_argument);
    auto rep = verify_indicator_expr_lemmas(one, one, 2);
    CHECK(rep.k0 == 2);
    CHECK(rep.pass);
    CHECK_THROWS_AS(verify_indicator_expr_lemmas(one, make_zero(HM()), 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_indicator_expr_lemmas(one, one, 0),
                    std::invalid_argument);
    MExpr d = mono(H12(), Rat(1));
    CHECK_THROWS_AS(verify_indicator_expr_lemmas(d, d, 2),
                    std::invalid_argument);
  }
}

TEST_CASE("indicator laws hold on random pairs") {
  Rng rng(0x5eed0003ULL);
  const std::vector<Rat> mixed = pool_beta();
  for (int it = 0; it < 150; ++it) {
    MExpr f = random_expr(rng, HM(), mixed, 3);
    MExpr g = random_expr(rng, HM(), mixed, 3);
    auto rep = verify_indicator_expr_lemmas(f, g, 2);
    REQUIRE(rep.pass);
  }
  // Doubled/tripled-pattern exponents force the zero-minimum case and its
  // nonnegative-tail clause.
  const std::vector<Rat> doubled = pool_beta_doubled();
  for (int it = 0; it < 150; ++it) {
    MExpr f = random_expr(rng, HM(), doubled, 3);
    MExpr g = random_expr(rng, HM(), doubled, 3);
    auto rep = verify_indicator_expr_lemmas(f, g, 2);
    REQUIRE(rep.zero_inf_case);
    REQUIRE(rep.pass);
  }
}

TEST_CASE("chain search descends the near-unit ladder") {
  const PrimeSchedule& s = S12();

  SUBCASE("the doubled near-unit chain under x^2") {
    MExpr f = mono(HM(), Rat(2));
    auto v = chain_search_fm(f, 5);
    REQUIRE(v.is_refuted());
    check_chain(f, *v.witness, 6);
    for (std::size_t i = 0; i < v.witness->size(); ++i)
      CHECK((*v.witness)[i] == mono(HM(), 2 * s.beta(i)));
    auto deep = chain_search_fm(f, 12);
    REQUIRE(deep.is_refuted());
    CHECK(deep.witness->back() == mono(HM(), 2 * s.beta(12)));
    // The generated ladder is exhausted one rung past its last index.
    CHECK(chain_search_fm(f, 13).is_unknown());
  }

  SUBCASE("candidate budget caps the divisor scan") {
    MExpr f = mono(HM(), 2 * s.beta(5));
    auto capped = chain_search_fm(f, 1, 2);
    REQUIRE(capped.is_unknown());
    CHECK(capped.bound == 2);
    auto found = chain_search_fm(f, 2);
    REQUIRE(found.is_refuted());
    CHECK((*found.witness)[1] == mono(HM(), 2 * s.beta(6)));
    CHECK((*found.witness)[2] == mono(HM(), 2 * s.beta(7)));
  }

  SUBCASE("non-monomial supports shift along the same ladder") {
    MExpr f = make_expr(
        HM(), {{Rat(2) + 2 * s.alpha(1), Rat(3)}, {Rat(2), Rat(1)}});
    auto v = chain_search_fm(f, 3);
    REQUIRE(v.is_refuted());
    check_chain(f, *v.witness, 4);
  }

  SUBCASE("atoms and units are certified stable") {
    auto unit = chain_search_fm(make_constant(HM(), Rat(5)), 4);
    REQUIRE(unit.is_proved());
    CHECK(unit.certificate->kind == FmAccpCert::Kind::Unit);
    auto beta_atom = chain_search_fm(mono(HM(), s.beta(2)), 4);
    REQUIRE(beta_atom.is_proved());
    CHECK(beta_atom.certificate->kind == FmAccpCert::Kind::AtomExponent);
    CHECK(beta_atom.certificate->exponent == s.beta(2));
    auto doubled_atom = chain_search_fm(mono(HM(), 2 * s.alpha(1)), 4);
    REQUIRE(doubled_atom.is_proved());
    CHECK(doubled_atom.certificate->kind == FmAccpCert::Kind::AtomExponent);
  }

  SUBCASE("two-beta monomials descend through the residual search") {
    MExpr f = mono(HM(), s.beta(0) + s.beta(1));
    auto v = chain_search_fm(f, 3);
    REQUIRE(v.is_refuted());
    check_chain(f, *v.witness, 4);
  }

  SUBCASE("domain errors") {
    CHECK_THROWS_AS(chain_search_fm(make_zero(HM()), 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(chain_search_fm(mono(HM(), Rat(2)), 0),
                    std::invalid_argument);
  }
}

TEST_CASE("chain search handles dyadic and ratio families") {
  SUBCASE("halving exponents refutes stabilization over dyadics") {
    MExpr f = make_expr(H12(), {{Rat(1), Rat(1)}, {Rat(0), Rat(-1)}});
    auto v = chain_search_fm(f, 4);
    REQUIRE(v.is_refuted());
    check_chain(f, *v.witness, 5);
    for (std::size_t i = 0; i < v.witness->size(); ++i)
      CHECK((*v.witness)[i] ==
            make_expr(H12(), {{make_rat(Int(1), pow_int(Int(2), i)), Rat(1)},
                              {Rat(0), Rat(-1)}}));
    MExpr m = mono(H12(), R(3, 2));
    auto mv = chain_search_fm(m, 3);
    REQUIRE(mv.is_refuted());
    check_chain(m, *mv.witness, 4);
    CHECK((*mv.witness)[3] == mono(H12(), R(3, 16)));
  }

  SUBCASE("certified irreducible dyadic expressions are stable") {
    MExpr f = make_expr(H12(), {{Rat(1), Rat(1)}, {Rat(0), Rat(2)}});
    auto v = chain_search_fm(f, 4);
    REQUIRE(v.is_proved());
    CHECK(v.certificate->kind == FmAccpCert::Kind::AtomExpression);
    MExpr scaled = make_expr(H12(), {{Rat(1), Rat(3)}, {Rat(0), Rat(6)}});
    CHECK(chain_search_fm(scaled, 4).is_proved());
  }

  SUBCASE("power monomials over the ratio monoid") {
    auto atom = chain_search_fm(mono(H34(), pow34(2)), 3);
    REQUIRE(atom.is_proved());
    CHECK(atom.certificate->kind == FmAccpCert::Kind::AtomExponent);
    CHECK(atom.certificate->exponent == R(9, 16));
    MExpr f = mono(H34(), Rat(3));
    auto v = chain_search_fm(f, 3);
    REQUIRE(v.is_refuted());
    check_chain(f, *v.witness, 4);
    CHECK((*v.witness)[1] == mono(H34(), Rat(2)));
    CHECK((*v.witness)[2] == mono(H34(), Rat(1)));
    CHECK((*v.witness)[3] == make_constant(H34(), Rat(1)));
    CHECK(chain_search_fm(f, 4).is_unknown());
  }

  SUBCASE("lifted factorization finds binomial divisors") {
    MExpr g = make_expr(H34(), {{R(3, 2), Rat(1)}, {Rat(0), Rat(-1)}});
    auto v = chain_search_fm(g, 1);
    REQUIRE(v.is_refuted());
    CHECK((*v.witness)[1] ==
          make_expr(H34(), {{R(3, 4), Rat(1)}, {Rat(0), Rat(-1)}}));
    CHECK(chain_search_fm(g, 2).is_unknown());

    MExpr h = make_expr(H34(), {{R(3, 4), Rat(1)}, {R(3, 2), Rat(1)}});
    auto hv = chain_search_fm(h, 1);
    REQUIRE(hv.is_refuted());
    CHECK((*hv.witness)[1] ==
          make_expr(H34(), {{R(3, 4), Rat(1)}, {Rat(0), Rat(1)}}));
  }

  SUBCASE("supported but unfactored expressions stay unresolved") {
    MExpr f = make_expr(H34(), {{R(3, 4), Rat(1)}, {Rat(0), Rat(1)}});
    CHECK(accp_supported(f).is_proved());
    auto v = chain_search_fm(f, 1);
    REQUIRE(v.is_unknown());
    CHECK(v.bound == 32);
  }
}
