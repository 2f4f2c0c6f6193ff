#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "monalg/mr.hpp"
#include "monalg/numeric.hpp"

using namespace monalg;

namespace {

Rat rat(long n, long d) { return make_rat(Int(n), Int(d)); }

// Exhaustive search for q as a bounded sum of ratio powers; the reference
// oracle for the digit search.
bool brute_member34(const Rat& q, unsigned deg, long coeff_cap) {
  if (q == 0) return true;
  if (q < 0) return false;
  Rat p(1);
  MrContext ctx = MrContext::mr34();
  struct Walk {
    const MrContext& ctx;
    unsigned deg;
    long cap;
    bool run(const Rat& rest, unsigned i) {
      if (rest == 0) return true;
      if (rest < 0 || i > deg) return false;
      Rat pw = ctx.power(i);  // copy: the cache reallocates as it grows
      for (long c = 0; c <= cap; ++c) {
        Rat take = rest - Rat(c) * pw;
        if (take < 0) break;
        if (run(take, i + 1)) return true;
      }
      return false;
    }
  } walk{ctx, deg, coeff_cap};
  return walk.run(q, 0);
}

}  // namespace

TEST_CASE("ratio context validation and power cache") {
  MrContext ctx = MrContext::mr34();
  CHECK(ctx.ratio() == rat(3, 4));
  CHECK(ctx.power(0) == 1);
  CHECK(ctx.power(2) == rat(9, 16));
  CHECK(ctx.power(5) == rat(243, 1024));

  CHECK_THROWS_AS(MrContext(Rat(0)), std::invalid_argument);
  CHECK_THROWS_AS(MrContext(Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(MrContext(rat(5, 4)), std::invalid_argument);
  CHECK_THROWS_AS(MrContext(rat(-1, 2)), std::invalid_argument);
}

TEST_CASE("membership digit search on pinned values") {
  MrContext ctx = MrContext::mr34();

  auto v1 = membership_mr(rat(21, 16), ctx, 12);
  REQUIRE(v1.is_proved());
  CHECK(*v1.certificate == std::vector<Int>{Int(0), Int(1), Int(1)});

  CHECK(membership_mr(rat(1, 3), ctx, 12).is_refuted());
  CHECK(membership_mr(Rat(0), ctx, 12).is_proved());
  CHECK(membership_mr(Rat(0), ctx, 12).certificate->empty());

  auto v2 = membership_mr(rat(3, 4), ctx, 12);
  REQUIRE(v2.is_proved());
  CHECK(*v2.certificate == std::vector<Int>{Int(0), Int(1)});

  auto v3 = membership_mr(Rat(3), ctx, 12);
  REQUIRE(v3.is_proved());
  CHECK(*v3.certificate == std::vector<Int>{Int(3)});

  CHECK(membership_mr(rat(1, 4), ctx, 12).is_refuted());
  CHECK(membership_mr(rat(5, 4), ctx, 12).is_refuted());
  CHECK(membership_mr(rat(7, 16), ctx, 12).is_refuted());

  // 4*(3/4)^4 rewrites down to 3*(3/4)^3.
  auto v4 = membership_mr(rat(81, 64), ctx, 12);
  REQUIRE(v4.is_proved());
  CHECK(*v4.certificate == std::vector<Int>{Int(0), Int(0), Int(0), Int(3)});

  auto deep = membership_mr(ctx.power(5), ctx, 3);
  CHECK(deep.is_unknown());
  CHECK(deep.bound == 3);
  CHECK(membership_mr(ctx.power(5), ctx, 12).is_proved());

  CHECK_THROWS_AS(membership_mr(rat(-1, 2), ctx, 12), std::invalid_argument);
  CHECK_THROWS_AS(membership_mr(Rat(1), ctx, 0), std::invalid_argument);
}

TEST_CASE("membership generalizes to other ratios") {
  MrContext half(rat(1, 2));
  auto v = membership_mr(rat(5, 8), half, 12);
  REQUIRE(v.is_proved());
  Rat acc(0);
  for (std::size_t i = 0; i < v.certificate->size(); ++i)
    acc += Rat((*v.certificate)[i]) * half.power(i);
  CHECK(acc == rat(5, 8));

  MrContext two5(rat(2, 5));
  auto w = membership_mr(rat(14, 25), two5, 12);
  REQUIRE(w.is_proved());
  CHECK(*w.certificate == std::vector<Int>{Int(0), Int(1), Int(1)});
  CHECK(membership_mr(rat(1, 5), two5, 12).is_refuted());
  CHECK(membership_mr(rat(1, 7), two5, 12).is_refuted());
}

TEST_CASE("membership agrees with the exhaustive oracle") {
  MrContext ctx = MrContext::mr34();
  int members = 0;
  for (long a = 0; a <= 128; ++a) {
    Rat q = rat(a, 64);
    auto v = membership_mr(q, ctx, 12);
    CHECK(!v.is_unknown());
    bool brute = brute_member34(q, 8, 12);
    CHECK(v.is_proved() == brute);
    if (v.is_proved()) {
      ++members;
      Rat acc(0);
      for (std::size_t i = 0; i < v.certificate->size(); ++i)
        acc += Rat((*v.certificate)[i]) * ctx.power(i);
      CHECK(acc == q);
    }
  }
  CHECK(members > 10);
  CHECK(members < 129);
}

TEST_CASE("sparse factorization view recomposes exactly") {
  MrContext ctx = MrContext::mr34();
  MrFactorization f = to_factorization({Int(0), Int(1), Int(1)});
  CHECK(f.coeffs.size() == 2);
  CHECK(f.coeffs.at(1) == 1);
  CHECK(f.coeffs.at(2) == 1);
  CHECK(f.evaluate(ctx) == rat(21, 16));
  CHECK(to_factorization({}).evaluate(ctx) == 0);
  CHECK_THROWS_AS(to_factorization({Int(-1)}), std::invalid_argument);
}

TEST_CASE("monoid divisibility through difference membership") {
  MrContext ctx = MrContext::mr34();
  auto v1 = divides_mr(rat(3, 4), rat(21, 16), ctx, 12);
  REQUIRE(v1.is_proved());
  CHECK(*v1.certificate == std::vector<Int>{Int(0), Int(0), Int(1)});

  CHECK(divides_mr(Rat(2), Rat(1), ctx, 12).is_refuted());
  auto vid = divides_mr(rat(9, 16), rat(9, 16), ctx, 12);
  REQUIRE(vid.is_proved());
  CHECK(vid.certificate->empty());

  // 1 is an atom: nothing proper divides it.
  CHECK(divides_mr(rat(3, 4), Rat(1), ctx, 12).is_refuted());

  CHECK_THROWS_AS(divides_mr(rat(1, 3), Rat(1), ctx, 12),
                  std::invalid_argument);
  CHECK_THROWS_AS(divides_mr(Rat(1), rat(13, 12), ctx, 12),
                  std::invalid_argument);
}

TEST_CASE("generator powers certify as atoms") {
  auto a0 = atoms_mr34(0);
  REQUIRE(a0.size() == 1);
  CHECK(a0[0] == 1);

  auto a2 = atoms_mr34(2);
  REQUIRE(a2.size() == 3);
  CHECK(a2[0] == 1);
  CHECK(a2[1] == rat(3, 4));
  CHECK(a2[2] == rat(9, 16));

  auto a8 = atoms_mr34(8);
  CHECK(a8.size() == 9);
  for (std::size_t i = 1; i < a8.size(); ++i) CHECK(a8[i] < a8[i - 1]);
}

TEST_CASE("explicit chain witnesses the ACCP failure") {
  auto c1 = non_accp_chain_mr34(1);
  REQUIRE(c1.elements.size() == 2);
  CHECK(c1.elements[0] == 3);
  CHECK(c1.elements[1] == rat(9, 4));
  REQUIRE(c1.differences.size() == 1);
  CHECK(c1.differences[0] == rat(3, 4));

  auto c2 = non_accp_chain_mr34(2);
  CHECK(c2.elements[2] == rat(27, 16));
  CHECK(c2.differences[1] == rat(9, 16));

  MrContext ctx = MrContext::mr34();
  auto c50 = non_accp_chain_mr34(50);
  REQUIRE(c50.elements.size() == 51);
  REQUIRE(c50.differences.size() == 50);
  for (std::size_t n = 0; n < 50; ++n) {
    CHECK(c50.elements[n] > c50.elements[n + 1]);
    CHECK(c50.elements[n] - c50.elements[n + 1] == c50.differences[n]);
    CHECK(c50.differences[n] == ctx.power(n + 1));
    CHECK(membership_mr(c50.differences[n], ctx,
                        static_cast<unsigned>(n) + 2)
              .is_proved());
  }
  CHECK_THROWS_AS(non_accp_chain_mr34(0), std::invalid_argument);
}

TEST_CASE("per-element chain condition verdicts") {
  MrContext ctx = MrContext::mr34();

  auto atom = satisfies_accp_mr34(ctx.power(5), 3);
  REQUIRE(atom.is_proved());
  CHECK(atom.certificate->kind == MrAccpCert::Kind::Atom);
  CHECK(atom.certificate->atom_index == 5);

  auto zero = satisfies_accp_mr34(Rat(0), 3);
  REQUIRE(zero.is_proved());
  CHECK(zero.certificate->kind == MrAccpCert::Kind::Zero);

  auto one = satisfies_accp_mr34(Rat(1), 3);
  REQUIRE(one.is_proved());
  CHECK(one.certificate->atom_index == 0);

  auto three = satisfies_accp_mr34(Rat(3), 3);
  REQUIRE(three.is_refuted());
  REQUIRE(three.witness->size() == 4);
  CHECK((*three.witness)[0] == 3);
  for (std::size_t i = 0; i + 1 < three.witness->size(); ++i) {
    Rat gap = (*three.witness)[i] - (*three.witness)[i + 1];
    CHECK(gap > 0);
    CHECK((*three.witness)[i + 1] > 0);
    CHECK(membership_mr(gap, ctx, 16).is_proved());
    CHECK(membership_mr((*three.witness)[i + 1], ctx, 16).is_proved());
  }
  CHECK(satisfies_accp_mr34(Rat(3), 6).is_refuted());

  auto two = satisfies_accp_mr34(Rat(2), 2);
  CHECK(two.is_unknown());
  CHECK(two.bound == 2);

  CHECK_THROWS_AS(satisfies_accp_mr34(rat(1, 3), 3), std::invalid_argument);
  CHECK_THROWS_AS(satisfies_accp_mr34(rat(-3, 4), 3), std::invalid_argument);
  CHECK_THROWS_AS(satisfies_accp_mr34(Rat(1), 0), std::invalid_argument);
}
