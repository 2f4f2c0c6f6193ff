#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <monalg/factorz.hpp>
#include <monalg/qpoly.hpp>

using namespace monalg;

namespace {

ZPoly zp(std::vector<long> coeffs) {
  std::vector<Int> c(coeffs.begin(), coeffs.end());
  return ZPoly(std::move(c));
}

// Independent construction of Phi_n from the Moebius-product definition
// prod_{d|n} (x^d - 1)^{mu(n/d)}; used only as a test oracle.
int mu_oracle(unsigned long n) {
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

ZPoly cyclotomic_oracle(unsigned long n) {
  ZPoly numr(1), denr(1);
  for (unsigned long d = 1; d <= n; ++d) {
    if (n % d) continue;
    ZPoly xd = ZPoly::monomial(1, d) - ZPoly(1);
    int mu = mu_oracle(n / d);
    if (mu == 1) numr = numr * xd;
    if (mu == -1) denr = denr * xd;
  }
  ZPoly q;
  REQUIRE(try_exact_divide(numr, denr, &q));
  return q;
}

ZPoly random_zpoly(Rng& rng, long deg, long max_abs) {
  std::vector<Int> c(static_cast<std::size_t>(deg) + 1);
  for (auto& v : c) v = Int(rng.range(-max_abs, max_abs));
  while (c.back() == 0) c.back() = Int(rng.range(-max_abs, max_abs));
  return ZPoly(std::move(c));
}

}  // namespace

TEST_CASE("factor_z fixed examples") {
  ZFactorization f1 = factor_z(zp({4, 0, 0, 0, 1}));  // x^4+4
  CHECK(f1.content == 1);
  REQUIRE(f1.factors.size() == 2);
  CHECK(f1.factors[0].first == zp({2, -2, 1}));
  CHECK(f1.factors[0].second == 1);
  CHECK(f1.factors[1].first == zp({2, 2, 1}));
  CHECK(f1.factors[1].second == 1);

  ZFactorization f2 = factor_z(zp({-1, 0, 1}));  // x^2-1
  CHECK(f2.content == 1);
  REQUIRE(f2.factors.size() == 2);
  CHECK(f2.factors[0].first == zp({-1, 1}));
  CHECK(f2.factors[1].first == zp({1, 1}));

  ZFactorization f3 = factor_z(zp({0, 6}));  // 6x
  CHECK(f3.content == 6);
  REQUIRE(f3.factors.size() == 1);
  CHECK(f3.factors[0].first == ZPoly::x());
  CHECK(f3.factors[0].second == 1);

  ZFactorization f4 = factor_z(zp({-7}));
  CHECK(f4.content == -7);
  CHECK(f4.factors.empty());

  CHECK_THROWS_AS(factor_z(ZPoly()), std::invalid_argument);
}

TEST_CASE("factor_z handles multiplicities and signs") {
  ZPoly f = zp({1, 1}) * zp({1, 1}) * zp({-1, 1}) * ZPoly(-12) * ZPoly::x();
  ZFactorization fz = factor_z(f);
  CHECK(fz.content == -12);
  REQUIRE(fz.factors.size() == 3);
  CHECK(fz.factors[0].first == zp({-1, 1}));
  CHECK(fz.factors[0].second == 1);
  CHECK(fz.factors[1].first == ZPoly::x());
  CHECK(fz.factors[1].second == 1);
  CHECK(fz.factors[2].first == zp({1, 1}));
  CHECK(fz.factors[2].second == 2);
  CHECK(fz.expand() == f);
}

TEST_CASE("factor_z soundness on random inputs") {
  Rng rng(21);
  for (int i = 0; i < 60; ++i) {
    ZPoly f = random_zpoly(rng, rng.range(1, 9), 30);
    ZFactorization fz = factor_z(f);
    CHECK(fz.expand() == f);
    for (const auto& [g, mult] : fz.factors) {
      CHECK(mult >= 1);
      CHECK(g.leading() > 0);
      CHECK(abs(g.content()) == 1);
    }
    for (std::size_t j = 1; j < fz.factors.size(); ++j)
      CHECK(lex_less(fz.factors[j - 1].first, fz.factors[j].first));
  }
}

TEST_CASE("factor_z recovers random irreducible products") {
  Rng rng(22);
  int rounds = 0;
  while (rounds < 25) {
    // Build a pool of random irreducibles of degree <= 6.
    std::vector<ZPoly> pool;
    while (pool.size() < 4) {
      ZPoly cand = random_zpoly(rng, rng.range(1, 6), 8).primitive_part();
      if (cand.degree() < 1) continue;
      if (!is_irreducible_z(cand)) continue;
      pool.push_back(cand);
    }
    std::map<std::string, std::pair<ZPoly, unsigned>> expected;
    ZPoly prod(1);
    long n_factors = rng.range(1, 4);
    for (long j = 0; j < n_factors; ++j) {
      const ZPoly& pick = pool[rng.below(pool.size())];
      prod = prod * pick;
      auto [it, fresh] =
          expected.emplace(pick.to_string(), std::make_pair(pick, 0u));
      ++it->second.second;
      (void)fresh;
    }
    if (prod.degree() > 14) continue;  // keep the suite fast
    ++rounds;
    ZFactorization fz = factor_z(prod);
    CHECK(abs(fz.content) == 1);
    REQUIRE(fz.factors.size() == expected.size());
    for (const auto& [g, mult] : fz.factors) {
      auto it = expected.find(g.to_string());
      REQUIRE(it != expected.end());
      CHECK(it->second.first == g);
      CHECK(it->second.second == mult);
    }
  }
}

TEST_CASE("is_irreducible_z fixed examples") {
  CHECK(is_irreducible_z(zp({4, 0, 1})));   // x^2+4
  CHECK(!is_irreducible_z(zp({4, 0, 0, 0, 1})));  // x^4+4
  for (int n = 0; n <= 4; ++n) {
    ZPoly f = ZPoly::monomial(1, 1UL << n) + ZPoly(101);
    CAPTURE(n);
    CHECK(is_irreducible_z(f));  // Eisenstein at 101
  }
  CHECK(!is_irreducible_z(zp({2, 2})));  // content 2
  CHECK_THROWS_AS(is_irreducible_z(zp({5})), std::invalid_argument);
  CHECK_THROWS_AS(is_irreducible_z(ZPoly()), std::invalid_argument);
}

TEST_CASE("cyclotomic fixed values") {
  CHECK(cyclotomic(1) == zp({-1, 1}));
  CHECK(cyclotomic(6) == zp({1, -1, 1}));
  CHECK(cyclotomic(8) == zp({1, 0, 0, 0, 1}));
  CHECK(cyclotomic(2) == zp({1, 1}));
  CHECK_THROWS_AS(cyclotomic(0), std::invalid_argument);
}

TEST_CASE("cyclotomic agrees with the Moebius-product oracle") {
  for (unsigned long n = 1; n <= 200; ++n) {
    CAPTURE(n);
    CHECK(cyclotomic(n) == cyclotomic_oracle(n));
  }
}

TEST_CASE("cyclotomic degree, monicity, palindromicity") {
  for (unsigned long n = 1; n <= 500; ++n) {
    const ZPoly phi = cyclotomic(n);
    CAPTURE(n);
    CHECK(phi.degree() == static_cast<long>(euler_phi(n)));
    CHECK(phi.leading() == 1);
    if (n >= 2) CHECK(is_palindromic(QPoly(phi)));
  }
}

TEST_CASE("cyclotomic lift identity") {
  CHECK(verify_cyclotomic_lift(3, 1));
  CHECK(cyclotomic(3) * cyclotomic(6) == zp({1, 0, 1, 0, 1}));
  CHECK(verify_cyclotomic_lift(1, 2));
  CHECK(cyclotomic(1) * cyclotomic(2) * cyclotomic(4) == zp({-1, 0, 0, 0, 1}));
  for (unsigned long n = 1; n <= 25; n += 2)
    for (unsigned m = 0; m <= 5; ++m) {
      CAPTURE(n);
      CAPTURE(m);
      CHECK(verify_cyclotomic_lift(n, m));
    }
  CHECK_THROWS_AS(verify_cyclotomic_lift(4, 1), std::invalid_argument);
}

TEST_CASE("moebius and euler_phi spot values") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(6) == 1);
  CHECK(moebius(30) == -1);
  CHECK(moebius(12) == 0);
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(8) == 4);
  CHECK(euler_phi(101) == 100);
  CHECK(euler_phi(20201) == 20200);  // 20201 is prime
}

TEST_CASE("cyclotomic_monomial_form") {
  auto v1 = cyclotomic_monomial_form(zp({0, -1, 0, 1}));  // x^3-x
  REQUIRE(v1.is_proved());
  CHECK(v1.certificate->x_order == 1);
  CHECK(v1.certificate->indices == std::multiset<unsigned long>{1, 2});

  auto v2 = cyclotomic_monomial_form(zp({1, 0, 1, 0, 1}));  // x^4+x^2+1
  REQUIRE(v2.is_proved());
  CHECK(v2.certificate->x_order == 0);
  CHECK(v2.certificate->indices == std::multiset<unsigned long>{3, 6});

  auto v3 = cyclotomic_monomial_form(zp({2, 1}));
  REQUIRE(v3.is_refuted());
  CHECK(*v3.witness == zp({2, 1}));

  // Multiplicity and sign handling.
  ZPoly f = -(cyclotomic(4) * cyclotomic(4) * cyclotomic(12)) * ZPoly::x();
  auto v4 = cyclotomic_monomial_form(f);
  REQUIRE(v4.is_proved());
  CHECK(v4.certificate->x_order == 1);
  CHECK(v4.certificate->indices == std::multiset<unsigned long>{4, 4, 12});

  CHECK_THROWS_AS(cyclotomic_monomial_form(ZPoly()), std::invalid_argument);
}

TEST_CASE("kronecker_classify") {
  auto v1 = kronecker_classify(zp({1, 0, 1}));
  REQUIRE(v1.is_proved());
  CHECK(v1.certificate->kind == KroneckerKind::IsCyclotomic);
  CHECK(v1.certificate->n == 4);

  auto v2 = kronecker_classify(ZPoly::x());
  REQUIRE(v2.is_proved());
  CHECK(v2.certificate->kind == KroneckerKind::IsX);

  auto v3 = kronecker_classify(zp({4, 0, 1}));
  REQUIRE(v3.is_proved());
  CHECK(v3.certificate->kind == KroneckerKind::RootOutsideDisc);

  auto v4 = kronecker_classify(zp({101, 1}));
  REQUIRE(v4.is_proved());
  CHECK(v4.certificate->kind == KroneckerKind::RootOutsideDisc);

  CHECK_THROWS_AS(kronecker_classify(zp({1, 2})), std::invalid_argument);
  CHECK_THROWS_AS(kronecker_classify(zp({-1, 0, 1})), std::invalid_argument);
}
