#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "monalg/dyadic.hpp"
#include "monalg/factorz.hpp"
#include "monalg/numeric.hpp"
#include "monalg/qpoly.hpp"
#include "monalg/zpoly.hpp"

using namespace monalg;

namespace {

ZPoly zp(std::vector<long> cs) {
  std::vector<Int> v(cs.begin(), cs.end());
  return ZPoly(std::move(v));
}

DyadicExp de(long num, unsigned long log_den) {
  return make_dyadic_exp(Int(num), log_den);
}

// F(x^{1/2^level}) for coefficients given low to high.
DyadicPoly dz(std::vector<long> cs, unsigned long level) {
  return DyadicPoly::from_zpoly(zp(std::move(cs)), level);
}

DyadicPoly random_dyadic(Rng& rng, long max_num, unsigned long max_logden,
                         long coeff_bound) {
  std::vector<DyadicPoly::Term> terms;
  long k = rng.range(0, 4);
  for (long i = 0; i < k; ++i)
    terms.push_back({de(rng.range(0, max_num), static_cast<unsigned long>(
                                                   rng.range(0, static_cast<long>(max_logden)))),
                     Rat(rng.range(-coeff_bound, coeff_bound))});
  return DyadicPoly(std::move(terms));
}

unsigned tree_height(const SplitTree& t) {
  if (t.is_leaf()) return 0;
  return 1 + std::max(tree_height(*t.left), tree_height(*t.right));
}

void check_products(const SplitTree& t) {
  if (t.is_leaf()) return;
  CHECK(t.left->root * t.right->root == t.root);
  check_products(*t.left);
  check_products(*t.right);
}

bool trees_equal(const SplitTree& a, const SplitTree& b) {
  if (a.root != b.root || a.evidence_bound != b.evidence_bound) return false;
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return true;
  return trees_equal(*a.left, *b.left) && trees_equal(*a.right, *b.right);
}

// All divisors of the lift at (minimal level + extra), mapped back into the
// algebra and keyed by canonical rendering; counts associates once.
std::set<std::string> divisors_at(const DyadicPoly& f, unsigned long extra) {
  unsigned long level = normalize_level(f).first + extra;
  auto [cont, lifted] = content_primitive(lift_at(f, level));
  (void)cont;
  ZFactorization fact = factor_z(lifted);
  std::size_t total = 1;
  for (const auto& [p, mult] : fact.factors) {
    (void)p;
    total *= mult + 1;
  }
  REQUIRE(total <= 4096);
  std::set<std::string> out;
  for (std::size_t mask = 0; mask < total; ++mask) {
    std::size_t m = mask;
    ZPoly d(1);
    for (const auto& [p, mult] : fact.factors) {
      std::size_t e = m % (mult + 1);
      m /= mult + 1;
      for (std::size_t i = 0; i < e; ++i) d = d * p;
    }
    out.insert(DyadicPoly::from_zpoly(d, level).to_string());
  }
  return out;
}

}  // namespace

TEST_CASE("dyadic exponent normalization and arithmetic") {
  CHECK(de(1, 1).num == 1);
  CHECK(de(1, 1).log_den == 1);
  CHECK(de(2, 1) == de(1, 0));
  CHECK(de(4, 3) == de(1, 1));
  CHECK(de(0, 5) == DyadicExp{});
  CHECK(de(6, 2) == de(3, 1));
  CHECK_THROWS_AS(make_dyadic_exp(Int(-1), 0), std::invalid_argument);

  CHECK(dyadic_add(de(1, 1), de(1, 1)) == de(1, 0));
  CHECK(dyadic_add(de(3, 2), de(1, 2)) == de(1, 0));
  CHECK(dyadic_add(de(1, 1), de(1, 2)) == de(3, 2));
  CHECK(dyadic_add(de(5, 0), de(0, 0)) == de(5, 0));

  CHECK(dyadic_less(de(1, 2), de(1, 1)));
  CHECK(dyadic_less(de(1, 1), de(3, 2)));
  CHECK(dyadic_less(de(3, 2), de(1, 0)));
  CHECK(!dyadic_less(de(1, 0), de(1, 0)));

  CHECK(exp_to_string(de(1, 1)) == "1/2");
  CHECK(exp_to_string(de(3, 2)) == "3/4");
  CHECK(exp_to_string(de(5, 0)) == "5");
  CHECK(exp_to_string(DyadicExp{}) == "0");
}

TEST_CASE("dyadic expression construction and rendering") {
  DyadicPoly zero;
  CHECK(zero.is_zero());
  CHECK(zero.is_constant());
  CHECK(zero.to_string() == "0");
  CHECK_THROWS_AS(zero.degree(), std::invalid_argument);
  CHECK_THROWS_AS(zero.order(), std::invalid_argument);

  DyadicPoly f = dz({-1, 1}, 1);  // x^(1/2) - 1
  CHECK(f.to_string() == "x^(1/2) - 1");
  CHECK(f.level() == 1);
  CHECK(f.degree() == de(1, 1));
  CHECK(f.order() == DyadicExp{});
  CHECK(f.integer_coefficients());

  CHECK(dz({-1, 1}, 0).to_string() == "x - 1");
  CHECK(dz({0, 0, 1, 1}, 2).to_string() == "x^(3/4) + x^(1/2)");
  CHECK(DyadicPoly::x().to_string() == "x");
  CHECK(dz({1, 0, 1}, 0).to_string() == "x^2 + 1");

  // Unnormalized term lists collapse: sorting, merging, zero removal.
  DyadicPoly g({{de(2, 2), Rat(1)}, {de(1, 1), Rat(2)}, {de(0, 0), Rat(-3)},
                {de(0, 0), Rat(3)}});
  CHECK(g.to_string() == "3*x^(1/2)");
  CHECK(g.level() == 1);

  DyadicPoly h({{de(1, 1), Rat(2)}, {de(0, 0), make_rat(Int(1), Int(2))}});
  CHECK(h.to_string() == "2*x^(1/2) + 1/2");
  CHECK(!h.integer_coefficients());

  CHECK(DyadicPoly(Rat(7)).is_constant());
  CHECK(!f.is_constant());
}

TEST_CASE("dyadic expression ring arithmetic") {
  DyadicPoly rm = dz({-1, 1}, 1);
  DyadicPoly rp = dz({1, 1}, 1);
  CHECK(rm * rp == dz({-1, 1}, 0));  // (x^(1/2)-1)(x^(1/2)+1) = x-1
  CHECK(rm + rp == DyadicPoly({{de(1, 1), Rat(2)}}));
  CHECK(rm - rm == DyadicPoly());

  Rng rng(0x6479616469633031ULL);
  for (int i = 0; i < 120; ++i) {
    DyadicPoly a = random_dyadic(rng, 12, 3, 4);
    DyadicPoly b = random_dyadic(rng, 12, 3, 4);
    DyadicPoly c = random_dyadic(rng, 12, 3, 4);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) - b == a);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("level normalization and lifting") {
  auto [n1, f1] = normalize_level(dz({1, 1}, 1));
  CHECK(n1 == 1);
  CHECK(f1 == QPoly(zp({1, 1})));

  auto [n2, f2] = normalize_level(dz({-1, 1}, 0));
  CHECK(n2 == 0);
  CHECK(f2 == QPoly(zp({-1, 1})));

  auto [n3, f3] = normalize_level(dz({0, 0, 1, 1}, 2));
  CHECK(n3 == 2);
  CHECK(f3 == QPoly(zp({0, 0, 1, 1})));

  CHECK_THROWS_AS(normalize_level(DyadicPoly()), std::invalid_argument);

  // from_zpoly reduces exponents, so declared and minimal level can differ.
  CHECK(normalize_level(dz({0, 0, 1}, 1)).first == 0);

  Rng rng(0x6479616469633032ULL);
  for (int i = 0; i < 150; ++i) {
    DyadicPoly f = random_dyadic(rng, 16, 3, 5);
    if (f.is_zero()) continue;
    auto [n, base] = normalize_level(f);
    CHECK(DyadicPoly::from_qpoly(base, n) == f);
    CHECK(n == f.level());
  }

  DyadicPoly r = dz({-1, 1}, 1);
  CHECK(lift_at(r, 1) == QPoly(zp({-1, 1})));
  CHECK(lift_at(r, 3) == QPoly(zp({-1, 0, 0, 0, 1})));
  CHECK(lift_at(DyadicPoly(), 2) == QPoly());
  CHECK_THROWS_AS(lift_at(r, 0), std::invalid_argument);
}

TEST_CASE("quasi-irreducibility via the minimal lift") {
  CHECK(is_quasi_irreducible(dz({-1, 1}, 1)));
  CHECK(is_quasi_irreducible(dz({-1, 1}, 0)));
  CHECK(!is_quasi_irreducible(DyadicPoly({{de(1, 1), Rat(1)},
                                          {de(1, 2), Rat(-1)}})));
  CHECK(is_quasi_irreducible(dz({101, 1}, 0)));
  CHECK(is_quasi_irreducible(dz({4, 0, 1}, 0)));
  CHECK(!is_quasi_irreducible(dz({-1, 0, 1}, 0)));
  CHECK(!is_quasi_irreducible(dz({2, 2}, 1)));  // lift 2x+2 imprimitive

  CHECK_THROWS_AS(is_quasi_irreducible(DyadicPoly(Rat(3))),
                  std::invalid_argument);
  CHECK_THROWS_AS(is_quasi_irreducible(DyadicPoly()), std::invalid_argument);
  CHECK_THROWS_AS(is_quasi_irreducible(DyadicPoly({{de(1, 1), Rat(1)},
                                                   {de(0, 0), make_rat(Int(1), Int(2))}})),
                  std::invalid_argument);
}

TEST_CASE("irreducibility verdicts with stable certificates") {
  auto v1 = irreducible_qm12(dz({1, 1}, 1), 3);
  REQUIRE(v1.is_proved());
  CHECK(v1.certificate->kind == Qm12IrredCert::Kind::EvenCyclotomic);
  CHECK(v1.certificate->cyclo_index == 2);

  auto v2 = irreducible_qm12(dz({101, 1}, 0), 3);
  REQUIRE(v2.is_proved());
  CHECK(v2.certificate->kind == Qm12IrredCert::Kind::EisensteinStable);
  CHECK(v2.certificate->prime == 101);

  auto v3 = irreducible_qm12(dz({2, 0, 1}, 0), 3);
  REQUIRE(v3.is_proved());
  CHECK(v3.certificate->kind == Qm12IrredCert::Kind::EisensteinStable);
  CHECK(v3.certificate->prime == 2);

  auto v4 = irreducible_qm12(DyadicPoly::from_zpoly(cyclotomic(8), 0), 2);
  REQUIRE(v4.is_proved());
  CHECK(v4.certificate->kind == Qm12IrredCert::Kind::EvenCyclotomic);
  CHECK(v4.certificate->cyclo_index == 8);
}

TEST_CASE("irreducibility refutations carry exact factorizations") {
  DyadicPoly xm1 = dz({-1, 1}, 0);
  auto v = irreducible_qm12(xm1, 2);
  REQUIRE(v.is_refuted());
  CHECK(v.witness->a * v.witness->b == xm1);
  std::set<std::string> parts{v.witness->a.to_string(),
                              v.witness->b.to_string()};
  CHECK(parts == std::set<std::string>{"x^(1/2) - 1", "x^(1/2) + 1"});

  auto vx = irreducible_qm12(DyadicPoly::x(), 2);
  REQUIRE(vx.is_refuted());
  CHECK(vx.witness->a.to_string() == "x^(1/2)");
  CHECK(vx.witness->b.to_string() == "x^(1/2)");

  DyadicPoly q = DyadicPoly::monomial(Rat(1), de(1, 2));
  auto vq = irreducible_qm12(q, 2);
  REQUIRE(vq.is_refuted());
  CHECK(vq.witness->a * vq.witness->b == q);

  DyadicPoly w = dz({4, 0, 1}, 0);  // x^2 + 4: first reducible lift is x^4 + 4
  auto vw = irreducible_qm12(w, 3);
  REQUIRE(vw.is_refuted());
  CHECK(vw.witness->a * vw.witness->b == w);
  std::set<std::string> wparts{vw.witness->a.to_string(),
                               vw.witness->b.to_string()};
  CHECK(wparts == std::set<std::string>{"x - 2*x^(1/2) + 2",
                                        "x + 2*x^(1/2) + 2"});

  auto vp = irreducible_qm12(DyadicPoly::from_zpoly(cyclotomic(3), 0), 3);
  REQUIRE(vp.is_refuted());
  CHECK(vp.witness->a * vp.witness->b ==
        DyadicPoly::from_zpoly(cyclotomic(3), 0));

  // Rational content rides along in the witness.
  DyadicPoly scaled = dz({-3, 3}, 0);
  auto vs = irreducible_qm12(scaled, 2);
  REQUIRE(vs.is_refuted());
  CHECK(vs.witness->a * vs.witness->b == scaled);
}

TEST_CASE("irreducibility scan runs out of certificates honestly") {
  auto v = irreducible_qm12(dz({-1, 1, 1}, 0), 1);  // x^2 + x - 1
  CHECK(v.is_unknown());
  CHECK(v.bound == 1);

  CHECK_THROWS_AS(irreducible_qm12(DyadicPoly(Rat(5)), 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(irreducible_qm12(DyadicPoly(), 3), std::invalid_argument);
}

TEST_CASE("atomicity decisions match the exclusion set") {
  auto a1 = is_atomic_qm12(dz({-1, 1}, 0));
  CHECK(!a1.atomic);
  REQUIRE(a1.offender.has_value());
  CHECK(*a1.offender == dz({-1, 1}, 0));

  auto a2 = is_atomic_qm12(DyadicPoly::x());
  CHECK(!a2.atomic);
  REQUIRE(a2.offender.has_value());
  CHECK(*a2.offender == DyadicPoly::x());

  CHECK(!is_atomic_qm12(DyadicPoly::from_zpoly(cyclotomic(3), 0)).atomic);
  CHECK(!is_atomic_qm12(DyadicPoly::from_zpoly(cyclotomic(5), 0)).atomic);

  auto a3 = is_atomic_qm12(dz({2, 1}, 0));
  CHECK(a3.atomic);
  REQUIRE(a3.factors.size() == 1);
  CHECK(a3.factors[0] == dz({2, 1}, 0));

  CHECK(is_atomic_qm12(DyadicPoly::from_zpoly(cyclotomic(2), 0)).atomic);
  CHECK(is_atomic_qm12(DyadicPoly::from_zpoly(cyclotomic(4), 0)).atomic);
  CHECK(is_atomic_qm12(dz({1, 0, 1}, 0)).atomic);
  CHECK(is_atomic_qm12(dz({4, 0, 1}, 0)).atomic);

  auto am = is_atomic_qm12(DyadicPoly::monomial(Rat(1), de(1, 1)));
  CHECK(!am.atomic);
  REQUIRE(am.offender.has_value());
  CHECK(am.offender->to_string() == "x^(1/2)");

  // Order > 0 dominates: any monomial multiple is non-atomic.
  auto ao = is_atomic_qm12(DyadicPoly::x() * dz({2, 1}, 0));
  CHECK(!ao.atomic);
  CHECK(ao.offender->to_string() == "x");

  // Units are empty products of atoms.
  CHECK(is_atomic_qm12(DyadicPoly(Rat(7))).atomic);
  CHECK(is_atomic_qm12(DyadicPoly(make_rat(Int(-2), Int(3)))).atomic);
  CHECK_THROWS_AS(is_atomic_qm12(DyadicPoly()), std::invalid_argument);

  // Composites inherit an offender from any excluded factor.
  auto ac = is_atomic_qm12(dz({-1, 0, 1}, 0));
  CHECK(!ac.atomic);
  CHECK(ac.offender->to_string() == "x - 1");

  auto ag = is_atomic_qm12(dz({2, 1}, 0) * DyadicPoly::from_zpoly(cyclotomic(6), 0));
  CHECK(ag.atomic);
  CHECK(ag.factors.size() == 2);

  // Rational scaling never changes the decision.
  CHECK(!is_atomic_qm12(dz({-1, 1}, 0) * DyadicPoly(make_rat(Int(1), Int(3)))).atomic);
  CHECK(is_atomic_qm12(dz({2, 1}, 0) * DyadicPoly(make_rat(Int(3), Int(7)))).atomic);
}

TEST_CASE("splitting trees follow minimal reducible lifts") {
  DyadicPoly xm1 = dz({-1, 1}, 0);

  SplitTree t1 = splitting_tree(xm1, 1);
  REQUIRE(!t1.is_leaf());
  CHECK(t1.root == xm1);
  CHECK(t1.left->root.to_string() == "x^(1/2) - 1");
  CHECK(t1.right->root.to_string() == "x^(1/2) + 1");
  CHECK(t1.left->is_leaf());
  CHECK(t1.right->is_leaf());
  CHECK(t1.left->evidence_bound == 0);

  SplitTree t2 = splitting_tree(xm1, 2);
  REQUIRE(!t2.is_leaf());
  REQUIRE(!t2.left->is_leaf());
  CHECK(t2.left->left->root.to_string() == "x^(1/4) - 1");
  CHECK(t2.left->right->root.to_string() == "x^(1/4) + 1");
  CHECK(t2.right->is_leaf());
  CHECK(t2.right->root.to_string() == "x^(1/2) + 1");
  CHECK(t2.right->evidence_bound == 1);
  check_products(t2);

  SplitTree t3 = splitting_tree(dz({101, 1}, 0), 3);
  CHECK(t3.is_leaf());
  CHECK(t3.evidence_bound == 3);

  // A seed whose first reducible lift sits two levels up.
  SplitTree t4 = splitting_tree(dz({4, 0, 1}, 0), 2);
  REQUIRE(!t4.is_leaf());
  std::set<std::string> kids{t4.left->root.to_string(),
                             t4.right->root.to_string()};
  CHECK(kids == std::set<std::string>{"x - 2*x^(1/2) + 2",
                                      "x + 2*x^(1/2) + 2"});
  CHECK(t4.left->is_leaf());
  CHECK(t4.left->evidence_bound == 1);
  check_products(t4);

  CHECK_THROWS_AS(splitting_tree(xm1, 0), std::invalid_argument);
  CHECK_THROWS_AS(splitting_tree(dz({-1, 0, 1}, 0), 2), std::invalid_argument);
  CHECK_THROWS_AS(splitting_tree(DyadicPoly(Rat(3)), 1), std::invalid_argument);
}

TEST_CASE("odd cyclotomics generate unboundedly deep split trees") {
  for (unsigned depth = 1; depth <= 4; ++depth) {
    SplitTree t = splitting_tree(DyadicPoly::from_zpoly(cyclotomic(3), 0), depth);
    CHECK(tree_height(t) == depth);
    check_products(t);
  }
  SplitTree t = splitting_tree(DyadicPoly::from_zpoly(cyclotomic(3), 0), 3);
  CHECK(t.left->root.to_string() == "x - x^(1/2) + 1");
  CHECK(t.left->is_leaf());

  SplitTree again = splitting_tree(DyadicPoly::from_zpoly(cyclotomic(3), 0), 3);
  CHECK(trees_equal(t, again));
}

TEST_CASE("divisor ladder of x minus one") {
  auto d1 = enumerate_divisors_x_minus_1(1);
  REQUIRE(d1.size() == 2);
  CHECK(d1[0].to_string() == "x^(1/2) - 1");
  CHECK(d1[1].to_string() == "x^(1/2) + 1");

  auto d2 = enumerate_divisors_x_minus_1(2);
  REQUIRE(d2.size() == 3);
  CHECK(d2[0].to_string() == "x^(1/4) - 1");
  CHECK(d2[1].to_string() == "x^(1/4) + 1");
  CHECK(d2[2].to_string() == "x^(1/2) + 1");

  for (unsigned long n = 1; n <= 6; ++n) {
    auto ds = enumerate_divisors_x_minus_1(n);
    REQUIRE(ds.size() == n + 1);
    DyadicPoly prod(Rat(1));
    std::set<std::string> distinct;
    for (const auto& d : ds) {
      prod = prod * d;
      distinct.insert(d.to_string());
    }
    CHECK(prod == dz({-1, 1}, 0));
    CHECK(distinct.size() == n + 1);
  }
  CHECK_THROWS_AS(enumerate_divisors_x_minus_1(0), std::invalid_argument);
}

TEST_CASE("exact division at the common lift level") {
  DyadicPoly xm1 = dz({-1, 1}, 0);
  auto q1 = divides_qm12(dz({1, 1}, 1), xm1);
  REQUIRE(q1.has_value());
  CHECK(q1->to_string() == "x^(1/2) - 1");

  CHECK(!divides_qm12(dz({2, 1}, 0), xm1).has_value());
  auto qf = divides_qm12(xm1, xm1);
  REQUIRE(qf.has_value());
  CHECK(*qf == DyadicPoly(Rat(1)));

  auto q0 = divides_qm12(xm1, DyadicPoly());
  REQUIRE(q0.has_value());
  CHECK(q0->is_zero());
  CHECK_THROWS_AS(divides_qm12(DyadicPoly(), xm1), std::invalid_argument);

  // Constants are units: division rescales.
  auto qc = divides_qm12(DyadicPoly(Rat(2)), xm1);
  REQUIRE(qc.has_value());
  CHECK(DyadicPoly(Rat(2)) * *qc == xm1);

  auto qs = divides_qm12(dz({2, 2}, 1), xm1);
  REQUIRE(qs.has_value());
  CHECK(dz({2, 2}, 1) * *qs == xm1);

  Rng rng(0x6479616469633033ULL);
  int present = 0;
  for (int i = 0; i < 150; ++i) {
    DyadicPoly f = random_dyadic(rng, 10, 2, 3);
    DyadicPoly h = random_dyadic(rng, 10, 2, 3);
    if (f.is_zero()) continue;
    DyadicPoly g = f * h;
    auto q = divides_qm12(f, g);
    REQUIRE(q.has_value());
    CHECK(*q == h);
    ++present;
    if (!h.is_zero()) {
      auto qq = divides_qm12(f, g + DyadicPoly(Rat(1)) + DyadicPoly::x() * f);
      if (qq.has_value()) CHECK(f * *qq == g + DyadicPoly(Rat(1)) + DyadicPoly::x() * f);
    }
  }
  CHECK(present >= 100);
}

TEST_CASE("proved irreducibles behave as primes across lifts") {
  std::vector<DyadicPoly> atoms{dz({1, 1}, 1), dz({2, 1}, 0), dz({2, 2, 1}, 1),
                                dz({101, 1}, 0)};
  for (const auto& f : atoms) CHECK(irreducible_qm12(f, 2).is_proved());

  Rng rng(0x6479616469633034ULL);
  int divided = 0;
  for (int i = 0; i < 120; ++i) {
    const DyadicPoly& f = atoms[static_cast<std::size_t>(rng.range(0, 3))];
    DyadicPoly g(Rat(1));
    DyadicPoly h(Rat(1));
    for (int k = rng.range(0, 2); k > 0; --k)
      g = g * atoms[static_cast<std::size_t>(rng.range(0, 3))];
    for (int k = rng.range(0, 2); k > 0; --k)
      h = h * atoms[static_cast<std::size_t>(rng.range(0, 3))];
    if (divides_qm12(f, g * h).has_value()) {
      ++divided;
      CHECK((divides_qm12(f, g).has_value() ||
             divides_qm12(f, h).has_value()));
    }
  }
  CHECK(divided >= 30);
}

TEST_CASE("divisor sets stabilize exactly when atomic") {
  // Non-atomic inputs grow strictly at every lift level.
  std::vector<DyadicPoly> growing{dz({-1, 1}, 0), DyadicPoly::x(),
                                  DyadicPoly::from_zpoly(cyclotomic(3), 0),
                                  DyadicPoly::from_zpoly(cyclotomic(5), 0),
                                  DyadicPoly::monomial(Rat(1), de(1, 1))};
  for (const auto& f : growing) {
    std::size_t prev = divisors_at(f, 0).size();
    for (unsigned long e = 1; e <= 3; ++e) {
      std::size_t cur = divisors_at(f, e).size();
      CHECK(cur > prev);
      prev = cur;
    }
  }
  CHECK(divisors_at(dz({-1, 1}, 0), 3).size() == 16);
  CHECK(divisors_at(DyadicPoly::x(), 3).size() == 9);

  // Atomic inputs discover nothing new past the stabilization level.
  std::vector<DyadicPoly> stable{dz({2, 1}, 0),
                                 DyadicPoly::from_zpoly(cyclotomic(2), 0),
                                 DyadicPoly::from_zpoly(cyclotomic(4), 0),
                                 dz({4, 0, 1}, 0),
                                 dz({2, 1}, 0) * DyadicPoly::from_zpoly(cyclotomic(2), 0),
                                 dz({2, 0, 1}, 0) * DyadicPoly::from_zpoly(cyclotomic(4), 0)};
  for (const auto& f : stable) {
    auto d1 = divisors_at(f, 1);
    auto d2 = divisors_at(f, 2);
    auto d3 = divisors_at(f, 3);
    CHECK(d1 == d2);
    CHECK(d2 == d3);
  }
  CHECK(divisors_at(dz({4, 0, 1}, 0), 0).size() == 2);
  CHECK(divisors_at(dz({4, 0, 1}, 0), 1).size() == 4);
  CHECK(divisors_at(dz({4, 0, 1}, 0), 3).size() == 4);
}
