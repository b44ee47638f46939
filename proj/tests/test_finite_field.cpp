#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hecke_atlas/finite_field.hpp"
#include "hecke_atlas/fqpoly.hpp"

using namespace atlas;

TEST_CASE("tower_make F_2/F_4 and invariants") {
  FieldTower tw(2, 4);
  // F_4 = F_2[x]/(x^2+x+1), generator x
  CHECK(tw.level(2).poly == std::vector<std::uint8_t>{1, 1, 1});
  CHECK(tw.gen(2) == 2);  // the class of x, packed (0,1)
  // F_4: x * x = x + 1
  CHECK(tw.mul(2, 2, 2) == 3);
  // dlog_x(x+1) = 2
  CHECK(tw.dlog(2, 3) == 2);
  // norm compatibility for all adjacent pairs present in the tower
  for (int k = 1; k <= 4; ++k)
    for (int d = 1; d < k; ++d) {
      if (k % d != 0) continue;
      u64 ratio = (tw.size(k) - 1) / (tw.size(d) - 1);
      CHECK(tw.pow(k, tw.gen(k), (i64)ratio) == tw.embed(d, k, tw.gen(d)));
    }
}

TEST_CASE("tower_make F_3/F_9: norm of generator generates F_3^x") {
  FieldTower tw(3, 2);
  fq_t g = tw.gen(2);
  CHECK(tw.elem_order(2, g) == 8);
  fq_t n = tw.pow(2, g, 4);  // norm = g^{(9-1)/(3-1)} = g^4
  CHECK(n == tw.embed(1, 2, tw.gen(1)));
  CHECK(tw.elem_order(1, tw.project(2, 1, n)) == 2);
  // g^8 = 1
  CHECK(tw.pow(2, g, 8) == 1);
}

TEST_CASE("trivial F_2 level") {
  FieldTower tw(2, 1);
  CHECK(tw.gen(1) == 1);
  CHECK(tw.unit_order(1) == 1);
}

TEST_CASE("embeddings commute along paths") {
  FieldTower tw(2, 4);
  for (fq_t a = 0; a < 2; ++a)
    CHECK(tw.embed(2, 4, tw.embed(1, 2, a)) == tw.embed(1, 4, a));
  FieldTower tw3(3, 2);
  for (fq_t a = 0; a < 3; ++a)
    CHECK(tw3.embed(1, 2, a) == tw3.embed(1, 2, a));
}

TEST_CASE("field axioms on all elements, small levels") {
  FieldTower tw(3, 2);
  int k = 2;
  u64 q = tw.size(k);
  for (u64 a = 0; a < q; ++a)
    for (u64 b = 0; b < q; ++b) {
      CHECK(tw.add(k, (fq_t)a, (fq_t)b) == tw.add(k, (fq_t)b, (fq_t)a));
      CHECK(tw.mul(k, (fq_t)a, (fq_t)b) == tw.mul(k, (fq_t)b, (fq_t)a));
      for (u64 c = 0; c < q; ++c) {
        CHECK(tw.mul(k, (fq_t)a, tw.add(k, (fq_t)b, (fq_t)c)) ==
              tw.add(k, tw.mul(k, (fq_t)a, (fq_t)b), tw.mul(k, (fq_t)a, (fq_t)c)));
      }
    }
}

TEST_CASE("theta characters form the full dual") {
  for (auto [p, lvl] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}}) {
    FieldTower tw(p, lvl);
    int k = lvl;
    u64 N = tw.unit_order(k);
    // theta: alpha -> character is injective with q^d - 1 distinct images,
    // and multiplicative: theta_a * theta_b = theta_ab.
    fq_t g = tw.gen(k);
    // distinctness: theta_alpha(g) = z_N^{dlog alpha} all distinct
    std::vector<Cyclotomic> vals;
    for (u64 i = 0; i < N; ++i) {
      fq_t alpha = tw.exp_of(k, (i64)i);
      vals.push_back(tw.theta(k, alpha, g));
    }
    for (u64 i = 0; i < N; ++i)
      for (u64 j = i + 1; j < N; ++j) CHECK(vals[i] != vals[j]);
    // multiplicativity in both arguments on a few samples
    for (u64 i = 0; i < N; ++i) {
      fq_t a = tw.exp_of(k, (i64)i), b = tw.exp_of(k, (i64)(2 * i + 1));
      fq_t x = tw.exp_of(k, (i64)(i + 3));
      CHECK(tw.theta(k, tw.mul(k, a, b), x) ==
            tw.theta(k, a, x) * tw.theta(k, b, x));
      CHECK(tw.theta(k, a, tw.mul(k, x, b)) ==
            tw.theta(k, a, x) * tw.theta(k, a, b));
    }
  }
}

TEST_CASE("theta examples") {
  FieldTower tw(2, 2);
  // alpha = 1: trivial character
  for (u64 i = 0; i < 3; ++i)
    CHECK(tw.theta(2, 1, tw.exp_of(2, (i64)i)) == Cyclotomic::one());
  // F_4, alpha = g: theta(g) = z_3
  CHECK(tw.theta(2, tw.gen(2), tw.gen(2)) == Cyclotomic::root(3, 1));
  FieldTower tw3(3, 2);
  // F_9, alpha = g^2: theta(g) = z_8^2
  CHECK(tw3.theta(2, tw3.pow(2, tw3.gen(2), 2), tw3.gen(2)) ==
        Cyclotomic::root(8, 2));
  CHECK_THROWS(tw.theta(2, 0, 1));
}

TEST_CASE("ell_prime_part") {
  FieldTower tw(3, 2);  // F_9: unit order 8
  fq_t g = tw.gen(2);
  // full 2-power order: 2'-part is 1
  CHECK(tw.ell_prime_part(2, g, 2) == 1);
  // ell coprime to the order: identity
  CHECK(tw.ell_prime_part(2, g, 5) == g);
  CHECK(tw.ell_prime_part(2, g, 7) == g);

  FieldTower tw5(5, 2);  // F_25: unit order 24
  fq_t h = tw5.gen(2);   // order 24
  fq_t h3 = tw5.ell_prime_part(2, h, 3);
  CHECK(h3 == tw5.pow(2, h, 9));  // 9 * 1 = 1 mod 8
  CHECK(tw5.elem_order(2, h3) == 8);
  // idempotent
  CHECK(tw5.ell_prime_part(2, h3, 3) == h3);
  // the complementary part has ell-power order
  fq_t ratio = tw5.mul(2, h, tw5.inv(2, h3));
  u64 ord = tw5.elem_order(2, ratio);
  while (ord % 3 == 0) ord /= 3;
  CHECK(ord == 1);
  // multiplicative on commuting inputs of coprime orders
  fq_t a = tw5.pow(2, h, 3);  // order 8
  fq_t b = tw5.pow(2, h, 8);  // order 3
  CHECK(tw5.ell_prime_part(2, tw5.mul(2, a, b), 3) ==
        tw5.mul(2, tw5.ell_prime_part(2, a, 3), tw5.ell_prime_part(2, b, 3)));
  CHECK_THROWS(tw5.ell_prime_part(2, 0, 3));
}

TEST_CASE("budget is enforced") {
  CHECK_THROWS_AS(FieldTower(2, 20), BudgetError);
}

TEST_CASE("fqpoly factor and roots") {
  FieldTower tw(2, 4);
  // x^2 + x + 1 is the only irreducible quadratic over F_2
  const auto& irr2 = monic_irreducibles(tw, 1, 2);
  CHECK(irr2.size() == 1);
  CHECK(irr2[0].c == std::vector<fq_t>{1, 1, 1});
  // over F_4 there are (16-4)/2 = 6 irreducible quadratics
  CHECK(monic_irreducibles(tw, 2, 2).size() == 6);
  // factor (x^2+x+1)^2 * (x+1) over F_2
  FqPoly f = irr2[0];
  FqPoly g = fqpoly_mul(tw, f, f);
  FqPoly xp1;
  xp1.k = 1;
  xp1.c = {1, 1};
  g = fqpoly_mul(tw, g, xp1);
  auto fac = fqpoly_factor(tw, g);
  CHECK(fac.size() == 2);
  CHECK(fac[0].first == xp1);
  CHECK(fac[0].second == 1);
  CHECK(fac[1].first == f);
  CHECK(fac[1].second == 2);
  // root of the quadratic lives in F_4 and has order 3
  fq_t r = fqpoly_root_in_ext(tw, f);
  CHECK(tw.elem_order(2, r) == 3);
  CHECK(minimal_poly(tw, 1, 2, r) == f);
}
