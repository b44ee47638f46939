#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "hecke_atlas/gl_group.hpp"

using namespace atlas;

TEST_CASE("group_enumerate orders") {
  FieldTower tw2(2, 2);
  CHECK(GroupTable(tw2, 1, 2).size() == 6);
  CHECK(GroupTable(tw2, 1, 3).size() == 168);
  FieldTower tw3(3, 1);
  CHECK(GroupTable(tw3, 1, 2).size() == 48);
  CHECK_THROWS_AS(GroupTable(tw3, 1, 2, 10), BudgetError);
}

TEST_CASE("class_label examples") {
  FieldTower tw3(3, 2);
  // identity in GL_2(F_3): (x-1, (1,1))
  FMat id = fmat_identity(2, 1);
  ConjClassLabel l = class_label(tw3, id);
  REQUIRE(l.parts.size() == 1);
  CHECK(l.parts[0].first.c == std::vector<fq_t>{2, 1});  // x - 1 = x + 2
  CHECK(l.parts[0].second == std::vector<int>{1, 1});
  CHECK(l.semisimple());

  // unipotent Jordan block in GL_2(F_3): (x-1, (2))
  FMat u = id;
  u.set(0, 1, 1);
  ConjClassLabel lu = class_label(tw3, u);
  CHECK(lu.parts[0].second == std::vector<int>{2});
  CHECK(!lu.semisimple());

  // order-3 element of GL_2(F_2): irreducible characteristic polynomial
  FieldTower tw2(2, 2);
  FMat c;
  c.n = 2; c.level = 1;
  c.set(0, 1, 1);
  c.set(1, 0, 1);
  c.set(1, 1, 1);  // companion of x^2+x+1
  ConjClassLabel lc = class_label(tw2, c);
  REQUIRE(lc.parts.size() == 1);
  CHECK(lc.parts[0].first.c == std::vector<fq_t>{1, 1, 1});
  CHECK(lc.parts[0].second == std::vector<int>{1});

  FMat z; z.n = 2; z.level = 1;  // singular
  CHECK_THROWS(class_label(tw2, z));
}

TEST_CASE("labels partition the group; class equation") {
  FieldTower tw3(3, 1);
  GroupTable G(tw3, 1, 2);
  REQUIRE(G.size() == 48);
  u64 total = 0;
  for (int c = 0; c < G.num_classes(); ++c) {
    total += G.class_size(c);
    CHECK(G.size() % G.class_size(c) == 0);  // sizes divide |G|
  }
  CHECK(total == G.size());
  CHECK(G.num_classes() == 8);
  // conjugation-invariance spot check: labels constant on conjugates
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 100; ++rep) {
    int g = (int)(rng() % G.size());
    int x = (int)(rng() % G.size());
    int conj = G.mul(G.mul(x, g), G.inv(x));
    CHECK(G.class_of(g) == G.class_of(conj));
  }
}

TEST_CASE("semisimple class counts") {
  FieldTower tw2(2, 2);
  CHECK(semisimple_classes(tw2, 1, 2).size() == 2);
  CHECK(semisimple_classes(tw2, 1, 1).size() == 1);
  FieldTower tw3(3, 2);
  CHECK(semisimple_classes(tw3, 1, 2).size() == 6);
  CHECK(semisimple_classes(tw3, 1, 1).size() == 2);
  // exhaustive count = central + split pairs + irreducible quadratics
  for (auto [p, lvl] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    FieldTower tw(p, 2 * lvl);
    u64 q = tw.size(lvl);
    u64 expected = (q - 1) + (q - 1) * (q - 2) / 2 + (q * q - q) / 2;
    CHECK(semisimple_classes(tw, lvl, 2).size() == expected);
    // cross-check against brute enumeration of semisimple labels
    if (q <= 3) {
      GroupTable G(tw, lvl, 2);
      std::set<SemisimpleClass> seen;
      for (int c = 0; c < G.num_classes(); ++c)
        if (G.class_label_of(c).semisimple())
          seen.insert(ss_of_label(G.class_label_of(c)));
      CHECK(seen.size() == expected);
    }
  }
  // GL_1(F_q): q - 1 classes
  FieldTower tw5(5, 1);
  CHECK(semisimple_classes(tw5, 1, 1).size() == 4);
}

TEST_CASE("ss_levi_embed merges multisets") {
  FieldTower tw3(3, 1);
  auto lin = monic_irreducibles(tw3, 1, 1);  // x, x-1, x-2
  FqPoly xm1, xm2;
  for (const auto& f : lin) {
    if (f.c[0] == tw3.neg(1, 1)) xm1 = f;
    if (f.c[0] == tw3.neg(1, 2)) xm2 = f;
  }
  SemisimpleClass t1{{{xm1, 1}}}, t2{{{xm2, 1}}};
  SemisimpleClass s = ss_levi_embed({t1, t2});
  CHECK(s.parts.size() == 2);
  CHECK(s.dim() == 2);
  // opposite order gives the same class
  CHECK(ss_levi_embed({t2, t1}) == s);
  // identity Levi: single factor maps to itself
  CHECK(ss_levi_embed({s}) == s);
}

TEST_CASE("ell_regular_part_class") {
  FieldTower tw2(2, 2);
  // GL_2(F_2), s = {x^2+x+1}, ell = 3 -> {(x-1, 2)}
  FqPoly quad = monic_irreducibles(tw2, 1, 2)[0];
  SemisimpleClass s{{{quad, 1}}};
  SemisimpleClass r = ell_regular_part_class(tw2, 1, s, 3);
  REQUIRE(r.parts.size() == 1);
  CHECK(r.parts[0].first.c == std::vector<fq_t>{1, 1});  // x - 1 over F_2
  CHECK(r.parts[0].second == 2);
  // ell coprime to eigenvalue orders: identity
  CHECK(ell_regular_part_class(tw2, 1, s, 5) == s);
  // idempotence over GL_2(F_5), ell = 3
  FieldTower tw5(5, 2);
  auto all = semisimple_classes(tw5, 1, 2);
  for (const auto& c : all) {
    auto r1 = ell_regular_part_class(tw5, 1, c, 3);
    CHECK(ell_regular_part_class(tw5, 1, r1, 3) == r1);
  }
  // the order-24 orbit maps to the order-8 orbit
  fq_t g = tw5.gen(2);
  FqPoly f24 = minimal_poly(tw5, 1, 2, g);
  SemisimpleClass s24{{{f24, 1}}};
  auto r8 = ell_regular_part_class(tw5, 1, s24, 3);
  fq_t b8 = fqpoly_root_in_ext(tw5, r8.parts[0].first);
  CHECK(tw5.elem_order(2, b8) == 8);
}

TEST_CASE("parabolic_make") {
  FieldTower tw3(3, 1);
  GroupTable G2(tw3, 1, 2);
  ParabolicData B = parabolic_make(G2, {1, 1});
  CHECK(B.U.size() == 3);
  CHECK(B.M.size() == 4);
  CHECK(B.P.size() == B.M.size() * B.U.size());

  FieldTower tw2(2, 2);
  GroupTable G3(tw2, 1, 3);
  CHECK(parabolic_make(G3, {2, 1}).U.size() == 4);
  CHECK(parabolic_make(G3, {1, 1, 1}).U.size() == 8);
  // M and U intersect trivially
  for (auto comp : std::vector<std::vector<int>>{{2, 1}, {1, 2}, {1, 1, 1}}) {
    ParabolicData P = parabolic_make(G3, comp);
    std::set<int> m(P.M.begin(), P.M.end());
    int common = 0;
    for (int u : P.U)
      if (m.count(u)) ++common;
    CHECK(common == 1);
    CHECK(P.P.size() == P.M.size() * P.U.size());
  }
}

TEST_CASE("iota_star") {
  FieldTower tw(2, 4);
  // n'=1, f=2, q=2: generator of F_4 maps to an order-3 2x2 matrix
  FMat g1; g1.n = 1; g1.level = 2;
  g1.set(0, 0, tw.gen(2));
  auto basis = default_ext_basis(tw, 1, 2);
  FMat m = iota_star(tw, 1, 2, g1, basis);
  CHECK(m.n == 2);
  GroupTable G(tw, 1, 2);
  CHECK(G.elem_order(G.index_of(m)) == 3);
  // identity maps to identity
  FMat i1 = fmat_identity(1, 2);
  CHECK(iota_star(tw, 1, 2, i1, basis) == fmat_identity(2, 1));
  // group morphism on random pairs: GL_2(F_4) -> GL_4(F_2)
  GroupTable Gp(tw, 2, 2);  // GL_2(F_4), 180 elements
  std::mt19937_64 rng(11);
  auto basis4 = default_ext_basis(tw, 1, 2);
  for (int rep = 0; rep < 200; ++rep) {
    const FMat& a = Gp.elem((int)(rng() % Gp.size()));
    const FMat& b = Gp.elem((int)(rng() % Gp.size()));
    FMat lhs = iota_star(tw, 1, 2, fmat_mul(tw, a, b), basis4);
    FMat rhs = fmat_mul(tw, iota_star(tw, 1, 2, a, basis4),
                        iota_star(tw, 1, 2, b, basis4));
    CHECK(lhs == rhs);
  }
  // permutation matrices map to the fiber-preserving block permutation
  FMat w; w.n = 2; w.level = 2;  // swap on 2 letters over F_4
  w.set(0, 1, 1);
  w.set(1, 0, 1);
  FMat W = iota_star(tw, 1, 2, w, basis);
  FMat expect; expect.n = 4; expect.level = 1;
  expect.set(0, 2, 1); expect.set(1, 3, 1);
  expect.set(2, 0, 1); expect.set(3, 1, 1);
  CHECK(W == expect);
}

TEST_CASE("centralizer_condition") {
  FieldTower tw2(2, 2);
  // q=2, f=2, n'=1: regular s' passes
  fq_t g4 = tw2.gen(2);
  SemisimpleClass sreg{{{minimal_poly(tw2, 2, 2, g4), 1}}};
  CHECK(centralizer_condition(tw2, 1, 2, 1, sreg));
  // s' = 1 fails
  SemisimpleClass s1{{{fqpoly_x_minus(tw2, 2, 1), 1}}};
  CHECK(!centralizer_condition(tw2, 1, 2, 1, s1));

  FieldTower tw3(3, 2);
  fq_t g9 = tw3.gen(2);
  SemisimpleClass sreg9{{{minimal_poly(tw3, 2, 2, g9), 1}}};
  CHECK(centralizer_condition(tw3, 1, 2, 1, sreg9));
  SemisimpleClass s19{{{fqpoly_x_minus(tw3, 2, 1), 1}}};
  CHECK(!centralizer_condition(tw3, 1, 2, 1, s19));
}

TEST_CASE("ss_representative round trip") {
  FieldTower tw3(3, 2);
  for (const auto& s : semisimple_classes(tw3, 1, 2)) {
    FMat rep = ss_representative(tw3, 1, 2, s);
    CHECK(ss_of_label(class_label(tw3, rep)) == s);
  }
}
