#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "hecke_atlas/characters.hpp"

using namespace atlas;

namespace {

std::vector<u64> sorted_degrees(const CharacterTable& T) {
  std::vector<u64> d = T.degrees;
  std::sort(d.begin(), d.end());
  return d;
}

SemisimpleClass unit_class(QContext& ctx, int n) {
  SemisimpleClass s;
  s.parts.push_back({fqpoly_x_minus(ctx.tower(), ctx.level(), 1), n});
  return s;
}

}  // namespace

TEST_CASE("char_table GL_2(F_2): degrees 1,1,2 and orthogonality") {
  QContext ctx(2);
  const CharacterTable& T = ctx.table(2);
  CHECK(sorted_degrees(T) == std::vector<u64>{1, 1, 2});
  CHECK(T.check());
}

TEST_CASE("char_table GL_2(F_3): 8 classes, degrees, orthogonality") {
  QContext ctx(3);
  const CharacterTable& T = ctx.table(2);
  CHECK(ctx.group(2).num_classes() == 8);
  CHECK(sorted_degrees(T) == std::vector<u64>{1, 1, 2, 2, 2, 3, 3, 4});
  CHECK(T.check());
}

TEST_CASE("char_table GL_3(F_2): degrees 1,3,3,6,7,8") {
  QContext ctx(2);
  const CharacterTable& T = ctx.table(3);
  CHECK(ctx.group(3).num_classes() == 6);
  CHECK(sorted_degrees(T) == std::vector<u64>{1, 3, 3, 6, 7, 8});
  CHECK(T.check());
}

TEST_CASE("analytic GL_2 oracle matches Dixon for q = 2, 3") {
  for (u64 q : {2, 3}) {
    QContext ctx(q);
    const CharacterTable& D = ctx.table(2);
    CharacterTable A = analytic_gl2_table(ctx);
    CHECK(A.check());
    REQUIRE(A.irr.size() == D.irr.size());
    // same canonical sort, same class order: rows must agree one by one
    for (size_t i = 0; i < A.irr.size(); ++i) {
      CHECK(A.degrees[i] == D.degrees[i]);
      for (size_t c = 0; c < A.irr[i].v.size(); ++c)
        CHECK(A.irr[i].v[c] == D.irr[i].v[c]);
    }
  }
}

TEST_CASE("hc_induct from the Borel") {
  QContext ctx(2);
  const CharacterTable& T = ctx.table(2);
  // sigma = trivial on the torus: Ind has degree 3 = triv + St
  ClassFn triv1 = cf_zero(ctx.group(1));
  for (auto& v : triv1.v) v = Cyclotomic::one();
  ClassFn ind = hc_induct(ctx, 2, {1, 1}, {triv1, triv1});
  CHECK(ind.v[T.identity_class] == Cyclotomic(3L));
  // decompose: contains trivial once and Steinberg once
  int hits = 0;
  for (size_t i = 0; i < T.irr.size(); ++i) {
    Cyclotomic m = cf_inner(ind, T.irr[i]);
    if (m.is_zero()) continue;
    CHECK(m == Cyclotomic::one());
    CHECK((T.degrees[i] == 1 || T.degrees[i] == 2));
    ++hits;
  }
  CHECK(hits == 2);
  // Levi = G: identity operation
  ClassFn chi = T.irr[2];
  ClassFn same = hc_induct(ctx, 2, {2}, {chi});
  for (size_t c = 0; c < chi.v.size(); ++c) CHECK(same.v[c] == chi.v[c]);
}

TEST_CASE("hc_induct general position pair is irreducible of degree 4") {
  QContext ctx(3);
  const FieldTower& tw = ctx.tower();
  const GroupTable& G1 = ctx.group(1);
  // theta_a with a = generator (order 2 character), theta_b trivial
  auto theta_fn = [&](fq_t alpha) {
    ClassFn f = cf_zero(G1);
    for (int c = 0; c < G1.num_classes(); ++c)
      f.v[c] = tw.theta(1, alpha, G1.elem(G1.class_rep(c)).at(0, 0));
    return f;
  };
  ClassFn ind = hc_induct(ctx, 2, {1, 1}, {theta_fn(tw.gen(1)), theta_fn(1)});
  const CharacterTable& T = ctx.table(2);
  CHECK(ind.v[T.identity_class] == Cyclotomic(4L));
  CHECK(cf_inner(ind, ind) == Cyclotomic::one());  // norm 1: irreducible
}

TEST_CASE("is_cuspidal") {
  QContext ctx2(2);
  const CharacterTable& T2 = ctx2.table(2);
  int cusp2 = 0;
  for (int i = 0; i < (int)T2.irr.size(); ++i) {
    bool c = is_cuspidal(ctx2, 2, i);
    if (c) {
      ++cusp2;
      CHECK(T2.degrees[i] == 1);  // the sign character of S_3
    }
    if (T2.degrees[i] == 1 && !c) {
      // the trivial character has U-fixed vectors
      CHECK(T2.irr[i].v[0] == T2.irr[i].v[1]);
    }
  }
  CHECK(cusp2 == 1);
  // GL_3(F_2): exactly the two degree-3 rows are cuspidal
  int cusp3 = 0;
  for (int i = 0; i < (int)ctx2.table(3).irr.size(); ++i)
    if (is_cuspidal(ctx2, 3, i)) {
      CHECK(ctx2.table(3).degrees[i] == 3);
      ++cusp3;
    }
  CHECK(cusp3 == 2);
}

TEST_CASE("cuspidal_match d=2") {
  // q=2: the single cuspidal matches the orbit of F_4^x generators, and the
  // elliptic value is -(z3 + z3^2) = 1
  QContext ctx2(2);
  auto m2 = cuspidal_match(ctx2, 2);
  REQUIRE(m2.size() == 1);
  const CharacterTable& T = ctx2.table(2);
  int idx = m2.begin()->second;
  CHECK(T.degrees[idx] == 1);
  // q=3: 3 cuspidals of degree 2 <-> 3 quadratic orbits
  QContext ctx3(3);
  auto m3 = cuspidal_match(ctx3, 2);
  CHECK(m3.size() == 3);
  std::set<int> used;
  for (auto& [f, i] : m3) {
    CHECK(ctx3.table(2).degrees[i] == 2);
    used.insert(i);
  }
  CHECK(used.size() == 3);
  // d=1: every character matches its own eigenvalue
  auto m1 = cuspidal_match(ctx3, 1);
  CHECK(m1.size() == 2);
}

TEST_CASE("series_partition GL_2(F_2)") {
  QContext ctx(2);
  SeriesAssignment sa = series_partition(ctx, 2);
  REQUIRE(sa.classes.size() == 2);
  // unit class fiber = {triv, St}; elliptic fiber = {sgn}
  std::vector<size_t> sizes;
  for (auto& f : sa.fibers) sizes.push_back(f.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<size_t>{1, 2});
  int si = sa.class_index(unit_class(ctx, 2));
  CHECK(sa.fibers[si].size() == 2);
}

TEST_CASE("series_partition GL_2(F_3): fiber sizes 2,2,1,1,1,1") {
  QContext ctx(3);
  SeriesAssignment sa = series_partition(ctx, 2);
  REQUIRE(sa.classes.size() == 6);
  std::vector<size_t> sizes;
  for (auto& f : sa.fibers) sizes.push_back(f.size());
  std::sort(sizes.rbegin(), sizes.rend());
  CHECK(sizes == std::vector<size_t>{2, 2, 1, 1, 1, 1});
}

TEST_CASE("series idempotents") {
  QContext ctx(2);
  SeriesAssignment sa = series_partition(ctx, 2);
  const GroupTable& G = ctx.group(2);
  ClassMult cm(G);
  int idc = G.class_of(G.identity());
  // s = 1: coefficient at identity = (1 + 4)/6
  CentralElt e1 = idempotent_of_series(ctx, 2, sa, unit_class(ctx, 2));
  CHECK(e1.coeff[idc] == Cyclotomic(Rational(5, 6)));
  // elliptic s: coefficient at identity = 1/6
  SemisimpleClass sell;
  sell.parts.push_back({monic_irreducibles(ctx.tower(), 1, 2)[0], 1});
  CentralElt e2 = idempotent_of_series(ctx, 2, sa, sell);
  CHECK(e2.coeff[idc] == Cyclotomic(Rational(1, 6)));
  // idempotent, orthogonal, sum to 1
  CHECK(central_eq(central_convolve(cm, e1, e1), e1));
  CHECK(central_eq(central_convolve(cm, e2, e2), e2));
  CentralElt z = central_convolve(cm, e1, e2);
  for (auto& c : z.coeff) CHECK(c.is_zero());
  CHECK(central_eq(central_add(e1, e2), central_one(G)));
}

TEST_CASE("sum of series idempotents is 1 for GL_2(F_3)") {
  QContext ctx(3);
  SeriesAssignment sa = series_partition(ctx, 2);
  const GroupTable& G = ctx.group(2);
  CentralElt total = central_zero(G);
  for (auto& s : sa.classes)
    total = central_add(total, idempotent_of_series(ctx, 2, sa, s));
  CHECK(central_eq(total, central_one(G)));
}

TEST_CASE("idempotent_ell small cases") {
  // GL_2(F_2), ell=3, s=1: the whole algebra, e = 1
  QContext ctx2(2);
  SeriesAssignment sa2 = series_partition(ctx2, 2);
  CentralElt e = idempotent_ell(ctx2, 2, sa2, unit_class(ctx2, 2), 3);
  CHECK(central_eq(e, central_one(ctx2.group(2))));
  CHECK(central_ell_integral(e, 3));
  // GL_2(F_3), ell=2, s=1: all six classes 2-link to the identity
  QContext ctx3(3);
  SeriesAssignment sa3 = series_partition(ctx3, 2);
  CentralElt e3 = idempotent_ell(ctx3, 2, sa3, unit_class(ctx3, 2), 2);
  CHECK(central_eq(e3, central_one(ctx3.group(2))));
  // ell = p rejected; non-ell-regular s rejected
  CHECK_THROWS(idempotent_ell(ctx3, 2, sa3, unit_class(ctx3, 2), 3));
}

TEST_CASE("compat_check GL_2(F_2) and GL_2(F_3), plain and ell-grouped") {
  QContext ctx2(2);
  CHECK(compat_check(ctx2, 2, {1, 1}, unit_class(ctx2, 2), std::nullopt).ok());
  QContext ctx3(3);
  for (auto& s : semisimple_classes(ctx3.tower(), 1, 2))
    CHECK(compat_check(ctx3, 2, {1, 1}, s, std::nullopt).ok());
  // ell-grouped version for GL_2(F_3), ell = 2, over 2-regular classes
  for (auto& [s, fiber] : bm_fibers(ctx3, 2, 2))
    CHECK(compat_check(ctx3, 2, {1, 1}, s, 2).ok());
}

TEST_CASE("gl2_dl_virtual values") {
  QContext ctx(3);
  const CharacterTable& T = ctx.table(2);
  // split, theta = 1: value at identity = q + 1
  ClassFn r = gl2_dl_split(ctx, 1, 1);
  CHECK(r.v[T.identity_class] == Cyclotomic(4L));
  // nonsplit, theta in general position: virtual degree -(q-1), and
  // <-R_T(theta), pi_theta> = 1 for exactly one cuspidal
  fq_t alpha = ctx.tower().gen(2);
  ClassFn rn = gl2_dl_nonsplit(ctx, alpha);
  CHECK(rn.v[T.identity_class] == Cyclotomic(-2L));
  int cusp_hits = 0;
  for (size_t i = 0; i < T.irr.size(); ++i) {
    Cyclotomic m = cf_inner(rn, T.irr[i]);
    if (m.is_zero()) continue;
    CHECK(m == Cyclotomic(-1L));
    CHECK(T.degrees[i] == 2);
    ++cusp_hits;
  }
  CHECK(cusp_hits == 1);
}

TEST_CASE("DL membership agrees with cuspidal-support partition, q = 2, 3") {
  for (u64 q : {2, 3}) {
    QContext ctx(q);
    SeriesAssignment dl = dl_series_assignment(ctx);
    SeriesAssignment cs = series_partition(ctx, 2);
    REQUIRE(dl.classes.size() == cs.classes.size());
    CHECK(dl.irr_to_class == cs.irr_to_class);
  }
}
