#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hecke_atlas/ringoid.hpp"

using namespace atlas;

namespace {

// S_3 multiplication table (permutations of 3 letters).
std::vector<std::vector<int>> s3_mult() {
  std::vector<std::vector<int>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                         {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  auto index_of = [&](const std::vector<int>& p) {
    for (size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return (int)i;
    return -1;
  };
  std::vector<std::vector<int>> mult(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::vector<int> c(3);
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      mult[a][b] = index_of(c);
    }
  return mult;
}

KMat basis_column(int dim, int k) {
  KMat f(dim, 1);
  f.at(k, 0) = Cyclotomic::one();
  return f;
}

// Bimodule hom_R(iota -, -) for a full subcategory inclusion iota.
RBimodule hom_sub_bimodule(const Ringoid& R, const Ringoid& Rp,
                           const std::vector<int>& iota) {
  int n = R.nobj, np = Rp.nobj;
  RBimodule B;
  B.R = &R;
  B.Rp = &Rp;
  B.dims.resize((size_t)np * n);
  for (int xp = 0; xp < np; ++xp)
    for (int x = 0; x < n; ++x)
      B.dims[(size_t)xp * n + x] = R.hd(iota[xp], x);
  B.lact.resize((size_t)np * n * n);
  B.ract.resize((size_t)np * np * n);
  for (int xp = 0; xp < np; ++xp)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        auto& mats = B.lact[((size_t)xp * n + x) * n + y];
        mats.resize(R.hd(x, y));
        for (int k = 0; k < R.hd(x, y); ++k) {
          KMat m(R.hd(iota[xp], y), R.hd(iota[xp], x));
          for (int c = 0; c < R.hd(iota[xp], x); ++c) {
            KMat res = R.compose(iota[xp], x, y, basis_column(R.hd(iota[xp], x), c),
                                 basis_column(R.hd(x, y), k));
            for (int r = 0; r < m.rows; ++r) m.at(r, c) = res.at(r, 0);
          }
          mats[k] = m;
        }
      }
  for (int xp = 0; xp < np; ++xp)
    for (int yp = 0; yp < np; ++yp)
      for (int x = 0; x < n; ++x) {
        auto& mats = B.ract[((size_t)xp * np + yp) * n + x];
        mats.resize(Rp.hd(yp, xp));
        for (int k = 0; k < Rp.hd(yp, xp); ++k) {
          // fp in hom_{R'}(yp, xp) = hom_R(iota yp, iota xp): pre-compose
          KMat m(R.hd(iota[yp], x), R.hd(iota[xp], x));
          for (int c = 0; c < R.hd(iota[xp], x); ++c) {
            KMat res =
                R.compose(iota[yp], iota[xp], x,
                          basis_column(R.hd(iota[yp], iota[xp]), k),
                          basis_column(R.hd(iota[xp], x), c));
            for (int r = 0; r < m.rows; ++r) m.at(r, c) = res.at(r, 0);
          }
          mats[k] = m;
        }
      }
  return B;
}

}  // namespace

TEST_CASE("ringoid_check on group algebras, posets, and fuzzed constants") {
  Ringoid S3 = group_algebra_ringoid(s3_mult(), 0);
  CHECK(ringoid_check(S3).ok);
  Ringoid P = matrix_pattern_ringoid({1, 1}, {{1, 1}, {0, 1}});
  CHECK(ringoid_check(P).ok);
  Ringoid bad = S3;
  bad.comp[0].at(2, 7) += Cyclotomic::one();
  CheckResult res = ringoid_check(bad);
  CHECK(!res.ok);
  CHECK(!res.witness.empty());
}

TEST_CASE("random ringoids are valid and twists preserve validity") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 20; ++i) {
    Ringoid R = random_ringoid(rng);
    CHECK(ringoid_check(R).ok);
  }
}

TEST_CASE("regular modules satisfy the module axioms") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 6; ++i) {
    Ringoid R = random_ringoid(rng);
    for (int z = 0; z < R.nobj; ++z) {
      CHECK(module_check(regular_left(R, z)));
      CHECK(module_check(regular_right(R, z)));
    }
  }
}

TEST_CASE("ind/coind examples") {
  Ringoid A = group_algebra_ringoid(s3_mult(), 0);
  EndAlgModule M = regular_endalg_module(A, 0);
  RModule IM = ind_module(A, 0, M);
  CHECK(IM.dims[0] == 6);
  CHECK(module_check(IM));
  RModule CM = coind_module(A, 0, M);
  CHECK(CM.dims[0] == 6);
  CHECK(module_check(CM));
  Ringoid D = matrix_pattern_ringoid({1, 1}, {{1, 0}, {0, 1}});
  EndAlgModule K1;
  K1.dim = 1;
  K1.act = {KMat::identity(1)};
  RModule ID = ind_module(D, 0, K1);
  CHECK(ID.dims[0] == 1);
  CHECK(ID.dims[1] == 0);
  Ringoid P = matrix_pattern_ringoid({1, 1}, {{1, 1}, {0, 1}});
  RModule IP = ind_module(P, 0, K1);
  CHECK(IP.dims == std::vector<int>{1, 1});
  CHECK(module_check(IP));
  CHECK(is_induced(IP, 0));
}

TEST_CASE("adjunction triangle identities on random ringoids") {
  std::mt19937_64 rng(123);
  int done = 0;
  while (done < 20) {
    Ringoid R = random_ringoid(rng);
    int x = (int)(rng() % R.nobj);
    if (R.hd(x, x) == 0) continue;
    EndAlgModule M = regular_endalg_module(R, x);
    int z = (int)(rng() % R.nobj);
    if (R.hd(z, z) == 0) continue;
    RModule N = regular_left(R, z);
    CHECK(check_ind_res_triangles(R, x, M, N));
    CHECK(check_res_coind_triangles(R, x, M, N));
    ++done;
  }
}

TEST_CASE("end examples: center of S_3, Schur, coend of A (x) A") {
  Ringoid A = group_algebra_ringoid(s3_mult(), 0);
  RModule L = regular_left(A, 0);
  RightModule Rt = regular_right(A, 0);
  RBimodule B;
  B.R = &A;
  B.Rp = &A;
  B.dims = {6};
  B.lact.resize(1);
  B.ract.resize(1);
  B.lact[0].resize(6);
  B.ract[0].resize(6);
  for (int k = 0; k < 6; ++k) {
    B.lact[0][k] = L.act_of(0, 0, basis_column(6, k));
    B.ract[0][k] = Rt.act_of(0, 0, basis_column(6, k));
  }
  CHECK(bimodule_check(B));
  CHECK(end_of(B).dim == 3);
  TensorResult T = tensor_over(Rt, L);
  CHECK(T.Q.dim == 6);
  // Schur: 1-dim C_3-module over Q(z3)
  std::vector<std::vector<int>> c3 = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  Ringoid C3 = group_algebra_ringoid(c3, 0);
  RModule S;
  S.R = &C3;
  S.dims = {1};
  S.act.resize(1);
  S.act[0].resize(3);
  for (int k = 0; k < 3; ++k) {
    KMat m(1, 1);
    m.at(0, 0) = Cyclotomic::root(3, k);
    S.act[0][k] = m;
  }
  CHECK(module_check(S));
  RBimodule H = hom_bimodule(S, S);
  CHECK(end_of(H).dim == 1);
}

TEST_CASE("end of Hom(M, N) equals the intertwiner-system dimension") {
  std::mt19937_64 rng(321);
  int done = 0;
  while (done < 20) {
    Ringoid R = random_ringoid(rng);
    int z1 = (int)(rng() % R.nobj), z2 = (int)(rng() % R.nobj);
    RModule M = regular_left(R, z1), N = regular_left(R, z2);
    RBimodule H = hom_bimodule(M, N);
    CHECK(end_of(H).dim == hom_space_dim(M, N));
    ++done;
  }
}

TEST_CASE("tens_induced: induced modules contract to one object") {
  std::mt19937_64 rng(99);
  int done = 0;
  while (done < 50) {
    Ringoid R = random_ringoid(rng);
    int x = (int)(rng() % R.nobj);
    if (R.hd(x, x) == 0) continue;
    EndAlgModule M = regular_endalg_module(R, x);
    RModule N = ind_module(R, x, M);
    int z = (int)(rng() % R.nobj);
    if (R.hd(z, z) == 0) continue;
    RightModule W = regular_right(R, z);
    TensorResult T = tensor_over(W, N);
    int wx = W.dims[x], nx = N.dims[x], dxx = R.hd(x, x);
    int ambient = wx * nx;
    std::vector<KMat> rels;
    for (int ak = 0; ak < dxx; ++ak) {
      KMat f = basis_column(dxx, ak);
      KMat aW = W.act_of(x, x, f);
      KMat aN = N.act_of(x, x, f);
      for (int wi = 0; wi < wx; ++wi)
        for (int ni = 0; ni < nx; ++ni) {
          KMat rel(ambient, 1);
          for (int wj = 0; wj < wx; ++wj)
            if (!aW.at(wj, wi).is_zero())
              rel.at(wj * nx + ni, 0) += aW.at(wj, wi);
          for (int nj = 0; nj < nx; ++nj)
            if (!aN.at(nj, ni).is_zero())
              rel.at(wi * nx + nj, 0) -= aN.at(nj, ni);
          rels.push_back(rel);
        }
    }
    KMat relmat(ambient, (int)rels.size());
    for (size_t c = 0; c < rels.size(); ++c)
      for (int r = 0; r < ambient; ++r) relmat.at(r, (int)c) = rels[c].at(r, 0);
    KQuotient Q = kmat_quotient(relmat, ambient);
    CHECK(Q.dim == T.Q.dim);
    KMat emb(T.offset[R.nobj], ambient);
    for (int c = 0; c < ambient; ++c)
      emb.at(T.offset[x] + c, c) = Cyclotomic::one();
    KMat can = kmat_mul(T.Q.proj, kmat_mul(emb, Q.sect));
    CHECK(kmat_rank(can) == T.Q.dim);
    ++done;
  }
}

TEST_CASE("tensor adjunction dimension identity") {
  std::mt19937_64 rng(17);
  int done = 0;
  while (done < 10) {
    Ringoid R = random_ringoid(rng);
    int z1 = (int)(rng() % R.nobj), z2 = (int)(rng() % R.nobj);
    RightModule M = regular_right(R, z1);
    RModule N = regular_left(R, z2);
    TensorResult T = tensor_over(M, N);
    RModule Mdual;
    Mdual.R = &R;
    Mdual.dims = M.dims;
    Mdual.act.resize(M.act.size());
    for (int x = 0; x < R.nobj; ++x)
      for (int y = 0; y < R.nobj; ++y) {
        auto& mats = Mdual.act[(size_t)x * R.nobj + y];
        mats.resize(R.hd(x, y));
        for (int k = 0; k < R.hd(x, y); ++k)
          mats[k] = kmat_transpose(M.act_of(x, y, basis_column(R.hd(x, y), k)));
      }
    CHECK(module_check(Mdual));
    CHECK(T.Q.dim == hom_space_dim(N, Mdual));
    ++done;
  }
}

TEST_CASE("is_induced / is_cartesian basics") {
  Ringoid P = matrix_pattern_ringoid({1, 1}, {{1, 1}, {0, 1}});
  EndAlgModule K1;
  K1.dim = 1;
  K1.act = {KMat::identity(1)};
  RModule IP = ind_module(P, 0, K1);
  CHECK(is_induced(IP, 0));
  RModule CP = coind_module(P, 0, K1);
  CHECK(is_coinduced(CP, 0));
  RModule Z = zero_module(P);
  CHECK(is_induced(Z, 0));
  CHECK(is_cartesian(Z));
  Ringoid F = matrix_pattern_ringoid({1, 1}, {{1, 1}, {1, 1}});
  RModule L0 = regular_left(F, 0);
  CHECK(is_cartesian(L0));
}

TEST_CASE("morita_check fixtures") {
  Ringoid R = matrix_pattern_ringoid({1, 1}, {{1, 1}, {1, 1}});
  Ringoid Rp = matrix_pattern_ringoid({1}, {{1}});
  RBimodule B = hom_sub_bimodule(R, Rp, {0});
  CHECK(bimodule_check(B));
  MoritaReport rep = morita_check(B, {0});
  CHECK(rep.induced_left);
  CHECK(rep.induced_right);
  CHECK(rep.endalg_morita);
  CHECK(rep.objects_covered);
  CHECK(rep.counit_iso);
  CHECK(rep.unit_iso);
  CHECK(rep.ok());

  Ringoid M2 = matrix_pattern_ringoid({2}, {{1}});
  Ringoid Kf = matrix_pattern_ringoid({1}, {{1}});
  RBimodule C;
  C.R = &M2;
  C.Rp = &Kf;
  C.dims = {2};
  C.lact.resize(1);
  C.ract.resize(1);
  C.lact[0].resize(4);
  for (int k = 0; k < 4; ++k) {
    KMat m(2, 2);
    m.at(k / 2, k % 2) = Cyclotomic::one();
    C.lact[0][k] = m;
  }
  C.ract[0] = {KMat::identity(2)};
  CHECK(bimodule_check(C));
  CHECK(morita_check(C, {0}).ok());

  RBimodule Z;
  Z.R = &M2;
  Z.Rp = &Kf;
  Z.dims = {0};
  Z.lact.resize(1);
  Z.ract.resize(1);
  Z.lact[0].assign(4, KMat(0, 0));
  Z.ract[0] = {KMat(0, 0)};
  MoritaReport rep3 = morita_check(Z, {0});
  CHECK(!rep3.endalg_morita);
  CHECK(!rep3.ok());
}
