#include "hecke_atlas/characters.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

namespace atlas {

// ---------------------------------------------------------------------------
// QContext

QContext::QContext(u64 q, int ext_factor, u64 budget) : q_(q), budget_(budget) {
  u64 p = q;
  for (u64 d = 2; d * d <= q; ++d)
    if (q % d == 0) { p = d; break; }
  int a = 0;
  u64 t = q;
  while (t > 1) {
    if (t % p != 0) throw std::invalid_argument("QContext: q not a prime power");
    t /= p;
    ++a;
  }
  level_ = a;
  tw_ = std::make_shared<FieldTower>((int)p, a * ext_factor);
}

const GroupTable& QContext::group(int n) {
  auto it = groups_.find(n);
  if (it == groups_.end())
    it = groups_.emplace(n, std::make_unique<GroupTable>(*tw_, level_, n, budget_)).first;
  return *it->second;
}

const CharacterTable& QContext::table(int n) {
  auto it = tables_.find(n);
  if (it == tables_.end()) {
    auto tab = std::make_unique<CharacterTable>(dixon_table(group(n)));
    it = tables_.emplace(n, std::move(tab)).first;
  }
  return *it->second;
}

const ParabolicData& QContext::parabolic(int n, const std::vector<int>& comp) {
  auto key = std::make_pair(n, comp);
  auto it = parabolics_.find(key);
  if (it == parabolics_.end())
    it = parabolics_.emplace(key, parabolic_make(group(n), comp)).first;
  return it->second;
}

// ---------------------------------------------------------------------------
// class functions

ClassFn cf_zero(const GroupTable& G) {
  ClassFn f;
  f.G = &G;
  f.v.assign(G.num_classes(), Cyclotomic::zero());
  return f;
}

ClassFn cf_add(const ClassFn& a, const ClassFn& b) {
  ClassFn out = a;
  for (size_t i = 0; i < out.v.size(); ++i) out.v[i] += b.v[i];
  return out;
}

ClassFn cf_sub(const ClassFn& a, const ClassFn& b) {
  ClassFn out = a;
  for (size_t i = 0; i < out.v.size(); ++i) out.v[i] -= b.v[i];
  return out;
}

Cyclotomic cf_inner(const ClassFn& a, const ClassFn& b) {
  const GroupTable& G = *a.G;
  Cyclotomic acc = Cyclotomic::zero();
  for (int c = 0; c < G.num_classes(); ++c) {
    if (a.v[c].is_zero() || b.v[c].is_zero()) continue;
    acc += (a.v[c] * b.v[c].conj()).scaled(Rational((long)G.class_size(c)));
  }
  return acc.scaled(Rational(1, (long)G.size()));
}

// ---------------------------------------------------------------------------
// class multiplication constants

ClassMult::ClassMult(const GroupTable& G) {
  nc_ = G.num_classes();
  a_.assign((size_t)nc_ * nc_ * nc_, 0);
  std::vector<std::vector<int>> members(nc_);
  for (size_t g = 0; g < G.size(); ++g) members[G.class_of((int)g)].push_back((int)g);
  for (int k = 0; k < nc_; ++k) {
    int zk = G.class_rep(k);
    for (int i = 0; i < nc_; ++i)
      for (int x : members[i]) {
        int y = G.mul(G.inv(x), zk);
        ++a_[((size_t)i * nc_ + G.class_of(y)) * nc_ + k];
      }
  }
}

// ---------------------------------------------------------------------------
// central elements

CentralElt central_zero(const GroupTable& G) {
  CentralElt c;
  c.G = &G;
  c.coeff.assign(G.num_classes(), Cyclotomic::zero());
  return c;
}

CentralElt central_one(const GroupTable& G) {
  CentralElt c = central_zero(G);
  c.coeff[G.class_of(G.identity())] = Cyclotomic::one();
  return c;
}

CentralElt central_add(const CentralElt& a, const CentralElt& b) {
  CentralElt out = a;
  for (size_t i = 0; i < out.coeff.size(); ++i) out.coeff[i] += b.coeff[i];
  return out;
}

CentralElt central_convolve(const ClassMult& cm, const CentralElt& a,
                            const CentralElt& b) {
  const GroupTable& G = *a.G;
  int nc = cm.classes();
  CentralElt out = central_zero(G);
  for (int i = 0; i < nc; ++i) {
    if (a.coeff[i].is_zero()) continue;
    for (int j = 0; j < nc; ++j) {
      if (b.coeff[j].is_zero()) continue;
      Cyclotomic prod = a.coeff[i] * b.coeff[j];
      for (int k = 0; k < nc; ++k) {
        u64 m = cm.a(i, j, k);
        if (m) out.coeff[k] += prod.scaled(Rational((long)m));
      }
    }
  }
  return out;
}

bool central_eq(const CentralElt& a, const CentralElt& b) {
  for (size_t i = 0; i < a.coeff.size(); ++i)
    if (a.coeff[i] != b.coeff[i]) return false;
  return true;
}

bool central_ell_integral(const CentralElt& a, u64 ell) {
  for (auto& c : a.coeff)
    if (!c.ell_integral(ell)) return false;
  return true;
}

CentralElt idempotent_of_irr(const CharacterTable& T, int irr_index) {
  const GroupTable& G = *T.G;
  CentralElt e = central_zero(G);
  Rational scale((long)T.degrees[irr_index], (long)G.size());
  scale.canonicalize();
  for (int c = 0; c < G.num_classes(); ++c)
    e.coeff[c] = T.irr[irr_index].v[G.class_inv(c)].scaled(scale).descended();
  return e;
}

// ---------------------------------------------------------------------------
// Dixon's method

namespace {

u64 add_m(u64 a, u64 b, u64 P) { return (a + b) % P; }
u64 sub_m(u64 a, u64 b, u64 P) { return (a + P - b) % P; }
u64 mul_m(u64 a, u64 b, u64 P) { return (unsigned __int128)a * b % P; }
u64 inv_m(u64 a, u64 P) { return pow_mod(a, P - 2, P); }

using VecP = std::vector<u64>;
using MatP = std::vector<VecP>;

// Nullspace basis of the square matrix A mod P.
std::vector<VecP> nullspace(MatP A, u64 P) {
  size_t n = A.size();
  size_t row = 0;
  std::vector<int> col_pivot(n, -1);
  for (size_t col = 0; col < n && row < n; ++col) {
    size_t piv = row;
    while (piv < n && A[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(A[row], A[piv]);
    u64 ip = inv_m(A[row][col], P);
    for (size_t j = col; j < n; ++j) A[row][j] = mul_m(A[row][j], ip, P);
    for (size_t r = 0; r < n; ++r) {
      if (r == row || A[r][col] == 0) continue;
      u64 f = A[r][col];
      for (size_t j = col; j < n; ++j)
        A[r][j] = sub_m(A[r][j], mul_m(f, A[row][j], P), P);
    }
    col_pivot[col] = (int)row;
    ++row;
  }
  std::vector<VecP> basis;
  for (size_t col = 0; col < n; ++col) {
    if (col_pivot[col] >= 0) continue;
    VecP v(n, 0);
    v[col] = 1;
    for (size_t c2 = 0; c2 < n; ++c2)
      if (col_pivot[c2] >= 0) v[c2] = sub_m(0, A[col_pivot[c2]][col], P);
    basis.push_back(v);
  }
  return basis;
}

// Solve B x = y for independent columns B; y must lie in their span.
VecP solve_in_span(const std::vector<VecP>& Bcols, const VecP& y, u64 P) {
  size_t k = y.size(), dim = Bcols.size();
  MatP A(k, VecP(dim + 1, 0));
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < dim; ++j) A[i][j] = Bcols[j][i];
    A[i][dim] = y[i];
  }
  std::vector<int> col_pivot(dim, -1);
  size_t row = 0;
  for (size_t col = 0; col < dim && row < k; ++col) {
    size_t piv = row;
    while (piv < k && A[piv][col] == 0) ++piv;
    if (piv == k) continue;
    std::swap(A[row], A[piv]);
    u64 ip = inv_m(A[row][col], P);
    for (size_t j = col; j <= dim; ++j) A[row][j] = mul_m(A[row][j], ip, P);
    for (size_t r = 0; r < k; ++r) {
      if (r == row || A[r][col] == 0) continue;
      u64 f = A[r][col];
      for (size_t j = col; j <= dim; ++j)
        A[r][j] = sub_m(A[r][j], mul_m(f, A[row][j], P), P);
    }
    col_pivot[col] = (int)row;
    ++row;
  }
  for (size_t r = row; r < k; ++r)
    if (A[r][dim] != 0) throw std::logic_error("solve_in_span: inconsistent");
  VecP x(dim, 0);
  for (size_t j = 0; j < dim; ++j)
    if (col_pivot[j] >= 0) x[j] = A[col_pivot[j]][dim];
  return x;
}

u64 find_dixon_prime(u64 e, u64 order) {
  double bound = 2.0 * std::sqrt((double)order);
  for (u64 P = e + 1;; P += e)
    if ((double)P > bound && is_prime_u64(P)) return P;
}

u64 primitive_root(u64 P) {
  auto prs = prime_divisors(P - 1);
  for (u64 g = 2; g < P; ++g) {
    bool ok = true;
    for (u64 r : prs)
      if (pow_mod(g, (P - 1) / r, P) == 1) { ok = false; break; }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: none found");
}

// Canonical comparison of cyclotomic values for deterministic row sorting.
int cyc_cmp(const Cyclotomic& a, const Cyclotomic& b) {
  int M = (int)lcm_i64(a.order(), b.order());
  auto ca = a.lifted(M).coeffs(), cb = b.lifted(M).coeffs();
  for (size_t i = 0; i < ca.size(); ++i) {
    int c = cmp(ca[i], cb[i]);
    if (c) return c;
  }
  return 0;
}

void sort_rows(CharacterTable& T) {
  int nc = (int)T.irr.size();
  std::vector<int> order(nc);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (T.degrees[x] != T.degrees[y]) return T.degrees[x] < T.degrees[y];
    for (int c = 0; c < nc; ++c) {
      int cc = cyc_cmp(T.irr[x].v[c], T.irr[y].v[c]);
      if (cc) return cc < 0;
    }
    return false;
  });
  std::vector<ClassFn> irr;
  std::vector<u64> deg;
  for (int i : order) {
    irr.push_back(T.irr[i]);
    deg.push_back(T.degrees[i]);
  }
  T.irr = irr;
  T.degrees = deg;
}

}  // namespace

CharacterTable dixon_table(const GroupTable& G) {
  int nc = G.num_classes();
  u64 e = G.exponent();
  u64 P = find_dixon_prime(e, G.size());

  ClassMult cm(G);
  // class algebra matrices: (M_i)[k][j] = a(i, j, k)
  std::vector<MatP> M(nc, MatP(nc, VecP(nc, 0)));
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j)
      for (int k = 0; k < nc; ++k) M[i][k][j] = cm.a(i, j, k) % P;

  // split the coordinate space into common eigenspaces
  std::vector<std::vector<VecP>> spaces;
  {
    std::vector<VecP> full;
    for (int i = 0; i < nc; ++i) {
      VecP v(nc, 0);
      v[i] = 1;
      full.push_back(v);
    }
    spaces.push_back(full);
  }
  for (int i = 0; i < nc; ++i) {
    std::vector<std::vector<VecP>> next;
    for (auto& B : spaces) {
      if (B.size() == 1) { next.push_back(B); continue; }
      size_t dim = B.size();
      std::vector<VecP> MB(dim, VecP(nc, 0));
      for (size_t b = 0; b < dim; ++b)
        for (int r = 0; r < nc; ++r) {
          u64 acc = 0;
          for (int c = 0; c < nc; ++c)
            if (B[b][c]) acc = add_m(acc, mul_m(M[i][r][c], B[b][c], P), P);
          MB[b][r] = acc;
        }
      MatP C(dim, VecP(dim, 0));
      for (size_t b = 0; b < dim; ++b) {
        VecP x = solve_in_span(B, MB[b], P);
        for (size_t r = 0; r < dim; ++r) C[r][b] = x[r];
      }
      bool split = false;
      for (u64 lam = 0; lam < P; ++lam) {
        MatP Cl = C;
        for (size_t d = 0; d < dim; ++d) Cl[d][d] = sub_m(Cl[d][d], lam, P);
        auto ns = nullspace(Cl, P);
        if (ns.empty()) continue;
        std::vector<VecP> sub;
        for (auto& coef : ns) {
          VecP v(nc, 0);
          for (size_t b = 0; b < dim; ++b)
            for (int c = 0; c < nc; ++c)
              v[c] = add_m(v[c], mul_m(coef[b], B[b][c], P), P);
          sub.push_back(v);
        }
        next.push_back(sub);
        split = true;
      }
      if (!split) next.push_back(B);
    }
    spaces = next;
  }
  if ((int)spaces.size() != nc)
    throw std::logic_error("dixon_table: eigenspace splitting incomplete");

  int id_class = G.class_of(G.identity());
  std::vector<VecP> omega(nc, VecP(nc, 0));
  for (int t = 0; t < nc; ++t) {
    const VecP& v = spaces[t][0];
    int nz = 0;
    while (v[nz] == 0) ++nz;
    for (int i = 0; i < nc; ++i) {
      u64 acc = 0;
      for (int c = 0; c < nc; ++c)
        if (v[c]) acc = add_m(acc, mul_m(M[i][nz][c], v[c], P), P);
      omega[t][i] = mul_m(acc, inv_m(v[nz], P), P);
    }
  }
  std::vector<u64> hP(nc);
  for (int c = 0; c < nc; ++c) hP[c] = G.class_size(c) % P;
  std::vector<u64> degree(nc);
  std::vector<VecP> chiP(nc, VecP(nc, 0));
  u64 gsizeP = G.size() % P;
  for (int t = 0; t < nc; ++t) {
    u64 s = 0;
    for (int i = 0; i < nc; ++i)
      s = add_m(s, mul_m(mul_m(omega[t][i], omega[t][G.class_inv(i)], P),
                         inv_m(hP[i], P), P),
                P);
    u64 d2 = mul_m(gsizeP, inv_m(s, P), P);
    u64 d = 0;
    for (u64 cand = 1; cand * cand <= G.size(); ++cand)
      if (mul_m(cand, cand, P) == d2) { d = cand; break; }
    if (d == 0) throw std::logic_error("dixon_table: degree not found");
    degree[t] = d;
    for (int i = 0; i < nc; ++i)
      chiP[t][i] = mul_m(mul_m(d % P, omega[t][i], P), inv_m(hP[i], P), P);
  }

  // lift to exact cyclotomic values through the power maps
  u64 z = pow_mod(primitive_root(P), (P - 1) / e, P);
  std::vector<std::vector<int>> powcls(nc, std::vector<int>((size_t)e));
  for (int c = 0; c < nc; ++c)
    for (u64 l = 0; l < e; ++l) powcls[c][l] = G.class_pow(c, (i64)l);
  u64 einv = inv_m(e % P, P);
  std::vector<u64> zpow((size_t)e);
  zpow[0] = 1;
  for (u64 j = 1; j < e; ++j) zpow[j] = mul_m(zpow[j - 1], z, P);

  CharacterTable T;
  T.G = &G;
  T.exponent = e;
  T.identity_class = id_class;
  for (int t = 0; t < nc; ++t) {
    ClassFn row;
    row.G = &G;
    row.v.resize(nc);
    for (int c = 0; c < nc; ++c) {
      Cyclotomic val = Cyclotomic::zero();
      for (u64 j = 0; j < e; ++j) {
        u64 acc = 0;
        for (u64 l = 0; l < e; ++l) {
          u64 zm = zpow[(e - (j * l) % e) % e];
          acc = add_m(acc, mul_m(chiP[t][powcls[c][l]], zm, P), P);
        }
        u64 mj = mul_m(acc, einv, P);
        if (mj > G.size())
          throw std::logic_error("dixon_table: multiplicity out of range");
        if (mj) val += Cyclotomic::root((int)e, (i64)j).scaled(Rational((long)mj));
      }
      row.v[c] = val.descended();
    }
    if (!(row.v[id_class] == Cyclotomic((long)degree[t])))
      throw std::logic_error("dixon_table: degree/value mismatch");
    T.irr.push_back(row);
    T.degrees.push_back(degree[t]);
  }
  sort_rows(T);
  return T;
}

bool CharacterTable::check() const {
  int nc = G->num_classes();
  if ((int)irr.size() != nc) return false;
  u64 sumsq = 0;
  for (int i = 0; i < nc; ++i) {
    if (degrees[i] == 0) return false;
    Cyclotomic d = irr[i].v[identity_class];
    if (!d.is_rational() || d.rational_value() != Rational((long)degrees[i]))
      return false;
    sumsq += degrees[i] * degrees[i];
  }
  if (sumsq != G->size()) return false;
  for (int i = 0; i < nc; ++i)
    for (int j = i; j < nc; ++j) {
      Cyclotomic ip = cf_inner(irr[i], irr[j]);
      if (i == j ? !(ip == Cyclotomic::one()) : !ip.is_zero()) return false;
    }
  for (int c = 0; c < nc; ++c)
    for (int d = c; d < nc; ++d) {
      Cyclotomic acc = Cyclotomic::zero();
      for (int i = 0; i < nc; ++i) acc += irr[i].v[c] * irr[i].v[d].conj();
      if (c == d) {
        Rational want((long)(G->size() / G->class_size(c)));
        if (!(acc == Cyclotomic(want))) return false;
      } else if (!acc.is_zero()) {
        return false;
      }
    }
  return true;
}

// ---------------------------------------------------------------------------
// analytic GL_2 table

namespace {

struct Gl2ClassInfo {
  enum Kind { Central, Unipotent, Split, Elliptic } kind;
  fq_t a = 0, b = 0;  // eigenvalues in F_q
  fq_t beta = 0;      // eigenvalue in F_{q^2}
};

Gl2ClassInfo gl2_class_info(const FieldTower& tw, int lvl,
                            const ConjClassLabel& l) {
  Gl2ClassInfo info;
  if (l.parts.size() == 1 && l.parts[0].first.degree() == 1) {
    fq_t a = tw.neg(lvl, l.parts[0].first.c[0]);
    info.a = info.b = a;
    info.kind = l.parts[0].second == std::vector<int>{1, 1}
                    ? Gl2ClassInfo::Central
                    : Gl2ClassInfo::Unipotent;
  } else if (l.parts.size() == 2) {
    info.kind = Gl2ClassInfo::Split;
    info.a = tw.neg(lvl, l.parts[0].first.c[0]);
    info.b = tw.neg(lvl, l.parts[1].first.c[0]);
  } else {
    info.kind = Gl2ClassInfo::Elliptic;
    info.beta = fqpoly_root_in_ext(tw, l.parts[0].first);
  }
  return info;
}

}  // namespace

CharacterTable analytic_gl2_table(QContext& ctx) {
  const GroupTable& G = ctx.group(2);
  const FieldTower& tw = ctx.tower();
  int lvl = ctx.level();
  int lvl2 = 2 * lvl;
  u64 q = ctx.q();
  int nc = G.num_classes();
  std::vector<Gl2ClassInfo> info(nc);
  for (int c = 0; c < nc; ++c)
    info[c] = gl2_class_info(tw, lvl, G.class_label_of(c));

  auto theta1 = [&](fq_t alpha, fq_t x) { return tw.theta(lvl, alpha, x); };
  auto theta2 = [&](fq_t alpha, fq_t x) { return tw.theta(lvl2, alpha, x); };
  auto norm2 = [&](fq_t beta) {
    return tw.project(lvl2, lvl, tw.pow(lvl2, beta, (i64)(q + 1)));
  };

  CharacterTable T;
  T.G = &G;
  T.exponent = (u64)(q * q - 1);
  T.identity_class = G.class_of(G.identity());

  auto push_row = [&](std::vector<Cyclotomic> vals, u64 deg) {
    ClassFn f;
    f.G = &G;
    f.v = std::move(vals);
    for (auto& x : f.v) x = x.descended();
    T.irr.push_back(f);
    T.degrees.push_back(deg);
  };

  u64 Nq = q - 1;
  for (u64 i = 0; i < Nq; ++i) {
    fq_t al = tw.exp_of(lvl, (i64)i);
    std::vector<Cyclotomic> lin(nc), st(nc);
    for (int c = 0; c < nc; ++c) {
      switch (info[c].kind) {
        case Gl2ClassInfo::Central: {
          Cyclotomic v = theta1(al, tw.mul(lvl, info[c].a, info[c].a));
          lin[c] = v;
          st[c] = v.scaled(Rational((long)q));
          break;
        }
        case Gl2ClassInfo::Unipotent: {
          Cyclotomic v = theta1(al, tw.mul(lvl, info[c].a, info[c].a));
          lin[c] = v;
          st[c] = Cyclotomic::zero();
          break;
        }
        case Gl2ClassInfo::Split: {
          Cyclotomic v = theta1(al, tw.mul(lvl, info[c].a, info[c].b));
          lin[c] = v;
          st[c] = v;
          break;
        }
        case Gl2ClassInfo::Elliptic: {
          Cyclotomic v = theta1(al, norm2(info[c].beta));
          lin[c] = v;
          st[c] = -v;
          break;
        }
      }
    }
    push_row(lin, 1);
    push_row(st, q);
  }
  for (u64 i = 0; i < Nq; ++i)
    for (u64 j = i + 1; j < Nq; ++j) {
      fq_t al = tw.exp_of(lvl, (i64)i), be = tw.exp_of(lvl, (i64)j);
      std::vector<Cyclotomic> ps(nc);
      for (int c = 0; c < nc; ++c) {
        switch (info[c].kind) {
          case Gl2ClassInfo::Central:
            ps[c] = (theta1(al, info[c].a) * theta1(be, info[c].a))
                        .scaled(Rational((long)(q + 1)));
            break;
          case Gl2ClassInfo::Unipotent:
            ps[c] = theta1(al, info[c].a) * theta1(be, info[c].a);
            break;
          case Gl2ClassInfo::Split:
            ps[c] = theta1(al, info[c].a) * theta1(be, info[c].b) +
                    theta1(al, info[c].b) * theta1(be, info[c].a);
            break;
          case Gl2ClassInfo::Elliptic:
            ps[c] = Cyclotomic::zero();
            break;
        }
      }
      push_row(ps, q + 1);
    }
  u64 N2 = q * q - 1;
  for (u64 i = 0; i < N2; ++i) {
    u64 iq = i * q % N2;
    if (iq <= i) continue;  // general position, orbit representative
    fq_t th = tw.exp_of(lvl2, (i64)i);
    std::vector<Cyclotomic> cu(nc);
    for (int c = 0; c < nc; ++c) {
      switch (info[c].kind) {
        case Gl2ClassInfo::Central:
          cu[c] = theta2(th, tw.embed(lvl, lvl2, info[c].a))
                      .scaled(Rational((long)(q - 1)));
          break;
        case Gl2ClassInfo::Unipotent:
          cu[c] = -theta2(th, tw.embed(lvl, lvl2, info[c].a));
          break;
        case Gl2ClassInfo::Split:
          cu[c] = Cyclotomic::zero();
          break;
        case Gl2ClassInfo::Elliptic: {
          fq_t bq = tw.frobenius(lvl2, info[c].beta, lvl);
          cu[c] = -(theta2(th, info[c].beta) + theta2(th, bq));
          break;
        }
      }
    }
    push_row(cu, q - 1);
  }

  if ((int)T.irr.size() != nc)
    throw std::logic_error("analytic_gl2_table: row count mismatch");
  sort_rows(T);
  return T;
}

// ---------------------------------------------------------------------------
// cuspidality, induction, series

namespace {

void compositions_of(int n, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int rem) {
    if (rem == 0) { out.push_back(cur); return; }
    for (int c = 1; c <= rem; ++c) {
      cur.push_back(c);
      rec(rem - c);
      cur.pop_back();
    }
  };
  rec(n);
}

}  // namespace

bool is_cuspidal(QContext& ctx, int n, int irr_index) {
  const CharacterTable& T = ctx.table(n);
  std::vector<std::vector<int>> comps;
  compositions_of(n, comps);
  for (auto& comp : comps) {
    if ((int)comp.size() < 2) continue;
    const ParabolicData& P = ctx.parabolic(n, comp);
    Cyclotomic acc = Cyclotomic::zero();
    for (int u : P.U) acc += T.irr[irr_index].v[ctx.group(n).class_of(u)];
    if (!acc.is_zero()) return false;
  }
  return true;
}

ClassFn hc_induct(QContext& ctx, int n, const std::vector<int>& comp,
                  const std::vector<ClassFn>& blocks) {
  const GroupTable& G = ctx.group(n);
  int lvl = ctx.level();
  const ParabolicData& Pd = ctx.parabolic(n, comp);
  u64 Psize = Pd.P.size();
  std::vector<int> offset(comp.size() + 1, 0);
  for (size_t b = 0; b < comp.size(); ++b) offset[b + 1] = offset[b] + comp[b];
  std::vector<int> block_of(n);
  for (size_t b = 0; b < comp.size(); ++b)
    for (int i = offset[b]; i < offset[b + 1]; ++i) block_of[i] = (int)b;

  auto inflated = [&](const FMat& m) {
    Cyclotomic prod = Cyclotomic::one();
    for (size_t b = 0; b < comp.size(); ++b) {
      int d = comp[b];
      FMat sub;
      sub.n = (std::uint8_t)d;
      sub.level = (std::uint8_t)lvl;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          sub.set(i, j, m.at(offset[b] + i, offset[b] + j));
      const GroupTable& Gb = ctx.group(d);
      prod *= blocks[b].v[Gb.class_of(Gb.index_of(sub))];
      if (prod.is_zero()) break;
    }
    return prod;
  };
  auto in_P = [&](const FMat& m) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (block_of[i] > block_of[j] && m.at(i, j) != 0) return false;
    return true;
  };

  std::vector<std::vector<int>> members(G.num_classes());
  for (size_t g = 0; g < G.size(); ++g) members[G.class_of((int)g)].push_back((int)g);

  ClassFn out = cf_zero(G);
  for (int c = 0; c < G.num_classes(); ++c) {
    Cyclotomic acc = Cyclotomic::zero();
    for (int y : members[c]) {
      const FMat& m = G.elem(y);
      if (in_P(m)) acc += inflated(m);
    }
    Rational scale((long)(G.size() / G.class_size(c)), (long)Psize);
    scale.canonicalize();
    out.v[c] = acc.scaled(scale).descended();
  }
  return out;
}

std::map<FqPoly, int> cuspidal_match(QContext& ctx, int d) {
  const GroupTable& G = ctx.group(d);
  const CharacterTable& T = ctx.table(d);
  const FieldTower& tw = ctx.tower();
  int lvl = ctx.level(), lvlD = ctx.level() * d;
  u64 q = ctx.q();

  std::vector<int> cuspidals;
  for (int i = 0; i < (int)T.irr.size(); ++i)
    if (is_cuspidal(ctx, d, i)) cuspidals.push_back(i);

  std::vector<FqPoly> orbits;
  for (const FqPoly& f : monic_irreducibles(tw, lvl, d))
    if (f.c[0] != 0) orbits.push_back(f);
  if (cuspidals.size() != orbits.size())
    throw std::logic_error("cuspidal_match: count mismatch");

  std::vector<std::pair<int, FqPoly>> reg_elliptic;
  for (int c = 0; c < G.num_classes(); ++c) {
    const ConjClassLabel& l = G.class_label_of(c);
    if (l.parts.size() == 1 && l.parts[0].first.degree() == d &&
        l.parts[0].second == std::vector<int>{1})
      reg_elliptic.push_back({c, l.parts[0].first});
  }

  std::map<FqPoly, int> match;
  std::set<int> used;
  for (const FqPoly& f : orbits) {
    fq_t alpha = fqpoly_root_in_ext(tw, f);
    int found = -1;
    for (int i : cuspidals) {
      if (used.count(i)) continue;
      bool ok = true;
      for (auto& [c, h] : reg_elliptic) {
        fq_t beta = fqpoly_root_in_ext(tw, h);
        Cyclotomic expect = Cyclotomic::zero();
        fq_t bpow = beta;
        for (int t = 0; t < d; ++t) {
          expect += tw.theta(lvlD, alpha, bpow);
          bpow = tw.frobenius(lvlD, bpow, lvl);
        }
        if (d % 2 == 0) expect = -expect;  // (-1)^{d-1}
        if (!(T.irr[i].v[c] == expect)) { ok = false; break; }
      }
      if (!ok) continue;
      for (u64 t = 0; t < q - 1 && ok; ++t) {
        fq_t a = tw.exp_of(lvl, (i64)t);
        FMat aI = fmat_identity(d, lvl);
        for (int r = 0; r < d; ++r) aI.set(r, r, (fq_t)a);
        int c = G.class_of(G.index_of(aI));
        Cyclotomic want = tw.theta(lvlD, alpha, tw.embed(lvl, lvlD, a))
                              .scaled(Rational((long)T.degrees[i]));
        if (!(T.irr[i].v[c] == want)) ok = false;
      }
      if (ok) { found = i; break; }
    }
    if (found < 0) throw std::logic_error("cuspidal_match: no consistent match");
    match[f] = found;
    used.insert(found);
  }
  return match;
}

int SeriesAssignment::class_index(const SemisimpleClass& s) const {
  auto it = std::lower_bound(classes.begin(), classes.end(), s);
  if (it == classes.end() || !(*it == s))
    throw std::domain_error("SeriesAssignment: unknown class");
  return (int)(it - classes.begin());
}

SeriesAssignment series_partition(QContext& ctx, int n) {
  const CharacterTable& T = ctx.table(n);
  SeriesAssignment sa;
  sa.classes = semisimple_classes(ctx.tower(), ctx.level(), n);
  sa.irr_to_class.assign(T.irr.size(), -1);
  sa.fibers.assign(sa.classes.size(), {});

  std::map<int, std::map<FqPoly, int>> match;
  for (const auto& s : sa.classes)
    for (auto& [f, m] : s.parts)
      if (!match.count(f.degree()))
        match[f.degree()] = cuspidal_match(ctx, f.degree());

  for (size_t si = 0; si < sa.classes.size(); ++si) {
    const SemisimpleClass& s = sa.classes[si];
    std::vector<std::pair<int, FqPoly>> blocks;
    for (auto& [f, m] : s.parts)
      for (int copy = 0; copy < m; ++copy) blocks.push_back({f.degree(), f});
    std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    std::vector<int> comp;
    std::vector<ClassFn> sigma;
    for (auto& [dd, f] : blocks) {
      comp.push_back(dd);
      sigma.push_back(ctx.table(dd).irr[match[dd].at(f)]);
    }
    ClassFn ind = hc_induct(ctx, n, comp, sigma);
    for (size_t i = 0; i < T.irr.size(); ++i) {
      Cyclotomic mult = cf_inner(ind, T.irr[i]);
      if (mult.is_zero()) continue;
      if (!mult.is_rational() || mult.rational_value().get_den() != 1 ||
          mult.rational_value() < 0)
        throw std::logic_error("series_partition: non-integral multiplicity");
      if (sa.irr_to_class[i] != -1)
        throw std::logic_error("series_partition: constituent assigned twice");
      sa.irr_to_class[i] = (int)si;
      sa.fibers[si].push_back((int)i);
    }
  }
  for (int c : sa.irr_to_class)
    if (c < 0) throw std::logic_error("series_partition: assignment not total");
  return sa;
}

CentralElt idempotent_of_series(QContext& ctx, int n, const SeriesAssignment& sa,
                                const SemisimpleClass& s) {
  const CharacterTable& T = ctx.table(n);
  CentralElt e = central_zero(*T.G);
  for (int i : sa.fibers[sa.class_index(s)])
    e = central_add(e, idempotent_of_irr(T, i));
  for (auto& c : e.coeff) c = c.descended();
  return e;
}

std::map<SemisimpleClass, std::vector<SemisimpleClass>> bm_fibers(QContext& ctx,
                                                                  int n, u64 ell) {
  std::map<SemisimpleClass, std::vector<SemisimpleClass>> fibers;
  for (const auto& sp : semisimple_classes(ctx.tower(), ctx.level(), n))
    fibers[ell_regular_part_class(ctx.tower(), ctx.level(), sp, ell)].push_back(sp);
  return fibers;
}

CentralElt idempotent_ell(QContext& ctx, int n, const SeriesAssignment& sa,
                          const SemisimpleClass& s, u64 ell) {
  if (ell == (u64)ctx.tower().p())
    throw std::invalid_argument("idempotent_ell: ell = p");
  if (!ss_ell_regular(ctx.tower(), ctx.level(), s, ell))
    throw std::invalid_argument("idempotent_ell: s not ell-regular");
  CentralElt e = central_zero(*ctx.table(n).G);
  for (const auto& sp : semisimple_classes(ctx.tower(), ctx.level(), n))
    if (ell_regular_part_class(ctx.tower(), ctx.level(), sp, ell) == s)
      e = central_add(e, idempotent_of_series(ctx, n, sa, sp));
  for (auto& c : e.coeff) c = c.descended();
  return e;
}

// ---------------------------------------------------------------------------
// group-algebra elements and compat

GAElt ga_convolve(const GroupTable& G, const GAElt& a, const GAElt& b) {
  GAElt out;
  for (auto& [x, ax] : a)
    for (auto& [y, by] : b) {
      Cyclotomic prod = ax * by;
      if (prod.is_zero()) continue;
      int z = G.mul(x, y);
      auto it = out.find(z);
      if (it == out.end())
        out[z] = prod;
      else
        it->second += prod;
    }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

bool ga_eq(const GAElt& a, const GAElt& b) {
  for (auto& [x, ax] : a) {
    auto it = b.find(x);
    if (it == b.end() ? !ax.is_zero() : !(ax == it->second)) return false;
  }
  for (auto& [x, bx] : b)
    if (!a.count(x) && !bx.is_zero()) return false;
  return true;
}

GAElt central_to_ga(const CentralElt& c) {
  GAElt out;
  const GroupTable& G = *c.G;
  for (size_t g = 0; g < G.size(); ++g) {
    const Cyclotomic& v = c.coeff[G.class_of((int)g)];
    if (!v.is_zero()) out[(int)g] = v;
  }
  return out;
}

GAElt eU_elt(const GroupTable& G, const ParabolicData& P) {
  GAElt out;
  Rational r(1, (long)P.U.size());
  r.canonicalize();
  for (int u : P.U) out[u] = Cyclotomic(r);
  return out;
}

GAElt eL_of_s(QContext& ctx, int n, const std::vector<int>& comp,
              const SemisimpleClass& s, std::optional<u64> ell) {
  const GroupTable& G = ctx.group(n);
  const FieldTower& tw = ctx.tower();
  int lvl = ctx.level();
  const ParabolicData& Pd = ctx.parabolic(n, comp);
  std::vector<int> offset(comp.size() + 1, 0);
  for (size_t b = 0; b < comp.size(); ++b) offset[b + 1] = offset[b] + comp[b];

  std::vector<std::vector<SemisimpleClass>> block_classes(comp.size());
  std::vector<SeriesAssignment> block_sa;
  for (size_t b = 0; b < comp.size(); ++b) {
    block_classes[b] = semisimple_classes(tw, lvl, comp[b]);
    block_sa.push_back(series_partition(ctx, comp[b]));
  }
  std::vector<std::vector<const SemisimpleClass*>> tuples;
  std::vector<const SemisimpleClass*> cur(comp.size());
  std::function<void(size_t)> rec = [&](size_t b) {
    if (b == comp.size()) {
      std::vector<SemisimpleClass> factors;
      for (auto* t : cur) factors.push_back(*t);
      SemisimpleClass merged = ss_levi_embed(factors);
      bool take = ell ? ell_regular_part_class(tw, lvl, merged, *ell) == s
                      : merged == s;
      if (take) tuples.push_back(cur);
      return;
    }
    for (const auto& t : block_classes[b]) {
      cur[b] = &t;
      rec(b + 1);
    }
  };
  rec(0);

  std::vector<std::map<const SemisimpleClass*, CentralElt>> block_e(comp.size());
  for (auto& tup : tuples)
    for (size_t b = 0; b < comp.size(); ++b)
      if (!block_e[b].count(tup[b]))
        block_e[b][tup[b]] =
            idempotent_of_series(ctx, comp[b], block_sa[b], *tup[b]);

  GAElt out;
  for (int m : Pd.M) {
    const FMat& mm = G.elem(m);
    std::vector<int> bcls(comp.size());
    for (size_t b = 0; b < comp.size(); ++b) {
      int d = comp[b];
      FMat sub;
      sub.n = (std::uint8_t)d;
      sub.level = (std::uint8_t)lvl;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          sub.set(i, j, mm.at(offset[b] + i, offset[b] + j));
      const GroupTable& Gb = ctx.group(d);
      bcls[b] = Gb.class_of(Gb.index_of(sub));
    }
    Cyclotomic acc = Cyclotomic::zero();
    for (auto& tup : tuples) {
      Cyclotomic prod = Cyclotomic::one();
      for (size_t b = 0; b < comp.size(); ++b) {
        prod *= block_e[b].at(tup[b]).coeff[bcls[b]];
        if (prod.is_zero()) break;
      }
      acc += prod;
    }
    if (!acc.is_zero()) out[m] = acc.descended();
  }
  return out;
}

CompatResult compat_check(QContext& ctx, int n, const std::vector<int>& comp,
                          const SemisimpleClass& s, std::optional<u64> ell) {
  const GroupTable& G = ctx.group(n);
  SeriesAssignment sa = series_partition(ctx, n);
  CentralElt esG = ell ? idempotent_ell(ctx, n, sa, s, *ell)
                       : idempotent_of_series(ctx, n, sa, s);
  GAElt eG = central_to_ga(esG);
  const ParabolicData& Pd = ctx.parabolic(n, comp);
  GAElt eU = eU_elt(G, Pd);
  GAElt eL = eL_of_s(ctx, n, comp, s, ell);

  GAElt A = ga_convolve(G, eG, eU);
  GAElt B = ga_convolve(G, A, eL);
  GAElt C = ga_convolve(G, eU, eL);

  CompatResult res;
  res.equal = ga_eq(A, B) && ga_eq(B, C);
  res.idempotent = ga_eq(ga_convolve(G, A, A), A);
  std::set<int> pset(Pd.P.begin(), Pd.P.end());
  bool central = true;
  for (auto& [x, v] : A)
    if (!pset.count(x)) { central = false; break; }
  if (central) {
    for (int p : Pd.P) {
      int pinv = G.inv(p);
      for (auto& [x, v] : A) {
        int y = G.mul(G.mul(p, x), pinv);
        auto it = A.find(y);
        if (it == A.end() || !(it->second == v)) { central = false; break; }
      }
      if (!central) break;
    }
  }
  res.central_in_P = central;
  return res;
}

// ---------------------------------------------------------------------------
// GL_2 Deligne-Lusztig virtual characters

ClassFn gl2_dl_split(QContext& ctx, fq_t a, fq_t b) {
  const FieldTower& tw = ctx.tower();
  int lvl = ctx.level();
  const GroupTable& G1 = ctx.group(1);
  auto theta_fn = [&](fq_t alpha) {
    ClassFn f = cf_zero(G1);
    for (int c = 0; c < G1.num_classes(); ++c) {
      fq_t x = G1.elem(G1.class_rep(c)).at(0, 0);
      f.v[c] = tw.theta(lvl, alpha, x);
    }
    return f;
  };
  return hc_induct(ctx, 2, {1, 1}, {theta_fn(a), theta_fn(b)});
}

ClassFn gl2_dl_nonsplit(QContext& ctx, fq_t alpha) {
  const GroupTable& G = ctx.group(2);
  const FieldTower& tw = ctx.tower();
  int lvl = ctx.level(), lvl2 = 2 * lvl;
  u64 q = ctx.q();
  ClassFn out = cf_zero(G);
  for (int c = 0; c < G.num_classes(); ++c) {
    Gl2ClassInfo info = gl2_class_info(tw, lvl, G.class_label_of(c));
    switch (info.kind) {
      case Gl2ClassInfo::Central:
        out.v[c] = tw.theta(lvl2, alpha, tw.embed(lvl, lvl2, info.a))
                       .scaled(Rational(1 - (long)q));
        break;
      case Gl2ClassInfo::Unipotent:
        out.v[c] = tw.theta(lvl2, alpha, tw.embed(lvl, lvl2, info.a));
        break;
      case Gl2ClassInfo::Split:
        out.v[c] = Cyclotomic::zero();
        break;
      case Gl2ClassInfo::Elliptic: {
        fq_t bq = tw.frobenius(lvl2, info.beta, lvl);
        out.v[c] = tw.theta(lvl2, alpha, info.beta) + tw.theta(lvl2, alpha, bq);
        break;
      }
    }
  }
  return out;
}

SeriesAssignment dl_series_assignment(QContext& ctx) {
  const GroupTable& G = ctx.group(2);
  const CharacterTable& T = ctx.table(2);
  const FieldTower& tw = ctx.tower();
  int lvl = ctx.level(), lvl2 = 2 * lvl;
  u64 q = ctx.q();
  (void)G;

  SeriesAssignment sa;
  sa.classes = semisimple_classes(tw, lvl, 2);
  sa.irr_to_class.assign(T.irr.size(), -1);
  sa.fibers.assign(sa.classes.size(), {});

  std::vector<std::set<int>> hits(T.irr.size());
  auto record = [&](const ClassFn& R, const SemisimpleClass& s) {
    int si = sa.class_index(s);
    for (size_t i = 0; i < T.irr.size(); ++i)
      if (!cf_inner(R, T.irr[i]).is_zero()) hits[i].insert(si);
  };

  for (u64 i = 0; i < q - 1; ++i)
    for (u64 j = i; j < q - 1; ++j) {
      fq_t a = tw.exp_of(lvl, (i64)i), b = tw.exp_of(lvl, (i64)j);
      std::map<FqPoly, int> mult;
      ++mult[fqpoly_x_minus(tw, lvl, a)];
      ++mult[fqpoly_x_minus(tw, lvl, b)];
      SemisimpleClass s;
      for (auto& [f, m] : mult) s.parts.push_back({f, m});
      record(gl2_dl_split(ctx, a, b), s);
    }
  for (u64 i = 0; i < q * q - 1; ++i) {
    fq_t alpha = tw.exp_of(lvl2, (i64)i);
    SemisimpleClass s;
    if (tw.in_subfield(lvl, lvl2, alpha)) {
      fq_t a = tw.project(lvl2, lvl, alpha);
      s.parts.push_back({fqpoly_x_minus(tw, lvl, a), 2});
    } else {
      s.parts.push_back({minimal_poly(tw, lvl, lvl2, alpha), 1});
    }
    record(gl2_dl_nonsplit(ctx, alpha), s);
  }

  for (size_t i = 0; i < T.irr.size(); ++i) {
    if (hits[i].size() != 1)
      throw std::logic_error("dl_series_assignment: membership not a partition");
    int si = *hits[i].begin();
    sa.irr_to_class[i] = si;
    sa.fibers[si].push_back((int)i);
  }
  return sa;
}

}  // namespace atlas
