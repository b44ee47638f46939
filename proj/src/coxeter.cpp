#include "hecke_atlas/coxeter.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace atlas {

APoint apoint_make(std::vector<int> raw) {
  int mn = *std::min_element(raw.begin(), raw.end());
  for (int& x : raw) x -= mn;
  APoint p;
  p.v = std::move(raw);
  return p;
}

bool adjacent(const APoint& x, const APoint& y) {
  if (x.v.size() != y.v.size())
    throw std::invalid_argument("adjacent: size mismatch");
  int mn = x.v[0] - y.v[0], mx = mn;
  for (size_t i = 1; i < x.v.size(); ++i) {
    int d = x.v[i] - y.v[i];
    mn = std::min(mn, d);
    mx = std::max(mx, d);
  }
  return mx - mn <= 1;
}

WeylElem weyl_identity(int n) {
  WeylElem w;
  w.t.assign(n, 0);
  w.w.resize(n);
  std::iota(w.w.begin(), w.w.end(), 0);
  return w;
}

WeylElem weyl_mul(const WeylElem& a, const WeylElem& b) {
  int n = a.n();
  WeylElem out;
  out.t.resize(n);
  out.w.resize(n);
  // (t,w)(t',w') = (t + w.t', ww'), (w.t')(i) = t'(w^{-1}(i))
  std::vector<int> winv(n);
  for (int i = 0; i < n; ++i) winv[a.w[i]] = i;
  for (int i = 0; i < n; ++i) out.t[i] = a.t[i] + b.t[winv[i]];
  for (int i = 0; i < n; ++i) out.w[i] = a.w[b.w[i]];
  return out;
}

WeylElem weyl_inv(const WeylElem& a) {
  int n = a.n();
  WeylElem out;
  out.t.resize(n);
  out.w.resize(n);
  for (int i = 0; i < n; ++i) out.w[a.w[i]] = (std::uint8_t)i;
  // inverse translation: -(w^{-1}.t)
  for (int i = 0; i < n; ++i) out.t[i] = -a.t[a.w[i]];
  return out;
}

APoint weyl_apply(const WeylElem& w, const APoint& x) {
  int n = w.n();
  std::vector<int> raw(n);
  std::vector<int> winv(n);
  for (int i = 0; i < n; ++i) winv[w.w[i]] = i;
  for (int i = 0; i < n; ++i) raw[i] = w.t[i] + x.v[winv[i]];
  return apoint_make(std::move(raw));
}

int rho_n(const WeylElem& w) {
  int s = 0;
  for (int x : w.t) s += x;
  return s;
}

Simplex simplex_make(std::vector<APoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (!adjacent(pts[i], pts[j]))
        throw std::invalid_argument("simplex_make: points not pairwise adjacent");
  Simplex s;
  s.pts = std::move(pts);
  return s;
}

Simplex weyl_apply(const WeylElem& w, const Simplex& s) {
  std::vector<APoint> pts;
  for (const APoint& p : s.pts) pts.push_back(weyl_apply(w, p));
  return simplex_make(std::move(pts));
}

bool simplex_contains(const Simplex& big, const Simplex& small) {
  for (const APoint& p : small.pts)
    if (!std::binary_search(big.pts.begin(), big.pts.end(), p)) return false;
  return true;
}

namespace {

// Representatives x0 = tilde(base) <= y_1 <= ... <= y_d <= x0 + 1 of the
// simplex points, in chain order.
std::vector<std::vector<int>> chain_reps(const Simplex& s, const APoint& base) {
  int n = s.n();
  std::vector<std::vector<int>> reps;
  reps.push_back(base.v);
  for (const APoint& y : s.pts) {
    if (y == base) continue;
    // unique shift c with base <= y + c <= base + 1, y + c != base
    int lo = base.v[0] - y.v[0], hi = base.v[0] + 1 - y.v[0];
    for (int i = 1; i < n; ++i) {
      lo = std::max(lo, base.v[i] - y.v[i]);
      hi = std::min(hi, base.v[i] + 1 - y.v[i]);
    }
    if (lo > hi) throw std::logic_error("chain_reps: not adjacent to base");
    std::vector<int> rep(n);
    for (int i = 0; i < n; ++i) rep[i] = y.v[i] + lo;
    if (rep == base.v) {
      for (int i = 0; i < n; ++i) rep[i] = y.v[i] + hi;
    }
    reps.push_back(rep);
  }
  // sort by componentwise order (a chain, so the coordinate sum decides)
  std::sort(reps.begin() + 1, reps.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              int sa = 0, sb = 0;
              for (int x : a) sa += x;
              for (int x : b) sb += x;
              return sa < sb;
            });
  // verify the chain property exactly
  for (size_t k = 0; k + 1 < reps.size(); ++k)
    for (int i = 0; i < n; ++i)
      if (reps[k][i] > reps[k + 1][i] || reps[k + 1][i] > reps[k][i] + 1)
        throw std::logic_error("chain_reps: not a chain");
  return reps;
}

}  // namespace

std::vector<std::vector<int>> partition_of(const Simplex& s, const APoint& base) {
  if (!std::binary_search(s.pts.begin(), s.pts.end(), base))
    throw std::invalid_argument("partition_of: base not in simplex");
  int n = s.n();
  auto reps = chain_reps(s, base);
  size_t d1 = reps.size();
  std::vector<std::vector<int>> blocks(d1);
  for (size_t k = 0; k < d1; ++k) {
    const std::vector<int>& cur = reps[k];
    std::vector<int> next = (k + 1 < d1) ? reps[k + 1] : reps[0];
    if (k + 1 == d1)
      for (int& x : next) ++x;
    for (int i = 0; i < n; ++i)
      if (next[i] - cur[i] == 1) blocks[k].push_back(i);
  }
  for (auto& b : blocks)
    if (b.empty()) throw std::logic_error("partition_of: empty block");
  return blocks;
}

std::vector<std::vector<int>> canonical_partition(const Simplex& s) {
  return partition_of(s, s.pts[0]);
}

std::vector<Simplex> chambers_containing(const Simplex& s) {
  int n = s.n();
  auto reps = chain_reps(s, s.pts[0]);
  auto blocks = partition_of(s, s.pts[0]);
  // choose an ordering of each block; vertices are the prefix sums
  std::vector<Simplex> out;
  std::vector<std::vector<int>> orders(blocks.size());
  std::function<void(size_t)> rec = [&](size_t b) {
    if (b == blocks.size()) {
      std::vector<APoint> pts;
      std::vector<int> cur = reps[0];
      pts.push_back(apoint_make(cur));
      for (size_t k = 0; k < blocks.size(); ++k)
        for (size_t j = 0; j < orders[k].size(); ++j) {
          ++cur[orders[k][j]];
          if (k + 1 < blocks.size() || j + 1 < orders[k].size())
            pts.push_back(apoint_make(cur));
        }
      out.push_back(simplex_make(std::move(pts)));
      return;
    }
    std::vector<int> perm = blocks[b];
    std::sort(perm.begin(), perm.end());
    do {
      orders[b] = perm;
      rec(b + 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  rec(0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Ordered singleton labels i_0, ..., i_{n-1} of a chamber from its
// canonical base.
std::vector<int> chamber_order(const Simplex& delta) {
  auto blocks = partition_of(delta, delta.pts[0]);
  std::vector<int> order;
  for (auto& b : blocks) {
    if (b.size() != 1) throw std::invalid_argument("chamber_order: not a chamber");
    order.push_back(b[0]);
  }
  return order;
}

}  // namespace

WeylElem chamber_transfer(const Simplex& delta, const Simplex& gamma) {
  int n = delta.n();
  auto dreps = chain_reps(delta, delta.pts[0]);
  auto greps = chain_reps(gamma, gamma.pts[0]);
  auto dord = chamber_order(delta);
  auto gord = chamber_order(gamma);
  // candidate per rotation r: maps the delta chain to the gamma chain
  // shifted by r; exactly one has translation sum 0.
  for (int r = 0; r < n; ++r) {
    WeylElem w = weyl_identity(n);
    for (int k = 0; k < n; ++k) w.w[dord[k]] = (std::uint8_t)gord[(k + r) % n];
    // t = rep(gamma_r) - w.rep(delta_0)
    std::vector<int> target = greps[r];
    std::vector<int> wd(n);
    std::vector<int> winv(n);
    for (int i = 0; i < n; ++i) winv[w.w[i]] = i;
    for (int i = 0; i < n; ++i) wd[i] = dreps[0][winv[i]];
    int sum = 0;
    for (int i = 0; i < n; ++i) {
      w.t[i] = target[i] - wd[i];
      sum += w.t[i];
    }
    // a diagonal shift keeps the chamber map; use it to land in W^0
    if (sum % n != 0) continue;
    for (int i = 0; i < n; ++i) w.t[i] -= sum / n;
    if (!(weyl_apply(w, delta) == gamma))
      throw std::logic_error("chamber_transfer: candidate does not map chamber");
    return w;
  }
  throw std::logic_error("chamber_transfer: no W^0 element found");
}

WeylElem chamber_rotation(const Simplex& delta) {
  int n = delta.n();
  auto reps = chain_reps(delta, delta.pts[0]);
  auto ord = chamber_order(delta);
  WeylElem c = weyl_identity(n);
  for (int k = 0; k < n; ++k) c.w[ord[k]] = (std::uint8_t)ord[(k + 1) % n];
  std::vector<int> target = (n > 1) ? reps[1] : reps[0];
  if (n == 1) ++target[0];
  std::vector<int> winv(n);
  for (int i = 0; i < n; ++i) winv[c.w[i]] = i;
  for (int i = 0; i < n; ++i) c.t[i] = target[i] - reps[0][winv[i]];
  if (rho_n(c) != 1) throw std::logic_error("chamber_rotation: grade not 1/n");
  if (!(weyl_apply(c, delta) == delta))
    throw std::logic_error("chamber_rotation: does not stabilize chamber");
  return c;
}

std::vector<WeylElem> stabilizer0(const Simplex& tau) {
  int n = tau.n();
  std::vector<WeylElem> out;
  std::vector<std::uint8_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> base = tau.pts[0].v;
  do {
    WeylElem w;
    w.w = perm;
    w.t.resize(n);
    std::vector<int> winv(n);
    for (int i = 0; i < n; ++i) winv[perm[i]] = i;
    int sum = 0;
    for (int i = 0; i < n; ++i) {
      w.t[i] = base[i] - base[winv[i]];
      sum += w.t[i];
    }
    if (sum != 0) continue;
    bool fixes = true;
    for (const APoint& p : tau.pts)
      if (!(weyl_apply(w, p) == p)) { fixes = false; break; }
    if (fixes) out.push_back(w);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<WeylElem> weyl_hom_set(const Simplex& sigma, const Simplex& tau,
                                   int grade_n) {
  Simplex delta = chambers_containing(sigma)[0];
  Simplex gamma = chambers_containing(tau)[0];
  WeylElem w1 = chamber_transfer(delta, gamma);
  WeylElem c = chamber_rotation(delta);
  WeylElem w2 = w1;
  if (grade_n >= 0) {
    for (int k = 0; k < grade_n; ++k) w2 = weyl_mul(w2, c);
  } else {
    WeylElem ci = weyl_inv(c);
    for (int k = 0; k < -grade_n; ++k) w2 = weyl_mul(w2, ci);
  }
  if (rho_n(w2) != grade_n) throw std::logic_error("weyl_hom_set: grade error");
  if (!simplex_contains(weyl_apply(w2, sigma), tau)) return {};
  std::vector<WeylElem> out;
  for (const WeylElem& v : stabilizer0(tau)) out.push_back(weyl_mul(v, w2));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<WeylElem> weyl_hom_oracle(const Simplex& sigma, const Simplex& tau,
                                      int grade_n, int bound) {
  int n = sigma.n();
  std::vector<WeylElem> out;
  std::vector<std::uint8_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    // enumerate translations with entries in [-bound, bound], sum grade_n
    std::vector<int> t(n, -bound);
    for (;;) {
      int sum = 0;
      for (int x : t) sum += x;
      if (sum == grade_n) {
        WeylElem w;
        w.t = t;
        w.w = perm;
        if (simplex_contains(weyl_apply(w, sigma), tau)) out.push_back(w);
      }
      int i = 0;
      while (i < n && t[i] == bound) { t[i] = -bound; ++i; }
      if (i == n) break;
      ++t[i];
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Simplex> window_simplices(int n, int D) {
  std::vector<APoint> verts;
  std::vector<int> v(n, 0);
  for (;;) {
    if (*std::min_element(v.begin(), v.end()) == 0)
      verts.push_back(APoint{v});
    int i = 0;
    while (i < n && v[i] == D) { v[i] = 0; ++i; }
    if (i == n) break;
    ++v[i];
  }
  std::sort(verts.begin(), verts.end());
  // grow cliques in the adjacency graph
  std::vector<Simplex> out;
  std::vector<int> cur;
  std::function<void(size_t)> rec = [&](size_t next) {
    if (!cur.empty()) {
      std::vector<APoint> pts;
      for (int i : cur) pts.push_back(verts[i]);
      out.push_back(simplex_make(pts));
    }
    if ((int)cur.size() >= n) return;
    for (size_t j = next; j < verts.size(); ++j) {
      bool ok = true;
      for (int i : cur)
        if (!adjacent(verts[i], verts[j])) { ok = false; break; }
      if (!ok) continue;
      cur.push_back((int)j);
      rec(j + 1);
      cur.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

APoint embed_point(const CoxEmbedding& e, const APoint& xp) {
  std::vector<int> raw(e.n());
  for (int i = 0; i < e.n(); ++i) raw[i] = xp.v[i / e.f];
  return apoint_make(std::move(raw));
}

WeylElem embed_weyl(const CoxEmbedding& e, const WeylElem& wp) {
  WeylElem w;
  w.t.resize(e.n());
  w.w.resize(e.n());
  for (int ip = 0; ip < e.nprime; ++ip)
    for (int j = 0; j < e.f; ++j) {
      w.t[ip * e.f + j] = wp.t[ip];
      w.w[ip * e.f + j] = (std::uint8_t)(wp.w[ip] * e.f + j);
    }
  return w;
}

Simplex embed_simplex(const CoxEmbedding& e, const Simplex& sp) {
  std::vector<APoint> pts;
  for (const APoint& p : sp.pts) pts.push_back(embed_point(e, p));
  return simplex_make(std::move(pts));
}

bool lemmeW_check(const CoxEmbedding& e, const Simplex& sp, const Simplex& tp,
                  int grade_nprime) {
  Simplex si = embed_simplex(e, sp), ti = embed_simplex(e, tp);
  bool up = !weyl_hom_set(si, ti, grade_nprime * e.f).empty();
  if (!up) return true;  // vacuous
  return !weyl_hom_set(sp, tp, grade_nprime).empty();
}

// ---------------------------------------------------------------------------
// enriched layer

bool CoxMorphism::operator<(const CoxMorphism& o) const {
  if (!(src == o.src)) return src < o.src;
  if (!(tgt == o.tgt)) return tgt < o.tgt;
  if (grade_n != o.grade_n) return grade_n < o.grade_n;
  if (!(w == o.w)) return w < o.w;
  return g < o.g;
}

CoxQ::CoxQ(int n, u64 q, u64 budget) : n_(n) {
  qctx_ = std::make_unique<QContext>(q, 4, budget);
}

const std::vector<WeylElem>& CoxQ::stab0(const Simplex& s) {
  auto it = stab0_.find(s);
  if (it == stab0_.end()) it = stab0_.emplace(s, stabilizer0(s)).first;
  return it->second;
}

u64 CoxQ::levi_order(const Simplex& s) {
  u64 ord = 1;
  for (auto& b : canonical_partition(s)) ord *= gl_order(q(), (int)b.size());
  return ord;
}

const std::vector<FMat>& CoxQ::levi_elements(const Simplex& s) {
  auto blocks = canonical_partition(s);
  std::sort(blocks.begin(), blocks.end());
  auto it = levi_cache_.find(blocks);
  if (it != levi_cache_.end()) return it->second;
  int lvl = level();
  std::vector<FMat> out;
  FMat cur;
  cur.n = (std::uint8_t)n_;
  cur.level = (std::uint8_t)lvl;
  std::function<void(size_t)> rec = [&](size_t b) {
    if (b == blocks.size()) {
      out.push_back(cur);
      return;
    }
    int d = (int)blocks[b].size();
    const GroupTable& Gb = qctx_->group(d);
    for (size_t g = 0; g < Gb.size(); ++g) {
      const FMat& m = Gb.elem((int)g);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          cur.set(blocks[b][i], blocks[b][j], m.at(i, j));
      rec(b + 1);
    }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) cur.set(blocks[b][i], blocks[b][j], 0);
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return levi_cache_.emplace(blocks, std::move(out)).first->second;
}

FMat CoxQ::random_levi_element(const Simplex& s, std::mt19937_64& rng) {
  auto blocks = canonical_partition(s);
  FMat cur;
  cur.n = (std::uint8_t)n_;
  cur.level = (std::uint8_t)level();
  for (auto& blk : blocks) {
    int d = (int)blk.size();
    const GroupTable& Gb = qctx_->group(d);
    const FMat& m = Gb.elem((int)(rng() % Gb.size()));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) cur.set(blk[i], blk[j], m.at(i, j));
  }
  return cur;
}

const std::vector<FMat>& CoxQ::radical_elements(const Simplex& wsigma,
                                                const Simplex& tau) {
  auto key = std::make_pair(wsigma, tau);
  auto it = radical_cache_.find(key);
  if (it != radical_cache_.end()) return it->second;
  if (!simplex_contains(wsigma, tau))
    throw std::invalid_argument("radical_elements: tau not inside wsigma");
  int lvl = level();
  u64 qq = q();
  // ordered sigma-blocks based at the canonical base of tau; tau-block of
  // each index
  auto sblocks = partition_of(wsigma, tau.pts[0]);
  auto tblocks = canonical_partition(tau);
  std::vector<int> sidx(n_), tidx(n_);
  for (size_t b = 0; b < sblocks.size(); ++b)
    for (int i : sblocks[b]) sidx[i] = (int)b;
  for (size_t b = 0; b < tblocks.size(); ++b)
    for (int i : tblocks[b]) tidx[i] = (int)b;
  // free positions: same tau-block, strictly lower sigma-block order
  std::vector<std::pair<int, int>> free_pos;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (tidx[i] == tidx[j] && sidx[i] > sidx[j]) free_pos.push_back({i, j});
  std::vector<FMat> out;
  std::vector<fq_t> vals(free_pos.size(), 0);
  for (;;) {
    FMat m = fmat_identity(n_, lvl);
    for (size_t k = 0; k < free_pos.size(); ++k)
      m.set(free_pos[k].first, free_pos[k].second, vals[k]);
    out.push_back(m);
    size_t i = 0;
    while (i < vals.size() && vals[i] == qq - 1) { vals[i] = 0; ++i; }
    if (i == vals.size()) break;
    ++vals[i];
  }
  std::sort(out.begin(), out.end());
  return radical_cache_.emplace(key, std::move(out)).first->second;
}

u64 CoxQ::radical_order(const Simplex& wsigma, const Simplex& tau) {
  auto sblocks = partition_of(wsigma, tau.pts[0]);
  auto tblocks = canonical_partition(tau);
  std::vector<int> sidx(n_), tidx(n_);
  for (size_t b = 0; b < sblocks.size(); ++b)
    for (int i : sblocks[b]) sidx[i] = (int)b;
  for (size_t b = 0; b < tblocks.size(); ++b)
    for (int i : tblocks[b]) tidx[i] = (int)b;
  u64 count = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (tidx[i] == tidx[j] && sidx[i] > sidx[j]) ++count;
  u64 ord = 1;
  for (u64 k = 0; k < count; ++k) ord *= q();
  return ord;
}

FMat weyl_matrix(const FieldTower& tw, int level, const WeylElem& w) {
  FMat m;
  m.n = (std::uint8_t)w.n();
  m.level = (std::uint8_t)level;
  for (int j = 0; j < w.n(); ++j) m.set(w.w[j], j, 1);
  return m;
}

CoxMorphism CoxQ::morphism_make(const Simplex& src, const Simplex& tgt,
                                const FMat& g, const WeylElem& w) {
  if (!simplex_contains(weyl_apply(w, src), tgt))
    throw std::invalid_argument("morphism_make: containment violated");
  // canonical Weyl part: lex-least element of W_tgt^0 w
  const auto& st = stab0(tgt);
  WeylElem wcan = weyl_mul(st[0], w);
  for (const WeylElem& v : st) {
    WeylElem cand = weyl_mul(v, w);
    if (cand < wcan) wcan = cand;
  }
  // v0 with w = v0 wcan, i.e. v0 = w wcan^{-1}
  WeylElem v0 = weyl_mul(w, weyl_inv(wcan));
  // g1 = g [v0]
  FMat g1 = fmat_mul(tower(), g, weyl_matrix(tower(), level(), v0));
  // coset representative: lex-least of g1 U_{wcan src, tgt}
  Simplex wsigma = weyl_apply(wcan, src);
  const std::vector<FMat>& U = radical_elements(wsigma, tgt);
  FMat best = fmat_mul(tower(), g1, U[0]);
  for (size_t i = 1; i < U.size(); ++i) {
    FMat cand = fmat_mul(tower(), g1, U[i]);
    if (cand < best) best = cand;
  }
  CoxMorphism m;
  m.src = src;
  m.tgt = tgt;
  m.grade_n = rho_n(w);
  m.w = wcan;
  m.g = best;
  return m;
}

CoxMorphism CoxQ::morphism_identity(const Simplex& s) {
  return morphism_make(s, s, fmat_identity(n_, level()), weyl_identity(n_));
}

CoxMorphism CoxQ::morphism_compose(const CoxMorphism& g, const CoxMorphism& h) {
  if (!(g.tgt == h.src))
    throw std::invalid_argument("morphism_compose: source/target mismatch");
  // (g_nu, v) o (g_tau, w) = (g_nu * v(g_tau), v w)
  FMat vmat = weyl_matrix(tower(), level(), h.w);
  FMat conj = fmat_mul(tower(), fmat_mul(tower(), vmat, g.g),
                       fmat_inv(tower(), vmat));
  FMat gnew = fmat_mul(tower(), h.g, conj);
  WeylElem wnew = weyl_mul(h.w, g.w);
  return morphism_make(g.src, h.tgt, gnew, wnew);
}

std::vector<CoxMorphism> CoxQ::graded_hom(const Simplex& sigma,
                                          const Simplex& tau, int grade_n) {
  auto ws = weyl_hom_set(sigma, tau, grade_n);
  if (ws.empty()) return {};
  const WeylElem& w = ws[0];
  std::set<CoxMorphism> seen;
  for (const FMat& g : levi_elements(tau))
    seen.insert(morphism_make(sigma, tau, g, w));
  std::vector<CoxMorphism> out(seen.begin(), seen.end());
  u64 expect =
      levi_order(tau) / radical_order(weyl_apply(w, sigma), tau);
  if (out.size() != expect)
    throw std::logic_error("graded_hom: coset count mismatch");
  return out;
}

CoxMorphism CoxQ::random_morphism(const Simplex& sigma, const Simplex& tau,
                                  int grade_n, std::mt19937_64& rng) {
  auto ws = weyl_hom_set(sigma, tau, grade_n);
  if (ws.empty()) throw std::domain_error("random_morphism: empty hom set");
  FMat g = random_levi_element(tau, rng);
  return morphism_make(sigma, tau, g, ws[rng() % ws.size()]);
}

FMat embed_levi_elem(const FieldTower& tw, int level_q, const CoxEmbedding& e,
                     const FMat& gprime) {
  auto basis = default_ext_basis(tw, level_q, e.f);
  return iota_star(tw, level_q, e.f, gprime, basis);
}

}  // namespace atlas
