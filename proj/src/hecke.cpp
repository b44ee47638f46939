#include "hecke_atlas/hecke.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace atlas {

LeviElt levi_convolve(const FieldTower& tw, const LeviElt& a, const LeviElt& b) {
  LeviElt out;
  for (auto& [x, ax] : a)
    for (auto& [y, by] : b) {
      Cyclotomic prod = ax * by;
      if (prod.is_zero()) continue;
      FMat z = fmat_mul(tw, x, y);
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

bool levi_eq(const LeviElt& a, const LeviElt& b) {
  for (auto& [x, ax] : a) {
    auto it = b.find(x);
    if (it == b.end() ? !ax.is_zero() : !(ax == it->second)) return false;
  }
  for (auto& [x, bx] : b)
    if (!a.count(x) && !bx.is_zero()) return false;
  return true;
}

LeviElt levi_conj(const FieldTower& tw, const FMat& c, const LeviElt& a) {
  FMat ci = fmat_inv(tw, c);
  LeviElt out;
  for (auto& [x, ax] : a) out[fmat_mul(tw, fmat_mul(tw, c, x), ci)] = ax;
  return out;
}

Cyclotomic levi_coeff_at(const LeviElt& a, const FMat& g) {
  auto it = a.find(g);
  return it == a.end() ? Cyclotomic::zero() : it->second;
}

HeckeRingoid::HeckeRingoid(int n, u64 q, int window_D, int imax_n)
    : n_(n), imax_n_(imax_n), cq_(n, q) {
  window_ = window_simplices(n, window_D);
  classes_ = semisimple_classes(cq_.tower(), cq_.level(), n);
}

const std::vector<SemisimpleClass>& HeckeRingoid::series_classes() {
  return classes_;
}

const std::vector<CoxMorphism>& HeckeRingoid::hom_basis(int si, int ti,
                                                        int grade_n) {
  auto key = std::make_tuple(si, ti, grade_n);
  auto it = hom_cache_.find(key);
  if (it != hom_cache_.end()) return it->second;
  auto basis = cq_.graded_hom(window_[si], window_[ti], grade_n);
  std::map<CoxMorphism, int> index;
  for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = (int)i;
  hom_index_[key] = std::move(index);
  return hom_cache_.emplace(key, std::move(basis)).first->second;
}

int HeckeRingoid::hom_index(int si, int ti, int grade_n, const CoxMorphism& m) {
  hom_basis(si, ti, grade_n);
  const auto& idx = hom_index_.at(std::make_tuple(si, ti, grade_n));
  auto it = idx.find(m);
  if (it == idx.end()) throw std::logic_error("hom_index: morphism not in basis");
  return it->second;
}

u64 HeckeRingoid::hom_dim_expected(int si, int ti, int grade_n) {
  auto ws = weyl_hom_set(window_[si], window_[ti], grade_n);
  if (ws.empty()) return 0;
  return cq_.levi_order(window_[ti]) /
         cq_.radical_order(weyl_apply(ws[0], window_[si]), window_[ti]);
}

LeviElt HeckeRingoid::series_idem_blocks(
    const std::vector<std::vector<int>>& blocks0, const SemisimpleClass& s) {
  std::vector<std::vector<int>> blocks = blocks0;
  std::sort(blocks.begin(), blocks.end());
  auto key = std::make_pair(blocks, s);
  auto cached = blocks_idem_cache_.find(key);
  if (cached != blocks_idem_cache_.end()) return cached->second;

  QContext& ctx = cq_.qctx();
  const FieldTower& tw = cq_.tower();
  int lvl = cq_.level();
  // per-block series data
  std::vector<int> bsize;
  for (auto& b : blocks) bsize.push_back((int)b.size());
  std::vector<std::vector<SemisimpleClass>> bclasses;
  std::vector<SeriesAssignment> bsa;
  for (int d : bsize) {
    bclasses.push_back(semisimple_classes(tw, lvl, d));
    bsa.push_back(series_partition(ctx, d));
  }
  // tuples with merged class s
  std::vector<std::vector<const SemisimpleClass*>> tuples;
  std::vector<const SemisimpleClass*> cur(blocks.size());
  std::function<void(size_t)> rec = [&](size_t b) {
    if (b == blocks.size()) {
      std::vector<SemisimpleClass> factors;
      for (auto* t : cur) factors.push_back(*t);
      if (ss_levi_embed(factors) == s) tuples.push_back(cur);
      return;
    }
    for (const auto& t : bclasses[b]) {
      cur[b] = &t;
      rec(b + 1);
    }
  };
  rec(0);
  // per-block idempotents
  std::vector<std::map<const SemisimpleClass*, CentralElt>> be(blocks.size());
  for (auto& tup : tuples)
    for (size_t b = 0; b < blocks.size(); ++b)
      if (!be[b].count(tup[b]))
        be[b][tup[b]] = idempotent_of_series(ctx, bsize[b], bsa[b], *tup[b]);

  LeviElt out;
  // enumerate the Levi elements through per-block group tables
  FMat curm;
  curm.n = (std::uint8_t)n_;
  curm.level = (std::uint8_t)lvl;
  std::vector<int> bcls(blocks.size());
  std::function<void(size_t)> fill = [&](size_t b) {
    if (b == blocks.size()) {
      Cyclotomic acc = Cyclotomic::zero();
      for (auto& tup : tuples) {
        Cyclotomic prod = Cyclotomic::one();
        for (size_t bb = 0; bb < blocks.size(); ++bb) {
          prod *= be[bb].at(tup[bb]).coeff[bcls[bb]];
          if (prod.is_zero()) break;
        }
        acc += prod;
      }
      if (!acc.is_zero()) out[curm] = acc.descended();
      return;
    }
    int d = bsize[b];
    const GroupTable& Gb = ctx.group(d);
    for (size_t g = 0; g < Gb.size(); ++g) {
      const FMat& m = Gb.elem((int)g);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          curm.set(blocks[b][i], blocks[b][j], m.at(i, j));
      bcls[b] = Gb.class_of((int)g);
      fill(b + 1);
    }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) curm.set(blocks[b][i], blocks[b][j], 0);
  };
  fill(0);
  blocks_idem_cache_[key] = out;
  return out;
}

const LeviElt& HeckeRingoid::series_idem(int si, const SemisimpleClass& s) {
  auto key = std::make_pair(si, s);
  auto it = idem_cache_.find(key);
  if (it == idem_cache_.end()) {
    LeviElt e = series_idem_blocks(canonical_partition(window_[si]), s);
    it = idem_cache_.emplace(key, std::move(e)).first;
  }
  return it->second;
}

LeviElt HeckeRingoid::eU_elt(const Simplex& wsigma, const Simplex& tau) {
  const auto& U = cq_.radical_elements(wsigma, tau);
  Rational r(1, (long)U.size());
  r.canonicalize();
  LeviElt out;
  for (const FMat& u : U) out[u] = Cyclotomic(r);
  return out;
}

KMat HeckeRingoid::op_left(int si, int ti, int grade_n, const LeviElt& e) {
  const auto& basis = hom_basis(si, ti, grade_n);
  KMat out((int)basis.size(), (int)basis.size());
  for (int b = 0; b < (int)basis.size(); ++b)
    for (auto& [g, c] : e) {
      CoxMorphism m = cq_.morphism_make(
          basis[b].src, basis[b].tgt,
          fmat_mul(cq_.tower(), g, basis[b].g), basis[b].w);
      out.at(hom_index(si, ti, grade_n, m), b) += c;
    }
  return out;
}

KMat HeckeRingoid::op_right(int si, int ti, int grade_n, const LeviElt& e) {
  const auto& basis = hom_basis(si, ti, grade_n);
  KMat out((int)basis.size(), (int)basis.size());
  for (int b = 0; b < (int)basis.size(); ++b) {
    FMat wmat = weyl_matrix(cq_.tower(), cq_.level(), basis[b].w);
    FMat wmi = fmat_inv(cq_.tower(), wmat);
    for (auto& [g, c] : e) {
      FMat conj = fmat_mul(cq_.tower(), fmat_mul(cq_.tower(), wmat, g), wmi);
      CoxMorphism m = cq_.morphism_make(
          basis[b].src, basis[b].tgt,
          fmat_mul(cq_.tower(), basis[b].g, conj), basis[b].w);
      out.at(hom_index(si, ti, grade_n, m), b) += c;
    }
  }
  return out;
}

HeckeCheck HeckeRingoid::check_centrality(const SemisimpleClass& s) {
  HeckeCheck res;
  const FieldTower& tw = cq_.tower();
  for (int si = 0; si < (int)window_.size(); ++si) {
    const Simplex& sig = window_[si];
    const LeviElt& e = series_idem(si, s);
    // idempotent
    if (!levi_eq(levi_convolve(tw, e, e), e))
      res.fail("e^s not idempotent at object " + std::to_string(si));
    ++res.cases;
    // conjugation stability under every graded Weyl representative
    for (int g = -imax_n_; g <= imax_n_; ++g) {
      auto ws = weyl_hom_set(sig, sig, g);
      if (ws.empty()) continue;
      for (const WeylElem& w : ws) {
        FMat wm = weyl_matrix(tw, cq_.level(), w);
        if (!levi_eq(levi_conj(tw, wm, e), e))
          res.fail("conjugation moves e^s at object " + std::to_string(si) +
                   " grade " + std::to_string(g));
        ++res.cases;
      }
    }
  }
  return res;
}

HeckeCheck HeckeRingoid::check_idem_family() {
  HeckeCheck res;
  const FieldTower& tw = cq_.tower();
  for (int si = 0; si < (int)window_.size(); ++si) {
    LeviElt total;
    for (const auto& s : classes_) {
      const LeviElt& e = series_idem(si, s);
      for (auto& [g, c] : e) {
        auto it = total.find(g);
        if (it == total.end())
          total[g] = c;
        else
          it->second += c;
      }
    }
    for (auto it = total.begin(); it != total.end();)
      it = it->second.is_zero() ? total.erase(it) : std::next(it);
    LeviElt one;
    one[fmat_identity(n_, cq_.level())] = Cyclotomic::one();
    if (!levi_eq(total, one))
      res.fail("series idempotents do not sum to 1 at object " +
               std::to_string(si));
    ++res.cases;
    // pairwise orthogonality
    for (size_t a = 0; a < classes_.size(); ++a)
      for (size_t b = a + 1; b < classes_.size(); ++b) {
        LeviElt prod = levi_convolve(tw, series_idem(si, classes_[a]),
                                     series_idem(si, classes_[b]));
        if (!prod.empty())
          res.fail("series idempotents not orthogonal at object " +
                   std::to_string(si));
        ++res.cases;
      }
  }
  return res;
}

HeckeCheck HeckeRingoid::check_absorption(const SemisimpleClass& s) {
  HeckeCheck res;
  const FieldTower& tw = cq_.tower();
  for (int si = 0; si < (int)window_.size(); ++si)
    for (int ti = 0; ti < (int)window_.size(); ++ti)
      for (int g = -imax_n_; g <= imax_n_; ++g) {
        auto ws = weyl_hom_set(window_[si], window_[ti], g);
        if (ws.empty()) continue;
        const WeylElem& w0 = ws[0];
        Simplex wsig = weyl_apply(w0, window_[si]);
        const LeviElt& etau = series_idem(ti, s);
        LeviElt eU = eU_elt(wsig, window_[ti]);
        LeviElt eL = series_idem_blocks(canonical_partition(wsig), s);
        // transport: conjugating e^s_sigma by the Weyl matrix gives the
        // Levi idempotent of w0 sigma
        FMat wm = weyl_matrix(tw, cq_.level(), w0);
        if (!levi_eq(levi_conj(tw, wm, series_idem(si, s)), eL))
          res.fail("transport fails at (" + std::to_string(si) + "," +
                   std::to_string(ti) + "," + std::to_string(g) + ")");
        LeviElt A = levi_convolve(tw, etau, eU);
        LeviElt B = levi_convolve(tw, eU, eL);
        LeviElt C = levi_convolve(tw, A, eL);
        if (!(levi_eq(A, B) && levi_eq(B, C)))
          res.fail("absorption fails at (" + std::to_string(si) + "," +
                   std::to_string(ti) + "," + std::to_string(g) + ")");
        ++res.cases;
      }
  return res;
}

HeckeCheck HeckeRingoid::check_decomposition() {
  HeckeCheck res;
  const FieldTower& tw = cq_.tower();
  FMat idm = fmat_identity(n_, cq_.level());
  for (int si = 0; si < (int)window_.size(); ++si)
    for (int ti = 0; ti < (int)window_.size(); ++ti)
      for (int g = -imax_n_; g <= imax_n_; ++g) {
        auto ws = weyl_hom_set(window_[si], window_[ti], g);
        if (ws.empty()) continue;
        const WeylElem& w0 = ws[0];
        Simplex wsig = weyl_apply(w0, window_[si]);
        u64 full = hom_dim_expected(si, ti, g);
        LeviElt eU = eU_elt(wsig, window_[ti]);
        u64 gsize = cq_.levi_order(window_[ti]);
        Rational total(0);
        for (const auto& s : classes_) {
          const LeviElt& etau = series_idem(ti, s);
          LeviElt eL = series_idem_blocks(canonical_partition(wsig), s);
          LeviElt piece = levi_convolve(tw, levi_convolve(tw, etau, eU), eL);
          // dim of the two-sided summand = |G_tau| * coefficient at 1
          Cyclotomic c1 = levi_coeff_at(piece, idm);
          Cyclotomic dim = c1.scaled(Rational((long)gsize));
          if (!dim.is_rational() ||
              dim.rational_value().get_den() != 1 ||
              dim.rational_value() < 0) {
            res.fail("non-integral piece dimension");
            continue;
          }
          total += dim.rational_value();
        }
        if (total != Rational((long)full))
          res.fail("dimension decomposition fails at (" + std::to_string(si) +
                   "," + std::to_string(ti) + "," + std::to_string(g) + ")");
        ++res.cases;
      }
  return res;
}

HeckeCheck HeckeRingoid::check_graded_setlevel(u64 max_per_config) {
  HeckeCheck res;
  for (int si = 0; si < (int)window_.size(); ++si)
    for (int ti = 0; ti < (int)window_.size(); ++ti)
      for (int ni = 0; ni < (int)window_.size(); ++ni)
        for (int i = -imax_n_; i <= imax_n_; ++i) {
          if (weyl_hom_set(window_[si], window_[ti], i).empty()) continue;
          for (int j = -imax_n_; j <= imax_n_; ++j) {
            if (std::abs(i + j) > imax_n_) continue;
            if (weyl_hom_set(window_[ti], window_[ni], j).empty()) continue;
            u64 dF = hom_dim_expected(si, ti, i);
            u64 dG = hom_dim_expected(ti, ni, j);
            u64 dH = hom_dim_expected(si, ni, i + j);
            if (dH == 0) {
              res.fail("composable pieces with empty target");
              continue;
            }
            if (dF * dG > max_per_config) continue;
            const auto& F = hom_basis(si, ti, i);
            const auto& G = hom_basis(ti, ni, j);
            const auto& H = hom_basis(si, ni, i + j);
            std::map<CoxMorphism, u64> count;
            for (const auto& f : F)
              for (const auto& g : G) ++count[cq_.morphism_compose(f, g)];
            bool ok = count.size() == H.size() &&
                      dF * dG % (u64)H.size() == 0;
            u64 fib = ok ? dF * dG / (u64)H.size() : 0;
            if (ok)
              for (auto& [m, c] : count)
                if (c != fib) { ok = false; break; }
            if (!ok)
              res.fail("set-level composition bijection fails at (" +
                       std::to_string(si) + "," + std::to_string(ti) + "," +
                       std::to_string(ni) + ";" + std::to_string(i) + "," +
                       std::to_string(j) + ")");
            ++res.cases;
          }
        }
  return res;
}

HeckeCheck HeckeRingoid::check_absorption_direct(const SemisimpleClass& s,
                                                 int si, int ti, int grade_n) {
  HeckeCheck res;
  auto ws = weyl_hom_set(window_[si], window_[ti], grade_n);
  if (ws.empty()) return res;
  KMat L = op_left(si, ti, grade_n, series_idem(ti, s));
  KMat R = op_right(si, ti, grade_n, series_idem(si, s));
  KMat LR = kmat_mul(L, R);
  // L, R are commuting idempotent projections; absorption says the three
  // images coincide
  if (!kmat_eq(kmat_mul(L, L), L) || !kmat_eq(kmat_mul(R, R), R))
    res.fail("operators not idempotent");
  if (!kmat_eq(LR, kmat_mul(R, L))) res.fail("operators do not commute");
  if (!(kmat_colspace_eq(L, R) && kmat_colspace_eq(L, LR)))
    res.fail("direct absorption fails at (" + std::to_string(si) + "," +
             std::to_string(ti) + "," + std::to_string(grade_n) + ")");
  ++res.cases;
  return res;
}

std::vector<std::array<int, 5>> HeckeRingoid::curated_module_configs(
    u64 dim_budget) {
  std::vector<std::array<int, 5>> out;
  // structurally distinct triples: prefer small coordinates; one config
  // per (partition-shape triple, grade pair) to bound the direct route
  std::set<std::string> shapes;
  for (int si = 0; si < (int)window_.size(); ++si)
    for (int ti = 0; ti < (int)window_.size(); ++ti)
      for (int ni = 0; ni < (int)window_.size(); ++ni)
        for (int i = -imax_n_; i <= imax_n_; ++i)
          for (int j = -imax_n_; j <= imax_n_; ++j) {
            if (std::abs(i + j) > imax_n_) continue;
            u64 dF = hom_dim_expected(si, ti, i);
            u64 dG = hom_dim_expected(ti, ni, j);
            if (dF == 0 || dG == 0) continue;
            if (dF * dG > dim_budget) continue;
            auto shape_of = [&](int a) {
              std::string sh;
              for (auto& b : canonical_partition(window_[a]))
                sh += std::to_string(b.size()) + ".";
              return sh;
            };
            std::string key = shape_of(si) + "|" + shape_of(ti) + "|" +
                              shape_of(ni) + "|" + std::to_string(i) + "|" +
                              std::to_string(j);
            if (shapes.count(key)) continue;
            shapes.insert(key);
            out.push_back({si, ti, ni, i, j});
          }
  return out;
}

HeckeCheck HeckeRingoid::check_graded_module(
    const SemisimpleClass& s, const std::vector<std::array<int, 5>>& configs) {
  HeckeCheck res;
  const FieldTower& tw = cq_.tower();
  for (auto& [si, ti, ni, i, j] : configs) {
    const auto& F = hom_basis(si, ti, i);
    const auto& G = hom_basis(ti, ni, j);
    const auto& H = hom_basis(si, ni, i + j);
    if (F.empty() || G.empty()) continue;
    // projections onto M = e_tau F e_sigma and N = e_nu G e_tau
    KMat PM = kmat_mul(op_left(si, ti, i, series_idem(ti, s)),
                       op_right(si, ti, i, series_idem(si, s)));
    KMat PN = kmat_mul(op_left(ti, ni, j, series_idem(ni, s)),
                       op_right(ti, ni, j, series_idem(ti, s)));
    KMat PH = H.empty() ? KMat(0, 0)
                        : kmat_mul(op_left(si, ni, i + j, series_idem(ni, s)),
                                   op_right(si, ni, i + j, series_idem(si, s)));
    int dimM = kmat_rank(PM), dimN = kmat_rank(PN);
    int dimH = H.empty() ? 0 : kmat_rank(PH);
    // dim(M (x)_{A_tau} N) by the averaging-projector trace over G_tau:
    // the relation space is spanned by rho(g) y - y for the commuting
    // G_tau-action (g o m) (x) (n o g^{-1}).
    const auto& levi = cq_.levi_elements(window_[ti]);
    // permutation action of g on the F-basis by post-composition, and on
    // the G-basis by pre-composition with g^{-1}
    Rational dimT(0);
    for (const FMat& g : levi) {
      // trace of (g o -) restricted to M: tr(P_g PM)
      Cyclotomic trM = Cyclotomic::zero();
      for (int b = 0; b < (int)F.size(); ++b) {
        CoxMorphism gm = cq_.morphism_make(F[b].src, F[b].tgt,
                                           fmat_mul(tw, g, F[b].g), F[b].w);
        int a = hom_index(si, ti, i, gm);
        trM += PM.at(b, a);
      }
      Cyclotomic trN = Cyclotomic::zero();
      FMat gi = fmat_inv(tw, g);
      for (int b = 0; b < (int)G.size(); ++b) {
        FMat wmat = weyl_matrix(tw, cq_.level(), G[b].w);
        FMat conj = fmat_mul(tw, fmat_mul(tw, wmat, gi),
                             fmat_inv(tw, wmat));
        CoxMorphism mg = cq_.morphism_make(G[b].src, G[b].tgt,
                                           fmat_mul(tw, G[b].g, conj), G[b].w);
        int a = hom_index(ti, ni, j, mg);
        trN += PN.at(b, a);
      }
      Cyclotomic term = trM * trN;
      if (!term.is_zero()) {
        Cyclotomic td = term.descended();
        if (td.order() != 1) {
          res.fail("trace term not rational");
          continue;
        }
        dimT += td.rational_value();
      }
    }
    dimT /= Rational((long)levi.size());
    // surjectivity: the image of composition on M x N spans the target
    KMat BM = kmat_colspace(PM), BN = kmat_colspace(PN);
    // composition table on basis indices
    KMat image(H.empty() ? 0 : (int)H.size(), dimM * dimN);
    for (int a = 0; a < dimM; ++a)
      for (int b = 0; b < dimN; ++b) {
        // compose sum_f BM[f,a] f with sum_g BN[g,b] g
        for (int f = 0; f < (int)F.size(); ++f) {
          if (BM.at(f, a).is_zero()) continue;
          for (int gg = 0; gg < (int)G.size(); ++gg) {
            if (BN.at(gg, b).is_zero()) continue;
            CoxMorphism comp = cq_.morphism_compose(F[f], G[gg]);
            image.at(hom_index(si, ni, i + j, comp), a * dimN + b) +=
                BM.at(f, a) * BN.at(gg, b);
          }
        }
      }
    int imrank = H.empty() ? 0 : kmat_rank(image);
    bool ok = dimT == Rational((long)dimH) && imrank == dimH;
    if (!ok)
      res.fail("graded module isomorphism fails at (" + std::to_string(si) +
               "," + std::to_string(ti) + "," + std::to_string(ni) + ";" +
               std::to_string(i) + "," + std::to_string(j) + ")");
    ++res.cases;
  }
  return res;
}

std::vector<HeckeRingoid::CartesianCase> HeckeRingoid::cartesian_report(
    int si0, const SemisimpleClass& s) {
  std::vector<CartesianCase> out;
  const FieldTower& tw = cq_.tower();
  // grade-0 endomorphism algebra at sigma0, cut by e^s; its simple
  // summands are indexed by tuples of block irreducibles. We realize each
  // isotypic block V = e_pi R[G_{sigma0}] inside the regular
  // representation; for the criterion maps only the module structure
  // matters and an isotypic block is a multiple of its simple.
  const auto& levi0 = cq_.levi_elements(window_[si0]);
  std::map<FMat, int> levi0_index;
  for (size_t i = 0; i < levi0.size(); ++i) levi0_index[levi0[i]] = (int)i;
  int L0 = (int)levi0.size();
  const LeviElt& es0 = series_idem(si0, s);
  auto left_mult_matrix = [&](const LeviElt& e) {
    KMat m(L0, L0);
    for (int b = 0; b < L0; ++b)
      for (auto& [g, c] : e)
        m.at(levi0_index.at(fmat_mul(tw, g, levi0[b])), b) += c;
    return m;
  };

  // central primitive idempotents refining e^s: tensor products of block
  // irreducible idempotents whose product with e^s is nonzero
  auto blocks = canonical_partition(window_[si0]);
  std::vector<LeviElt> prims;
  {
    std::vector<int> bsize;
    for (auto& b : blocks) bsize.push_back((int)b.size());
    std::vector<const CharacterTable*> btab;
    for (int d : bsize) btab.push_back(&cq_.qctx().table(d));
    std::vector<int> choice(bsize.size(), 0);
    std::function<void(size_t)> rec = [&](size_t b) {
      if (b == bsize.size()) {
        LeviElt e;
        FMat curm;
        curm.n = (std::uint8_t)n_;
        curm.level = (std::uint8_t)cq_.level();
        std::vector<CentralElt> ce;
        for (size_t bb = 0; bb < bsize.size(); ++bb)
          ce.push_back(idempotent_of_irr(*btab[bb], choice[bb]));
        std::function<void(size_t)> fill = [&](size_t bb) {
          if (bb == bsize.size()) {
            Cyclotomic prod = Cyclotomic::one();
            for (size_t b3 = 0; b3 < bsize.size(); ++b3) {
              const GroupTable& Gb = cq_.qctx().group(bsize[b3]);
              FMat sub;
              sub.n = (std::uint8_t)bsize[b3];
              sub.level = (std::uint8_t)cq_.level();
              for (int ii = 0; ii < bsize[b3]; ++ii)
                for (int jj = 0; jj < bsize[b3]; ++jj)
                  sub.set(ii, jj, curm.at(blocks[b3][ii], blocks[b3][jj]));
              prod *= ce[b3].coeff[Gb.class_of(Gb.index_of(sub))];
              if (prod.is_zero()) break;
            }
            if (!prod.is_zero()) e[curm] = prod;
            return;
          }
          int d = bsize[bb];
          const GroupTable& Gb = cq_.qctx().group(d);
          for (size_t g = 0; g < Gb.size(); ++g) {
            const FMat& m = Gb.elem((int)g);
            for (int ii = 0; ii < d; ++ii)
              for (int jj = 0; jj < d; ++jj)
                curm.set(blocks[bb][ii], blocks[bb][jj], m.at(ii, jj));
            fill(bb + 1);
          }
        };
        fill(0);
        if (!levi_convolve(tw, e, es0).empty()) prims.push_back(e);
        return;
      }
      for (int c = 0; c < (int)btab[b]->irr.size(); ++c) {
        choice[b] = c;
        rec(b + 1);
      }
    };
    rec(0);
  }

  for (size_t pi = 0; pi < prims.size(); ++pi) {
    KSubspace V = kmat_subspace(left_mult_matrix(prims[pi]));
    int vd = V.dim;
    auto v_act = [&](const FMat& g) {
      KMat full(L0, L0);
      for (int b = 0; b < L0; ++b)
        full.at(levi0_index.at(fmat_mul(tw, g, levi0[b])), b) =
            Cyclotomic::one();
      return subspace_coords(V, kmat_mul(full, V.basis));
    };

    // per object: the e^s-truncated grade-0 piece X_k = hom(k, si0) and
    // M(k) = Hom_{A0}(X_k, V) (G_{si0}-equivariant maps); coords of an
    // element of M(k): vd x X.dim matrix flattened r * X.dim + c
    struct ObjSpace {
      std::vector<CoxMorphism> basis;
      KSubspace X;
      KSubspace M;
    };
    std::map<int, ObjSpace> spaces;
    auto space_of = [&](int ki) -> ObjSpace& {
      auto it = spaces.find(ki);
      if (it != spaces.end()) return it->second;
      ObjSpace os;
      os.basis = hom_basis(ki, si0, 0);
      int D = (int)os.basis.size();
      if (D == 0) {
        os.X = KSubspace{};
        os.M = KSubspace{};
        return spaces.emplace(ki, std::move(os)).first->second;
      }
      KMat P = kmat_mul(op_left(ki, si0, 0, es0),
                        op_right(ki, si0, 0, series_idem(ki, s)));
      os.X = kmat_subspace(P);
      int xd = os.X.dim;
      if (xd == 0 || vd == 0) {
        os.M.ambient = xd * vd;
        os.M.dim = 0;
        os.M.basis = KMat(xd * vd, 0);
        return spaces.emplace(ki, std::move(os)).first->second;
      }
      std::vector<KMat> rows;
      for (const FMat& g : levi0) {
        KMat gx(D, D);
        for (int b = 0; b < D; ++b) {
          CoxMorphism gm =
              cq_.morphism_make(os.basis[b].src, os.basis[b].tgt,
                                fmat_mul(tw, g, os.basis[b].g), os.basis[b].w);
          gx.at(hom_index(ki, si0, 0, gm), b) = Cyclotomic::one();
        }
        KMat gX = subspace_coords(os.X, kmat_mul(gx, os.X.basis));
        KMat gV = v_act(g);
        // phi(g x) = g phi(x): phi gX - gV phi = 0
        for (int r = 0; r < vd; ++r)
          for (int c = 0; c < xd; ++c) {
            KMat row(1, xd * vd);
            for (int k2 = 0; k2 < xd; ++k2)
              if (!gX.at(k2, c).is_zero())
                row.at(0, r * xd + k2) += gX.at(k2, c);
            for (int r2 = 0; r2 < vd; ++r2)
              if (!gV.at(r, r2).is_zero()) row.at(0, r2 * xd + c) -= gV.at(r, r2);
            rows.push_back(row);
          }
      }
      KMat sys((int)rows.size(), xd * vd);
      for (size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < xd * vd; ++c) sys.at((int)r, c) = rows[r].at(0, c);
      KMat ker = kmat_kernel(sys);
      os.M.ambient = xd * vd;
      os.M.dim = ker.cols;
      os.M.basis = ker;
      return spaces.emplace(ki, std::move(os)).first->second;
    };

    // module action of a grade-0 morphism family on Coind: for r: y -> x,
    // M(r): M(y) -> M(x) is psi -> psi o C_r with C_r: X_x -> X_y the
    // composition operator x_b -> r then x_b.
    for (int yi = 0; yi < (int)window_.size(); ++yi)
      for (int xi = 0; xi < (int)window_.size(); ++xi) {
        if (yi == xi) continue;
        auto ws = weyl_hom_set(window_[yi], window_[xi], 0);
        if (ws.empty()) continue;
        ObjSpace& Sy = space_of(yi);
        ObjSpace& Sx = space_of(xi);
        int yd = Sy.X.dim, xd = Sx.X.dim;
        // truncated connecting piece
        const auto& Ryx = hom_basis(yi, xi, 0);
        KMat Pyx = kmat_mul(op_left(yi, xi, 0, series_idem(xi, s)),
                            op_right(yi, xi, 0, series_idem(yi, s)));
        KSubspace Xyx = kmat_subspace(Pyx);
        if (Xyx.dim == 0) continue;
        // composition operators C_rc: X_x -> X_y for each basis column rc
        std::vector<KMat> Cr(Xyx.dim);
        for (int rc = 0; rc < Xyx.dim; ++rc) {
          KMat cop((int)Sy.basis.size(), (int)Sx.basis.size());
          for (int xb = 0; xb < (int)Sx.basis.size(); ++xb)
            for (int rb = 0; rb < (int)Ryx.size(); ++rb) {
              if (Xyx.basis.at(rb, rc).is_zero()) continue;
              CoxMorphism comp = cq_.morphism_compose(Ryx[rb], Sx.basis[xb]);
              cop.at(hom_index(yi, si0, 0, comp), xb) += Xyx.basis.at(rb, rc);
            }
          Cr[rc] = (yd && xd)
                       ? subspace_coords(Sy.X, kmat_mul(cop, Sx.X.basis))
                       : KMat(yd, xd);
        }
        // target T = Hom_{A_x}(Xyx, M(x)): unknown Psi over
        // Xyx.dim x M(x).dim, constraint Psi(r then g) = M(g) Psi(r)
        int md = Sx.M.dim;
        const auto& levix = cq_.levi_elements(window_[xi]);
        KMat T_basis;
        int td = 0;
        if (md > 0) {
          std::vector<KMat> rows;
          for (const FMat& g : levix) {
            // action of g on Xyx by pre-composition... post: Xyx is a left
            // A_x-module by post-composition with end(x)
            KMat gx((int)Ryx.size(), (int)Ryx.size());
            for (int b = 0; b < (int)Ryx.size(); ++b) {
              CoxMorphism gm =
                  cq_.morphism_make(Ryx[b].src, Ryx[b].tgt,
                                    fmat_mul(tw, g, Ryx[b].g), Ryx[b].w);
              gx.at(hom_index(yi, xi, 0, gm), b) = Cyclotomic::one();
            }
            KMat gX = subspace_coords(Xyx, kmat_mul(gx, Xyx.basis));
            // action of g on M(x): psi -> M(g) psi with
            // (M(g) psi)(t) = psi(g then t); C_g pre-composes the argument
            KMat cg((int)Sx.basis.size(), (int)Sx.basis.size());
            for (int xb = 0; xb < (int)Sx.basis.size(); ++xb) {
              FMat wmat = weyl_matrix(tw, cq_.level(), Sx.basis[xb].w);
              FMat conj = fmat_mul(tw, fmat_mul(tw, wmat, g),
                                   fmat_inv(tw, wmat));
              CoxMorphism gm =
                  cq_.morphism_make(Sx.basis[xb].src, Sx.basis[xb].tgt,
                                    fmat_mul(tw, Sx.basis[xb].g, conj),
                                    Sx.basis[xb].w);
              cg.at(hom_index(xi, si0, 0, gm), xb) = Cyclotomic::one();
            }
            // the action of g in A_x on M(x) is by pre-composition of the
            // argument: (g psi)(t) = psi(g then t); C_g: X_x -> X_x
            KMat Cg = subspace_coords(Sx.X, kmat_mul(cg, Sx.X.basis));
            // as a matrix on M(x) coords: psi -> psi o Cg
            KMat amb(xd * vd, md);
            for (int col = 0; col < md; ++col)
              for (int r = 0; r < vd; ++r)
                for (int c = 0; c < xd; ++c) {
                  Cyclotomic acc = Cyclotomic::zero();
                  for (int k2 = 0; k2 < xd; ++k2) {
                    const Cyclotomic& ph = Sx.M.basis.at(r * xd + k2, col);
                    if (!ph.is_zero() && !Cg.at(k2, c).is_zero())
                      acc += ph * Cg.at(k2, c);
                  }
                  amb.at(r * xd + c, col) = acc;
                }
            KMat MGc = subspace_coords(Sx.M, amb);
            // constraint rows: Psi gX - MGc Psi = 0 over unknowns
            // Psi[m][rc] flattened m * Xyx.dim + rc
            for (int m = 0; m < md; ++m)
              for (int rc = 0; rc < Xyx.dim; ++rc) {
                KMat row(1, md * Xyx.dim);
                for (int k2 = 0; k2 < Xyx.dim; ++k2)
                  if (!gX.at(k2, rc).is_zero())
                    row.at(0, m * Xyx.dim + k2) += gX.at(k2, rc);
                for (int m2 = 0; m2 < md; ++m2)
                  if (!MGc.at(m, m2).is_zero())
                    row.at(0, m2 * Xyx.dim + rc) -= MGc.at(m, m2);
                rows.push_back(row);
              }
          }
          KMat sys((int)rows.size(), md * Xyx.dim);
          for (size_t r = 0; r < rows.size(); ++r)
            for (int c = 0; c < md * Xyx.dim; ++c)
              sys.at((int)r, c) = rows[r].at(0, c);
          T_basis = kmat_kernel(sys);
          td = T_basis.cols;
        }
        // U-invariants of M(x): average of the M(u)-action
        const Simplex& wy = weyl_apply(ws[0], window_[yi]);
        const auto& U = cq_.radical_elements(wy, window_[xi]);
        int inv_dim = 0;
        if (md > 0) {
          KMat acc(xd * vd, md);
          for (const FMat& u : U) {
            KMat cu((int)Sx.basis.size(), (int)Sx.basis.size());
            for (int xb = 0; xb < (int)Sx.basis.size(); ++xb) {
              FMat wmat = weyl_matrix(tw, cq_.level(), Sx.basis[xb].w);
              FMat conj = fmat_mul(tw, fmat_mul(tw, wmat, u),
                                   fmat_inv(tw, wmat));
              CoxMorphism um =
                  cq_.morphism_make(Sx.basis[xb].src, Sx.basis[xb].tgt,
                                    fmat_mul(tw, Sx.basis[xb].g, conj),
                                    Sx.basis[xb].w);
              cu.at(hom_index(xi, si0, 0, um), xb) = Cyclotomic::one();
            }
            KMat Cu = subspace_coords(Sx.X, kmat_mul(cu, Sx.X.basis));
            for (int col = 0; col < md; ++col)
              for (int r = 0; r < vd; ++r)
                for (int c = 0; c < xd; ++c) {
                  Cyclotomic a2 = Cyclotomic::zero();
                  for (int k2 = 0; k2 < xd; ++k2) {
                    const Cyclotomic& ph = Sx.M.basis.at(r * xd + k2, col);
                    if (!ph.is_zero() && !Cu.at(k2, c).is_zero())
                      a2 += ph * Cu.at(k2, c);
                  }
                  acc.at(r * xd + c, col) += a2;
                }
          }
          acc = kmat_scale(acc, Cyclotomic(Rational(1, (long)U.size())));
          inv_dim = kmat_rank(acc);
        }
        // a*: M(y) -> T: psi -> (rc -> psi o C_rc), in T coordinates
        int maprank = 0;
        bool lands_in_T = true;
        if (Sy.M.dim > 0 && td >= 0) {
          KMat amap(md * Xyx.dim, Sy.M.dim);
          for (int col = 0; col < Sy.M.dim; ++col)
            for (int rc = 0; rc < Xyx.dim; ++rc) {
              // psi o C_rc in M(x) ambient coords, then M coords
              KMat amb(xd * vd, 1);
              for (int r = 0; r < vd; ++r)
                for (int c = 0; c < xd; ++c) {
                  Cyclotomic a2 = Cyclotomic::zero();
                  for (int k2 = 0; k2 < yd; ++k2) {
                    const Cyclotomic& ph = Sy.M.basis.at(r * yd + k2, col);
                    if (!ph.is_zero() && !Cr[rc].at(k2, c).is_zero())
                      a2 += ph * Cr[rc].at(k2, c);
                  }
                  amb.at(r * xd + c, 0) = a2;
                }
              KMat mc;
              if (!kmat_solve(Sx.M.basis, amb, &mc)) {
                lands_in_T = false;
                break;
              }
              for (int m = 0; m < md; ++m)
                amap.at(m * Xyx.dim + rc, col) = mc.at(m, 0);
            }
          if (lands_in_T) {
            KMat tc;
            if (td == 0 || !kmat_solve(T_basis, amap, &tc))
              lands_in_T = td == 0 && Sy.M.dim == 0;
            else
              maprank = kmat_rank(tc);
          }
        }
        CartesianCase cc;
        cc.pi_index = (int)pi;
        cc.yi = yi;
        cc.xi = xi;
        cc.a_iso = lands_in_T && (Sy.M.dim == td) && (maprank == Sy.M.dim);
        cc.dim_consistent = (td == inv_dim);
        out.push_back(cc);
      }
  }
  return out;
}

}  // namespace atlas
