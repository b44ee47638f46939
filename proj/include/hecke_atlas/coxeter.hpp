#pragma once

#include <random>

#include "hecke_atlas/characters.hpp"

namespace atlas {

// Point of Z^I / Z_diag, stored as the unique representative with minimum
// coordinate 0.
struct APoint {
  std::vector<int> v;
  int n() const { return (int)v.size(); }
  bool operator==(const APoint& o) const { return v == o.v; }
  bool operator<(const APoint& o) const { return v < o.v; }
};

APoint apoint_make(std::vector<int> raw);
bool adjacent(const APoint& x, const APoint& y);

// Affine Weyl group element (t, w): x -> t + w.x with (w.x)(i) = x(w^{-1}(i)).
struct WeylElem {
  std::vector<int> t;
  std::vector<std::uint8_t> w;  // w[i] = image of i
  int n() const { return (int)t.size(); }
  bool operator==(const WeylElem& o) const { return t == o.t && w == o.w; }
  bool operator<(const WeylElem& o) const {
    if (t != o.t) return t < o.t;
    return w < o.w;
  }
};

WeylElem weyl_identity(int n);
WeylElem weyl_mul(const WeylElem& a, const WeylElem& b);
WeylElem weyl_inv(const WeylElem& a);
APoint weyl_apply(const WeylElem& w, const APoint& x);
// n * rho(w) = sum of the translation coordinates; the grade itself is
// rho = rho_n / n in (1/n) Z.
int rho_n(const WeylElem& w);

// Simplex: set of pairwise adjacent points, kept sorted.
struct Simplex {
  std::vector<APoint> pts;
  int n() const { return pts.empty() ? 0 : pts[0].n(); }
  int dim() const { return (int)pts.size() - 1; }
  bool operator==(const Simplex& o) const { return pts == o.pts; }
  bool operator<(const Simplex& o) const { return pts < o.pts; }
};

Simplex simplex_make(std::vector<APoint> pts);  // validates pairwise adjacency
Simplex weyl_apply(const WeylElem& w, const Simplex& s);
// subset as point sets
bool simplex_contains(const Simplex& big, const Simplex& small);

// Ordered partition I_{s,0}, ..., I_{s,d} of {0..n-1} from a base vertex;
// changing the base cycles the block order.
std::vector<std::vector<int>> partition_of(const Simplex& s, const APoint& base);
// Based at the lex-least point of s.
std::vector<std::vector<int>> canonical_partition(const Simplex& s);

// All chambers containing s (one per ordering of each block).
std::vector<Simplex> chambers_containing(const Simplex& s);
// The unique w in W^0 with w delta = gamma (delta, gamma chambers).
WeylElem chamber_transfer(const Simplex& delta, const Simplex& gamma);
// The rotation c with c delta = delta and rho_n(c) = 1.
WeylElem chamber_rotation(const Simplex& delta);

// W_tau^0: elements of W^0 fixing tau (pointwise; setwise stabilizers in
// W^0 are automatically pointwise here).
std::vector<WeylElem> stabilizer0(const Simplex& tau);

// W^i_{sigma,tau} = {w : tau subset of w sigma, n*rho(w) = grade_n}: the
// fast route goes through a chamber pair and the rotation; the oracle
// enumerates translations up to a bound.
std::vector<WeylElem> weyl_hom_set(const Simplex& sigma, const Simplex& tau,
                                   int grade_n);
std::vector<WeylElem> weyl_hom_oracle(const Simplex& sigma, const Simplex& tau,
                                      int grade_n, int bound);

// All simplices with normalized vertex representatives in {0..D}^I.
std::vector<Simplex> window_simplices(int n, int D);

// Embedding A' -> A with contiguous fibers: pi(i) = i div f,
// eta(i', j) = i'*f + j.
struct CoxEmbedding {
  int nprime = 1, f = 1;
  int n() const { return nprime * f; }
};

APoint embed_point(const CoxEmbedding& e, const APoint& xp);
WeylElem embed_weyl(const CoxEmbedding& e, const WeylElem& wp);
Simplex embed_simplex(const CoxEmbedding& e, const Simplex& sp);
// nonempty W^i upstairs at iota(sigma'), iota(tau') implies nonempty
// W'^i downstairs (grades identified via rho' = rho o iota).
bool lemmeW_check(const CoxEmbedding& e, const Simplex& sp, const Simplex& tp,
                  int grade_nprime);

// ---------------------------------------------------------------------------
// the group-enriched layer over F_q

// Morphism of the enriched complex in canonical form: the Weyl part is the
// lex-least element of W_tau^0 w, the coset part the lex-least matrix in
// g U_{w sigma, tau}.
struct CoxMorphism {
  Simplex src, tgt;
  int grade_n = 0;
  WeylElem w;
  FMat g;
  bool operator==(const CoxMorphism& o) const {
    return src == o.src && tgt == o.tgt && grade_n == o.grade_n && w == o.w &&
           g == o.g;
  }
  bool operator<(const CoxMorphism& o) const;
};

// Per-(n, q) context for the enriched layer. Holds a QContext for the
// block groups GL_m(F_q), m <= n.
class CoxQ {
 public:
  CoxQ(int n, u64 q, u64 budget = 1000000);

  int n() const { return n_; }
  u64 q() const { return qctx_->q(); }
  QContext& qctx() { return *qctx_; }
  const FieldTower& tower() const { return qctx_->tower(); }
  int level() const { return qctx_->level(); }

  u64 levi_order(const Simplex& s);
  // enumerated block-diagonal group attached to s (order must fit budget)
  const std::vector<FMat>& levi_elements(const Simplex& s);
  FMat random_levi_element(const Simplex& s, std::mt19937_64& rng);
  // U_{w sigma, tau} for tau inside wsigma, flag based at the lex-least
  // point of tau
  const std::vector<FMat>& radical_elements(const Simplex& wsigma,
                                            const Simplex& tau);
  u64 radical_order(const Simplex& wsigma, const Simplex& tau);

  CoxMorphism morphism_make(const Simplex& src, const Simplex& tgt,
                            const FMat& g, const WeylElem& w);
  CoxMorphism morphism_identity(const Simplex& s);
  // g then h (h o g), g: sigma -> tau, h: tau -> nu
  CoxMorphism morphism_compose(const CoxMorphism& g, const CoxMorphism& h);
  std::vector<CoxMorphism> graded_hom(const Simplex& sigma, const Simplex& tau,
                                      int grade_n);
  CoxMorphism random_morphism(const Simplex& sigma, const Simplex& tau,
                              int grade_n, std::mt19937_64& rng);

  const std::vector<WeylElem>& stab0(const Simplex& s);

 private:
  int n_;
  std::unique_ptr<QContext> qctx_;
  std::map<Simplex, std::vector<WeylElem>> stab0_;
  std::map<std::vector<std::vector<int>>, std::vector<FMat>> levi_cache_;
  std::map<std::pair<Simplex, Simplex>, std::vector<FMat>> radical_cache_;
};

// Permutation matrix of the underlying permutation of w.
FMat weyl_matrix(const FieldTower& tw, int level, const WeylElem& w);

// iota_* on the enriched layer: F_q-matrix of g' in the Levi attached to
// an embedded simplex, fibers ordered by eta.
FMat embed_levi_elem(const FieldTower& tw, int level_q, const CoxEmbedding& e,
                     const FMat& gprime);

}  // namespace atlas
