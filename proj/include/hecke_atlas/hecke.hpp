#pragma once

#include "hecke_atlas/coxeter.hpp"
#include "hecke_atlas/kmat.hpp"

namespace atlas {

// Element of the group algebra of a Levi subgroup, sparse over matrices.
using LeviElt = std::map<FMat, Cyclotomic>;

LeviElt levi_convolve(const FieldTower& tw, const LeviElt& a, const LeviElt& b);
bool levi_eq(const LeviElt& a, const LeviElt& b);
LeviElt levi_conj(const FieldTower& tw, const FMat& c, const LeviElt& a);
Cyclotomic levi_coeff_at(const LeviElt& a, const FMat& g);

struct HeckeCheck {
  bool pass = true;
  u64 cases = 0;
  std::string detail;  // first failure, empty if none
  void fail(const std::string& d) {
    if (pass) detail = d;
    pass = false;
  }
};

// The level-0 Hecke ringoid on a finite full-subcategory window with a
// grade bound: objects are the window simplices, hom pieces are spanned by
// the graded morphism sets, composition comes from the enriched complex.
class HeckeRingoid {
 public:
  HeckeRingoid(int n, u64 q, int window_D, int imax_n);

  CoxQ& cox() { return cq_; }
  int n() const { return n_; }
  u64 q() const { return cq_.q(); }
  int imax_n() const { return imax_n_; }
  const std::vector<Simplex>& window() const { return window_; }
  const std::vector<SemisimpleClass>& series_classes();

  // basis of the graded hom piece, cached; empty when the Weyl set is
  const std::vector<CoxMorphism>& hom_basis(int si, int ti, int grade_n);
  int hom_index(int si, int ti, int grade_n, const CoxMorphism& m);
  u64 hom_dim_expected(int si, int ti, int grade_n);  // |G_tau| / |U| or 0

  // e^s attached to the Levi of an arbitrary partition of {0..n-1}
  LeviElt series_idem_blocks(const std::vector<std::vector<int>>& blocks,
                             const SemisimpleClass& s);
  const LeviElt& series_idem(int si, const SemisimpleClass& s);  // cached

  // operator matrices on a graded piece
  KMat op_left(int si, int ti, int grade_n, const LeviElt& e);   // post-compose
  KMat op_right(int si, int ti, int grade_n, const LeviElt& e);  // pre-compose

  // --- verification suites ---
  // e^s_sigma idempotent, conjugation-stable under every graded Weyl
  // stabilizer representative; family over all s: orthogonal, sums to 1.
  HeckeCheck check_centrality(const SemisimpleClass& s);
  HeckeCheck check_idem_family();
  // absorption e_tau^s H = H e_sigma^s on every window pair and grade, by
  // the group-algebra identities e_tau^s e_U = e_U e_L (+ transport).
  HeckeCheck check_absorption(const SemisimpleClass& s);
  // sum over s of the two-sided piece dimensions recovers each graded hom
  // dimension
  HeckeCheck check_decomposition();
  // set-level composition bijection G^j x_{G_tau} G^i ~ G^{i+j}
  HeckeCheck check_graded_setlevel(u64 max_compositions_per_config = 1 << 20);
  // module-level graded isomorphism through exact linear algebra on the
  // e^s-truncated pieces (direct route; run on curated configurations)
  HeckeCheck check_graded_module(const SemisimpleClass& s,
                                 const std::vector<std::array<int, 5>>& configs);
  // direct-route absorption/centrality on one configuration (operator
  // matrices); used to cross-validate the group-algebra route
  HeckeCheck check_absorption_direct(const SemisimpleClass& s, int si, int ti,
                                     int grade_n);

  // curated (si, ti, ni, i, j) configurations: all window triples whose
  // piece dimensions stay below the budget
  std::vector<std::array<int, 5>> curated_module_configs(u64 dim_budget);

  struct CartesianCase {
    int pi_index;  // irreducible of the base Levi
    int yi, xi;    // window objects
    bool a_iso;
    bool dim_consistent;  // target dim == dim of U-invariants
  };
  // Coind from sigma0 of each simple block of the grade-0 algebra,
  // cartesian criterion maps per window pair
  std::vector<CartesianCase> cartesian_report(int si0, const SemisimpleClass& s);

 private:
  int n_;
  int imax_n_;
  CoxQ cq_;
  std::vector<Simplex> window_;
  std::vector<SemisimpleClass> classes_;
  std::map<std::tuple<int, int, int>, std::vector<CoxMorphism>> hom_cache_;
  std::map<std::tuple<int, int, int>, std::map<CoxMorphism, int>> hom_index_;
  std::map<std::pair<int, SemisimpleClass>, LeviElt> idem_cache_;
  std::map<std::pair<std::vector<std::vector<int>>, SemisimpleClass>, LeviElt>
      blocks_idem_cache_;

  LeviElt eU_elt(const Simplex& wsigma, const Simplex& tau);
};

}  // namespace atlas
