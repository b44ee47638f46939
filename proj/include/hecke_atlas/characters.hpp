#pragma once

#include <map>
#include <memory>
#include <optional>

#include "hecke_atlas/cyclotomic.hpp"
#include "hecke_atlas/gl_group.hpp"

namespace atlas {

// Shared per-q workspace: the field tower, enumerated groups GL_n(F_q) and
// their character tables, parabolic data. q = p^level inside the tower.
class QContext {
 public:
  // q must be a prime power; ext_factor controls how far the tower goes
  // (eigenvalue fields up to F_{q^ext_factor} are available).
  explicit QContext(u64 q, int ext_factor = 4, u64 budget = 1000000);

  const FieldTower& tower() const { return *tw_; }
  int level() const { return level_; }
  u64 q() const { return q_; }
  u64 budget() const { return budget_; }

  const GroupTable& group(int n);
  const class CharacterTable& table(int n);
  const ParabolicData& parabolic(int n, const std::vector<int>& comp);

 private:
  std::shared_ptr<FieldTower> tw_;
  int level_;
  u64 q_;
  u64 budget_;
  std::map<int, std::unique_ptr<GroupTable>> groups_;
  std::map<int, std::unique_ptr<CharacterTable>> tables_;
  std::map<std::pair<int, std::vector<int>>, ParabolicData> parabolics_;
};

// Cyclotomic-valued class function, one value per conjugacy class.
struct ClassFn {
  const GroupTable* G = nullptr;
  std::vector<Cyclotomic> v;

  Cyclotomic at_elem(int elem) const { return v[G->class_of(elem)]; }
};

ClassFn cf_zero(const GroupTable& G);
ClassFn cf_add(const ClassFn& a, const ClassFn& b);
ClassFn cf_sub(const ClassFn& a, const ClassFn& b);
Cyclotomic cf_inner(const ClassFn& a, const ClassFn& b);

struct CharacterTable {
  const GroupTable* G = nullptr;
  std::vector<ClassFn> irr;    // rows, sorted canonically
  std::vector<u64> degrees;    // degrees[i] = irr[i](1)
  u64 exponent = 1;            // values live in Q(z_exponent)
  int identity_class = 0;

  // exact row and column orthogonality + integral degrees
  bool check() const;
};

// Character table by the Dixon class-multiplication-coefficient method:
// eigenvectors of the class algebra modulo an auxiliary prime
// P = 1 mod exp(G), P > 2 sqrt(|G|), lifted to exact cyclotomic values
// through the power maps.
CharacterTable dixon_table(const GroupTable& G);

// Class-multiplication constants of G: a(i,j,k) = #{(x,y) in C_i x C_j :
// xy = z_k} for a fixed z_k. Cached per group.
class ClassMult {
 public:
  explicit ClassMult(const GroupTable& G);
  u64 a(int i, int j, int k) const { return a_[((size_t)i * nc_ + j) * nc_ + k]; }
  int classes() const { return nc_; }

 private:
  int nc_;
  std::vector<u64> a_;
};

// Central element of the group algebra in class-function form: the
// coefficient at g depends only on the class of g.
struct CentralElt {
  const GroupTable* G = nullptr;
  std::vector<Cyclotomic> coeff;  // per class
};

CentralElt central_zero(const GroupTable& G);
CentralElt central_one(const GroupTable& G);
CentralElt central_add(const CentralElt& a, const CentralElt& b);
CentralElt central_convolve(const ClassMult& cm, const CentralElt& a,
                            const CentralElt& b);
bool central_eq(const CentralElt& a, const CentralElt& b);
bool central_ell_integral(const CentralElt& a, u64 ell);

// e_pi for an irreducible row, and sums of them.
CentralElt idempotent_of_irr(const CharacterTable& T, int irr_index);

// Analytic GL_2(F_q) table via theta characters (principal series,
// twisted Steinberg, cuspidal families). Independent of the Dixon path.
CharacterTable analytic_gl2_table(QContext& ctx);

// True iff the U-average of the irreducible vanishes for the radical of
// every proper standard parabolic.
bool is_cuspidal(QContext& ctx, int n, int irr_index);

// Harish-Chandra induction: inflate the Levi class function (given per
// block) across U and induce to GL_n(F_q).
ClassFn hc_induct(QContext& ctx, int n, const std::vector<int>& comp,
                  const std::vector<ClassFn>& blocks);

// Constructive cuspidal <-> elliptic matching for GL_d(F_q) by elliptic
// character values: the cuspidal attached to the orbit of alpha takes the
// value (-1)^{d-1} sum_i theta_alpha(beta^{q^i}) on the regular elliptic
// class with eigenvalue beta. Returns irreducible index per orbit
// polynomial. Throws if no consistent perfect matching exists.
std::map<FqPoly, int> cuspidal_match(QContext& ctx, int d);

struct SeriesAssignment {
  std::vector<SemisimpleClass> classes;  // all semisimple classes, sorted
  std::vector<int> irr_to_class;         // per irreducible index
  std::vector<std::vector<int>> fibers;  // per class index

  int class_index(const SemisimpleClass& s) const;
};

// The rational-series partition by cuspidal support: for each semisimple
// class, Harish-Chandra induce its cuspidal pair and collect constituents.
SeriesAssignment series_partition(QContext& ctx, int n);

// e_s = sum of e_pi over the fiber of s.
CentralElt idempotent_of_series(QContext& ctx, int n, const SeriesAssignment& sa,
                                const SemisimpleClass& s);
// Sum over the ~_ell fiber of the ell-regular class s (Broue-Michel).
CentralElt idempotent_ell(QContext& ctx, int n, const SeriesAssignment& sa,
                          const SemisimpleClass& s, u64 ell);
// Fibers of ~_ell over ell-regular classes.
std::map<SemisimpleClass, std::vector<SemisimpleClass>> bm_fibers(
    QContext& ctx, int n, u64 ell);

// Sparse group-algebra element: element index -> coefficient.
using GAElt = std::map<int, Cyclotomic>;

GAElt ga_convolve(const GroupTable& G, const GAElt& a, const GAElt& b);
bool ga_eq(const GAElt& a, const GAElt& b);
GAElt central_to_ga(const CentralElt& c);
GAElt eU_elt(const GroupTable& G, const ParabolicData& P);
// e_s^L = sum over Levi classes t with merged class s, embedded into the
// ambient group algebra (support on the Levi).
GAElt eL_of_s(QContext& ctx, int n, const std::vector<int>& comp,
              const SemisimpleClass& s, std::optional<u64> ell);

struct CompatResult {
  bool equal = false;       // e_s^G e_U = e_s^G e_U e_s^L = e_U e_s^L
  bool idempotent = false;  // e_s^P is idempotent
  bool central_in_P = false;
  bool ok() const { return equal && idempotent && central_in_P; }
};

// Eq. e_s^G e_U = e_s^G e_U e_s^L = e_U e_s^L, plain (ell = nullopt) or
// with the Broue-Michel grouped idempotents.
CompatResult compat_check(QContext& ctx, int n, const std::vector<int>& comp,
                          const SemisimpleClass& s, std::optional<u64> ell);

// GL_2 Deligne-Lusztig virtual characters. Split torus: Harish-Chandra
// induction of theta_a (x) theta_b. Nonsplit torus: the classical virtual
// character attached to theta_alpha on F_{q^2}^x.
ClassFn gl2_dl_split(QContext& ctx, fq_t a, fq_t b);
ClassFn gl2_dl_nonsplit(QContext& ctx, fq_t alpha);
// Assignment by the defining membership test: pi belongs to the series of
// s iff it occurs in some [R_T(theta_t)] with t mapping to s.
SeriesAssignment dl_series_assignment(QContext& ctx);

}  // namespace atlas
