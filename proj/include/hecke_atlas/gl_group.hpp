#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "hecke_atlas/fqpoly.hpp"

namespace atlas {

// Square matrix over a tower level, entries packed, row-major. n <= 4.
struct FMat {
  std::uint8_t n = 0;
  std::uint8_t level = 1;
  std::array<std::uint16_t, 16> e{};

  fq_t at(int i, int j) const { return e[i * n + j]; }
  void set(int i, int j, fq_t v) { e[i * n + j] = (std::uint16_t)v; }
  bool operator==(const FMat& o) const {
    if (n != o.n || level != o.level) return false;
    for (int i = 0; i < n * n; ++i)
      if (e[i] != o.e[i]) return false;
    return true;
  }
  bool operator<(const FMat& o) const {
    for (int i = 0; i < n * n; ++i)
      if (e[i] != o.e[i]) return e[i] < o.e[i];
    return false;
  }
  u64 key(u64 q) const {
    u64 k = 0;
    for (int i = n * n; i-- > 0;) k = k * q + e[i];
    return k;
  }
};

FMat fmat_identity(int n, int level);
FMat fmat_mul(const FieldTower& tw, const FMat& a, const FMat& b);
bool fmat_invertible(const FieldTower& tw, const FMat& a);
FMat fmat_inv(const FieldTower& tw, const FMat& a);
int fmat_rank(const FieldTower& tw, const FMat& a);
FqPoly fmat_charpoly(const FieldTower& tw, const FMat& a);

// Generalized Jordan data: multiset of (monic irreducible, partition),
// partitions stored descending. Two invertible matrices are conjugate in
// GL_n(F_q) iff their labels agree (primary rational canonical form).
struct ConjClassLabel {
  std::vector<std::pair<FqPoly, std::vector<int>>> parts;
  bool operator==(const ConjClassLabel& o) const { return parts == o.parts; }
  bool operator<(const ConjClassLabel& o) const { return parts < o.parts; }
  bool semisimple() const;
};

// Semisimple conjugacy class: multiset of (monic irreducible != x, mult).
struct SemisimpleClass {
  std::vector<std::pair<FqPoly, int>> parts;  // kept sorted
  bool operator==(const SemisimpleClass& o) const { return parts == o.parts; }
  bool operator<(const SemisimpleClass& o) const { return parts < o.parts; }
  int dim() const;
  bool is_elliptic(int n) const;
  bool is_central() const;  // single linear factor with multiplicity n
  std::string to_string(const FieldTower& tw) const;
};

ConjClassLabel class_label(const FieldTower& tw, const FMat& g);
SemisimpleClass ss_of_label(const ConjClassLabel& l);  // requires semisimple()
ConjClassLabel label_of_ss(const SemisimpleClass& s);

// Complete duplicate-free enumeration, sorted.
std::vector<SemisimpleClass> semisimple_classes(const FieldTower& tw, int level,
                                                int n);
// Merge of eigenvalue multisets of the factors of a Levi.
SemisimpleClass ss_levi_embed(const std::vector<SemisimpleClass>& factors);
// Eigenvalue-wise ell'-part, regrouped over F_q.
SemisimpleClass ell_regular_part_class(const FieldTower& tw, int level,
                                       const SemisimpleClass& s, u64 ell);
// Block-diagonal representative (companion blocks).
FMat ss_representative(const FieldTower& tw, int level, int n,
                       const SemisimpleClass& s);
// Orders of the eigenvalues of s (multiplicative); all coprime to ell
// means s is ell-regular.
bool ss_ell_regular(const FieldTower& tw, int level, const SemisimpleClass& s,
                    u64 ell);

u64 gl_order(u64 q, int n);

// Fully enumerated matrix group GL_n(F_q) (or a subgroup given by an
// explicit element list). Immutable after construction.
class GroupTable {
 public:
  GroupTable(const FieldTower& tw, int level, int n, u64 budget = 1000000);
  GroupTable(const FieldTower& tw, int level, int n, std::vector<FMat> elems);

  const FieldTower& tower() const { return *tw_; }
  int level() const { return level_; }
  int n() const { return n_; }
  u64 q() const { return tw_->size(level_); }
  size_t size() const { return elems_.size(); }
  const FMat& elem(int i) const { return elems_[i]; }
  int index_of(const FMat& m) const;
  int identity() const { return id_; }
  int mul(int i, int j) const;
  int inv(int i) const { return inv_[i]; }
  int pow(int i, i64 e) const;
  u64 elem_order(int i) const;

  // conjugacy data (computed on first use)
  int num_classes() const;
  int class_of(int i) const;
  int class_rep(int c) const;
  u64 class_size(int c) const;
  const ConjClassLabel& class_label_of(int c) const;
  int class_of_label(const ConjClassLabel& l) const;
  int class_inv(int c) const;
  int class_pow(int c, i64 e) const;  // class of rep^e
  u64 exponent() const;

 private:
  void finish_init();
  void ensure_classes() const;

  const FieldTower* tw_;
  int level_, n_;
  std::vector<FMat> elems_;
  std::unordered_map<u64, int> index_;
  std::vector<int> inv_;
  std::vector<int> mult_;  // dense |G|^2 table when small, else empty
  int id_ = -1;

  mutable bool classes_done_ = false;
  mutable std::vector<int> class_of_;
  mutable std::vector<int> class_rep_;
  mutable std::vector<u64> class_size_;
  mutable std::vector<ConjClassLabel> class_labels_;
  mutable std::vector<int> class_inv_;
  mutable u64 exponent_ = 0;
};

// Standard upper-block parabolic attached to a composition of n.
struct ParabolicData {
  std::vector<int> composition;
  std::vector<int> P, M, U;  // element indices into the ambient group table
};

ParabolicData parabolic_make(const GroupTable& G, const std::vector<int>& composition);

// F_q-linear matrix of g in GL_{n'}(F_{q^f}) under the basis
// (alpha_1, ..., alpha_f) of F_{q^f}/F_q and the fiber-contiguous index
// bijection eta(i', j) = (i'-1) f + j.
FMat iota_star(const FieldTower& tw, int level_q, int f, const FMat& gprime,
               const std::vector<fq_t>& basis);
// Power basis 1, G, ..., G^{f-1} of the level_q*f tower generator.
std::vector<fq_t> default_ext_basis(const FieldTower& tw, int level_q, int f);

// Brute-force check that the centralizer of iota_*(rep of s') in
// GL_{n'f}(F_q) is contained in iota_*(GL_{n'}(F_{q^f})).
bool centralizer_condition(const FieldTower& tw, int level_q, int f, int nprime,
                           const SemisimpleClass& sprime, u64 budget = 1000000);

}  // namespace atlas
