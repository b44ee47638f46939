#pragma once

#include "hecke_atlas/cyclotomic.hpp"

namespace atlas {

// Dense matrix over the cyclotomic field, exact arithmetic throughout.
struct KMat {
  int rows = 0, cols = 0;
  std::vector<Cyclotomic> a;

  KMat() = default;
  KMat(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}
  static KMat identity(int n);

  Cyclotomic& at(int i, int j) { return a[(size_t)i * cols + j]; }
  const Cyclotomic& at(int i, int j) const { return a[(size_t)i * cols + j]; }
  bool is_zero() const;
};

KMat kmat_mul(const KMat& x, const KMat& y);
KMat kmat_add(const KMat& x, const KMat& y);
KMat kmat_sub(const KMat& x, const KMat& y);
KMat kmat_scale(const KMat& x, const Cyclotomic& c);
bool kmat_eq(const KMat& x, const KMat& y);
KMat kmat_hstack(const KMat& x, const KMat& y);
KMat kmat_vstack(const KMat& x, const KMat& y);
KMat kmat_transpose(const KMat& x);

int kmat_rank(KMat x);
// Basis of the right nullspace, as columns.
KMat kmat_kernel(const KMat& x);
// rref basis of the column space, as columns.
KMat kmat_colspace(const KMat& x);
// col(B) inside col(A)?
bool kmat_colspace_contains(const KMat& A, const KMat& B);
bool kmat_colspace_eq(const KMat& A, const KMat& B);
// Solve A X = B; returns false if inconsistent.
bool kmat_solve(const KMat& A, const KMat& B, KMat* X);
// Square inverse; throws if singular.
KMat kmat_inverse(const KMat& A);

// Quotient of K^ambient by the column span of `relations`: proj maps
// ambient coordinates onto quotient coordinates; sect is a section.
struct KQuotient {
  int ambient = 0, dim = 0;
  KMat proj;  // dim x ambient
  KMat sect;  // ambient x dim, proj * sect = I
};
KQuotient kmat_quotient(const KMat& relations, int ambient);

// Basis of a subspace given by spanning columns; coords expresses vectors
// of the subspace in that basis (solves).
struct KSubspace {
  int ambient = 0, dim = 0;
  KMat basis;  // ambient x dim
};
KSubspace kmat_subspace(const KMat& spanning);
// coordinates of columns of v (must lie in the subspace)
KMat subspace_coords(const KSubspace& S, const KMat& v);

}  // namespace atlas
