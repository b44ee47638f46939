#include "hecke_atlas/kmat.hpp"

#include <algorithm>

namespace atlas {

KMat KMat::identity(int n) {
  KMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Cyclotomic::one();
  return m;
}

bool KMat::is_zero() const {
  for (auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

KMat kmat_mul(const KMat& x, const KMat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("kmat_mul: shape");
  KMat out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Cyclotomic& v = x.at(i, k);
      if (v.is_zero()) continue;
      for (int j = 0; j < y.cols; ++j) {
        if (y.at(k, j).is_zero()) continue;
        out.at(i, j) += v * y.at(k, j);
      }
    }
  return out;
}

KMat kmat_add(const KMat& x, const KMat& y) {
  KMat out = x;
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] += y.a[i];
  return out;
}

KMat kmat_sub(const KMat& x, const KMat& y) {
  KMat out = x;
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] -= y.a[i];
  return out;
}

KMat kmat_scale(const KMat& x, const Cyclotomic& c) {
  KMat out = x;
  for (auto& v : out.a) v *= c;
  return out;
}

bool kmat_eq(const KMat& x, const KMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) return false;
  for (size_t i = 0; i < x.a.size(); ++i)
    if (x.a[i] != y.a[i]) return false;
  return true;
}

KMat kmat_hstack(const KMat& x, const KMat& y) {
  if (x.rows != y.rows) throw std::invalid_argument("kmat_hstack: shape");
  KMat out(x.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int j = 0; j < x.cols; ++j) out.at(i, j) = x.at(i, j);
    for (int j = 0; j < y.cols; ++j) out.at(i, x.cols + j) = y.at(i, j);
  }
  return out;
}

KMat kmat_vstack(const KMat& x, const KMat& y) {
  if (x.cols != y.cols) throw std::invalid_argument("kmat_vstack: shape");
  KMat out(x.rows + y.rows, x.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) out.at(i, j) = x.at(i, j);
  for (int i = 0; i < y.rows; ++i)
    for (int j = 0; j < x.cols; ++j) out.at(x.rows + i, j) = y.at(i, j);
  return out;
}

KMat kmat_transpose(const KMat& x) {
  KMat out(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) out.at(j, i) = x.at(i, j);
  return out;
}

namespace {

// In-place rref; returns pivot columns.
std::vector<int> rref(KMat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int r = row; r < m.rows; ++r)
      if (!m.at(r, col).is_zero()) { piv = r; break; }
    if (piv < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(row, j), m.at(piv, j));
    Cyclotomic ip = m.at(row, col).inverse();
    for (int j = col; j < m.cols; ++j)
      if (!m.at(row, j).is_zero()) m.at(row, j) *= ip;
    m.at(row, col) = Cyclotomic::one();
    for (int r = 0; r < m.rows; ++r) {
      if (r == row || m.at(r, col).is_zero()) continue;
      Cyclotomic f = m.at(r, col);
      for (int j = col; j < m.cols; ++j) {
        if (m.at(row, j).is_zero()) continue;
        m.at(r, j) -= f * m.at(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int kmat_rank(KMat x) { return (int)rref(x).size(); }

KMat kmat_kernel(const KMat& x) {
  KMat m = x;
  std::vector<int> pivots = rref(m);
  std::vector<char> is_pivot(m.cols, 0);
  for (int p : pivots) is_pivot[p] = 1;
  int free_count = m.cols - (int)pivots.size();
  KMat out(x.cols, free_count);
  int fi = 0;
  for (int col = 0; col < m.cols; ++col) {
    if (is_pivot[col]) continue;
    out.at(col, fi) = Cyclotomic::one();
    for (size_t pr = 0; pr < pivots.size(); ++pr)
      out.at(pivots[pr], fi) = -m.at((int)pr, col);
    ++fi;
  }
  return out;
}

KMat kmat_colspace(const KMat& x) {
  KMat t = kmat_transpose(x);
  std::vector<int> pivots = rref(t);
  KMat out(x.rows, (int)pivots.size());
  for (size_t i = 0; i < pivots.size(); ++i)
    for (int j = 0; j < x.rows; ++j) out.at(j, (int)i) = t.at((int)i, j);
  return out;
}

bool kmat_colspace_contains(const KMat& A, const KMat& B) {
  int ra = kmat_rank(A);
  return kmat_rank(kmat_hstack(A, B)) == ra;
}

bool kmat_colspace_eq(const KMat& A, const KMat& B) {
  int ra = kmat_rank(A), rb = kmat_rank(B);
  if (ra != rb) return false;
  return kmat_rank(kmat_hstack(A, B)) == ra;
}

bool kmat_solve(const KMat& A, const KMat& B, KMat* X) {
  KMat aug = kmat_hstack(A, B);
  std::vector<int> pivots = rref(aug);
  for (int p : pivots)
    if (p >= A.cols) return false;  // pivot in the B part: inconsistent
  if (X) {
    KMat x(A.cols, B.cols);
    for (size_t pr = 0; pr < pivots.size(); ++pr)
      for (int j = 0; j < B.cols; ++j)
        x.at(pivots[pr], j) = aug.at((int)pr, A.cols + j);
    *X = x;
  }
  return true;
}

KMat kmat_inverse(const KMat& A) {
  if (A.rows != A.cols) throw std::invalid_argument("kmat_inverse: not square");
  KMat aug = kmat_hstack(A, KMat::identity(A.rows));
  std::vector<int> pivots = rref(aug);
  if ((int)pivots.size() != A.rows || pivots.back() >= A.cols)
    throw std::domain_error("kmat_inverse: singular");
  KMat out(A.rows, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.rows; ++j) out.at(i, j) = aug.at(i, A.cols + j);
  return out;
}

KQuotient kmat_quotient(const KMat& relations, int ambient) {
  KMat t = kmat_transpose(relations);
  std::vector<int> pivots = rref(t);
  std::vector<char> is_pivot(ambient, 0);
  for (int p : pivots) is_pivot[p] = 1;
  KQuotient Q;
  Q.ambient = ambient;
  Q.dim = ambient - (int)pivots.size();
  Q.proj = KMat(Q.dim, ambient);
  Q.sect = KMat(ambient, Q.dim);
  int fi = 0;
  for (int col = 0; col < ambient; ++col) {
    if (is_pivot[col]) continue;
    Q.proj.at(fi, col) = Cyclotomic::one();
    Q.sect.at(col, fi) = Cyclotomic::one();
    ++fi;
  }
  // reducing x by row r (leading 1 at pivots[r]) sends the free coordinate
  // at col to x[col] - x[pivots[r]] * t(r, col)
  for (size_t r = 0; r < pivots.size(); ++r) {
    int fj = 0;
    for (int col = 0; col < ambient; ++col) {
      if (is_pivot[col]) continue;
      Q.proj.at(fj, pivots[r]) -= t.at((int)r, col);
      ++fj;
    }
  }
  return Q;
}

KSubspace kmat_subspace(const KMat& spanning) {
  KSubspace S;
  S.ambient = spanning.rows;
  S.basis = kmat_colspace(spanning);
  S.dim = S.basis.cols;
  return S;
}

KMat subspace_coords(const KSubspace& S, const KMat& v) {
  KMat X;
  if (!kmat_solve(S.basis, v, &X))
    throw std::domain_error("subspace_coords: vector not in subspace");
  return X;
}

}  // namespace atlas
