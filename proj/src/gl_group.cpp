#include "hecke_atlas/gl_group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace atlas {

FMat fmat_identity(int n, int level) {
  FMat m;
  m.n = (std::uint8_t)n;
  m.level = (std::uint8_t)level;
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FMat fmat_mul(const FieldTower& tw, const FMat& a, const FMat& b) {
  FMat out;
  out.n = a.n;
  out.level = a.level;
  int n = a.n, k = a.level;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      fq_t acc = 0;
      for (int l = 0; l < n; ++l)
        acc = tw.add(k, acc, tw.mul(k, a.at(i, l), b.at(l, j)));
      out.set(i, j, acc);
    }
  return out;
}

namespace {

// Gauss-Jordan; returns rank, and the inverse in *inv when square
// invertible and inv != nullptr.
int gauss(const FieldTower& tw, const FMat& a, FMat* inv) {
  int n = a.n, k = a.level;
  std::vector<std::vector<fq_t>> w(n, std::vector<fq_t>(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w[i][j] = a.at(i, j);
    w[i][n + i] = 1;
  }
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (w[r][col] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(w[rank], w[piv]);
    fq_t ip = tw.inv(k, w[rank][col]);
    for (int j = 0; j < 2 * n; ++j) w[rank][j] = tw.mul(k, w[rank][j], ip);
    for (int r = 0; r < n; ++r) {
      if (r == rank || w[r][col] == 0) continue;
      fq_t f = w[r][col];
      for (int j = 0; j < 2 * n; ++j)
        w[r][j] = tw.sub(k, w[r][j], tw.mul(k, f, w[rank][j]));
    }
    ++rank;
  }
  if (inv && rank == n) {
    inv->n = (std::uint8_t)n;
    inv->level = (std::uint8_t)k;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) inv->set(i, j, w[i][n + j]);
  }
  return rank;
}

}  // namespace

bool fmat_invertible(const FieldTower& tw, const FMat& a) {
  return gauss(tw, a, nullptr) == a.n;
}

FMat fmat_inv(const FieldTower& tw, const FMat& a) {
  FMat inv;
  if (gauss(tw, a, &inv) != a.n) throw std::domain_error("fmat_inv: singular");
  return inv;
}

int fmat_rank(const FieldTower& tw, const FMat& a) { return gauss(tw, a, nullptr); }

FqPoly fmat_charpoly(const FieldTower& tw, const FMat& a) {
  // det(xI - A) expanded over permutations; n <= 4 so 24 terms at most.
  int n = a.n, k = a.level;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  FqPoly acc;
  acc.k = k;
  do {
    // sign of the permutation
    int sgn = 1;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sgn = -sgn;
    FqPoly term;
    term.k = k;
    term.c = {sgn == 1 ? (fq_t)1 : tw.neg(k, 1)};
    for (int i = 0; i < n; ++i) {
      FqPoly entry;
      entry.k = k;
      if (perm[i] == i)
        entry.c = {tw.neg(k, a.at(i, i)), 1};  // x - a_ii
      else
        entry.c = {tw.neg(k, a.at(i, perm[i]))};
      term = fqpoly_mul(tw, term, entry);
    }
    if (acc.c.size() < term.c.size()) acc.c.resize(term.c.size(), 0);
    for (size_t i = 0; i < term.c.size(); ++i)
      acc.c[i] = tw.add(k, acc.c[i], term.c[i]);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return fqpoly_trim(acc);
}

bool ConjClassLabel::semisimple() const {
  for (auto& [f, lam] : parts)
    for (int part : lam)
      if (part != 1) return false;
  return true;
}

int SemisimpleClass::dim() const {
  int d = 0;
  for (auto& [f, m] : parts) d += f.degree() * m;
  return d;
}

bool SemisimpleClass::is_elliptic(int n) const {
  return parts.size() == 1 && parts[0].second == 1 && parts[0].first.degree() == n;
}

bool SemisimpleClass::is_central() const {
  return parts.size() == 1 && parts[0].first.degree() == 1;
}

std::string SemisimpleClass::to_string(const FieldTower& tw) const {
  std::string out = "{";
  bool first = true;
  for (auto& [f, m] : parts) {
    if (!first) out += "; ";
    first = false;
    out += "[";
    for (size_t i = 0; i < f.c.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(f.c[i]);
    }
    out += "]x" + std::to_string(m);
  }
  return out + "}";
}

ConjClassLabel class_label(const FieldTower& tw, const FMat& g) {
  if (!fmat_invertible(tw, g))
    throw std::domain_error("class_label: singular matrix");
  int n = g.n, k = g.level;
  FqPoly chi = fmat_charpoly(tw, g);
  auto factors = fqpoly_factor(tw, chi);
  ConjClassLabel out;
  for (auto& [f, mult] : factors) {
    int d = f.degree();
    // ranks of f(A)^j determine the partition
    FMat fA;
    fA.n = (std::uint8_t)n;
    fA.level = (std::uint8_t)k;
    // evaluate f at g
    {
      FMat acc;  // zero
      acc.n = (std::uint8_t)n;
      acc.level = (std::uint8_t)k;
      for (size_t i = f.c.size(); i-- > 0;) {
        acc = fmat_mul(tw, acc, g);
        for (int t = 0; t < n; ++t)
          acc.set(t, t, tw.add(k, acc.at(t, t), f.c[i]));
      }
      fA = acc;
    }
    std::vector<int> rank_pow{n};
    FMat powm = fmat_identity(n, k);
    for (int j = 1; j <= mult; ++j) {
      powm = fmat_mul(tw, powm, fA);
      rank_pow.push_back(fmat_rank(tw, powm));
    }
    // cnt[j] = number of parts >= j; part sizes never exceed mult
    std::vector<int> cnt(mult + 2, 0);
    for (int j = 1; j <= mult; ++j)
      cnt[j] = (rank_pow[j - 1] - rank_pow[j]) / d;
    std::vector<int> partition;
    for (int j = mult; j >= 1; --j)
      for (int t = 0; t < cnt[j] - cnt[j + 1]; ++t) partition.push_back(j);
    out.parts.push_back({f, partition});
  }
  std::sort(out.parts.begin(), out.parts.end());
  return out;
}

SemisimpleClass ss_of_label(const ConjClassLabel& l) {
  if (!l.semisimple()) throw std::domain_error("ss_of_label: not semisimple");
  SemisimpleClass s;
  for (auto& [f, lam] : l.parts) s.parts.push_back({f, (int)lam.size()});
  std::sort(s.parts.begin(), s.parts.end());
  return s;
}

ConjClassLabel label_of_ss(const SemisimpleClass& s) {
  ConjClassLabel l;
  for (auto& [f, m] : s.parts)
    l.parts.push_back({f, std::vector<int>(m, 1)});
  std::sort(l.parts.begin(), l.parts.end());
  return l;
}

std::vector<SemisimpleClass> semisimple_classes(const FieldTower& tw, int level,
                                                int n) {
  // all monic irreducibles of degree <= n except x
  std::vector<FqPoly> irr;
  for (int d = 1; d <= n; ++d)
    for (const FqPoly& f : monic_irreducibles(tw, level, d))
      if (f.c[0] != 0) irr.push_back(f);
  std::sort(irr.begin(), irr.end());
  std::vector<SemisimpleClass> out;
  SemisimpleClass cur;
  std::function<void(size_t, int)> rec = [&](size_t i, int rem) {
    if (rem == 0) {
      SemisimpleClass s = cur;
      std::sort(s.parts.begin(), s.parts.end());
      out.push_back(s);
      return;
    }
    if (i >= irr.size()) return;
    int d = irr[i].degree();
    rec(i + 1, rem);
    for (int m = 1; m * d <= rem; ++m) {
      cur.parts.push_back({irr[i], m});
      rec(i + 1, rem - m * d);
      cur.parts.pop_back();
    }
  };
  rec(0, n);
  std::sort(out.begin(), out.end());
  return out;
}

SemisimpleClass ss_levi_embed(const std::vector<SemisimpleClass>& factors) {
  std::map<FqPoly, int> merged;
  for (const auto& f : factors)
    for (auto& [poly, m] : f.parts) merged[poly] += m;
  SemisimpleClass out;
  for (auto& [poly, m] : merged) out.parts.push_back({poly, m});
  return out;
}

SemisimpleClass ell_regular_part_class(const FieldTower& tw, int level,
                                       const SemisimpleClass& s, u64 ell) {
  std::map<FqPoly, int> merged;
  for (auto& [f, m] : s.parts) {
    int d = f.degree();
    int kext = level * d;
    fq_t beta = fqpoly_root_in_ext(tw, f);
    fq_t betap = tw.ell_prime_part(kext, beta, ell);
    FqPoly fp = minimal_poly(tw, level, kext, betap);
    merged[fp] += m * (d / fp.degree());
  }
  SemisimpleClass out;
  for (auto& [poly, m] : merged) out.parts.push_back({poly, m});
  return out;
}

FMat ss_representative(const FieldTower& tw, int level, int n,
                       const SemisimpleClass& s) {
  FMat out;
  out.n = (std::uint8_t)n;
  out.level = (std::uint8_t)level;
  int pos = 0;
  for (auto& [f, m] : s.parts) {
    int d = f.degree();
    for (int copy = 0; copy < m; ++copy) {
      // companion block of f at offset pos
      for (int j = 0; j < d - 1; ++j) out.set(pos + j + 1, pos + j, 1);
      for (int i = 0; i < d; ++i)
        out.set(pos + i, pos + d - 1, tw.neg(level, f.c[i]));
      pos += d;
    }
  }
  if (pos != n) throw std::invalid_argument("ss_representative: size mismatch");
  return out;
}

bool ss_ell_regular(const FieldTower& tw, int level, const SemisimpleClass& s,
                    u64 ell) {
  for (auto& [f, m] : s.parts) {
    int kext = level * f.degree();
    fq_t beta = fqpoly_root_in_ext(tw, f);
    if (tw.elem_order(kext, beta) % ell == 0) return false;
  }
  return true;
}

u64 gl_order(u64 q, int n) {
  u64 qn = 1;
  for (int i = 0; i < n; ++i) qn *= q;
  u64 ord = 1, qi = 1;
  for (int i = 0; i < n; ++i) {
    ord *= (qn - qi);
    qi *= q;
  }
  return ord;
}

GroupTable::GroupTable(const FieldTower& tw, int level, int n, u64 budget)
    : tw_(&tw), level_(level), n_(n) {
  u64 q = tw.size(level);
  if (gl_order(q, n) > budget)
    throw BudgetError("group_enumerate: |GL_n(F_q)| exceeds budget");
  u64 total = 1;
  for (int i = 0; i < n * n; ++i) total *= q;
  for (u64 code = 0; code < total; ++code) {
    FMat m;
    m.n = (std::uint8_t)n;
    m.level = (std::uint8_t)level;
    u64 c = code;
    for (int i = 0; i < n * n; ++i) { m.e[i] = (std::uint16_t)(c % q); c /= q; }
    if (fmat_invertible(tw, m)) elems_.push_back(m);
  }
  finish_init();
}

GroupTable::GroupTable(const FieldTower& tw, int level, int n,
                       std::vector<FMat> elems)
    : tw_(&tw), level_(level), n_(n), elems_(std::move(elems)) {
  finish_init();
}

void GroupTable::finish_init() {
  u64 q = tw_->size(level_);
  index_.reserve(elems_.size() * 2);
  for (size_t i = 0; i < elems_.size(); ++i)
    index_[elems_[i].key(q)] = (int)i;
  id_ = index_of(fmat_identity(n_, level_));
  inv_.resize(elems_.size());
  for (size_t i = 0; i < elems_.size(); ++i)
    inv_[i] = index_of(fmat_inv(*tw_, elems_[i]));
  if (elems_.size() <= 2048) {
    mult_.assign(elems_.size() * elems_.size(), -1);
    for (size_t i = 0; i < elems_.size(); ++i)
      for (size_t j = 0; j < elems_.size(); ++j)
        mult_[i * elems_.size() + j] =
            index_of(fmat_mul(*tw_, elems_[i], elems_[j]));
  }
}

int GroupTable::index_of(const FMat& m) const {
  auto it = index_.find(m.key(tw_->size(level_)));
  if (it == index_.end()) throw std::domain_error("GroupTable: element not in group");
  return it->second;
}

int GroupTable::mul(int i, int j) const {
  if (!mult_.empty()) return mult_[(size_t)i * elems_.size() + j];
  return index_of(fmat_mul(*tw_, elems_[i], elems_[j]));
}

int GroupTable::pow(int i, i64 e) const {
  int r = id_, b = i;
  if (e < 0) { b = inv_[i]; e = -e; }
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

u64 GroupTable::elem_order(int i) const {
  u64 ord = 1;
  int x = i;
  while (x != id_) { x = mul(x, i); ++ord; }
  return ord;
}

void GroupTable::ensure_classes() const {
  if (classes_done_) return;
  std::vector<ConjClassLabel> labels(elems_.size());
  for (size_t i = 0; i < elems_.size(); ++i)
    labels[i] = class_label(*tw_, elems_[i]);
  std::vector<ConjClassLabel> uniq = labels;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  class_labels_ = uniq;
  class_of_.resize(elems_.size());
  class_rep_.assign(uniq.size(), -1);
  class_size_.assign(uniq.size(), 0);
  for (size_t i = 0; i < elems_.size(); ++i) {
    int c = (int)(std::lower_bound(uniq.begin(), uniq.end(), labels[i]) -
                  uniq.begin());
    class_of_[i] = c;
    if (class_rep_[c] < 0) class_rep_[c] = (int)i;
    ++class_size_[c];
  }
  class_inv_.resize(uniq.size());
  for (size_t c = 0; c < uniq.size(); ++c)
    class_inv_[c] = class_of_[inv_[class_rep_[c]]];
  exponent_ = 1;
  for (size_t c = 0; c < uniq.size(); ++c)
    exponent_ = std::lcm(exponent_, elem_order(class_rep_[c]));
  classes_done_ = true;
}

int GroupTable::num_classes() const { ensure_classes(); return (int)class_labels_.size(); }
int GroupTable::class_of(int i) const { ensure_classes(); return class_of_[i]; }
int GroupTable::class_rep(int c) const { ensure_classes(); return class_rep_[c]; }
u64 GroupTable::class_size(int c) const { ensure_classes(); return class_size_[c]; }
const ConjClassLabel& GroupTable::class_label_of(int c) const {
  ensure_classes();
  return class_labels_[c];
}
int GroupTable::class_of_label(const ConjClassLabel& l) const {
  ensure_classes();
  auto it = std::lower_bound(class_labels_.begin(), class_labels_.end(), l);
  if (it == class_labels_.end() || !(*it == l))
    throw std::domain_error("class_of_label: unknown label");
  return (int)(it - class_labels_.begin());
}
int GroupTable::class_inv(int c) const { ensure_classes(); return class_inv_[c]; }
int GroupTable::class_pow(int c, i64 e) const {
  ensure_classes();
  return class_of_[pow(class_rep_[c], e)];
}
u64 GroupTable::exponent() const { ensure_classes(); return exponent_; }

ParabolicData parabolic_make(const GroupTable& G, const std::vector<int>& composition) {
  int n = G.n();
  int sum = 0;
  for (int c : composition) sum += c;
  if (sum != n) throw std::invalid_argument("parabolic_make: bad composition");
  std::vector<int> block_of(n);
  {
    int b = 0, pos = 0;
    for (int c : composition) {
      for (int i = 0; i < c; ++i) block_of[pos++] = b;
      ++b;
    }
  }
  ParabolicData P;
  P.composition = composition;
  for (size_t idx = 0; idx < G.size(); ++idx) {
    const FMat& m = G.elem((int)idx);
    bool upper = true, diag = true, unip = true;
    for (int i = 0; i < n && (upper || diag); ++i)
      for (int j = 0; j < n; ++j) {
        fq_t v = m.at(i, j);
        if (block_of[i] > block_of[j] && v != 0) { upper = false; diag = false; }
        if (block_of[i] < block_of[j] && v != 0) diag = false;
      }
    unip = upper;
    if (unip)
      for (int i = 0; i < n && unip; ++i)
        for (int j = 0; j < n; ++j) {
          if (block_of[i] != block_of[j]) continue;
          fq_t want = (i == j) ? 1 : 0;
          if (m.at(i, j) != want) { unip = false; break; }
        }
    if (upper) P.P.push_back((int)idx);
    if (diag) P.M.push_back((int)idx);
    if (unip) P.U.push_back((int)idx);
  }
  return P;
}

std::vector<fq_t> default_ext_basis(const FieldTower& tw, int level_q, int f) {
  int kext = level_q * f;
  std::vector<fq_t> basis(f);
  fq_t g = tw.gen(kext);
  fq_t cur = 1;
  for (int j = 0; j < f; ++j) { basis[j] = cur; cur = tw.mul(kext, cur, g); }
  return basis;
}

namespace {

// Expand x in F_{q^f} over the basis (alpha_j) with coefficients in F_q.
// Returns f coefficients at level level_q. Solves an F_p-linear system.
std::vector<fq_t> expand_over_subfield(const FieldTower& tw, int level_q, int f,
                                       const std::vector<fq_t>& basis, fq_t x) {
  int kext = level_q * f;
  int p = tw.p();
  int a = level_q;
  int dim = kext;  // F_p-dimension of the big field
  int unknowns = f * a;
  // column for unknown (j, t): coords of embed(g_a^?) ... we use the F_p
  // basis 1, y, y^2, ..., y^{a-1} of F_q where y is the level-a generator's
  // power basis element x; simplest: use coordinate unit vectors of level a.
  std::vector<std::vector<std::uint8_t>> cols;
  for (int j = 0; j < f; ++j)
    for (int t = 0; t < a; ++t) {
      std::vector<std::uint8_t> unit(a, 0);
      unit[t] = 1;
      fq_t ca = tw.from_coords(a, unit);
      fq_t prod = tw.mul(kext, tw.embed(a, kext, ca), basis[j]);
      cols.push_back(tw.coords(kext, prod));
    }
  std::vector<std::uint8_t> target = tw.coords(kext, x);
  // solve over F_p
  std::vector<std::vector<int>> A(dim, std::vector<int>(unknowns + 1, 0));
  for (int i = 0; i < dim; ++i) {
    for (int u = 0; u < unknowns; ++u) A[i][u] = cols[u][i];
    A[i][unknowns] = target[i];
  }
  std::vector<int> pivot_of_col(unknowns, -1);
  int row = 0;
  for (int col = 0; col < unknowns && row < dim; ++col) {
    int piv = -1;
    for (int r = row; r < dim; ++r)
      if (A[r][col] % p != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(A[row], A[piv]);
    int ip = (int)inv_mod(A[row][col], p);
    for (int jj = col; jj <= unknowns; ++jj) A[row][jj] = A[row][jj] * ip % p;
    for (int r = 0; r < dim; ++r) {
      if (r == row || A[r][col] % p == 0) continue;
      int fmul = A[r][col];
      for (int jj = col; jj <= unknowns; ++jj)
        A[r][jj] = ((A[r][jj] - fmul * A[row][jj]) % p + p) % p;
    }
    pivot_of_col[col] = row;
    ++row;
  }
  for (int r = row; r < dim; ++r)
    if (A[r][unknowns] % p != 0)
      throw std::logic_error("expand_over_subfield: inconsistent");
  for (int u = 0; u < unknowns; ++u)
    if (pivot_of_col[u] < 0)
      throw std::invalid_argument("iota_star: basis not linearly independent");
  std::vector<fq_t> out(f);
  for (int j = 0; j < f; ++j) {
    std::vector<std::uint8_t> coords(a, 0);
    for (int t = 0; t < a; ++t) {
      int u = j * a + t;
      coords[t] = (std::uint8_t)(pivot_of_col[u] >= 0 ? A[pivot_of_col[u]][unknowns] : 0);
    }
    out[j] = tw.from_coords(a, coords);
  }
  return out;
}

}  // namespace

FMat iota_star(const FieldTower& tw, int level_q, int f, const FMat& gprime,
               const std::vector<fq_t>& basis) {
  int nprime = gprime.n;
  int kext = level_q * f;
  int n = nprime * f;
  if (n > 4) throw std::invalid_argument("iota_star: target dimension > 4");
  // basis must be F_q-linearly independent: check via expansion of units
  FMat out;
  out.n = (std::uint8_t)n;
  out.level = (std::uint8_t)level_q;
  // image of basis vector alpha_j e'_{i'}: sum_{i''} (g_{i'' i'} alpha_j) e'_{i''}
  for (int ip = 0; ip < nprime; ++ip)
    for (int j = 0; j < f; ++j) {
      int col = ip * f + j;  // eta(i', j), zero-based
      for (int ipp = 0; ipp < nprime; ++ipp) {
        fq_t prod = tw.mul(kext, gprime.at(ipp, ip), basis[j]);
        std::vector<fq_t> coeff = expand_over_subfield(tw, level_q, f, basis, prod);
        for (int jp = 0; jp < f; ++jp)
          out.set(ipp * f + jp, col, coeff[jp]);
      }
    }
  return out;
}

bool centralizer_condition(const FieldTower& tw, int level_q, int f, int nprime,
                           const SemisimpleClass& sprime, u64 budget) {
  int kext = level_q * f;
  int n = nprime * f;
  FMat rep = ss_representative(tw, kext, nprime, sprime);
  auto basis = default_ext_basis(tw, level_q, f);
  FMat T = iota_star(tw, level_q, f, rep, basis);
  GroupTable G(tw, level_q, n, budget);
  // image of GL_{n'}(F_{q^f}) under iota_*
  GroupTable Gp(tw, kext, nprime, budget);
  std::vector<char> in_image(G.size(), 0);
  for (size_t i = 0; i < Gp.size(); ++i)
    in_image[G.index_of(iota_star(tw, level_q, f, Gp.elem((int)i), basis))] = 1;
  int t = G.index_of(T);
  for (size_t x = 0; x < G.size(); ++x) {
    if (G.mul((int)x, t) == G.mul(t, (int)x) && !in_image[x]) return false;
  }
  return true;
}

}  // namespace atlas
