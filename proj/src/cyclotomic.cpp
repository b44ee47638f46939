#include "hecke_atlas/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace atlas {

Rational rational_from_string(const std::string& s) {
  Rational r(s);
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << r.get_num();
  if (r.get_den() != 1) os << "/" << r.get_den();
  return os.str();
}

bool rational_ell_integral(const Rational& r, u64 ell) {
  mpz_class den = r.get_den();
  return !mpz_divisible_ui_p(den.get_mpz_t(), ell);
}

namespace {

int phi_int(int m) { return (int)euler_phi((u64)m); }

// Reduce an ascending-coefficient polynomial in z_m of arbitrary degree
// modulo Phi_m, returning exactly phi(m) coefficients.
std::vector<Rational> reduce_mod_phi(int m, std::vector<Rational> poly) {
  const auto& phi_poly = cyclotomic_poly(m);
  size_t d = phi_poly.size() - 1;  // = phi(m)
  if (poly.size() < d) poly.resize(d, Rational(0));
  for (size_t k = poly.size(); k-- > d;) {
    Rational c = poly[k];
    if (c != 0) {
      // z^k = z^{k-d} * z^d, z^d = -sum_{i<d} phi_i z^i
      for (size_t i = 0; i < d; ++i)
        poly[k - d + i] -= c * Rational(phi_poly[i]);
    }
  }
  poly.resize(d);
  return poly;
}

}  // namespace

Cyclotomic::Cyclotomic(int m, std::vector<Rational> coeffs) : m_(m) {
  if (m < 1) throw std::invalid_argument("Cyclotomic: order must be >= 1");
  size_t d = euler_phi((u64)m);
  if (coeffs.size() != d) throw std::invalid_argument("Cyclotomic: bad length");
  c_ = std::move(coeffs);
}

Cyclotomic Cyclotomic::root(int m, i64 k) {
  if (m < 1) throw std::invalid_argument("cyc_root: m must be >= 1");
  i64 kk = mod_pos(k, m);
  std::vector<Rational> poly(kk + 1, Rational(0));
  poly[kk] = 1;
  return Cyclotomic(m, reduce_mod_phi(m, std::move(poly)));
}

bool Cyclotomic::is_zero() const {
  for (auto& c : c_)
    if (c != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  return descended().order() == 1;
}

Rational Cyclotomic::rational_value() const {
  Cyclotomic d = descended();
  if (d.order() != 1) throw std::logic_error("rational_value: not rational");
  return d.c_[0];
}

Cyclotomic Cyclotomic::lifted(int M) const {
  if (M == m_) return *this;
  if (M % m_ != 0) throw std::invalid_argument("lifted: order must be multiple");
  int step = M / m_;
  std::vector<Rational> poly((size_t)(c_.size() - 1) * step + 1, Rational(0));
  for (size_t k = 0; k < c_.size(); ++k) poly[k * step] = c_[k];
  return Cyclotomic(M, reduce_mod_phi(M, std::move(poly)));
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  int M = (int)lcm_i64(m_, o.m_);
  Cyclotomic a = lifted(M), b = o.lifted(M);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  return a;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
  int M = (int)lcm_i64(m_, o.m_);
  Cyclotomic a = lifted(M), b = o.lifted(M);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
  return a;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic a = *this;
  for (auto& c : a.c_) c = -c;
  return a;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  int M = (int)lcm_i64(m_, o.m_);
  Cyclotomic a = lifted(M), b = o.lifted(M);
  std::vector<Rational> prod(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] == 0) continue;
      prod[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return Cyclotomic(M, reduce_mod_phi(M, std::move(prod)));
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  int M = (int)lcm_i64(m_, o.m_);
  Cyclotomic a = lifted(M), b = o.lifted(M);
  return a.c_ == b.c_;
}

Cyclotomic Cyclotomic::scaled(const Rational& r) const {
  Cyclotomic a = *this;
  for (auto& c : a.c_) c *= r;
  return a;
}

Cyclotomic operator*(const Rational& r, const Cyclotomic& a) {
  return a.scaled(r);
}

Cyclotomic Cyclotomic::pow(i64 e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclotomic r = Cyclotomic::one(), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw std::domain_error("Cyclotomic::inverse: zero");
  // Solve x * this = 1 in the power basis: columns of the system are
  // this * z^k for k < phi(m).
  size_t d = c_.size();
  std::vector<std::vector<Rational>> col(d);
  Cyclotomic zk = Cyclotomic::one().lifted(m_);
  for (size_t k = 0; k < d; ++k) {
    col[k] = (*this * zk).coeffs();
    zk = zk * Cyclotomic::root(m_, 1);
  }
  // Gaussian elimination on the d x d system A x = e_0.
  std::vector<std::vector<Rational>> A(d, std::vector<Rational>(d + 1, Rational(0)));
  for (size_t i = 0; i < d; ++i) {
    for (size_t k = 0; k < d; ++k) A[i][k] = col[k][i];
    A[i][d] = (i == 0) ? Rational(1) : Rational(0);
  }
  for (size_t piv = 0; piv < d; ++piv) {
    size_t r = piv;
    while (r < d && A[r][piv] == 0) ++r;
    if (r == d) throw std::logic_error("Cyclotomic::inverse: singular");
    std::swap(A[piv], A[r]);
    Rational ip = Rational(1) / A[piv][piv];
    for (size_t j = piv; j <= d; ++j) A[piv][j] *= ip;
    for (size_t i = 0; i < d; ++i) {
      if (i == piv || A[i][piv] == 0) continue;
      Rational f = A[i][piv];
      for (size_t j = piv; j <= d; ++j) A[i][j] -= f * A[piv][j];
    }
  }
  std::vector<Rational> x(d);
  for (size_t i = 0; i < d; ++i) x[i] = A[i][d];
  return Cyclotomic(m_, std::move(x));
}

Cyclotomic Cyclotomic::galois(i64 j) const {
  if (gcd_i64(mod_pos(j, m_) == 0 ? m_ : mod_pos(j, m_), m_) != 1)
    throw std::invalid_argument("galois: j not coprime to order");
  i64 jj = mod_pos(j, m_);
  std::vector<Rational> poly((size_t)m_, Rational(0));
  for (size_t k = 0; k < c_.size(); ++k)
    poly[(size_t)((k * (u64)jj) % (u64)m_)] += c_[k];
  return Cyclotomic(m_, reduce_mod_phi(m_, std::move(poly)));
}

Cyclotomic Cyclotomic::conj() const {
  if (m_ == 1) return *this;
  return galois(m_ - 1);
}

bool Cyclotomic::ell_integral(u64 ell) const {
  for (auto& c : c_)
    if (!rational_ell_integral(c, ell)) return false;
  return true;
}

Cyclotomic Cyclotomic::descended() const {
  if (m_ == 1) return *this;
  for (u64 du : divisors_u64((u64)m_)) {
    int d = (int)du;
    if (d == m_) break;
    // Try to solve sum_k x_k z_d^k == *this in Q(z_m).
    size_t pd = (size_t)phi_int(d), pm = c_.size();
    std::vector<std::vector<Rational>> basis(pd);
    for (size_t k = 0; k < pd; ++k)
      basis[k] = Cyclotomic::root(d, (i64)k).lifted(m_).coeffs();
    // Solve the pm x pd system.
    std::vector<std::vector<Rational>> A(pm, std::vector<Rational>(pd + 1));
    for (size_t i = 0; i < pm; ++i) {
      for (size_t k = 0; k < pd; ++k) A[i][k] = basis[k][i];
      A[i][pd] = c_[i];
    }
    std::vector<int> pivot_col(pd, -1);
    size_t row = 0;
    for (size_t colj = 0; colj < pd && row < pm; ++colj) {
      size_t r = row;
      while (r < pm && A[r][colj] == 0) ++r;
      if (r == pm) continue;
      std::swap(A[row], A[r]);
      Rational ip = Rational(1) / A[row][colj];
      for (size_t j = colj; j <= pd; ++j) A[row][j] *= ip;
      for (size_t i = 0; i < pm; ++i) {
        if (i == row || A[i][colj] == 0) continue;
        Rational f = A[i][colj];
        for (size_t j = colj; j <= pd; ++j) A[i][j] -= f * A[row][j];
      }
      pivot_col[colj] = (int)row;
      ++row;
    }
    bool consistent = true;
    for (size_t i = row; i < pm; ++i)
      if (A[i][pd] != 0) { consistent = false; break; }
    if (!consistent) continue;
    std::vector<Rational> x(pd, Rational(0));
    for (size_t colj = 0; colj < pd; ++colj)
      if (pivot_col[colj] >= 0) x[colj] = A[pivot_col[colj]][pd];
    return Cyclotomic(d, std::move(x));
  }
  return *this;
}

std::string Cyclotomic::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!first) os << " + ";
    os << rational_to_string(c_[k]);
    if (k > 0) os << "*z" << m_ << "^" << k;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace atlas
