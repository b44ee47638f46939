#pragma once

#include <string>
#include <vector>

#include "hecke_atlas/numtheory.hpp"

namespace atlas {

// Exact rationals. mpq_class keeps gcd(num, den) = 1 and den >= 1 by
// construction, which is exactly the invariant we need.
using Rational = mpq_class;

Rational rational_from_string(const std::string& s);
std::string rational_to_string(const Rational& r);
bool rational_ell_integral(const Rational& r, u64 ell);

// Element of the m-th cyclotomic field in the power basis
// 1, z, ..., z^{phi(m)-1} modulo Phi_m. Canonical per order; equality
// lifts both operands to the lcm of their orders. Values are immutable
// in spirit: every operation returns a fresh value.
class Cyclotomic {
 public:
  Cyclotomic() : m_(1), c_(1, Rational(0)) {}
  explicit Cyclotomic(const Rational& r) : m_(1), c_(1, r) {}
  explicit Cyclotomic(long n) : m_(1), c_(1, Rational(n)) {}
  Cyclotomic(int m, std::vector<Rational> coeffs);  // must have length phi(m)

  static Cyclotomic zero() { return Cyclotomic(); }
  static Cyclotomic one() { return Cyclotomic(Rational(1)); }
  // z_m^k, reduced mod Phi_m.
  static Cyclotomic root(int m, i64 k);

  int order() const { return m_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;  // true iff the value lies in Q
  Rational rational_value() const;  // requires is_rational()

  Cyclotomic lifted(int M) const;  // m_ | M
  // Rewrites the value in the smallest cyclotomic field Q(z_d), d | m,
  // that contains it. Explicit normalization pass; arithmetic never
  // descends automatically.
  Cyclotomic descended() const;

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  bool operator==(const Cyclotomic& o) const;
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  Cyclotomic scaled(const Rational& r) const;
  Cyclotomic inverse() const;  // requires nonzero
  Cyclotomic pow(i64 e) const;

  // Field automorphism z -> z^j, gcd(j, m) = 1.
  Cyclotomic galois(i64 j) const;
  // Complex conjugation z -> z^{-1}.
  Cyclotomic conj() const;

  // True iff every coefficient's denominator is coprime to ell. The power
  // basis of z_m spans the full ring of integers of Q(z_m), so this is the
  // correct integrality test at ell.
  bool ell_integral(u64 ell) const;

  std::string to_string() const;

 private:
  int m_;
  std::vector<Rational> c_;
};

Cyclotomic operator*(const Rational& r, const Cyclotomic& a);

}  // namespace atlas
