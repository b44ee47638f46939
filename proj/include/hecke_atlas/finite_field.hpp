#pragma once

#include <cstdint>
#include <vector>

#include "hecke_atlas/cyclotomic.hpp"
#include "hecke_atlas/numtheory.hpp"

namespace atlas {

// Elements of F_{p^k} are stored packed: the coordinate vector
// (c_0, ..., c_{k-1}) over F_p w.r.t. the power basis of the level's
// defining polynomial, encoded as sum c_i p^i. Multiplication goes through
// discrete-log tables, addition through the digits.
using fq_t = std::uint32_t;

struct FieldLevel {
  int k = 0;
  std::vector<std::uint8_t> poly;  // defining polynomial over F_p, ascending, monic, length k+1
  std::vector<fq_t> expt;          // expt[i] = g^i, i in [0, p^k-1)
  std::vector<std::int32_t> dlog;  // dlog[packed]; dlog[0] = -1
};

// Tower F_p c F_{p^2} c ... with norm-compatible generators: the defining
// polynomials are chosen smallest-lex among primitive polynomials whose
// root g_k satisfies g_k^{(p^k-1)/(p^d-1)} = g_d for every d | k. The
// embedding F_{p^d} -> F_{p^k} for d | k sends g_d to that power of g_k.
// Immutable after construction; all queries are const.
class FieldTower {
 public:
  FieldTower(int p, int max_level, u64 table_budget = (u64)1 << 16);

  // Distinct per constructed tower; used as a cache key by helpers.
  u64 uid() const { return uid_; }
  int p() const { return p_; }
  int max_level() const { return max_level_; }
  u64 size(int k) const { return pk_[k]; }
  u64 unit_order(int k) const { return pk_[k] - 1; }
  const FieldLevel& level(int k) const { return levels_[k]; }

  fq_t add(int k, fq_t a, fq_t b) const;
  fq_t neg(int k, fq_t a) const;
  fq_t sub(int k, fq_t a, fq_t b) const { return add(k, a, neg(k, b)); }
  fq_t mul(int k, fq_t a, fq_t b) const;
  fq_t inv(int k, fq_t a) const;
  fq_t pow(int k, fq_t a, i64 e) const;
  i64 dlog(int k, fq_t a) const;  // error on zero
  fq_t gen(int k) const { return levels_[k].expt[1 % (pk_[k] - 1)]; }
  fq_t exp_of(int k, i64 e) const;  // g_k^e

  fq_t scalar(int k, i64 c) const;  // image of c in F_p c F_{p^k}
  fq_t embed(int kfrom, int kto, fq_t a) const;  // kfrom | kto
  bool in_subfield(int kfrom, int kto, fq_t a) const;
  fq_t project(int kto, int kfrom, fq_t a) const;  // inverse of embed on its image

  std::vector<std::uint8_t> coords(int k, fq_t a) const;
  fq_t from_coords(int k, const std::vector<std::uint8_t>& c) const;

  u64 elem_order(int k, fq_t a) const;  // multiplicative order, a != 0
  // a^{p^{base_k}}, i.e. the Frobenius of F_{p^{base_k}}.
  fq_t frobenius(int k, fq_t a, int base_k) const;
  // The ell'-part of a nonzero a: the unique factor of order coprime to
  // ell in the commuting ell x ell' factorization of a.
  fq_t ell_prime_part(int k, fq_t a, u64 ell) const;

  // Multiplicative character of F_{p^k}^x attached to a nonzero alpha:
  // theta_alpha(x) = z_{p^k-1}^{dlog(alpha) dlog(x)}.
  Cyclotomic theta(int k, fq_t alpha, fq_t x) const;

 private:
  u64 uid_;
  int p_;
  int max_level_;
  std::vector<u64> pk_;  // pk_[k] = p^k
  std::vector<FieldLevel> levels_;  // index 1..max_level
};

}  // namespace atlas
