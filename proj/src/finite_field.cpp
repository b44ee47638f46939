#include "hecke_atlas/finite_field.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>

namespace atlas {

namespace {

// Polynomial arithmetic over F_p with packed-free byte vectors, used only
// during tower construction (before tables exist).
using Poly = std::vector<std::uint8_t>;

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& f, int p) {
  std::vector<int> prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  int k = (int)f.size() - 1;
  for (int d = (int)prod.size() - 1; d >= k; --d) {
    int c = prod[d];
    if (c) {
      // x^d = x^{d-k} * (-f_low)
      for (int i = 0; i < k; ++i)
        prod[d - k + i] = (prod[d - k + i] + c * (p - f[i])) % p;
      prod[d] = 0;
    }
  }
  Poly out(k, 0);
  for (int i = 0; i < k; ++i) out[i] = (std::uint8_t)prod[i];
  return out;
}

Poly poly_pow_mod(Poly base, u64 e, const Poly& f, int p) {
  int k = (int)f.size() - 1;
  Poly r(k, 0);
  r[0] = 1;
  while (e) {
    if (e & 1) r = poly_mul_mod(r, base, f, p);
    base = poly_mul_mod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

bool poly_is_one(const Poly& a) {
  if (a.empty() || a[0] != 1) return false;
  for (size_t i = 1; i < a.size(); ++i)
    if (a[i]) return false;
  return true;
}

bool poly_is_zero(const Poly& a) {
  for (auto c : a)
    if (c) return false;
  return true;
}

}  // namespace

namespace {
std::atomic<u64> tower_uid_counter{1};
}

FieldTower::FieldTower(int p, int max_level, u64 table_budget)
    : uid_(tower_uid_counter++), p_(p), max_level_(max_level) {
  if (!is_prime_u64((u64)p)) throw std::invalid_argument("FieldTower: p not prime");
  pk_.resize(max_level + 1);
  pk_[0] = 1;
  for (int k = 1; k <= max_level; ++k) {
    pk_[k] = pk_[k - 1] * (u64)p;
    if (pk_[k] > table_budget)
      throw BudgetError("FieldTower: p^k exceeds table budget");
  }
  levels_.resize(max_level + 1);

  for (int k = 1; k <= max_level; ++k) {
    u64 q = pk_[k];
    u64 N = q - 1;
    auto prime_rs = prime_divisors(N);
    auto divs = divisors_u64((u64)k);

    // Search the smallest-lex defining polynomial (constant coefficient
    // first) whose root is primitive and norm-compatible with all proper
    // sublevels.
    Poly f(k + 1, 0);
    f[k] = 1;
    bool found = false;
    std::vector<std::uint8_t> low(k, 0);
    u64 total = pk_[k];
    for (u64 code = 0; code < total && !found; ++code) {
      u64 c = code;
      for (int i = 0; i < k; ++i) { low[i] = (std::uint8_t)(c % p); c /= p; }
      for (int i = 0; i < k; ++i) f[i] = low[i];
      if (k >= 1 && f[0] == 0) continue;  // x | f: not irreducible-with-unit-root
      Poly x(k, 0);
      if (k == 1) {
        // F_p itself: root of x - c is the scalar c = p - f[0] mod p.
        // Generator must generate F_p^x.
        int g0 = (p - f[0]) % p;
        if (g0 == 0) continue;
        bool prim = true;
        for (u64 r : prime_rs)
          if (pow_mod((u64)g0, N / r, (u64)p) == 1) { prim = false; break; }
        if (!prim) continue;
        found = true;
        break;
      }
      x[1] = 1;
      // order of x must be exactly N = p^k - 1 (this also forces f irreducible)
      if (!poly_is_one(poly_pow_mod(x, N, f, p))) continue;
      bool prim = true;
      for (u64 r : prime_rs)
        if (poly_is_one(poly_pow_mod(x, N / r, f, p))) { prim = false; break; }
      if (!prim) continue;
      // norm compatibility with every proper sublevel
      bool compat = true;
      for (u64 d : divs) {
        if ((int)d == k) continue;
        u64 ratio = N / (pk_[d] - 1);
        Poly y = poly_pow_mod(x, ratio, f, p);
        // evaluate f_d at y (coefficients of f_d are scalars)
        const Poly& fd = levels_[d].poly;
        Poly acc(k, 0);
        for (int i = (int)fd.size() - 1; i >= 0; --i) {
          acc = poly_mul_mod(acc, y, f, p);
          acc[0] = (std::uint8_t)((acc[0] + fd[i]) % p);
        }
        if (!poly_is_zero(acc)) { compat = false; break; }
      }
      if (!compat) continue;
      found = true;
      break;
    }
    if (!found) throw std::logic_error("FieldTower: no compatible polynomial");

    FieldLevel& L = levels_[k];
    L.k = k;
    L.poly = f;
    // generator g = x for k > 1; for k = 1 the scalar root of f
    L.expt.resize(N);
    L.dlog.assign(q, -1);
    Poly g(k, 0);
    if (k == 1)
      g[0] = (std::uint8_t)((p - f[0]) % p);
    else
      g[1] = 1;
    Poly cur(k, 0);
    cur[0] = 1;
    for (u64 i = 0; i < N; ++i) {
      fq_t packed = 0;
      for (int d = k - 1; d >= 0; --d) packed = packed * (fq_t)p + cur[d];
      L.expt[i] = packed;
      L.dlog[packed] = (std::int32_t)i;
      cur = poly_mul_mod(cur, g, f, p);
    }
    if (!poly_is_one(cur)) throw std::logic_error("FieldTower: generator order wrong");
  }
}

std::vector<std::uint8_t> FieldTower::coords(int k, fq_t a) const {
  std::vector<std::uint8_t> c(k);
  for (int i = 0; i < k; ++i) { c[i] = (std::uint8_t)(a % (fq_t)p_); a /= (fq_t)p_; }
  return c;
}

fq_t FieldTower::from_coords(int k, const std::vector<std::uint8_t>& c) const {
  fq_t a = 0;
  for (int i = k - 1; i >= 0; --i) a = a * (fq_t)p_ + (fq_t)(c[i] % p_);
  return a;
}

fq_t FieldTower::add(int k, fq_t a, fq_t b) const {
  fq_t out = 0, mul = 1;
  for (int i = 0; i < k; ++i) {
    out += mul * (fq_t)((a % (fq_t)p_ + b % (fq_t)p_) % (fq_t)p_);
    a /= (fq_t)p_; b /= (fq_t)p_;
    mul *= (fq_t)p_;
  }
  return out;
}

fq_t FieldTower::neg(int k, fq_t a) const {
  fq_t out = 0, mul = 1;
  for (int i = 0; i < k; ++i) {
    out += mul * (fq_t)(((fq_t)p_ - a % (fq_t)p_) % (fq_t)p_);
    a /= (fq_t)p_;
    mul *= (fq_t)p_;
  }
  return out;
}

fq_t FieldTower::mul(int k, fq_t a, fq_t b) const {
  if (a == 0 || b == 0) return 0;
  const FieldLevel& L = levels_[k];
  u64 N = pk_[k] - 1;
  return L.expt[((u64)L.dlog[a] + (u64)L.dlog[b]) % N];
}

fq_t FieldTower::inv(int k, fq_t a) const {
  if (a == 0) throw std::domain_error("FieldTower::inv: zero");
  const FieldLevel& L = levels_[k];
  u64 N = pk_[k] - 1;
  return L.expt[(N - (u64)L.dlog[a]) % N];
}

fq_t FieldTower::pow(int k, fq_t a, i64 e) const {
  u64 N = pk_[k] - 1;
  if (a == 0) {
    if (e <= 0) throw std::domain_error("FieldTower::pow: 0^(e<=0)");
    return 0;
  }
  i64 d = mod_pos((i64)((u64)levels_[k].dlog[a] % N) * mod_pos(e, (i64)N), (i64)N);
  return levels_[k].expt[(u64)d];
}

i64 FieldTower::dlog(int k, fq_t a) const {
  if (a == 0) throw std::domain_error("FieldTower::dlog: zero");
  return (i64)levels_[k].dlog[a];
}

fq_t FieldTower::exp_of(int k, i64 e) const {
  u64 N = pk_[k] - 1;
  return levels_[k].expt[(u64)mod_pos(e, (i64)N)];
}

fq_t FieldTower::scalar(int k, i64 c) const {
  i64 cc = mod_pos(c, p_);
  return (fq_t)cc;  // constant coordinate
}

fq_t FieldTower::embed(int kfrom, int kto, fq_t a) const {
  if (kfrom == kto) return a;
  if (kto % kfrom != 0) throw std::invalid_argument("embed: levels incompatible");
  if (a == 0) return 0;
  u64 ratio = (pk_[kto] - 1) / (pk_[kfrom] - 1);
  return levels_[kto].expt[((u64)levels_[kfrom].dlog[a] * ratio) % (pk_[kto] - 1)];
}

bool FieldTower::in_subfield(int kfrom, int kto, fq_t a) const {
  if (a == 0) return true;
  u64 ratio = (pk_[kto] - 1) / (pk_[kfrom] - 1);
  return (u64)levels_[kto].dlog[a] % ratio == 0;
}

fq_t FieldTower::project(int kto, int kfrom, fq_t a) const {
  if (a == 0) return 0;
  u64 ratio = (pk_[kto] - 1) / (pk_[kfrom] - 1);
  u64 d = (u64)levels_[kto].dlog[a];
  if (d % ratio != 0) throw std::domain_error("project: not in subfield");
  return levels_[kfrom].expt[(d / ratio) % (pk_[kfrom] - 1)];
}

u64 FieldTower::elem_order(int k, fq_t a) const {
  if (a == 0) throw std::domain_error("elem_order: zero");
  u64 N = pk_[k] - 1;
  u64 d = (u64)levels_[k].dlog[a];
  return N / std::gcd(N, d);
}

fq_t FieldTower::frobenius(int k, fq_t a, int base_k) const {
  if (a == 0) return 0;
  return pow(k, a, (i64)pk_[base_k]);
}

fq_t FieldTower::ell_prime_part(int k, fq_t a, u64 ell) const {
  if (a == 0) throw std::domain_error("ell_prime_part: zero");
  u64 ord = elem_order(k, a);
  u64 la = 1;
  while (ord % ell == 0) { ord /= ell; la *= ell; }
  // ord is now the ell'-part m of the order; pick b with la*b = 1 mod m.
  if (ord == 1) return 1;  // pure ell-power order
  u64 b = (u64)inv_mod((i64)(la % ord), (i64)ord);
  return pow(k, a, (i64)(la * b));
}

Cyclotomic FieldTower::theta(int k, fq_t alpha, fq_t x) const {
  if (alpha == 0 || x == 0) throw std::domain_error("theta: zero argument");
  u64 N = pk_[k] - 1;
  u64 e = (u64)levels_[k].dlog[alpha] * (u64)levels_[k].dlog[x] % N;
  return Cyclotomic::root((int)N, (i64)e);
}

}  // namespace atlas
