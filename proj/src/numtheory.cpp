#include "hecke_atlas/numtheory.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace atlas {

i64 gcd_i64(i64 a, i64 b) { return std::gcd(a, b); }
i64 lcm_i64(i64 a, i64 b) { return std::lcm(a, b); }

i64 mod_pos(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<u64, int>> factorize_u64(u64 n) {
  std::vector<std::pair<u64, int>> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) { n /= d; ++e; }
      out.push_back({d, e});
    }
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> out;
  for (auto& [p, e] : factorize_u64(n)) out.push_back(p);
  return out;
}

std::vector<u64> divisors_u64(u64 n) {
  std::vector<u64> out{1};
  for (auto& [p, e] : factorize_u64(n)) {
    size_t sz = out.size();
    u64 pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 euler_phi(u64 n) {
  u64 phi = n;
  for (auto& [p, e] : factorize_u64(n)) phi = phi / p * (p - 1);
  return phi;
}

i64 inv_mod(i64 a, i64 m) {
  i64 g = m, x = 0, x1 = 1, a1 = mod_pos(a, m);
  while (a1 != 0) {
    i64 q = g / a1;
    g -= q * a1; std::swap(g, a1);
    x -= q * x1; std::swap(x, x1);
  }
  if (g != 1) throw std::invalid_argument("inv_mod: not coprime");
  return mod_pos(x, m);
}

u64 pow_mod(u64 base, u64 exp, u64 mod) {
  unsigned __int128 r = 1, b = base % mod;
  while (exp) {
    if (exp & 1) r = r * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return (u64)r;
}

namespace {

// Exact division of integer polynomials, ascending coefficients.
std::vector<mpz_class> poly_divide_exact(const std::vector<mpz_class>& num,
                                         const std::vector<mpz_class>& den) {
  std::vector<mpz_class> rem = num;
  std::vector<mpz_class> quo(num.size() - den.size() + 1, 0);
  for (int k = (int)quo.size() - 1; k >= 0; --k) {
    mpz_class c = rem[k + den.size() - 1] / den.back();
    quo[k] = c;
    for (size_t j = 0; j < den.size(); ++j) rem[k + j] -= c * den[j];
  }
  for (auto& r : rem)
    if (r != 0) throw std::logic_error("poly_divide_exact: nonzero remainder");
  return quo;
}

}  // namespace

const std::vector<mpz_class>& cyclotomic_poly(int m) {
  static std::map<int, std::vector<mpz_class>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;

  // x^m - 1 divided by the product of Phi_d for proper divisors d.
  std::vector<mpz_class> num(m + 1, 0);
  num[0] = -1; num[m] = 1;
  for (u64 d : divisors_u64((u64)m)) {
    if ((int)d == m) continue;
    // recursive fill without re-locking
    if (!cache.count((int)d)) {
      std::vector<mpz_class> nd(d + 1, 0);
      nd[0] = -1; nd[d] = 1;
      for (u64 e : divisors_u64(d)) {
        if (e == d) continue;
        nd = poly_divide_exact(nd, cache.at((int)e));
      }
      cache[(int)d] = nd;
    }
    num = poly_divide_exact(num, cache.at((int)d));
  }
  cache[m] = std::move(num);
  return cache.at(m);
}

}  // namespace atlas
