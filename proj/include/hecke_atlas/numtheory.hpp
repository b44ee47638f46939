#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace atlas {

using i64 = long long;
using u64 = unsigned long long;

// Raised when an enumeration would exceed its configured budget.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

i64 gcd_i64(i64 a, i64 b);
i64 lcm_i64(i64 a, i64 b);
i64 mod_pos(i64 a, i64 m);

bool is_prime_u64(u64 n);
std::vector<std::pair<u64, int>> factorize_u64(u64 n);
std::vector<u64> prime_divisors(u64 n);
std::vector<u64> divisors_u64(u64 n);
u64 euler_phi(u64 n);

// Inverse of a mod m; requires gcd(a, m) = 1.
i64 inv_mod(i64 a, i64 m);
u64 pow_mod(u64 base, u64 exp, u64 mod);

// Coefficients of the m-th cyclotomic polynomial, ascending degree,
// length phi(m) + 1, leading coefficient 1.
const std::vector<mpz_class>& cyclotomic_poly(int m);

}  // namespace atlas
