#pragma once

#include <cstdint>
#include <stdexcept>

namespace lamod {

using i64 = std::int64_t;

// All counting arithmetic is exact int64; anything that would leave the
// representable range throws instead of wrapping.
inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("exact integer overflow (add)");
  return r;
}

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("exact integer overflow (mul)");
  return r;
}

inline i64 checked_pow(i64 base, int exp) {
  if (exp < 0) throw std::invalid_argument("checked_pow: negative exponent");
  i64 r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

inline i64 binomial(i64 n, i64 k) {
  if (k < 0 || n < 0 || k > n) return 0;
  i64 r = 1;
  for (i64 i = 1; i <= k; ++i) r = checked_mul(r, n - k + i) / i;
  return r;
}

inline bool is_prime(i64 p) {
  if (p < 2) return false;
  for (i64 d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Least non-negative representative.
inline i64 mod_reduce(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

// Inverse of a modulo m (extended gcd); throws if gcd(a, m) != 1.
inline i64 mod_inverse(i64 a, i64 m) {
  a = mod_reduce(a, m);
  i64 r0 = m, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    i64 q = r0 / r1;
    i64 r2 = r0 - q * r1;
    i64 s2 = s0 - q * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  if (r0 != 1) throw std::invalid_argument("mod_inverse: not a unit");
  return mod_reduce(s0, m);
}

// p-adic valuation of x != 0.
inline int valuation(i64 x, i64 p) {
  if (x == 0) throw std::invalid_argument("valuation of zero");
  int v = 0;
  while (x % p == 0) { x /= p; ++v; }
  return v;
}

}  // namespace lamod
