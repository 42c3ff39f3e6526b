#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace chordspan {

using Int = std::int64_t;
using U128 = unsigned __int128;

inline Int checked_add(Int a, Int b) {
  Int r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer addition overflowed");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer multiplication overflowed");
  return r;
}

inline Int checked_pow(Int base, Int exp) {
  if (base < 0 || exp < 0) throw std::invalid_argument("checked_pow: negative argument");
  Int acc = 1;
  for (Int i = 0; i < exp; ++i) acc = checked_mul(acc, base);
  return acc;
}

// Compares base^exp against target without ever overflowing.
// Returns -1, 0 or +1. All arguments must be nonnegative.
inline int cmp_pow(Int base, Int exp, Int target) {
  if (base < 0 || exp < 0 || target < 0) throw std::invalid_argument("cmp_pow: negative argument");
  Int acc = 1;
  for (Int i = 0; i < exp; ++i) {
    if (base != 0 && acc > target / base) return 1;
    acc *= base;
  }
  if (acc < target) return -1;
  return acc == target ? 0 : 1;
}

// Smallest b >= 1 with b^k >= n. Exact integer binary search; no
// floating-point rooting (an off-by-one in b would be fatal downstream).
inline Int ceil_root(Int n, Int k) {
  if (n < 1) throw std::invalid_argument("ceil_root: n must be positive");
  if (k < 2) throw std::invalid_argument("ceil_root: k must be at least 2");
  Int hi = 1;
  while (cmp_pow(hi, k, n) < 0) hi *= 2;  // hi^k < n implies hi < sqrt(n), doubling cannot overflow
  Int lo = hi == 1 ? 1 : hi / 2;
  while (lo < hi) {
    Int mid = lo + (hi - lo) / 2;
    if (cmp_pow(mid, k, n) >= 0)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

inline int cmp_pow_u128(U128 base, Int exp, U128 target) {
  U128 acc = 1;
  for (Int i = 0; i < exp; ++i) {
    if (base != 0 && acc > target / base) return 1;
    acc *= base;
  }
  if (acc < target) return -1;
  return acc == target ? 0 : 1;
}

// Largest r with r^k <= v.
inline U128 floor_root_u128(U128 v, Int k) {
  if (k < 1) throw std::invalid_argument("floor_root_u128: k must be positive");
  if (v == 0) return 0;
  U128 hi = 1;
  while (cmp_pow_u128(hi, k, v) <= 0) hi *= 2;  // first hi with hi^k > v
  U128 lo = hi / 2;
  while (lo + 1 < hi) {
    U128 mid = lo + (hi - lo) / 2;
    if (cmp_pow_u128(mid, k, v) <= 0)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

inline void internal_check(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("internal invariant violated: " + what);
}

}  // namespace chordspan
