#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chordspan/construction.hpp"
#include "chordspan/intmath.hpp"

namespace chordspan {

// ceil(log2(n-1)), by integer comparison against powers of two.
inline Int log_lower(Vertex n) {
  if (n < 6) throw std::invalid_argument("log_lower requires n >= 6");
  Int t = 0;
  while (cmp_pow(2, t, n - 1) < 0) ++t;
  return t;
}

namespace detail {

// C(c,k) >= threshold, with overflow guarded by early saturation.
inline bool binom_at_least(Int c, Int k, U128 threshold) {
  if (c < k) return threshold == 0;
  U128 r = 1;
  const U128 huge = static_cast<U128>(1) << 100;
  for (Int i = 1; i <= k; ++i) {
    r = r * static_cast<U128>(c - k + i) / static_cast<U128>(i);
    if (r >= huge) return true;  // thresholds in use fit in 64 bits
  }
  return r >= threshold;
}

}  // namespace detail

// Surrogate counting bound: smallest c with C(c,k) * (k-1)! * 2^{2k} >= n-k+1.
// The factor deliberately over-counts chord orderings, orientations and arc
// choices of a cycle through exactly k chords, so any satisfying chord set
// must be at least this large. Weaker than the sharp bound; labeled
// "surrogate" wherever it is printed.
inline Int counting_lower(Vertex n, Int k) {
  if (n < 6) throw std::invalid_argument("counting_lower requires n >= 6");
  if (k < 2) throw std::invalid_argument("counting_lower requires k >= 2");
  U128 factor = 1;
  for (Int i = 2; i < k; ++i) factor *= static_cast<U128>(i);  // (k-1)!
  for (Int i = 0; i < 2 * k; ++i) factor *= 2;                 // 2^{2k}
  const U128 need = static_cast<U128>(n - k + 1);
  const U128 thr = (need + factor - 1) / factor;  // C(c,k) >= ceil(need / factor)
  Int hi = k;
  while (!detail::binom_at_least(hi, k, thr)) hi = checked_mul(hi, 2);
  Int lo = k;
  while (lo < hi) {
    Int mid = lo + (hi - lo) / 2;
    if (detail::binom_at_least(mid, k, thr))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

// k * ceil(n^{1/k}) + k^2.
inline Int theorem2_upper(Vertex n, Int k) {
  if (k < 2) throw std::invalid_argument("theorem2_upper requires k >= 2");
  if (cmp_pow(k + 2, k, n) > 0) throw std::domain_error("theorem2_upper requires n >= (k+2)^k");
  return checked_add(checked_mul(k, ceil_root(n, k)), checked_mul(k, k));
}

// numerator / n^{1/k} truncated to four decimal places, computed entirely
// in 128-bit integer arithmetic.
inline std::string root_ratio(Int numerator, Vertex n, Int k) {
  if (numerator < 0 || n < 1 || k < 1) throw std::invalid_argument("root_ratio: bad arguments");
  U128 scaled = static_cast<U128>(n);
  for (Int i = 0; i < 4 * k; ++i) scaled *= 10;        // n * 10^{4k}
  const U128 root = floor_root_u128(scaled, k);        // floor(10^4 * n^{1/k})
  const U128 val = static_cast<U128>(numerator) * 100000000u / root;
  const auto ip = static_cast<unsigned long long>(val / 10000);
  const auto fp = static_cast<unsigned long long>(val % 10000);
  std::string frac = std::to_string(fp);
  return std::to_string(ip) + "." + std::string(4 - frac.size(), '0') + frac;
}

struct BoundsQuery {
  Vertex n = 0;
  Int k = 0;
  std::optional<Int> exact;  // from exhaustive search, when available
};

struct BoundsRow {
  Vertex n = 0;
  Int k = 0;
  Int log_lo = 0;
  Int counting_lo = 0;
  std::optional<Int> upper;        // needs n >= (k+2)^k
  std::optional<Int> constructed;  // chord count of the built set
  std::optional<Int> exact;
  std::string ratio;  // constructed / n^{1/k}, 4 decimals
  std::vector<std::string> flags;

  bool ok() const { return flags.empty(); }
};

inline BoundsRow bounds_row(const BoundsQuery& query) {
  BoundsRow row;
  row.n = query.n;
  row.k = query.k;
  row.log_lo = log_lower(query.n);
  row.counting_lo = counting_lower(query.n, query.k);
  row.exact = query.exact;
  if (cmp_pow(query.k + 2, query.k, query.n) <= 0) {
    row.upper = theorem2_upper(query.n, query.k);
    row.constructed = construct(query.n, query.k).chord_count();
    row.ratio = root_ratio(*row.constructed, query.n, query.k);
  }
  if (row.constructed) {
    if (row.log_lo > *row.constructed) row.flags.push_back("log_lower exceeds constructed");
    if (row.counting_lo > *row.constructed) row.flags.push_back("counting_lower exceeds constructed");
    if (row.upper && *row.constructed > *row.upper + 1) row.flags.push_back("constructed exceeds budget+1");
  }
  if (row.exact) {
    Int floor = std::max(row.log_lo, row.counting_lo);
    if (*row.exact < floor) row.flags.push_back("exact below lower bounds");
    if (row.constructed && *row.exact > *row.constructed) row.flags.push_back("exact above constructed");
  }
  return row;
}

inline std::vector<BoundsRow> bounds_table(std::span<const BoundsQuery> queries) {
  std::vector<BoundsRow> rows;
  rows.reserve(queries.size());
  for (const BoundsQuery& q : queries) rows.push_back(bounds_row(q));
  return rows;
}

}  // namespace chordspan
