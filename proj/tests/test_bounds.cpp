#include <catch2/catch_amalgamated.hpp>
#include <iostream>

#include <chordspan/bounds.hpp>

using namespace chordspan;

namespace {

// Literal restatement of the counting inequality, scanned linearly.
Int counting_lower_scan(Int n, Int k) {
  auto binom = [](Int c, Int k2) {
    U128 r = 1;
    for (Int i = 1; i <= k2; ++i) r = r * static_cast<U128>(c - k2 + i) / static_cast<U128>(i);
    return r;
  };
  U128 factor = 1;
  for (Int i = 2; i < k; ++i) factor *= static_cast<U128>(i);
  for (Int i = 0; i < 2 * k; ++i) factor *= 2;
  for (Int c = k;; ++c)
    if (binom(c, k) * factor >= static_cast<U128>(n - k + 1)) return c;
}

}  // namespace

TEST_CASE("log_lower") {
  REQUIRE(log_lower(17) == 4);
  REQUIRE(log_lower(6) == 3);
  REQUIRE(log_lower(1'000'000) == 20);
  REQUIRE_THROWS_AS(log_lower(5), std::invalid_argument);
}

TEST_CASE("counting_lower evaluates the surrogate inequality exactly") {
  REQUIRE(counting_lower(17, 2) == 2);  // C(2,2) * 16 = 16 >= 16
  REQUIRE(counting_lower(1'000'000, 2) == counting_lower_scan(1'000'000, 2));
  for (Int k = 2; k <= 5; ++k)
    for (Vertex n : {6, 50, 1000, 12345, 1'000'000})
      REQUIRE(counting_lower(n, k) == counting_lower_scan(n, k));
}

TEST_CASE("counting_lower is monotone nondecreasing in n") {
  for (Int k = 2; k <= 4; ++k) {
    Int prev = counting_lower(6, k);
    for (Vertex n = 7; n <= 3000; ++n) {
      Int cur = counting_lower(n, k);
      REQUIRE(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("theorem2_upper") {
  REQUIRE(theorem2_upper(16, 2) == 12);
  REQUIRE(theorem2_upper(256, 2) == 36);
  for (Int k = 2; k <= 5; ++k)
    REQUIRE(theorem2_upper(checked_pow(k + 2, k), k) == k * (k + 2) + k * k);
  REQUIRE_THROWS_AS(theorem2_upper(15, 2), std::domain_error);
}

TEST_CASE("root_ratio is fixed-point and deterministic") {
  REQUIRE(root_ratio(9, 16, 2) == "2.2500");
  REQUIRE(root_ratio(32, 256, 2) == "2.0000");
  REQUIRE(root_ratio(0, 100, 2) == "0.0000");
  REQUIRE(root_ratio(7, 2, 2) == root_ratio(7, 2, 2));
}

TEST_CASE("bounds rows hold the sandwich invariants") {
  BoundsRow r16 = bounds_row({16, 2, std::nullopt});
  REQUIRE(r16.log_lo == 4);
  REQUIRE(r16.counting_lo <= *r16.constructed);
  REQUIRE(r16.log_lo <= *r16.constructed);
  REQUIRE(*r16.constructed == 9);
  REQUIRE(*r16.upper == 12);
  REQUIRE(r16.ratio == "2.2500");
  REQUIRE(r16.ok());

  BoundsRow r6 = bounds_row({6, 2, 3});  // exact from exhaustive search
  REQUIRE_FALSE(r6.constructed.has_value());
  REQUIRE(r6.exact == 3);
  REQUIRE(*r6.exact >= r6.log_lo);
  REQUIRE(r6.ok());

  REQUIRE(bounds_table({}).empty());

  std::vector<BoundsQuery> queries{{16, 2, std::nullopt}, {256, 2, std::nullopt}, {65536, 2, std::nullopt}};
  auto rows = bounds_table(queries);
  REQUIRE(rows.size() == 3);
  for (const BoundsRow& r : rows) {
    REQUIRE(r.ok());
    REQUIRE(r.log_lo <= *r.constructed);
    REQUIRE(r.counting_lo <= *r.constructed);
    REQUIRE(*r.constructed <= *r.upper + 1);
  }
}

TEST_CASE("surrogate bound growth ratio stays bounded (reported, not asserted)") {
  std::cout << "counting_lower(n,k) / n^(1/k):\n";
  for (Int k = 2; k <= 3; ++k)
    for (Vertex n : {100, 10'000, 1'000'000, 100'000'000})
      std::cout << "  n=" << n << " k=" << k << " -> "
                << root_ratio(counting_lower(n, k), n, k) << "\n";
}
