#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "pnt/error.hpp"
#include "pnt/sieve.hpp"
#include "pnt/test_functions.hpp"
#include "pnt/theorem_checks.hpp"

using namespace pnt;

TEST_CASE("test functions") {
  const auto alt = TestFunction::parse("alt");
  CHECK(alt.integer_valued());
  CHECK(alt(3) == std::complex<double>(-1, 0));
  CHECK(TestFunction::parse("root:4")(1).imag() == doctest::Approx(1.0));
  CHECK(std::abs(TestFunction::parse("exp:sqrt2")(7)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(TestFunction::parse("bogus"), Error);
  CHECK_THROWS_AS(alt(TestFunction::kMaxArgument), Error);
  CHECK(default_test_family().size() == 7);
}

TEST_CASE("Omega histogram and shift discrepancy") {
  const auto h = omega_histogram(10);
  // 1 | 2 3 5 7 | 4 6 9 10 | 8
  CHECK(h.hist == std::vector<std::uint64_t>{1, 4, 4, 1});
  const auto d = shift_discrepancy(TestFunction::parse("alt"), h);
  REQUIRE(d.numerator.has_value());
  CHECK(*d.numerator == 0);  // L(10) = 0
  const auto h1000 = omega_histogram(1000);
  const auto d1000 = shift_discrepancy(TestFunction::parse("alt"), h1000);
  CHECK(*d1000.numerator == 28);  // -2 L(1000)
  CHECK(d1000.value == 28.0 / 1000);
}

TEST_CASE("Liouville trace and densities") {
  const auto rows = liouville_mean_trace({10, 100, 1000});
  CHECK(rows[0].L == 0);
  CHECK(rows[2].L == -14);
  CHECK(non_increasing_within(std::vector<double>{0.5, 0.9, 0.1}, 2.0));
  CHECK_FALSE(non_increasing_within(std::vector<double>{0.1, 0.3}, 2.0));
  const auto d = pillai_selberg_density(2, 1000);
  CHECK(d.sums_to_one);
  CHECK(static_cast<std::int64_t>(d.counts[0]) - static_cast<std::int64_t>(d.counts[1]) == -14);
  CHECK(pillai_selberg_density(1, 1000).densities[0] == 1);
}

TEST_CASE("Weyl sums") {
  const auto half = erdos_delange_weyl("1/2", {1000});
  CHECK(half[0].magnitude == doctest::Approx(14.0 / 1000));
  CHECK(erdos_delange_weyl("0", {1000})[0].magnitude == doctest::Approx(1.0));
}

TEST_CASE("Selberg formula") {
  const auto flags = prime_flags(10);
  const auto r = selberg_formula(10, flags);
  const double l2 = std::log(2.0), l3 = std::log(3.0), l5 = std::log(5.0), l7 = std::log(7.0);
  const double expect = 2 * l2 * l2 + 2 * l3 * l3 + l5 * l5 + l7 * l7 + 2 * l2 * l3 + 2 * l2 * l5;
  CHECK(static_cast<double>(r.lhs) == doctest::Approx(expect).epsilon(1e-14));
  const auto t = selberg_formula_trace({1000, 100'000});
  CHECK(t[1].ratio > t[0].ratio);
  CHECK(t[1].error_over_x < 5.0L);
}

TEST_CASE("transfer audit") {
  const auto B = WeightedSet::make({2, 3});
  const auto a = transfer_audit(B, TestFunction::parse("alt"), 10'000);
  CHECK(a.holds);
  CHECK(a.difference <= a.tight_bound + 1e-12);
  const auto one = transfer_audit(B, TestFunction::parse("one"), 10'000);
  CHECK(one.lhs == Complex(1.0));
  CHECK(one.rhs == Complex(1.0));
  CHECK_THROWS_AS(transfer_audit(WeightedSet::make({200}), TestFunction::parse("alt"), 1000), Error);
}

TEST_CASE("pairing audit") {
  const std::vector<BigInt> B{101, 103, 107};
  const auto same = pairing_transfer_audit(B, B, 1, 0.5, TestFunction::parse("alt"), 100'000);
  CHECK(same.difference == 0.0);
  CHECK(same.C == 6.0);
  const std::vector<BigInt> shorter{101};
  CHECK_THROWS_AS(pairing_transfer_audit(B, shorter, 1, 0.5, TestFunction::parse("alt"), 100'000), Error);
  CHECK_THROWS_AS(pairing_transfer_audit(B, B, 1, 0.5, TestFunction::parse("alt"), 100), Error);
}
