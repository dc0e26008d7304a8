#include <doctest.h>

#include <filesystem>

#include "pnt/error.hpp"
#include "pnt/primality.hpp"
#include "pnt/sieve.hpp"

using namespace pnt;

TEST_CASE("primality helpers") {
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(1'000'000'007));
  CHECK_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(big_omega(1) == 0);
  CHECK(big_omega(360) == 6);
  CHECK(big_omega(1ull << 40) == 40);
  CHECK(primes_up_to(30).size() == 10);
  CHECK(isqrt(99) == 9);
  CHECK(isqrt(UINT64_MAX) == 4294967295ull);
}

TEST_CASE("sieve matches factorization") {
  const auto t = sieve_range(1, 100'001);
  for (std::uint64_t n = 1; n <= 100'000; ++n) REQUIRE(t.omega_at(n) == big_omega(n));
  const auto off = sieve_range(999'000'000'000ull, 999'000'010'000ull);
  for (std::uint64_t n = off.lo(); n < off.hi(); n += 37) REQUIRE(off.omega_at(n) == big_omega(n));
}

TEST_CASE("sieve is independent of segment size and worker count") {
  const auto ref = sieve_range(5, 300'000);
  for (unsigned w : {1u, 3u, 8u}) {
    for (std::size_t seg : {std::size_t{97}, std::size_t{4096}, std::size_t{1} << 20}) {
      SieveConfig c;
      c.workers = w;
      c.segment_size = seg;
      CHECK(sieve_range(5, 300'000, c) == ref);
    }
  }
}

TEST_CASE("sieve guards") {
  CHECK_THROWS_AS(sieve_range(10, 10), Error);
  SieveConfig small;
  small.budget = 1000;
  try {
    sieve_range(1, 1'000'000, small);
    FAIL("expected a budget error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RangeTooLarge);
  }
}

TEST_CASE("Liouville") {
  const auto t = sieve_range(1, 100);
  CHECK(liouville(1, t) == 1);
  CHECK(liouville(12, t) == -1);
  CHECK(liouville_summatory(1) == 1);
  CHECK(liouville_summatory(10) == 0);
  CHECK(liouville_summatory(1000) == -14);
  CHECK(liouville_summatory(1'000'000) == -530);
}

TEST_CASE("interval census") {
  CHECK(census(1, 100).count == 25);
  CHECK(census(64, 512).count == 79);
  CHECK(census_int(1, 10'000).count == 1229);
  const auto c = census_int(100, 130, true);
  CHECK(*c.primes == std::vector<std::uint64_t>{101, 103, 107, 109, 113, 127});
  CHECK(census_pow8(1, 2).count == census(8, 64).count);
  try {
    census(2, 2);
    FAIL("expected InvalidRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidRange);
  }
  const auto pi = prime_pi_table(100);
  CHECK(pi[100] == 25);
  CHECK(prime_flags(10)[7] == 1);
}

TEST_CASE("table cache round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "pnt_cache_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto t = sieve_range(50, 5000);
  save_table(t, (dir / "t.bin").string());
  CHECK(load_table((dir / "t.bin").string()) == t);
  const auto a = cached_sieve_range(1, 20'000, {}, dir.string());
  const auto b = cached_sieve_range(1, 20'000, {}, dir.string());
  CHECK(a == b);
  CHECK(a == sieve_range(1, 20'000));
  std::filesystem::remove_all(dir);
}
