#include <doctest.h>

#include "pnt/error.hpp"
#include "pnt/exact.hpp"
#include "pnt/pow8.hpp"

using namespace pnt;

TEST_CASE("exact helpers") {
  CHECK(make_rational(6, 4) == Rational(3, 2));
  CHECK_THROWS_AS(make_rational(1, 0), Error);
  const std::vector<std::uint64_t> d{2, 3, 6};
  CHECK(sum_reciprocals(std::span<const std::uint64_t>(d)) == 1);
  CHECK(from_double(0.375) == Rational(3, 8));
  CHECK(to_double(Rational(1, 3)) == doctest::Approx(1.0 / 3));
  CHECK(to_string(make_rational(5, 10)) == "1/2");
  CHECK(to_string(Rational(-3, 7)) == "-3/7");
  CHECK(bit_length(BigInt(255)) == 8);
  CHECK(to_big(static_cast<unsigned __int128>(1) << 100) == BigInt("1267650600228229401496703205376"));
}

TEST_CASE("powers of eight") {
  CHECK(floor_pow8(0) == 1);
  CHECK(floor_pow8(1) == 8);
  CHECK(floor_pow8(2) == 64);
  CHECK(floor_pow8(0.5) == 2);  // 8^(1/2) = 2.828...
  CHECK(floor_pow8(20) == 1152921504606846976ull);
  CHECK(log8(512) == doctest::Approx(3.0));
}
