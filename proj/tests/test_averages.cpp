#include <doctest.h>

#include "pnt/averages.hpp"
#include "pnt/error.hpp"

using namespace pnt;

TEST_CASE("averages over finite sets") {
  const std::vector<std::uint64_t> A{1, 2, 3, 4};
  const RationalFunction id = [](std::uint64_t n) { return std::optional<Rational>(Rational(to_big(n))); };
  CHECK(cesaro_avg_exact(id, A) == Rational(5, 2));
  // (1 + 1 + 1 + 1) / (1 + 1/2 + 1/3 + 1/4)
  CHECK(log_avg_exact(id, A) == Rational(4) / Rational(25, 12));
  CHECK(initial_segment(3) == std::vector<std::uint64_t>{1, 2, 3});
  const FunctionTable undefined = [](std::uint64_t) { return std::optional<Complex>(); };
  try {
    cesaro_avg(undefined, A);
    FAIL("expected UndefinedValue");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UndefinedValue);
  }
  CHECK_THROWS_AS(cesaro_avg(undefined, std::span<const std::uint64_t>()), Error);
  CHECK(phi(6, 4) == 1);
  CHECK(phi(7, 5) == 0);
}

TEST_CASE("weighted set validation") {
  CHECK_THROWS_AS(WeightedSet::make({}), Error);
  CHECK_THROWS_AS(WeightedSet::make({0, 2}), Error);
  const auto B = WeightedSet::make({3, 2});
  CHECK(B.elements == std::vector<std::uint64_t>{2, 3});
  CHECK(B.logweight_total == Rational(5, 6));
}

TEST_CASE("TK identity examples") {
  const auto r = tk_identity_check(WeightedSet::make({2, 3}), 6);
  CHECK(r.lhs == Rational(17, 36));
  CHECK(r.phi_double_sum == Rational(17, 36));
  CHECK(r.difference == 0);
  CHECK(r.lcm_divides_N);

  const auto r2 = tk_identity_check(WeightedSet::make({2, 3, 5}), 100'000);
  CHECK(abs(r2.difference) <= Rational(27, 100'000));
  CHECK(r2.within_budget);

  CHECK(tk_identity_check(WeightedSet::make({7}), 70).difference == 0);
}

TEST_CASE("TK lhs against the direct expansion") {
  for (std::uint64_t N : {1u, 2u, 5u, 30u, 97u, 360u}) {
    for (const auto& set : {std::vector<std::uint64_t>{2}, std::vector<std::uint64_t>{1, 4, 6},
                            std::vector<std::uint64_t>{3, 5, 9, 15, 45}}) {
      const auto B = WeightedSet::make(set);
      CHECK(tk_identity_check(B, N).lhs == tk_lhs_direct(B, N));
    }
  }
}

TEST_CASE("TK audit is deterministic and within budget") {
  const auto a = tk_error_constant_audit(40, 7);
  const auto b = tk_error_constant_audit(40, 7);
  REQUIRE(a.instances.size() == 40);
  CHECK(a.all_within);
  CHECK(a.all_zero_when_lcm_divides);
  CHECK(a.max_ratio == b.max_ratio);
  for (std::size_t i = 0; i < a.instances.size(); ++i) CHECK(a.instances[i].difference == b.instances[i].difference);
}
