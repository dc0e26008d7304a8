#include <doctest.h>

#include <cmath>

#include "pnt/construction.hpp"
#include "pnt/error.hpp"
#include "pnt/rng.hpp"
#include "pnt/universe.hpp"

using namespace pnt;

namespace {

FiniteMemberSet hand_set() {
  std::vector<double> m;
  for (int i = 1; i <= 10; ++i) {
    m.push_back(i + 0.2);
    m.push_back(i + 0.9);
  }
  return FiniteMemberSet(m);
}

SyntheticUniverse synthetic() { return SyntheticUniverse(UniverseParams{}, SyntheticParams{}); }

}  // namespace

TEST_CASE("sum witness hand example") {
  const auto X = hand_set();
  const auto w = solve_sums(X, 0.9, 4, {1, 1, 1, 1});
  const std::vector<double> u{7.6, 6.9, 6.2, 5.5, 4.8};
  REQUIRE(w.u.size() == u.size());
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(w.u[i] == doctest::Approx(u[i]).epsilon(1e-12));
  CHECK(w.z == 4.9);
  CHECK(w.i0 == 3);
  CHECK(w.zs == std::vector<double>{1.2, 1.2, 1.2, 1.9});
  CHECK(validate_sum_witness(X, w).ok());
  CHECK_THROWS_AS(solve_sums(X, 0.5, 4, {1, 1, 1, 1}), Error);
  CHECK(min_k_for(0.5) == 32);
}

TEST_CASE("validator rejects a tampered witness") {
  const auto X = hand_set();
  auto w = solve_sums(X, 0.9, 4, {1, 1, 1, 1});
  w.zs[0] = 1.5;  // not a member
  CHECK_FALSE(validate_sum_witness(X, w).membership);
  auto w2 = solve_sums(X, 0.9, 4, {1, 1, 1, 1});
  w2.z += 0.5;
  CHECK_FALSE(validate_sum_witness(X, w2).ok());
}

TEST_CASE("synthetic universe window bounds") {
  const auto u = synthetic();
  for (const auto& row : verify_window_hypotheses(u, 10, 0.5, {0.1, 0.25})) {
    CAPTURE(row.x);
    CAPTURE(row.eps);
    CHECK(row.holds);
  }
  CHECK(u.counting_function(u.norm_of(1000)) >= 1000);
}

TEST_CASE("window witnesses") {
  const auto u = synthetic();
  for (std::int64_t n = 2; n <= 12; ++n) {
    const auto w = find_windows(u, n, 0.2, 0.05);
    CHECK(w.x >= n);
    CHECK(w.y < n + 1);
    CHECK(w.y - w.x < 0.2);
    CHECK(w.y - w.x > std::pow(0.2, 4));
    CHECK(w.x_count >= block_size(w.D_num, n));
    CHECK(w.y_count >= block_size(w.D_num, n));
  }
  CHECK_THROWS_AS(find_windows(u, 3, 0.5, 0.05), Error);
  RealUniverse real(UniverseParams{}, SieveConfig{});
  const auto w = find_windows(real, 6, 0.2, 0.05);
  CHECK(real.count(w.x, w.x + 0.05) == w.x_count);
}

TEST_CASE("phi log-average") {
  const std::vector<std::uint64_t> primes{2, 3, 5};
  const auto p = check_phi_logavg(std::span<const std::uint64_t>(primes), Rational(1, 2));
  CHECK(p.value == phi_logavg_direct(primes));
  CHECK(p.reciprocal_sum == Rational(31, 30));
  const std::vector<std::uint64_t> single{11};
  CHECK(check_phi_logavg(std::span<const std::uint64_t>(single), Rational(1)).value == 10);
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    std::vector<std::uint64_t> B;
    while (B.size() < 12) {
      const auto v = rng.uniform(1, 200);
      if (std::find(B.begin(), B.end(), v) == B.end()) B.push_back(v);
    }
    CHECK(check_phi_logavg(std::span<const std::uint64_t>(B), Rational(1)).value == phi_logavg_direct(B));
  }
  const std::vector<std::uint64_t> dup{3, 3};
  CHECK_THROWS_AS(check_phi_logavg(std::span<const std::uint64_t>(dup), Rational(1)), Error);
}

TEST_CASE("strict construction reports the infeasible scale") {
  const auto u = synthetic();
  BuildParams p;
  const auto out = build_set_pair(u, p);
  CHECK(out.status == BuildStatus::InfeasibleScale);
  CHECK_FALSE(out.pair.has_value());
  CHECK(out.plan.k0 == min_k_for(out.plan.eps));
  CHECK(out.plan.required_exponent > u.max_exponent());
  CHECK_FALSE(out.plan.diagnosis.empty());
  CHECK(choose_eps(u, 0.5) == out.plan.eps);
}

TEST_CASE("relaxed construction satisfies (a), (b) and the B1 bound") {
  const auto u = synthetic();
  BuildParams p;
  p.relaxed = true;
  p.eps = 0.05;
  p.k = 2;
  p.N_target = 0.125;
  const auto out = build_set_pair(u, p);
  REQUIRE(out.status == BuildStatus::Built);
  const auto& s = *out.pair;
  CHECK(s.prop_a);
  CHECK(s.prop_b);
  CHECK(s.disjoint);
  CHECK(s.B1_bound_holds);
  REQUIRE(s.B1.size() == s.B2.size());
  for (std::size_t j = 0; j < s.B1.size(); ++j) {
    CHECK(s.B1[j].omega() == 1);
    CHECK(s.B2[j].omega() == 2);
    const Rational r = Rational(s.B2[j].norm) / Rational(s.B1[j].norm);
    CHECK(r >= Rational(1, 2));
    CHECK(r <= Rational(3, 2));
  }
  const WindowMemberSet X(u, s.windows);
  for (const auto& t : s.tuples) CHECK(validate_sum_witness(X, t.witness).ok());
}
