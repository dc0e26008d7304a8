#include <doctest.h>

#include <cmath>

#include "pnt/chebyshev.hpp"
#include "pnt/error.hpp"

using namespace pnt;

TEST_CASE("Legendre multiplicities of C(2n, n)") {
  CHECK(legendre_multiplicity(2, 5) == 2);
  CHECK(legendre_multiplicity(7, 5) == 1);
  CHECK(legendre_multiplicity(11, 5) == 0);
  try {
    legendre_multiplicity(4, 5);
    FAIL("expected CompositeModulus");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CompositeModulus);
  }
  const LogFactorials lf(4000);
  for (std::uint64_t n = 1; n <= 300; ++n) {
    const auto a = binomial_audit(n, lf, true);
    REQUIRE(a.product_matches.value_or(false));
    REQUIRE(a.within_nu);
  }
}

TEST_CASE("binomial inequalities on a small range") {
  const ChebyshevContext ctx(80'000, {});
  for (std::uint64_t n = 1; n <= 10'000; ++n) REQUIRE(lower_binomial_inequality(n, ctx).holds);
  for (double s : {1.5, 2.0}) {
    for (std::uint64_t x = 1; x <= 10'000; ++x) REQUIRE(upper_binomial_inequality(x, s, ctx).holds);
  }
  // Primes in (x, (sigma - 1) x] need not divide C(sigma x, x) once sigma > 2.
  CHECK_FALSE(upper_binomial_inequality(21, 4.0, ctx).holds);
  CHECK_FALSE(upper_binomial_inequality(1000, 8.0, ctx).holds);
  CHECK(upper_binomial_inequality(4, 2.0, ctx).slack > 0);
}

TEST_CASE("beta") {
  CHECK(static_cast<double>(beta(2.0L)) == doctest::Approx(2 * std::log(2.0)));
  CHECK_THROWS_AS(beta(1.0L), Error);
  CHECK(beta(1.5L) < beta(2.0L));
  const auto r = sqrt_eps_beta_ratios({1e-1, 1e-2, 1e-3});
  CHECK(r[0] < r[1]);
  CHECK(r[1] < r[2]);
}

TEST_CASE("prime window bounds at moderate x") {
  CHECK(window_lower_bound(4).holds);
  CHECK(window_lower_bound(6).holds);
  CHECK(window_upper_bound(6, 0.1).holds);
  CHECK_THROWS_AS(window_upper_bound(6, 0.9), Error);
}

TEST_CASE("Stirling and dyadic decomposition") {
  const LogFactorials lf(100'000);
  const auto s = stirling_audit(lf, 100'000);
  CHECK(s.violations == 0);
  CHECK(s.c_st > 0);
  for (unsigned x = 1; x <= 4; ++x) CHECK(dyadic_decomposition(x).identity_holds);
}
