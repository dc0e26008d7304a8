#pragma once
// Cesaro and logarithmic averages, the Phi kernel and the exact second-moment
// identity for divisor indicators.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pnt/exact.hpp"

namespace pnt {

using Complex = std::complex<double>;

/// A function given on a finite domain; nullopt marks "undefined here".
using FunctionTable = std::function<std::optional<Complex>(std::uint64_t)>;
using RationalFunction = std::function<std::optional<Rational>(std::uint64_t)>;

/// B together with a = sum of 1/q over B.
struct WeightedSet {
  std::vector<std::uint64_t> elements;  // strictly increasing, all >= 1
  Rational logweight_total;

  /// Sorts and validates `elements`; throws EmptySet / InvalidRange.
  static WeightedSet make(std::vector<std::uint64_t> elements);
};

/// [x] = {1, ..., floor(x)}.
std::vector<std::uint64_t> initial_segment(std::uint64_t x);

Complex cesaro_avg(const FunctionTable& f, std::span<const std::uint64_t> A);
Complex log_avg(const FunctionTable& f, std::span<const std::uint64_t> A);
Rational cesaro_avg_exact(const RationalFunction& f, std::span<const std::uint64_t> A);
Rational log_avg_exact(const RationalFunction& f, std::span<const std::uint64_t> A);

/// gcd(m, n) - 1.
std::uint64_t phi(std::uint64_t m, std::uint64_t n);

struct DeviationReport {
  std::uint64_t N = 0;
  std::vector<std::uint64_t> B;
  Rational a;                // logweight_total
  Rational lhs;              // (1/N) sum_{n<=N} |c(n) - a|^2, c(n) = #{q in B : q | n}
  Rational phi_double_sum;   // sum_{q,q'} Phi(q,q') / (q q')
  Rational difference;       // lhs - phi_double_sum
  Rational error_budget;     // 3 |B|^2 / N
  Rational averaged_lhs;     // lhs / a^2
  Rational averaged_rhs;     // phi_double_sum / a^2
  bool lcm_divides_N = false;
  bool within_budget = false;
};

/// Both sides of the identity in exact arithmetic. The floor errors satisfy
/// lhs - rhs = 2a E2 - E1 with 0 <= E1 < |B|^2/N and 0 <= E2 < |B|/N, hence
/// |lhs - rhs| < 2|B|^2/N <= 3|B|^2/N, and both vanish when lcm(B) | N.
DeviationReport tk_identity_check(const WeightedSet& B, std::uint64_t N,
                                  std::size_t precision_bits = kDefaultPrecisionBits);

/// Left side computed directly from c(n) over n = 1..N; O(N |B|). Used as an
/// independent cross-check of tk_identity_check at small N.
Rational tk_lhs_direct(const WeightedSet& B, std::uint64_t N);

struct TkAuditParams {
  std::uint64_t max_element = 300;
  std::size_t max_size = 30;
  std::uint64_t max_N = 100000;
};

struct TkAuditInstance {
  std::vector<std::uint64_t> B;
  std::uint64_t N = 0;
  Rational difference;
  Rational error_budget;
  double ratio = 0;  // |difference| / (|B|^2 / N)
  bool lcm_divides_N = false;
  bool within_budget = false;
  bool zero_when_required = true;
};

struct TkAuditReport {
  std::vector<TkAuditInstance> instances;
  double max_ratio = 0;
  std::size_t lcm_instances = 0;
  bool all_within = true;
  bool all_zero_when_lcm_divides = true;
};

/// Random (B, N) instances; every other instance draws B from the divisors of
/// N so the lcm | N case is exercised.
TkAuditReport tk_error_constant_audit(std::size_t trials, std::uint64_t seed, const TkAuditParams& params = {});

}  // namespace pnt
