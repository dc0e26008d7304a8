#pragma once
// Chebyshev-type prime bounds: Legendre multiplicities, the exact binomial
// inequalities, beta(sigma), and the two base-8 window bounds.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pnt/sieve.hpp"

namespace pnt {

/// log(m!) for 0 <= m <= max, as compensated long double prefix sums of log k.
class LogFactorials {
 public:
  explicit LogFactorials(std::uint64_t max);
  std::uint64_t max() const noexcept { return table_.size() - 1; }
  long double log_factorial(std::uint64_t m) const;
  long double log_binom(std::uint64_t n, std::uint64_t k) const;

 private:
  std::vector<long double> table_;
};

/// Exponent of p in C(2n, n): sum over i of floor(2n/p^i) - 2 floor(n/p^i).
/// Throws CompositeModulus unless p is prime.
unsigned legendre_multiplicity(std::uint64_t p, std::uint64_t n);

struct BinomialAudit {
  std::uint64_t n = 0;
  long double log_binom = 0;
  std::vector<std::pair<std::uint64_t, unsigned>> multiplicities;  // nonzero exponents only
  long double log_from_multiplicities = 0;  // sum of e_p log p
  long double stirling_estimate = 0;        // 2n log 2 from m log m - m
  long double stirling_error = 0;           // log_binom - stirling_estimate
  bool within_nu = true;                    // e_p <= nu_p with p^nu_p <= 2n < p^(nu_p + 1)
  std::optional<bool> product_matches;      // prod p^e_p == C(2n, n), when checked
};

BinomialAudit binomial_audit(std::uint64_t n, const LogFactorials& lf, bool exact_product);

/// sigma log sigma - (sigma - 1) log(sigma - 1) for 1 < sigma <= 16.
long double beta(long double sigma);

/// Outcome of one inequality. `slack` is oriented so that holds <=> slack >= 0.
struct BoundVerdict {
  std::string kind;
  double x = 0;
  double param = 0;  // sigma or epsilon; 0 when unused
  std::uint64_t lower = 0;  // counted interval (lower, upper]
  std::uint64_t upper = 0;
  std::uint64_t count = 0;
  long double lhs = 0;
  long double bound_value = 0;
  long double slack = 0;
  bool holds = false;
  bool exact_tiebreak = false;  // decided by big-integer comparison
};

/// Prime counts and log factorials shared by the binomial sweeps.
class ChebyshevContext {
 public:
  explicit ChebyshevContext(std::uint64_t limit, const SieveConfig& config = {});
  std::uint64_t limit() const noexcept { return pi_.size() - 1; }
  std::uint64_t pi(std::uint64_t n) const;
  const LogFactorials& log_factorials() const noexcept { return lf_; }

 private:
  std::vector<std::uint32_t> pi_;
  LogFactorials lf_;
};

/// log C(2n, n) <= log(2n) pi(2n).
BoundVerdict lower_binomial_inequality(std::uint64_t n, const ChebyshevContext& ctx);

/// log C(floor(sigma x), x) >= log(x) (pi(sigma x) - pi(x)).
BoundVerdict upper_binomial_inequality(std::uint64_t x, double sigma, const ChebyshevContext& ctx);

/// Primes in (8^x, 8^(x+1)] against 8^x / x.
BoundVerdict window_lower_bound(double x, const SieveConfig& config = {});

/// Primes in (8^x, 8^(x+eps)] against sqrt(eps) 8^x / x, for 0 < eps <= eps_max.
BoundVerdict window_upper_bound(double x, double eps, const SieveConfig& config = {}, double eps_max = 0.5);

struct EpsThreshold {
  double eps = 0;
  std::optional<double> x_from;  // least grid x from which the bound holds onward
  std::vector<BoundVerdict> rows;
};

struct Calibration {
  std::vector<BoundVerdict> lower_rows;
  std::optional<double> x0;
  std::vector<EpsThreshold> upper;
};

Calibration calibrate_x0_eps0(std::vector<double> x_grid, std::vector<double> eps_grid, const SieveConfig& config = {});

struct StirlingAudit {
  std::uint64_t max_m = 0;
  long double max_abs_error = 0;
  long double c_st = 0;  // max over m of |error| / log m
  std::uint64_t violations = 0;  // m with |error| > 2 log m + 2
};

StirlingAudit stirling_audit(const LogFactorials& lf, std::uint64_t max_m);

/// (8^x, 8^(x+1)] = (1, 8^(x+1)] minus the pieces (8^x/2^(n+1), 8^x/2^n],
/// 0 <= n <= 3x, for integer x. Counts every piece and checks the identity.
struct DyadicPiece {
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
  std::uint64_t count = 0;
  long double sigma2_estimate = 0;  // 8^x / (2^(n+1) x)
};

struct DyadicDecomposition {
  unsigned x = 0;
  std::uint64_t total = 0;  // pi(8^(x+1))
  std::uint64_t pieces_sum = 0;
  std::uint64_t direct = 0;  // census of (8^x, 8^(x+1)]
  std::vector<DyadicPiece> pieces;
  bool identity_holds = false;
};

DyadicDecomposition dyadic_decomposition(unsigned x, const SieveConfig& config = {});

/// sqrt(eps) / beta(8^eps) for each eps.
std::vector<long double> sqrt_eps_beta_ratios(const std::vector<double>& eps);

}  // namespace pnt
