#pragma once
// Desk-scale checks of the Omega shift invariance and its corollaries, Selberg's
// formula and the averaging transfers.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pnt/averages.hpp"
#include "pnt/construction.hpp"
#include "pnt/sieve.hpp"
#include "pnt/test_functions.hpp"

namespace pnt {

/// hist[v] = #{n <= N : Omega(n) = v}.
struct OmegaHistogram {
  std::uint64_t N = 0;
  std::vector<std::uint64_t> hist;
};

OmegaHistogram omega_histogram(std::uint64_t N, const SieveConfig& config = {});
/// Histogram of Omega over [1, N] read from a table that covers it.
OmegaHistogram omega_histogram(const ArithmeticTable& table, std::uint64_t N);

/// sum over n <= N of g(Omega(n) + shift), from the histogram.
Complex omega_sum(const OmegaHistogram& h, const TestFunction& g, unsigned shift = 0);

struct ShiftDiscrepancy {
  std::string f_id;
  std::uint64_t N = 0;
  double value = 0;  // |E f(Omega + 1) - E f(Omega)|
  double sup = 0;
  /// For integer-valued f: the exact integer sum of f(Omega(n)+1) - f(Omega(n)).
  std::optional<std::int64_t> numerator;
};

ShiftDiscrepancy shift_discrepancy(const TestFunction& f, std::uint64_t N, const SieveConfig& config = {});
ShiftDiscrepancy shift_discrepancy(const TestFunction& f, const OmegaHistogram& h);

struct MeanRow {
  std::uint64_t N = 0;
  std::int64_t L = 0;
  double mean = 0;  // L(N) / N
};

std::vector<MeanRow> liouville_mean_trace(const std::vector<std::uint64_t>& N_grid, const SieveConfig& config = {});

/// True when |v[i+1]| <= slack |v[i]| for every i.
bool non_increasing_within(std::span<const double> values, double slack = 2.0);

struct DensityReport {
  unsigned m = 0;
  std::uint64_t N = 0;
  std::vector<std::uint64_t> counts;  // n <= N with Omega(n) = r mod m
  std::vector<Rational> densities;
  bool sums_to_one = false;
  double max_deviation = 0;  // max |density - 1/m|
};

DensityReport pillai_selberg_density(unsigned m, std::uint64_t N, const SieveConfig& config = {});
DensityReport pillai_selberg_density(unsigned m, const OmegaHistogram& h);

struct WeylRow {
  std::uint64_t N = 0;
  double magnitude = 0;  // |E e(alpha Omega(n))|
};

/// `alpha` uses the exp: syntax of TestFunction (p/q, integer, 30-digit decimal, sqrt2, golden).
std::vector<WeylRow> erdos_delange_weyl(const std::string& alpha, const std::vector<std::uint64_t>& N_grid,
                                        const SieveConfig& config = {});

struct SelbergRow {
  std::uint64_t x = 0;
  long double lhs = 0;   // sum log^2 p + sum over ordered pq <= x of log p log q
  long double main = 0;  // 2 x log x
  long double ratio = 0;
  long double error_over_x = 0;  // |lhs - main| / x
};

SelbergRow selberg_formula(std::uint64_t x, std::span<const std::uint8_t> is_prime);
std::vector<SelbergRow> selberg_formula_trace(const std::vector<std::uint64_t>& x_grid,
                                              const SieveConfig& config = {});

struct PiRow {
  std::uint64_t N = 0;
  std::uint64_t pi = 0;
  double value = 0;  // pi(N) log N / N
};

std::vector<PiRow> pi_log_trace(const std::vector<std::uint64_t>& N_grid, const SieveConfig& config = {});

struct TransferAudit {
  std::vector<std::uint64_t> B;
  std::string g_id;
  std::uint64_t N = 0;
  Complex lhs;  // E_{n <= N} g(Omega(n))
  Complex rhs;  // E^log_q E_{n <= N/q} g(Omega(n) + Omega(q))
  double difference = 0;
  // sup|g| (sqrt(averaged rhs) + c / sqrt(N)), c = (sqrt 3 + 1) |B| / a.
  double bound = 0;
  // sup|g| (sqrt(averaged lhs) + |B| / (a N)), the sharper intermediate step.
  double tight_bound = 0;
  double tk_averaged = 0;
  bool holds = false;
};

/// Requires N >= max(B)^2 (Precondition).
TransferAudit transfer_audit(const WeightedSet& B, const TestFunction& g, std::uint64_t N,
                             const SieveConfig& config = {});
TransferAudit transfer_audit(const WeightedSet& B, const TestFunction& g, const ArithmeticTable& table,
                             std::uint64_t N);

struct PairingAudit {
  std::string g_id;
  std::uint64_t N = 0;
  unsigned k = 0;
  double eta = 0;
  std::size_t size = 0;
  Complex avg_B1;  // E^log_{p in B1} A(N/p), A(M) = E_{n <= M} g(Omega(n) + k)
  Complex avg_B2;
  double difference = 0;
  double max_pair_gap = 0;  // max_j |A(N/p_j) - A(N/q_j)|
  std::uint64_t min_M = 0;
  double C = 0;      // 2 + 2/(1 - eta)
  double bound = 0;  // C eta + (2 + 2 eta) sup|g| / min_M
  bool holds = false;
};

/// B1 and B2 given by their norms in paired (increasing) order; PairingMissing
/// when the sizes differ, InvalidRange when some norm exceeds N.
PairingAudit pairing_transfer_audit(std::span<const BigInt> B1, std::span<const BigInt> B2, unsigned k, double eta,
                                    const TestFunction& g, std::uint64_t N, const SieveConfig& config = {});
PairingAudit pairing_transfer_audit(const SetPair& pair, const TestFunction& g, std::uint64_t N,
                                    const SieveConfig& config = {});

}  // namespace pnt
