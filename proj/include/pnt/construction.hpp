#pragma once
// Window finding, sum witnesses, the index family and the (B1, B2) set pair.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pnt/exact.hpp"
#include "pnt/universe.hpp"

namespace pnt {

// ---------------------------------------------------------------- windows

/// Quantum for D: every D is a multiple of 1/1024 in (0, 1).
inline constexpr std::uint64_t kDQuantum = 1024;

struct WindowWitness {
  std::int64_t n = 0;
  double eps = 0;
  double delta = 0;
  double t = 0;                 // start of the eps-window picked first
  std::uint64_t t_count = 0;    // generators in (8^t, 8^(t+eps)]
  std::uint64_t blocks = 0;     // K = ceil(eps^-3)
  std::uint64_t a = 0, b = 0;   // the two rich blocks
  double x = 0, y = 0;
  std::uint64_t x_count = 0, y_count = 0;
  std::uint64_t D_num = 0;      // D = D_num / 1024, largest such with floor(D 8^n / n) <= both counts
};

/// Replays the pigeonhole argument on the universe; throws NoWitness when the
/// universe does not supply two rich windows, Precondition on bad arguments.
WindowWitness find_windows(const Universe& universe, std::int64_t n, double eps, double delta);

/// floor(D 8^n / n) for D = D_num / 1024.
std::uint64_t block_size(std::uint64_t D_num, std::int64_t n);

struct WindowFamily {
  double eps = 0;
  double delta = 0;
  std::uint64_t D_num = 0;  // minimum over the witnesses
  std::vector<WindowWitness> witnesses;  // one per level, increasing n

  Rational D() const { return Rational(static_cast<long>(D_num), static_cast<long>(kDQuantum)); }
  const WindowWitness* at_level(std::int64_t n) const;
};

WindowFamily build_window_family(const Universe& universe, std::int64_t n_lo, std::int64_t n_hi, double eps,
                                 double delta);

// ---------------------------------------------------------------- sums

/// The admissible set X, queried through membership and search.
class MemberSet {
 public:
  virtual ~MemberSet() = default;
  virtual bool contains(double x) const = 0;
  /// Smallest member in the open interval (lo, hi).
  virtual std::optional<double> first_in(double lo, double hi) const = 0;
  /// A pair x < y of members in [n, n+1) with eps^4 < y - x < eps.
  virtual std::optional<std::pair<double, double>> pair_in(std::int64_t n, double eps) const = 0;
};

/// A finite sorted set; pair_in returns the lexicographically smallest pair.
class FiniteMemberSet final : public MemberSet {
 public:
  explicit FiniteMemberSet(std::vector<double> members);
  bool contains(double x) const override;
  std::optional<double> first_in(double lo, double hi) const override;
  std::optional<std::pair<double, double>> pair_in(std::int64_t n, double eps) const override;
  const std::vector<double>& members() const noexcept { return members_; }

 private:
  std::vector<double> members_;
};

/// X = {x >= x0 : window count of (8^x, 8^(x+delta)] >= floor(D 8^floor(x) / floor(x))},
/// searched on a dyadic grid: step 2^-grid_bits, doubled until the query
/// interval needs at most 2^16 probes. Pairs come from the family's witnesses.
class WindowMemberSet final : public MemberSet {
 public:
  WindowMemberSet(const Universe& universe, const WindowFamily& family, unsigned grid_bits = 30);
  bool contains(double x) const override;
  std::optional<double> first_in(double lo, double hi) const override;
  std::optional<std::pair<double, double>> pair_in(std::int64_t n, double eps) const override;

 private:
  const Universe& universe_;
  const WindowFamily& family_;
  double step_;
};

struct SumWitness {
  double eps = 0;
  unsigned k = 0;
  std::vector<std::int64_t> ns;
  std::vector<double> xs, ys;
  std::vector<double> u;   // u_0 .. u_k
  double z = 0;
  std::size_t i0 = 0;
  std::vector<double> zs;  // z_1 .. z_k
};

/// ceil(2 / eps^4).
std::uint64_t min_k_for(double eps);

/// Sum-witness search. With enforce_k_bound the k >= ceil(2/eps^4) guard is
/// applied (Precondition otherwise). Sums are exact over the binary values of
/// the members.
SumWitness solve_sums(const MemberSet& X, double eps, unsigned k, const std::vector<std::int64_t>& ns,
                      bool enforce_k_bound = true);

struct SumCheck {
  bool membership = false;
  bool property_I = false;
  bool property_II = false;
  bool ok() const noexcept { return membership && property_I && property_II; }
};

/// Independent validator: recomputes (I), (II) and membership from scratch.
SumCheck validate_sum_witness(const MemberSet& X, const SumWitness& w);

// ---------------------------------------------------------------- index family

struct IndexFamily {
  unsigned k = 0;
  double x0 = 0;
  Rational N_target;
  std::vector<std::uint64_t> s;                 // strides
  std::vector<std::vector<std::uint64_t>> A;    // A_i, increasing multiples of s_i
  std::vector<Rational> harmonic;               // sum of 1/n over A_i
  std::uint64_t min_gap = 0;                    // least distance between distinct tuple sums
  bool separation_checked_directly = false;
  bool separation_ok = false;
};

/// Greedy fill: A_i = {s_i, 2 s_i, ..., J s_i} with the least J reaching
/// N_target. Throws BudgetExceeded when the total element count would pass
/// `budget` (message carries the achieved harmonic sum).
IndexFamily build_index_family(unsigned k, double x0, const Rational& N_target, std::uint64_t budget,
                               bool require_target_at_least_one = true);

// ---------------------------------------------------------------- set pair

struct PhiLogAvg {
  Rational value;        // E^log E^log Phi over B
  Rational reciprocal_sum;  // sum of 1/N(m)
  bool holds = false;    // value <= eta
};

/// Exact E^log_{m in B} E^log_{n in B} (gcd(m,n) - 1) over positive integers.
PhiLogAvg check_phi_logavg(std::span<const std::uint64_t> B, const Rational& eta);

/// Generator origin used by the shared-factor audit: slot i and level n_i.
struct FactorOrigin {
  unsigned slot = 0;
  std::int64_t level = 0;
  bool operator==(const FactorOrigin&) const = default;
};

/// Same quantity over generalized integers, via
/// sum_{m,n} N(gcd)/(N(m)N(n)) = sum_d phi(d) T(d)^2, T(d) = sum_{d | m} 1/N(m).
/// When `origins` is non-empty (one entry per element, parallel to its ids),
/// any common divisor of two elements must come from the same slots and
/// levels in both (ConstructionBug otherwise).
PhiLogAvg check_phi_logavg(std::span<const GenInt> B, const Rational& eta,
                           std::span<const std::vector<FactorOrigin>> origins = {});

/// O(|B|^2) reference for check_phi_logavg on integers.
Rational phi_logavg_direct(std::span<const std::uint64_t> B);

struct TupleRecord {
  std::vector<std::int64_t> ns;
  SumWitness witness;
  std::vector<std::uint64_t> block_sizes;  // |P_{z_i}|
  std::uint64_t product_size = 0;          // |Q| = product of block sizes
  std::uint64_t z_window_count = 0;        // generators in (8^z, 8^(z+delta)]
};

struct SetPair {
  double eta = 0;
  unsigned k = 0;
  double eps = 0;
  double delta = 0;
  std::uint64_t D_num = 0;
  Rational N_target;
  bool hypotheses_relaxed = false;
  UniverseKind universe = UniverseKind::Synthetic;
  IndexFamily family;
  WindowFamily windows;
  std::vector<TupleRecord> tuples;
  std::vector<GenInt> B1;  // sorted by (norm, ids)
  std::vector<GenInt> B2;
  std::vector<std::vector<FactorOrigin>> B2_origins;  // parallel to B2
  std::vector<Rational> pair_ratios;  // N(q_j) / N(p_j)

  bool prop_a = false;
  bool prop_b = false;
  bool disjoint = false;
  PhiLogAvg phi_B1, phi_B2;
  Rational B1_lower_bound;  // D^k N^k / 8^(2k+1)
  bool B1_bound_holds = false;

  bool prop_c() const noexcept { return phi_B1.holds && phi_B2.holds; }
};

struct BuildParams {
  double eta = 0.5;
  /// Relaxed mode uses the explicit eps, k and N_target below and skips the
  /// k >= ceil(2/eps^4) requirement; property (c) is then reported, not required.
  bool relaxed = false;
  std::optional<double> eps;
  std::optional<unsigned> k;
  std::optional<double> N_target;
  std::uint64_t budget = 2'000'000;  // elements across A_i, B1 and B2
};

struct FeasibilityPlan {
  double eps = 0;
  std::uint64_t k0 = 0;
  unsigned k = 0;
  double delta = 0;
  double log10_N_target = 0;    // lower estimate (D = 1)
  std::uint64_t s1 = 0;
  double log10_log10_A1_size = 0;  // log10 of log10|A1|, |A1| about e^(s1 N)
  double required_exponent = 0; // 8-adic level of the smallest product
  std::string diagnosis;
};

enum class BuildStatus { Built, InfeasibleScale };

struct BuildOutcome {
  BuildStatus status = BuildStatus::InfeasibleScale;
  FeasibilityPlan plan;
  std::optional<SetPair> pair;
};

/// Largest multiple of 1/1024 strictly below min(eps0, eps1, log(1+eta)/log 64);
/// Precondition when no positive multiple exists.
double choose_eps(const Universe& universe, double eta);

BuildOutcome build_set_pair(const Universe& universe, const BuildParams& params);

}  // namespace pnt
