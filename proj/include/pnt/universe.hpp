#pragma once
// Sources of "primes" for the window construction: the genuine primes, or a
// synthetic system of generalized primes whose counting function is explicit.

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "pnt/exact.hpp"
#include "pnt/sieve.hpp"

namespace pnt {

enum class UniverseKind { Real, Synthetic };

std::string to_string(UniverseKind kind);

/// A generator ("prime") of the universe: a stable id and its integer norm.
/// For the real universe id == norm == the prime itself.
struct Generator {
  std::uint64_t id = 0;
  std::uint64_t norm = 0;
  bool operator==(const Generator&) const = default;
};

/// Element of the free commutative monoid on the generators: a sorted
/// multiset of generator ids, their norms, and the total norm (product).
struct GenInt {
  std::vector<std::uint64_t> ids;
  std::vector<std::uint64_t> factor_norms;  // parallel to ids
  BigInt norm = 1;
  unsigned omega() const noexcept { return static_cast<unsigned>(ids.size()); }
};

struct UniverseParams {
  double x0 = 2;
  double eps0 = 0.25;
  double eps1 = 0.25;
};

class Universe {
 public:
  explicit Universe(UniverseParams params) : params_(params) {}
  virtual ~Universe() = default;

  virtual UniverseKind kind() const noexcept = 0;
  double x0() const noexcept { return params_.x0; }
  double eps0() const noexcept { return params_.eps0; }
  double eps1() const noexcept { return params_.eps1; }

  /// Largest exponent b for which (8^a, 8^b] can be counted.
  virtual double max_exponent() const noexcept = 0;

  /// Generators with norm in (floor 8^a, floor 8^b].
  virtual std::uint64_t count(double a, double b) const = 0;

  /// The `limit` smallest generators with norm in (floor 8^a, floor 8^b],
  /// ordered by (norm, id).
  virtual std::vector<Generator> list(double a, double b, std::uint64_t limit) const = 0;

  /// Census of (8^x, 8^(x+delta)].
  IntervalCensus window_census(double x, double delta, bool materialize) const;

 private:
  UniverseParams params_;
};

/// Genuine primes. Windows below `cache_limit` are answered from a prime list
/// built on first use; larger ones are sieved on demand within the budget.
class RealUniverse final : public Universe {
 public:
  RealUniverse(UniverseParams params, SieveConfig config, std::uint64_t cache_limit = std::uint64_t{1} << 24);

  UniverseKind kind() const noexcept override { return UniverseKind::Real; }
  double max_exponent() const noexcept override { return 20.0; }
  std::uint64_t count(double a, double b) const override;
  std::vector<Generator> list(double a, double b, std::uint64_t limit) const override;

 private:
  const std::vector<std::uint64_t>& cached_primes() const;

  SieveConfig config_;
  std::uint64_t cache_limit_;
  mutable std::once_flag once_;
  mutable std::vector<std::uint64_t> primes_;
};

struct SyntheticParams {
  std::uint64_t seed = 1;
  /// Density scale: about c 8^x / x generators below 8^x.
  std::uint64_t c_num = 1;
  std::uint64_t c_den = 4;
  /// Sub-bins per level and their relative weight jitter (per mille).
  unsigned bins = 16;
  unsigned jitter_permille = 200;
  /// Generators live at levels 1 .. max_level - 1 (norms below 8^max_level).
  unsigned max_level = 20;
};

/// Beurling-style generalized primes. Level n covers norms [8^n, 8^(n+1)) and
/// holds K_n = ceil(c (8^(n+1)/(n+1) - 8^n/n)) generators, spread over bins
/// with boundaries floor(8^(n + b/M)) in proportion to the bin length times a
/// seeded jitter, and linearly inside each bin. The counting function is
/// exact integer arithmetic, so generator norms have a closed form.
class SyntheticUniverse final : public Universe {
 public:
  SyntheticUniverse(UniverseParams params, SyntheticParams synth);

  UniverseKind kind() const noexcept override { return UniverseKind::Synthetic; }
  double max_exponent() const noexcept override { return static_cast<double>(synth_.max_level); }
  std::uint64_t count(double a, double b) const override;
  std::vector<Generator> list(double a, double b, std::uint64_t limit) const override;

  /// Number of generators with norm <= v.
  std::uint64_t counting_function(std::uint64_t v) const;
  /// Norm of the generator with rank `id` (1-based).
  std::uint64_t norm_of(std::uint64_t id) const;
  const SyntheticParams& synthetic_params() const noexcept { return synth_; }

 private:
  struct Level {
    std::uint64_t cum = 0;                 // generators below 8^n
    std::vector<std::uint64_t> bounds;     // bins + 1 norm boundaries
    std::vector<std::uint64_t> alloc;      // bins + 1 cumulative counts
  };
  SyntheticParams synth_;
  std::vector<Level> levels_;  // index n, levels_[0] unused
  std::uint64_t total_ = 0;
};

struct HypothesisRow {
  double x = 0;
  double eps = 0;  // 1 for the lower bound rows
  std::uint64_t count = 0;
  long double bound = 0;
  bool holds = false;
};

/// Checks both window bounds on x in {x0, x0 + step, ...} below max_x: the
/// lower bound over unit windows and the upper bound for every eps given.
std::vector<HypothesisRow> verify_window_hypotheses(const Universe& u, double max_x, double step,
                                                    const std::vector<double>& eps_list);

}  // namespace pnt
