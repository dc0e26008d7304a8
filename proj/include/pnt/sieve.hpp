#pragma once
// Segmented sieves: Omega tables, Liouville sums and interval prime censuses.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pnt {

struct SieveConfig {
  /// Entries per segment.
  std::size_t segment_size = std::size_t{1} << 22;
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned workers = 1;
  /// Ceiling on the work of a single call (integers covered by the range).
  std::uint64_t budget = std::uint64_t{1} << 32;
};

/// Omega(n) for every n in [lo, hi). Immutable once built.
class ArithmeticTable {
 public:
  ArithmeticTable(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint8_t> omega);

  std::uint64_t lo() const noexcept { return lo_; }
  std::uint64_t hi() const noexcept { return hi_; }
  std::size_t size() const noexcept { return omega_.size(); }
  bool contains(std::uint64_t n) const noexcept { return n >= lo_ && n < hi_; }

  std::span<const std::uint8_t> omega() const noexcept { return omega_; }

  /// Omega(n); throws OutOfRange outside [lo, hi).
  unsigned omega_at(std::uint64_t n) const;

  /// Slice of the table covering [from, to) (clamped to the table).
  std::span<const std::uint8_t> slice(std::uint64_t from, std::uint64_t to) const noexcept;

  bool operator==(const ArithmeticTable&) const = default;

 private:
  std::uint64_t lo_;
  std::uint64_t hi_;
  std::vector<std::uint8_t> omega_;
};

struct IntervalCensus {
  /// Integer resolution of the interval: primes p with lower < p <= upper.
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
  std::uint64_t count = 0;
  std::optional<std::vector<std::uint64_t>> primes;
};

/// Omega over [lo, hi). Output is identical for every segment size and worker count.
ArithmeticTable sieve_range(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config = {});

/// lambda(n) = (-1)^Omega(n) for n inside the table.
int liouville(std::uint64_t n, const ArithmeticTable& table);

/// Sum of lambda(n) for n <= N, streamed segment by segment.
std::int64_t liouville_summatory(std::uint64_t N, const SieveConfig& config = {});

/// Primes in (a, b] for real endpoints, resolved as (floor(a), floor(b)].
IntervalCensus census(double a, double b, bool materialize = false, const SieveConfig& config = {});

/// Primes p with lower < p <= upper.
IntervalCensus census_int(std::uint64_t lower, std::uint64_t upper, bool materialize = false,
                          const SieveConfig& config = {});

/// Primes in (8^x1, 8^x2], endpoints resolved with floor_pow8.
IntervalCensus census_pow8(double x1, double x2, bool materialize = false, const SieveConfig& config = {});

/// Prime indicator for every n in [0, limit]; convenience for moderate limits.
std::vector<std::uint8_t> prime_flags(std::uint64_t limit, const SieveConfig& config = {});

/// pi(n) for every n in [0, limit].
std::vector<std::uint32_t> prime_pi_table(std::uint64_t limit, const SieveConfig& config = {});

// On-disk cache of Omega tables. Layout, all little-endian:
//   8 bytes  magic "PNTOMEGA"
//   u32      version (1)
//   u64      lo
//   u64      hi
//   hi - lo bytes of Omega values
inline constexpr std::uint32_t kTableCacheVersion = 1;

void save_table(const ArithmeticTable& table, const std::string& path);
ArithmeticTable load_table(const std::string& path);

/// Directory for cached tables: `explicit_dir` when non-empty, else
/// $PNT_CACHE_DIR, else no caching (empty result).
std::string resolve_cache_dir(const std::string& explicit_dir);

/// sieve_range backed by the cache in `cache_dir` (no caching when empty).
ArithmeticTable cached_sieve_range(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config,
                                   const std::string& cache_dir);

}  // namespace pnt
