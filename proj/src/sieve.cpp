#include "pnt/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "pnt/error.hpp"
#include "pnt/pow8.hpp"
#include "pnt/primality.hpp"
#include "pnt/simd.hpp"

namespace pnt {
namespace {

constexpr std::uint64_t kMaxSieveHi = std::uint64_t{1} << 62;

unsigned effective_workers(const SieveConfig& config, std::size_t segments) {
  unsigned w = config.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.workers;
  return static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(segments, 1)));
}

// Runs fn(segment_index) for every segment. Each segment writes only its own
// output slot, so scheduling never affects results.
template <typename Fn>
void for_each_segment(std::size_t segments, const SieveConfig& config, Fn&& fn) {
  const unsigned workers = effective_workers(config, segments);
  if (workers <= 1) {
    for (std::size_t s = 0; s < segments; ++s) fn(s);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t s = next.fetch_add(1); s < segments; s = next.fetch_add(1)) fn(s);
    });
  }
}

void check_work(std::uint64_t work, const SieveConfig& config, const std::string& what) {
  if (work > config.budget) {
    raise(ErrorKind::RangeTooLarge, what + " needs " + std::to_string(work) + " units of work; budget is " +
                                        std::to_string(config.budget));
  }
}

std::size_t segment_length(const SieveConfig& config) {
  return std::max<std::size_t>(config.segment_size, 64);
}

// Omega for [start, start + omega.size()) using base primes up to sqrt of the segment end.
void omega_segment(std::uint64_t start, std::span<std::uint8_t> omega, std::span<const std::uint32_t> base,
                   std::vector<std::uint64_t>& prod) {
  const std::uint64_t len = omega.size();
  const std::uint64_t last = start + len - 1;
  std::fill(omega.begin(), omega.end(), std::uint8_t{0});
  prod.assign(len, 1);
  for (std::uint32_t p32 : base) {
    const std::uint64_t p = p32;
    if (p * p > last) break;
    for (std::uint64_t pk = p;; pk *= p) {
      std::uint64_t m = (start + pk - 1) / pk * pk;
      for (; m <= last; m += pk) {
        ++omega[m - start];
        prod[m - start] *= p;
      }
      if (pk > last / p) break;
    }
  }
  simd::finalize_omega(omega, prod, start);
}

std::vector<std::uint32_t> base_primes_for(std::uint64_t last) {
  const std::uint64_t root = isqrt(last);
  return primes_up_to(static_cast<std::uint32_t>(std::min<std::uint64_t>(root, 0xFFFFFFFFull)));
}

}  // namespace

ArithmeticTable::ArithmeticTable(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint8_t> omega)
    : lo_(lo), hi_(hi), omega_(std::move(omega)) {
  if (lo_ >= hi_ || omega_.size() != hi_ - lo_) {
    raise(ErrorKind::InvalidRange, "table bounds do not match its contents");
  }
}

unsigned ArithmeticTable::omega_at(std::uint64_t n) const {
  if (!contains(n)) {
    raise(ErrorKind::OutOfRange,
          std::to_string(n) + " outside table [" + std::to_string(lo_) + ", " + std::to_string(hi_) + ")");
  }
  return omega_[n - lo_];
}

std::span<const std::uint8_t> ArithmeticTable::slice(std::uint64_t from, std::uint64_t to) const noexcept {
  from = std::clamp(from, lo_, hi_);
  to = std::clamp(to, from, hi_);
  return std::span<const std::uint8_t>(omega_).subspan(from - lo_, to - from);
}

ArithmeticTable sieve_range(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config) {
  if (lo < 1 || lo >= hi) {
    raise(ErrorKind::InvalidRange, "need 1 <= lo < hi, got [" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
  if (hi > kMaxSieveHi) raise(ErrorKind::RangeTooLarge, "hi exceeds 2^62");
  check_work(hi - lo + isqrt(hi), config, "sieve_range");

  const auto base = base_primes_for(hi - 1);
  std::vector<std::uint8_t> omega(hi - lo);
  const std::size_t seg = segment_length(config);
  const std::size_t segments = (omega.size() + seg - 1) / seg;
  for_each_segment(segments, config, [&](std::size_t s) {
    const std::size_t off = s * seg;
    const std::size_t len = std::min(seg, omega.size() - off);
    thread_local std::vector<std::uint64_t> prod;
    omega_segment(lo + off, std::span<std::uint8_t>(omega).subspan(off, len), base, prod);
  });
  return ArithmeticTable(lo, hi, std::move(omega));
}

int liouville(std::uint64_t n, const ArithmeticTable& table) { return (table.omega_at(n) & 1u) ? -1 : 1; }

std::int64_t liouville_summatory(std::uint64_t N, const SieveConfig& config) {
  if (N < 1) raise(ErrorKind::InvalidRange, "N must be positive");
  if (N >= kMaxSieveHi) raise(ErrorKind::RangeTooLarge, "N exceeds 2^62");
  check_work(N + isqrt(N + 1), config, "liouville_summatory");

  const auto base = base_primes_for(N);
  const std::size_t seg = segment_length(config);
  const std::size_t segments = static_cast<std::size_t>((N + seg - 1) / seg);
  std::vector<std::int64_t> partial(segments, 0);
  for_each_segment(segments, config, [&](std::size_t s) {
    const std::uint64_t start = 1 + static_cast<std::uint64_t>(s) * seg;
    const std::uint64_t len = std::min<std::uint64_t>(seg, N + 1 - start);
    thread_local std::vector<std::uint8_t> omega;
    thread_local std::vector<std::uint64_t> prod;
    omega.resize(len);
    omega_segment(start, omega, base, prod);
    const auto odd = static_cast<std::int64_t>(simd::count_odd(omega));
    partial[s] = static_cast<std::int64_t>(len) - 2 * odd;
  });
  std::int64_t total = 0;
  for (std::int64_t v : partial) total += v;
  return total;
}

IntervalCensus census_int(std::uint64_t lower, std::uint64_t upper, bool materialize, const SieveConfig& config) {
  if (lower < 1 || lower >= upper) {
    raise(ErrorKind::InvalidRange,
          "need 1 <= lower < upper, got (" + std::to_string(lower) + ", " + std::to_string(upper) + "]");
  }
  if (upper >= kMaxSieveHi) raise(ErrorKind::RangeTooLarge, "upper end exceeds 2^62");
  check_work(upper - lower + isqrt(upper), config, "census");

  IntervalCensus out;
  out.lower = lower;
  out.upper = upper;
  std::vector<std::uint64_t> listed;
  if (lower < 2 && upper >= 2) {
    out.count = 1;
    if (materialize) listed.push_back(2);
  }

  // Odd candidates v = first_odd + 2 i, i < odd_count, one bit each.
  const std::uint64_t first_odd = std::max<std::uint64_t>(3, (lower + 1) | 1);
  if (first_odd <= upper) {
    const std::uint64_t odd_count = (upper - first_odd) / 2 + 1;
    const auto base = base_primes_for(upper);
    const std::size_t seg_bits = (segment_length(config) + 63) / 64 * 64;
    const std::size_t segments = static_cast<std::size_t>((odd_count + seg_bits - 1) / seg_bits);
    std::vector<std::uint64_t> counts(segments, 0);
    std::vector<std::vector<std::uint64_t>> found(materialize ? segments : 0);

    for_each_segment(segments, config, [&](std::size_t s) {
      const std::uint64_t i0 = static_cast<std::uint64_t>(s) * seg_bits;
      const std::uint64_t nbits = std::min<std::uint64_t>(seg_bits, odd_count - i0);
      const std::uint64_t v0 = first_odd + 2 * i0;
      const std::uint64_t v1 = v0 + 2 * (nbits - 1);
      thread_local std::vector<std::uint64_t> bits;
      bits.assign((nbits + 63) / 64, ~std::uint64_t{0});
      if (nbits % 64 != 0) bits.back() = (std::uint64_t{1} << (nbits % 64)) - 1;
      for (std::size_t k = 1; k < base.size(); ++k) {  // skip 2
        const std::uint64_t p = base[k];
        if (p * p > v1) break;
        std::uint64_t m = std::max(p * p, (v0 + p - 1) / p * p);
        if ((m & 1) == 0) m += p;
        for (; m <= v1; m += 2 * p) {
          const std::uint64_t bit = (m - v0) / 2;
          bits[bit >> 6] &= ~(std::uint64_t{1} << (bit & 63));
        }
      }
      counts[s] = simd::count_bits(bits);
      if (materialize) {
        auto& dst = found[s];
        dst.reserve(counts[s]);
        for (std::size_t w = 0; w < bits.size(); ++w) {
          std::uint64_t word = bits[w];
          while (word != 0) {
            const auto b = static_cast<std::uint64_t>(__builtin_ctzll(word));
            dst.push_back(v0 + 2 * (w * 64 + b));
            word &= word - 1;
          }
        }
      }
    });
    for (std::uint64_t c : counts) out.count += c;
    if (materialize) {
      for (auto& chunk : found) listed.insert(listed.end(), chunk.begin(), chunk.end());
    }
  }
  if (materialize) out.primes = std::move(listed);
  return out;
}

IntervalCensus census(double a, double b, bool materialize, const SieveConfig& config) {
  if (!(a >= 1.0) || !(a < b) || !std::isfinite(b)) {
    raise(ErrorKind::InvalidRange, "need 1 <= a < b");
  }
  const auto lower = static_cast<std::uint64_t>(std::floor(a));
  const auto upper = static_cast<std::uint64_t>(std::floor(b));
  if (lower == upper) {
    IntervalCensus empty;
    empty.lower = lower;
    empty.upper = upper;
    if (materialize) empty.primes.emplace();
    return empty;
  }
  return census_int(lower, upper, materialize, config);
}

IntervalCensus census_pow8(double x1, double x2, bool materialize, const SieveConfig& config) {
  if (!(x1 >= 0.0) || !(x1 < x2)) raise(ErrorKind::InvalidRange, "need 0 <= x1 < x2");
  const std::uint64_t lower = floor_pow8(x1);
  const std::uint64_t upper = floor_pow8(x2);
  if (lower == upper) {
    IntervalCensus empty;
    empty.lower = lower;
    empty.upper = upper;
    if (materialize) empty.primes.emplace();
    return empty;
  }
  return census_int(lower, upper, materialize, config);
}

std::vector<std::uint8_t> prime_flags(std::uint64_t limit, const SieveConfig& config) {
  std::vector<std::uint8_t> flags(limit + 1, 0);
  if (limit < 2) return flags;
  const auto c = census_int(1, limit, true, config);
  for (std::uint64_t p : *c.primes) flags[p] = 1;
  return flags;
}

std::vector<std::uint32_t> prime_pi_table(std::uint64_t limit, const SieveConfig& config) {
  const auto flags = prime_flags(limit, config);
  std::vector<std::uint32_t> pi(limit + 1, 0);
  std::uint32_t running = 0;
  for (std::uint64_t n = 0; n <= limit; ++n) {
    running += flags[n];
    pi[n] = running;
  }
  return pi;
}

}  // namespace pnt
