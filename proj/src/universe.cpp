#include "pnt/universe.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "pnt/error.hpp"
#include "pnt/pow8.hpp"
#include "pnt/rng.hpp"

namespace pnt {

std::string to_string(UniverseKind kind) { return kind == UniverseKind::Real ? "real" : "synthetic"; }

IntervalCensus Universe::window_census(double x, double delta, bool materialize) const {
  IntervalCensus c;
  c.lower = floor_pow8(x);
  c.upper = floor_pow8(x + delta);
  if (materialize) {
    const auto gens = list(x, x + delta, UINT64_MAX);
    c.count = gens.size();
    std::vector<std::uint64_t> norms;
    norms.reserve(gens.size());
    for (const auto& g : gens) norms.push_back(g.norm);
    c.primes = std::move(norms);
  } else {
    c.count = count(x, x + delta);
  }
  return c;
}

namespace {

void check_exponents(double a, double b, double max_exponent) {
  if (!(a >= 0.0) || !(a < b)) raise(ErrorKind::InvalidRange, "need 0 <= a < b");
  if (b > max_exponent) {
    raise(ErrorKind::RangeTooLarge, "exponent " + std::to_string(b) + " beyond universe limit " +
                                        std::to_string(max_exponent));
  }
}

}  // namespace

RealUniverse::RealUniverse(UniverseParams params, SieveConfig config, std::uint64_t cache_limit)
    : Universe(params), config_(config), cache_limit_(cache_limit) {}

const std::vector<std::uint64_t>& RealUniverse::cached_primes() const {
  std::call_once(once_, [this] { primes_ = std::move(*census_int(1, cache_limit_, true, config_).primes); });
  return primes_;
}

std::uint64_t RealUniverse::count(double a, double b) const {
  check_exponents(a, b, max_exponent());
  const std::uint64_t lo = floor_pow8(a), hi = floor_pow8(b);
  if (lo == hi) return 0;
  if (hi <= cache_limit_) {
    const auto& p = cached_primes();
    return static_cast<std::uint64_t>(std::upper_bound(p.begin(), p.end(), hi) -
                                      std::upper_bound(p.begin(), p.end(), lo));
  }
  return census_int(lo, hi, false, config_).count;
}

std::vector<Generator> RealUniverse::list(double a, double b, std::uint64_t limit) const {
  check_exponents(a, b, max_exponent());
  const std::uint64_t lo = floor_pow8(a), hi = floor_pow8(b);
  std::vector<Generator> out;
  if (lo == hi) return out;
  auto take = [&](auto first, auto last) {
    for (; first != last && out.size() < limit; ++first) out.push_back({*first, *first});
  };
  if (hi <= cache_limit_) {
    const auto& p = cached_primes();
    take(std::upper_bound(p.begin(), p.end(), lo), std::upper_bound(p.begin(), p.end(), hi));
  } else {
    const auto c = census_int(lo, hi, true, config_);
    take(c.primes->begin(), c.primes->end());
  }
  return out;
}

SyntheticUniverse::SyntheticUniverse(UniverseParams params, SyntheticParams synth)
    : Universe(params), synth_(synth) {
  if (synth_.max_level < 2 || synth_.max_level > 20) raise(ErrorKind::ConfigInvalid, "max_level must be in [2, 20]");
  if (synth_.bins == 0 || synth_.bins > 1024 || !std::has_single_bit(synth_.bins)) {
    raise(ErrorKind::ConfigInvalid, "bins must be a power of two <= 1024");
  }
  if (synth_.c_num == 0 || synth_.c_den == 0) raise(ErrorKind::ConfigInvalid, "density scale must be positive");
  if (synth_.jitter_permille >= 1000) raise(ErrorKind::ConfigInvalid, "jitter must be below 1000 per mille");

  const unsigned M = synth_.bins;
  levels_.resize(synth_.max_level);
  std::uint64_t cum = 0;
  for (unsigned n = 1; n < synth_.max_level; ++n) {
    Level& L = levels_[n];
    L.cum = cum;
    // K_n = ceil(c 8^n (7n - 1) / (n (n + 1))).
    const unsigned __int128 num = static_cast<unsigned __int128>(synth_.c_num) * (std::uint64_t{1} << (3 * n)) *
                                  (7 * std::uint64_t{n} - 1);
    const unsigned __int128 den = static_cast<unsigned __int128>(synth_.c_den) * n * (n + 1);
    const auto K = static_cast<std::uint64_t>((num + den - 1) / den);

    L.bounds.resize(M + 1);
    for (unsigned b = 0; b <= M; ++b) L.bounds[b] = floor_pow8(n + static_cast<double>(b) / M);
    Rng rng(Rng::mix(synth_.seed, n));
    std::vector<BigInt> weight(M);
    BigInt total = 0;
    for (unsigned b = 0; b < M; ++b) {
      const auto jitter = static_cast<std::int64_t>(rng.uniform(0, 2 * synth_.jitter_permille)) -
                          static_cast<std::int64_t>(synth_.jitter_permille);
      weight[b] = to_big(L.bounds[b + 1] - L.bounds[b]) * static_cast<long>(1000 + jitter);
      total += weight[b];
    }
    L.alloc.assign(M + 1, 0);
    BigInt running = 0;
    for (unsigned b = 0; b < M; ++b) {
      running += weight[b];
      const BigInt share = to_big(K) * running / total;
      L.alloc[b + 1] = share.get_ui();
    }
    L.alloc[M] = K;
    cum += K;
  }
  total_ = cum;
}

std::uint64_t SyntheticUniverse::counting_function(std::uint64_t v) const {
  if (v < 8) return 0;
  const unsigned n = static_cast<unsigned>((std::bit_width(v) - 1) / 3);
  if (n >= synth_.max_level) return total_;
  const Level& L = levels_[n];
  const auto it = std::upper_bound(L.bounds.begin(), L.bounds.end(), v);
  const auto b = static_cast<std::size_t>(it - L.bounds.begin()) - 1;
  const std::uint64_t width = L.bounds[b + 1] - L.bounds[b];
  const std::uint64_t span = L.alloc[b + 1] - L.alloc[b];
  const auto inside =
      static_cast<std::uint64_t>(static_cast<unsigned __int128>(span) * (v - L.bounds[b]) / width);
  return L.cum + L.alloc[b] + inside;
}

std::uint64_t SyntheticUniverse::norm_of(std::uint64_t id) const {
  if (id < 1 || id > total_) raise(ErrorKind::OutOfRange, "generator id " + std::to_string(id));
  unsigned n = 1;
  while (n + 1 < synth_.max_level && levels_[n + 1].cum < id) ++n;
  const Level& L = levels_[n];
  const std::uint64_t r = id - L.cum;
  const auto it = std::lower_bound(L.alloc.begin(), L.alloc.end(), r);
  const auto b = static_cast<std::size_t>(it - L.alloc.begin()) - 1;
  const std::uint64_t rr = r - L.alloc[b];
  const std::uint64_t width = L.bounds[b + 1] - L.bounds[b];
  const std::uint64_t span = L.alloc[b + 1] - L.alloc[b];
  const unsigned __int128 need = static_cast<unsigned __int128>(rr) * width;
  return L.bounds[b] + static_cast<std::uint64_t>((need + span - 1) / span);
}

std::uint64_t SyntheticUniverse::count(double a, double b) const {
  check_exponents(a, b, max_exponent());
  return counting_function(floor_pow8(b)) - counting_function(floor_pow8(a));
}

std::vector<Generator> SyntheticUniverse::list(double a, double b, std::uint64_t limit) const {
  check_exponents(a, b, max_exponent());
  const std::uint64_t first = counting_function(floor_pow8(a)) + 1;
  const std::uint64_t last = counting_function(floor_pow8(b));
  std::vector<Generator> out;
  if (last < first) return out;
  const std::uint64_t n = std::min(last - first + 1, limit);
  out.reserve(n);
  for (std::uint64_t id = first; id < first + n; ++id) out.push_back({id, norm_of(id)});
  return out;
}

std::vector<HypothesisRow> verify_window_hypotheses(const Universe& u, double max_x, double step,
                                                    const std::vector<double>& eps_list) {
  if (!(step > 0)) raise(ErrorKind::Precondition, "step must be positive");
  std::vector<HypothesisRow> rows;
  for (double x = u.x0(); x + 1.0 <= max_x; x += step) {
    const long double scale = pow8(x) / x;
    HypothesisRow lower{x, 1.0, u.count(x, x + 1.0), scale, false};
    lower.holds = static_cast<long double>(lower.count) >= lower.bound;
    rows.push_back(lower);
    for (double eps : eps_list) {
      HypothesisRow upper{x, eps, u.count(x, x + eps), std::sqrt(static_cast<long double>(eps)) * scale, false};
      upper.holds = static_cast<long double>(upper.count) <= upper.bound;
      rows.push_back(upper);
    }
  }
  return rows;
}

}  // namespace pnt
