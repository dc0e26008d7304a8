#include <algorithm>
#include <cmath>

#include "pnt/construction.hpp"
#include "pnt/error.hpp"
#include "pnt/pow8.hpp"

namespace pnt {
namespace {

using u128 = unsigned __int128;

// Cap on the number of delta-windows tried inside one block.
constexpr std::uint64_t kMaxSubWindows = std::uint64_t{1} << 20;

std::uint64_t pow8_int(std::int64_t n) {
  if (n < 0 || n > 20) raise(ErrorKind::RangeTooLarge, "level " + std::to_string(n) + " outside [0, 20]");
  return std::uint64_t{1} << (3 * n);
}

// Largest d with d/1024 * 8^n / n <= count.
std::uint64_t quantize_D(std::uint64_t count, std::int64_t n) {
  const u128 d = static_cast<u128>(count) * kDQuantum * static_cast<std::uint64_t>(n) / pow8_int(n);
  return static_cast<std::uint64_t>(std::min<u128>(d, kDQuantum - 1));
}

struct SubWindow {
  double x;
  std::uint64_t count;
};

// Pigeonhole inside a block of width w starting at s: the ceil(w / delta)
// delta-windows starting at s + j delta cover the block, so one of them holds
// at least block_count / J generators. Returns the first such window.
SubWindow pick_subwindow(const Universe& u, double s, double w, double delta, std::uint64_t block_count) {
  const auto J = static_cast<std::uint64_t>(std::max(1.0L, std::ceil(static_cast<long double>(w) / delta)));
  if (J > kMaxSubWindows) raise(ErrorKind::RangeTooLarge, "too many delta-windows per block");
  for (std::uint64_t j = 0; j < J; ++j) {
    const double x = s + static_cast<double>(j) * delta;
    const std::uint64_t c = u.count(x, x + delta);
    if (static_cast<u128>(c) * J >= block_count) return {x, c};
  }
  raise(ErrorKind::ConstructionBug, "pigeonhole failed inside a rich block");
}

}  // namespace

std::uint64_t block_size(std::uint64_t D_num, std::int64_t n) {
  if (n < 1) raise(ErrorKind::Precondition, "level must be >= 1");
  return static_cast<std::uint64_t>(static_cast<u128>(D_num) * pow8_int(n) /
                                    (static_cast<u128>(kDQuantum) * static_cast<std::uint64_t>(n)));
}

WindowWitness find_windows(const Universe& universe, std::int64_t n, double eps, double delta) {
  if (static_cast<double>(n) < universe.x0() || n < 1) {
    raise(ErrorKind::Precondition, "n = " + std::to_string(n) + " is below x0");
  }
  if (!(eps > 0.0) || eps > universe.eps1()) {
    raise(ErrorKind::Precondition, "eps must lie in (0, eps1 = " + std::to_string(universe.eps1()) + "]");
  }
  if (!(delta > 0.0) || !(delta < 1.0)) raise(ErrorKind::Precondition, "delta must lie in (0, 1)");
  if (static_cast<double>(n) + 1.0 + eps + delta > universe.max_exponent()) {
    raise(ErrorKind::RangeTooLarge, "level " + std::to_string(n) + " beyond the universe");
  }

  const double nd = static_cast<double>(n);
  const long double scale = static_cast<long double>(pow8_int(n)) / nd;
  const double e4 = eps * eps * eps * eps;
  const auto K = static_cast<std::uint64_t>(std::ceil(1.0L / (static_cast<long double>(eps) * eps * eps)));
  const auto shifts = static_cast<std::uint64_t>(std::ceil(1.0L / eps));

  for (std::uint64_t j = 0; j < shifts; ++j) {
    const double t = nd + static_cast<double>(j) * eps;
    if (t >= nd + 1.0) break;
    const std::uint64_t T = universe.count(t, t + eps);
    if (static_cast<long double>(T) < eps * scale / 2) continue;

    std::vector<std::uint64_t> rich;
    std::vector<std::uint64_t> counts(K);
    for (std::uint64_t i = 0; i < K; ++i) {
      counts[i] = universe.count(t + static_cast<double>(i) * e4, t + static_cast<double>(i + 1) * e4);
      if (counts[i] > 0 && static_cast<u128>(counts[i]) * 2 * K >= T) rich.push_back(i);
    }
    for (std::size_t ia = 0; ia < rich.size(); ++ia) {
      const std::uint64_t a = rich[ia];
      const double sa = t + static_cast<double>(a) * e4;
      if (sa >= nd + 1.0) break;
      const SubWindow wx = pick_subwindow(universe, sa, e4, delta, counts[a]);
      if (wx.x >= nd + 1.0) break;
      for (std::size_t ib = ia + 1; ib < rich.size(); ++ib) {
        const std::uint64_t b = rich[ib];
        if (b < a + 2) continue;
        const double sb = t + static_cast<double>(b) * e4;
        if (sb >= nd + 1.0) break;
        const SubWindow wy = pick_subwindow(universe, sb, e4, delta, counts[b]);
        if (wy.x >= nd + 1.0) break;
        const double gap = wy.x - wx.x;
        if (gap >= eps) break;
        if (!(gap > e4)) continue;
        WindowWitness w;
        w.n = n;
        w.eps = eps;
        w.delta = delta;
        w.t = t;
        w.t_count = T;
        w.blocks = K;
        w.a = a;
        w.b = b;
        w.x = wx.x;
        w.y = wy.x;
        w.x_count = wx.count;
        w.y_count = wy.count;
        w.D_num = quantize_D(std::min(wx.count, wy.count), n);
        if (w.D_num == 0) {
          raise(ErrorKind::NoWitness, "windows at level " + std::to_string(n) + " too sparse for D >= 1/1024");
        }
        return w;
      }
    }
  }
  raise(ErrorKind::NoWitness, "no pair of rich windows at level " + std::to_string(n));
}

const WindowWitness* WindowFamily::at_level(std::int64_t n) const {
  for (const auto& w : witnesses) {
    if (w.n == n) return &w;
  }
  return nullptr;
}

WindowFamily build_window_family(const Universe& universe, std::int64_t n_lo, std::int64_t n_hi, double eps,
                                 double delta) {
  if (n_lo > n_hi) raise(ErrorKind::InvalidRange, "empty level range");
  WindowFamily f;
  f.eps = eps;
  f.delta = delta;
  f.D_num = kDQuantum - 1;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    f.witnesses.push_back(find_windows(universe, n, eps, delta));
    f.D_num = std::min(f.D_num, f.witnesses.back().D_num);
  }
  return f;
}

WindowMemberSet::WindowMemberSet(const Universe& universe, const WindowFamily& family, unsigned grid_bits)
    : universe_(universe), family_(family), step_(std::ldexp(1.0, -static_cast<int>(grid_bits))) {}

bool WindowMemberSet::contains(double x) const {
  if (!(x >= universe_.x0()) || !(x >= 1.0)) return false;
  const auto n = static_cast<std::int64_t>(std::floor(x));
  if (static_cast<double>(n) + 1.0 + family_.delta > universe_.max_exponent()) return false;
  const std::uint64_t c = universe_.count(x, x + family_.delta);
  // c >= D 8^n / n  <=>  1024 n c >= D_num 8^n.
  return static_cast<u128>(c) * kDQuantum * static_cast<std::uint64_t>(n) >=
         static_cast<u128>(family_.D_num) * pow8_int(n);
}

std::optional<double> WindowMemberSet::first_in(double lo, double hi) const {
  constexpr double kMaxProbes = 65536.0;
  // Coarsest dyadic step needed to cover (lo, hi) in kMaxProbes probes.
  double step = step_;
  while ((hi - lo) / step > kMaxProbes) step *= 2.0;
  double x = (std::floor(lo / step) + 1.0) * step;
  for (; x < hi; x += step) {
    if (contains(x)) return x;
  }
  return std::nullopt;
}

std::optional<std::pair<double, double>> WindowMemberSet::pair_in(std::int64_t n, double eps) const {
  const WindowWitness* w = family_.at_level(n);
  if (w == nullptr) return std::nullopt;
  const double gap = w->y - w->x;
  if (!(gap > eps * eps * eps * eps) || !(gap < eps)) return std::nullopt;
  return std::make_pair(w->x, w->y);
}

}  // namespace pnt
