// NEON variants; only built on AArch64, where NEON is baseline.

#include <arm_neon.h>

#include <bit>

#include "pnt/simd.hpp"

namespace pnt::simd::neon {

void finalize_omega(std::span<std::uint8_t> omega, std::span<const std::uint64_t> prod,
                    std::uint64_t first) noexcept {
  const std::size_t n = omega.size();
  std::size_t i = 0;
  uint64x2_t idx = {first, first + 1};
  const uint64x2_t step = vdupq_n_u64(2);
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t p = vld1q_u64(prod.data() + i);
    const uint64x2_t eq = vceqq_u64(p, idx);
    omega[i] = static_cast<std::uint8_t>(omega[i] + (vgetq_lane_u64(eq, 0) ? 0 : 1));
    omega[i + 1] = static_cast<std::uint8_t>(omega[i + 1] + (vgetq_lane_u64(eq, 1) ? 0 : 1));
    idx = vaddq_u64(idx, step);
  }
  for (; i < n; ++i) {
    omega[i] = static_cast<std::uint8_t>(omega[i] + (prod[i] != first + i ? 1 : 0));
  }
}

std::uint64_t count_odd(std::span<const std::uint8_t> omega) noexcept {
  const std::size_t n = omega.size();
  const uint8x16_t one = vdupq_n_u8(1);
  std::uint64_t odd = 0;
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    odd += vaddvq_u8(vandq_u8(vld1q_u8(omega.data() + i), one));
  }
  for (; i < n; ++i) odd += omega[i] & 1u;
  return odd;
}

std::uint64_t count_bits(std::span<const std::uint64_t> words) noexcept {
  const std::size_t n = words.size();
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint8x16_t v = vreinterpretq_u8_u64(vld1q_u64(words.data() + i));
    total += vaddvq_u8(vcntq_u8(v));
  }
  for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(words[i]));
  return total;
}

void histogram(std::span<const std::uint8_t> omega, std::span<std::uint64_t> hist) noexcept {
  for (std::uint8_t w : omega) ++hist[w];
}

}  // namespace pnt::simd::neon
