#include <bit>

#include "pnt/simd.hpp"

namespace pnt::simd::scalar {

void finalize_omega(std::span<std::uint8_t> omega, std::span<const std::uint64_t> prod,
                    std::uint64_t first) noexcept {
  for (std::size_t i = 0; i < omega.size(); ++i) {
    omega[i] = static_cast<std::uint8_t>(omega[i] + (prod[i] != first + i ? 1 : 0));
  }
}

std::uint64_t count_odd(std::span<const std::uint8_t> omega) noexcept {
  std::uint64_t odd = 0;
  for (std::uint8_t w : omega) odd += w & 1u;
  return odd;
}

std::uint64_t count_bits(std::span<const std::uint64_t> words) noexcept {
  std::uint64_t total = 0;
  for (std::uint64_t w : words) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

void histogram(std::span<const std::uint8_t> omega, std::span<std::uint64_t> hist) noexcept {
  for (std::uint8_t w : omega) ++hist[w];
}

}  // namespace pnt::simd::scalar
