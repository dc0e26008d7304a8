// AVX2 variants. This translation unit is compiled with -mavx2 and is only
// entered after the dispatcher has confirmed CPU support.

#include <immintrin.h>

#include <algorithm>
#include <array>
#include <bit>

#include "pnt/simd.hpp"

namespace pnt::simd::avx2 {
namespace {

// lut[m] has byte i set to 1 when bit i of m is set.
constexpr std::array<std::uint32_t, 16> make_nibble_bytes() {
  std::array<std::uint32_t, 16> lut{};
  for (std::uint32_t m = 0; m < 16; ++m) {
    std::uint32_t v = 0;
    for (std::uint32_t b = 0; b < 4; ++b) {
      if (m & (1u << b)) v |= 1u << (8 * b);
    }
    lut[m] = v;
  }
  return lut;
}

constexpr auto kNibbleBytes = make_nibble_bytes();

inline std::uint64_t hsum_epi64(__m256i v) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

// Cap on bytes scanned per pass; keeps the chunk in L1 across value passes.
constexpr std::size_t kHistChunk = 8192;

}  // namespace

void finalize_omega(std::span<std::uint8_t> omega, std::span<const std::uint64_t> prod,
                    std::uint64_t first) noexcept {
  const std::size_t n = omega.size();
  std::size_t i = 0;
  __m256i idx = _mm256_setr_epi64x(static_cast<long long>(first), static_cast<long long>(first + 1),
                                   static_cast<long long>(first + 2), static_cast<long long>(first + 3));
  const __m256i step = _mm256_set1_epi64x(4);
  for (; i + 4 <= n; i += 4) {
    const __m256i p = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(prod.data() + i));
    const __m256i eq = _mm256_cmpeq_epi64(p, idx);
    const int same = _mm256_movemask_pd(_mm256_castsi256_pd(eq));
    const std::uint32_t add = kNibbleBytes[static_cast<unsigned>(~same) & 0xFu];
    std::uint32_t word;
    __builtin_memcpy(&word, omega.data() + i, 4);
    word += add;
    __builtin_memcpy(omega.data() + i, &word, 4);
    idx = _mm256_add_epi64(idx, step);
  }
  for (; i < n; ++i) {
    omega[i] = static_cast<std::uint8_t>(omega[i] + (prod[i] != first + i ? 1 : 0));
  }
}

std::uint64_t count_odd(std::span<const std::uint8_t> omega) noexcept {
  const std::size_t n = omega.size();
  const std::uint8_t* data = omega.data();
  const __m256i one = _mm256_set1_epi8(1);
  const __m256i zero = _mm256_setzero_si256();
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(_mm256_and_si256(v, one), zero));
  }
  std::uint64_t odd = hsum_epi64(acc);
  for (; i < n; ++i) odd += data[i] & 1u;
  return odd;
}

std::uint64_t count_bits(std::span<const std::uint64_t> words) noexcept {
  // Nibble lookup with vpshufb, folded into 64-bit lanes with vpsadbw.
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0F);
  const __m256i zero = _mm256_setzero_si256();
  __m256i acc = _mm256_setzero_si256();
  const std::size_t n = words.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words.data() + i));
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, zero));
  }
  std::uint64_t total = hsum_epi64(acc);
  for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(words[i]));
  return total;
}

void histogram(std::span<const std::uint8_t> omega, std::span<std::uint64_t> hist) noexcept {
  const __m256i zero = _mm256_setzero_si256();
  for (std::size_t base = 0; base < omega.size(); base += kHistChunk) {
    const std::size_t len = std::min(kHistChunk, omega.size() - base);
    const std::uint8_t* data = omega.data() + base;
    const std::size_t vec_len = len & ~std::size_t{31};

    __m256i vmax = zero;
    for (std::size_t i = 0; i < vec_len; i += 32) {
      vmax = _mm256_max_epu8(vmax, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i)));
    }
    alignas(32) std::uint8_t lanes[32];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), vmax);
    unsigned top = 0;
    for (std::uint8_t b : lanes) top = std::max<unsigned>(top, b);

    if (vec_len > 0) {
      for (unsigned value = 0; value <= top; ++value) {
        const __m256i target = _mm256_set1_epi8(static_cast<char>(value));
        __m256i acc64 = zero;
        __m256i acc8 = zero;
        unsigned pending = 0;
        for (std::size_t i = 0; i < vec_len; i += 32) {
          const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i));
          // cmpeq yields 0xFF (= -1) per match; subtracting counts up.
          acc8 = _mm256_sub_epi8(acc8, _mm256_cmpeq_epi8(v, target));
          if (++pending == 255) {
            acc64 = _mm256_add_epi64(acc64, _mm256_sad_epu8(acc8, zero));
            acc8 = zero;
            pending = 0;
          }
        }
        acc64 = _mm256_add_epi64(acc64, _mm256_sad_epu8(acc8, zero));
        hist[value] += hsum_epi64(acc64);
      }
    }
    for (std::size_t i = vec_len; i < len; ++i) ++hist[data[i]];
  }
}

}  // namespace pnt::simd::avx2
