#include <atomic>
#include <cstdlib>
#include <cstring>

#include "pnt/simd.hpp"

namespace pnt::simd {
namespace {

Isa initial_isa() noexcept {
  const char* env = std::getenv("PNT_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
  return detect_isa();
}

std::atomic<Isa>& active() noexcept {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(PNT_BUILD_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(PNT_BUILD_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detect_isa() noexcept {
  if (isa_available(Isa::Avx2)) return Isa::Avx2;
  if (isa_available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

bool set_active_isa(Isa isa) noexcept {
  if (!isa_available(isa)) return false;
  active().store(isa, std::memory_order_relaxed);
  return true;
}

#if defined(PNT_BUILD_AVX2)
#define PNT_DISPATCH(fn, ...)                                \
  switch (active_isa()) {                                    \
    case Isa::Avx2: return avx2::fn(__VA_ARGS__);            \
    default: return scalar::fn(__VA_ARGS__);                 \
  }
#elif defined(PNT_BUILD_NEON)
#define PNT_DISPATCH(fn, ...)                                \
  switch (active_isa()) {                                    \
    case Isa::Neon: return neon::fn(__VA_ARGS__);            \
    default: return scalar::fn(__VA_ARGS__);                 \
  }
#else
#define PNT_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__);
#endif

void finalize_omega(std::span<std::uint8_t> omega, std::span<const std::uint64_t> prod,
                    std::uint64_t first) noexcept {
  PNT_DISPATCH(finalize_omega, omega, prod, first)
}

std::uint64_t count_odd(std::span<const std::uint8_t> omega) noexcept {
  PNT_DISPATCH(count_odd, omega)
}

std::uint64_t count_bits(std::span<const std::uint64_t> words) noexcept {
  PNT_DISPATCH(count_bits, words)
}

void histogram(std::span<const std::uint8_t> omega, std::span<std::uint64_t> hist) noexcept {
  PNT_DISPATCH(histogram, omega, hist)
}

#undef PNT_DISPATCH

}  // namespace pnt::simd
