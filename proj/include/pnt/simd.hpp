#pragma once
// Data-parallel inner loops of the sieve and the Omega-table reductions.
//
// Each kernel has a scalar reference implementation and, where the target
// supports it, a vectorized variant (AVX2 on x86-64, NEON on AArch64). The
// variant is chosen once at runtime; PNT_SIMD=scalar in the environment forces
// the reference path. All kernels are integer-only, so every variant returns
// bit-identical results.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace pnt::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa) noexcept;

/// Best ISA available on this machine (ignores the PNT_SIMD override).
Isa detect_isa() noexcept;

/// ISA used by the dispatching entry points below.
Isa active_isa() noexcept;

/// Overrides the dispatch target; returns false if `isa` is not available.
bool set_active_isa(Isa isa) noexcept;

bool isa_available(Isa isa) noexcept;

// Dispatching entry points.

/// omega[i] += (prod[i] != first + i). `prod` holds the product of the prime
/// factors found below the sieving bound, so a mismatch means exactly one
/// prime factor above it is left.
void finalize_omega(std::span<std::uint8_t> omega, std::span<const std::uint64_t> prod,
                    std::uint64_t first) noexcept;

/// Number of odd entries (odd Omega), i.e. the count of n with lambda(n) = -1.
std::uint64_t count_odd(std::span<const std::uint8_t> omega) noexcept;

/// Population count over a bit array.
std::uint64_t count_bits(std::span<const std::uint64_t> words) noexcept;

/// Adds 1 to hist[omega[i]]; `hist` must cover every value present.
void histogram(std::span<const std::uint8_t> omega, std::span<std::uint64_t> hist) noexcept;

namespace scalar {
void finalize_omega(std::span<std::uint8_t> omega, std::span<const std::uint64_t> prod,
                    std::uint64_t first) noexcept;
std::uint64_t count_odd(std::span<const std::uint8_t> omega) noexcept;
std::uint64_t count_bits(std::span<const std::uint64_t> words) noexcept;
void histogram(std::span<const std::uint8_t> omega, std::span<std::uint64_t> hist) noexcept;
}  // namespace scalar

#if defined(PNT_BUILD_AVX2) || defined(PNT_SIMD_DECLARE_ALL)
namespace avx2 {
void finalize_omega(std::span<std::uint8_t> omega, std::span<const std::uint64_t> prod,
                    std::uint64_t first) noexcept;
std::uint64_t count_odd(std::span<const std::uint8_t> omega) noexcept;
std::uint64_t count_bits(std::span<const std::uint64_t> words) noexcept;
void histogram(std::span<const std::uint8_t> omega, std::span<std::uint64_t> hist) noexcept;
}  // namespace avx2
#endif

#if defined(PNT_BUILD_NEON) || defined(PNT_SIMD_DECLARE_ALL)
namespace neon {
void finalize_omega(std::span<std::uint8_t> omega, std::span<const std::uint64_t> prod,
                    std::uint64_t first) noexcept;
std::uint64_t count_odd(std::span<const std::uint8_t> omega) noexcept;
std::uint64_t count_bits(std::span<const std::uint64_t> words) noexcept;
void histogram(std::span<const std::uint8_t> omega, std::span<std::uint64_t> hist) noexcept;
}  // namespace neon
#endif

}  // namespace pnt::simd
