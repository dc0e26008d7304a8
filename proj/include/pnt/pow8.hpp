#pragma once
// Resolution of real interval endpoints 8^x to integers.

#include <cstdint>

namespace pnt {

/// floor(8^x) for a real (double) exponent x >= 0, evaluated with correctly
/// rounded multiple-precision arithmetic. Exact integer powers (3x integral)
/// are recognised and returned exactly. Throws RangeTooLarge when the result
/// does not fit in 64 bits.
std::uint64_t floor_pow8(double x);

/// 8^x as a long double (for bounds and reporting, not for counting).
long double pow8(long double x) noexcept;

/// log base 8 of a positive integer, exact on powers of two.
long double log8(std::uint64_t v) noexcept;

}  // namespace pnt
