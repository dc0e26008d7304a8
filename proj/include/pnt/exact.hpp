#pragma once
// Exact rational helpers on top of GMP.

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pnt {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Limit on the bit length of any canonical numerator or denominator produced
/// by an exact computation; exceeding it raises Overflow instead of rounding.
inline constexpr std::size_t kDefaultPrecisionBits = std::size_t{1} << 26;

Rational make_rational(std::uint64_t num, std::uint64_t den);
BigInt to_big(std::uint64_t v);
BigInt to_big(unsigned __int128 v);

/// Sum of num[i]/den[i] by balanced pairing without intermediate reduction,
/// canonicalized once at the end. Order-independent result.
Rational tree_sum(std::span<const BigInt> num, std::span<const BigInt> den);

/// Sum of 1/d over the denominators.
Rational sum_reciprocals(std::span<const BigInt> den);
Rational sum_reciprocals(std::span<const std::uint64_t> den);

/// Exact value of a finite double.
Rational from_double(double v);

double to_double(const Rational& q);

/// Raises Overflow when q exceeds the precision budget.
void check_precision(const Rational& q, std::size_t max_bits, const char* what);

/// "num/den" (den omitted when 1).
std::string to_string(const Rational& q);

/// Number of bits in |v|; 0 for v = 0.
std::size_t bit_length(const BigInt& v);

}  // namespace pnt
