#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace pnt {

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n) noexcept;

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

/// Omega(n) counted with multiplicity; Omega(1) = 0.
unsigned big_omega(std::uint64_t n);

/// All primes p <= limit (plain sieve of Eratosthenes).
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

/// floor(sqrt(n)) computed exactly.
std::uint64_t isqrt(std::uint64_t n) noexcept;

}  // namespace pnt
