#pragma once

#include <cstdint>
#include <vector>

#include "fpl/ffield.hpp"

namespace fpl {

/// Above this bound primes_up_to switches to the segmented sieve.
inline constexpr u64 kSegmentThreshold = 10'000'000;

/// Primes <= n in ascending order. SieveCapExceeded when n > limits.sieve_cap.
std::vector<u64> primes_up_to(u64 n, const Limits& limits = default_limits());

// The two strategies behind primes_up_to, exposed for cross-checking.
std::vector<u64> sieve_simple(u64 n);
std::vector<u64> sieve_segmented(u64 n, u64 segment_size = u64{1} << 18);

/// omega_table(n, m)[c] = #{primes p >= m dividing c} for 0 <= c <= n.
std::vector<std::uint8_t> omega_table(u64 n, u64 min_prime);

}  // namespace fpl
