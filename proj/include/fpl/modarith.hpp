#pragma once

#include <cstdint>
#include <optional>

namespace fpl {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

namespace modarith {

inline u64 mul_mod(u64 a, u64 b, u64 m) noexcept {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 add_mod(u64 a, u64 b, u64 m) noexcept {
  // a, b < m
  return a >= m - b ? a - (m - b) : a + b;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) noexcept {
  return a >= b ? a - b : a + (m - b);
}

u64 pow_mod(u64 base, u64 exp, u64 m) noexcept;

// Inverse of a modulo m; nullopt when gcd(a, m) != 1.
std::optional<u64> inv_mod(u64 a, u64 m) noexcept;

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n) noexcept;

u64 gcd(u64 a, u64 b) noexcept;

// base^exp, or nullopt if the value does not fit in 64 bits.
std::optional<u64> checked_pow(u64 base, u64 exp) noexcept;

}  // namespace modarith
}  // namespace fpl
