#include "fpl/modarith.hpp"

#include <array>

namespace fpl::modarith {

u64 pow_mod(u64 base, u64 exp, u64 m) noexcept {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1u) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::optional<u64> inv_mod(u64 a, u64 m) noexcept {
  if (m == 0) return std::nullopt;
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) return std::nullopt;
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kWitnesses = {2, 3, 5, 7, 11, 13,
                                                     17, 19, 23, 29, 31, 37};
  for (u64 w : kWitnesses) {
    if (n % w == 0) return n == w;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1u) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 w : kWitnesses) {
    u64 x = pow_mod(w, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 gcd(u64 a, u64 b) noexcept {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::optional<u64> checked_pow(u64 base, u64 exp) noexcept {
  if (exp == 0) return 1;
  if (base <= 1) return base;
  u64 result = 1;
  for (u64 i = 0; i < exp; ++i) {
    if (result > UINT64_MAX / base) return std::nullopt;
    result *= base;
  }
  return result;
}

}  // namespace fpl::modarith
