#include "fpl/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fpl/error.hpp"

namespace fpl {

namespace {

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

std::vector<u64> sieve_simple(u64 n) {
  std::vector<u64> primes;
  if (n < 2) return primes;
  std::vector<bool> composite(n + 1, false);
  for (u64 i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= n; j += i) composite[j] = true;
  }
  return primes;
}

std::vector<u64> sieve_segmented(u64 n, u64 segment_size) {
  if (n < 2) return {};
  const u64 root = isqrt(n);
  std::vector<u64> base = sieve_simple(root);
  std::vector<u64> primes = base;
  std::vector<std::uint8_t> seg(segment_size);
  for (u64 lo = root + 1; lo <= n; lo += segment_size) {
    const u64 hi = std::min(n, lo + segment_size - 1);
    std::fill(seg.begin(), seg.begin() + (hi - lo + 1), 0);
    for (u64 p : base) {
      u64 start = std::max(p * p, (lo + p - 1) / p * p);
      for (u64 j = start; j <= hi; j += p) seg[j - lo] = 1;
    }
    for (u64 x = lo; x <= hi; ++x) {
      if (!seg[x - lo]) primes.push_back(x);
    }
  }
  return primes;
}

std::vector<u64> primes_up_to(u64 n, const Limits& limits) {
  if (n > limits.sieve_cap) {
    throw Error(ErrorCode::SieveCapExceeded,
                std::to_string(n) + " exceeds the sieve cap " + std::to_string(limits.sieve_cap));
  }
  return n > kSegmentThreshold ? sieve_segmented(n) : sieve_simple(n);
}

std::vector<std::uint8_t> omega_table(u64 n, u64 min_prime) {
  std::vector<std::uint8_t> omega(n + 1, 0);
  std::vector<bool> composite(n + 1, false);
  for (u64 i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    for (u64 j = 2 * i; j <= n; j += i) composite[j] = true;
    if (i < min_prime) continue;
    for (u64 j = i; j <= n; j += i) ++omega[j];
  }
  return omega;
}

}  // namespace fpl
