#include "fpl/fp_poly.hpp"

#include <algorithm>
#include <cassert>

namespace fpl::fp_poly {

using modarith::add_mod;
using modarith::mul_mod;
using modarith::sub_mod;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly add(const Poly& a, const Poly& b, u64 p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = add_mod(r[i], b[i], p);
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, u64 p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = sub_mod(r[i], b[i], p);
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j], p), p);
    }
  }
  trim(r);
  return r;
}

Poly mod(Poly a, const Poly& f, u64 p) {
  assert(!f.empty());
  trim(a);
  const size_t df = f.size() - 1;
  const u64 lead_inv = *modarith::inv_mod(f.back(), p);
  while (a.size() > df) {
    const u64 factor = mul_mod(a.back(), lead_inv, p);
    const size_t shift = a.size() - 1 - df;
    for (size_t j = 0; j <= df; ++j) {
      a[shift + j] = sub_mod(a[shift + j], mul_mod(factor, f[j], p), p);
    }
    trim(a);
  }
  return a;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
  return mod(mul(a, b, p), f, p);
}

Poly powmod(Poly base, u64 e, const Poly& f, u64 p) {
  Poly result = mod(Poly{1}, f, p);
  base = mod(std::move(base), f, p);
  while (e != 0) {
    if (e & 1u) result = mulmod(result, base, f, p);
    base = mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

Poly gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  const u64 lead_inv = *modarith::inv_mod(a.back(), p);
  for (u64& c : a) c = mul_mod(c, lead_inv, p);
  return a;
}

u64 eval(const Poly& a, u64 x, u64 p) {
  u64 acc = 0;
  for (size_t i = a.size(); i-- > 0;) acc = add_mod(mul_mod(acc, x, p), a[i], p);
  return acc;
}

}  // namespace fpl::fp_poly
