#include <doctest.h>

#include <numeric>
#include <random>

#include "fpl/ffield.hpp"

using namespace fpl;

namespace {

// Naive long division remainder, written independently of fp_poly.
std::vector<u64> naive_rem(std::vector<u64> a, const std::vector<u64>& b, u64 p) {
  auto strip = [](std::vector<u64>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  strip(a);
  u64 lead_inv = 1;
  while (b.back() * lead_inv % p != 1) ++lead_inv;
  while (a.size() >= b.size()) {
    const u64 f = a.back() * lead_inv % p;
    const size_t s = a.size() - b.size();
    for (size_t j = 0; j < b.size(); ++j) a[s + j] = (a[s + j] + (p - f) * b[j]) % p;
    strip(a);
  }
  return a;
}

// All monic polynomials of the given degree over F_p.
std::vector<std::vector<u64>> monics(u64 p, unsigned deg) {
  std::vector<std::vector<u64>> out;
  u64 total = 1;
  for (unsigned i = 0; i < deg; ++i) total *= p;
  for (u64 code = 0; code < total; ++code) {
    std::vector<u64> f(deg + 1, 0);
    u64 c = code;
    for (unsigned i = 0; i < deg; ++i) {
      f[i] = c % p;
      c /= p;
    }
    f[deg] = 1;
    out.push_back(f);
  }
  return out;
}

bool irreducible_by_trial_division(const std::vector<u64>& f, u64 p) {
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  for (unsigned k = 1; k <= deg / 2; ++k) {
    for (const auto& g : monics(p, k)) {
      if (naive_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

FieldElem random_elem(const FieldCtx& F, std::mt19937_64& rng) {
  std::vector<u64> c(F.n());
  for (auto& x : c) x = rng() % F.p();
  return F.from_coeffs(c);
}

}  // namespace

TEST_CASE("make_field picks the canonical modulus") {
  CHECK(make_field(5, 1).modulus() == MonicPoly::x(5));
  CHECK(make_field(3, 2).modulus().to_string() == "p=3:1,0,1");
  CHECK(make_field(3, 2).order() == 9);
  CHECK_THROWS_AS(make_field(4, 1), Error);
  try {
    make_field(4, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPrime);
  }
  try {
    make_field(2, 3);
    FAIL("p = 2 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPrime);
  }
  try {
    make_field(3, 0);
    FAIL("n = 0 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeOutOfRange);
  }
}

TEST_CASE("canonical_irreducible matches exhaustive search") {
  CHECK(canonical_irreducible(3, 1) == MonicPoly::x(3));
  CHECK(canonical_irreducible(3, 2).to_string() == "p=3:1,0,1");
  CHECK(canonical_irreducible(5, 2).to_string() == "p=5:2,0,1");
  for (u64 p : {3, 5, 7, 11}) {
    for (unsigned n : {2u, 3u, 4u}) {
      if (n == 4 && p > 5) continue;
      std::vector<u64> expected;
      for (const auto& f : monics(p, n)) {
        if (irreducible_by_trial_division(f, p)) {
          expected = f;
          break;
        }
      }
      const MonicPoly got = canonical_irreducible(p, n);
      CHECK(std::vector<u64>(got.coeffs().begin(), got.coeffs().end()) == expected);
      CHECK(canonical_irreducible(p, n) == got);
    }
  }
}

TEST_CASE("is_irreducible examples and errors") {
  CHECK(is_irreducible(MonicPoly::x(3)));
  CHECK(is_irreducible(parse_monic("p=3:1,0,1")));
  CHECK_FALSE(is_irreducible(parse_monic("p=3:2,0,1")));
  try {
    const std::vector<u64> c{1, 0, 2};
    is_irreducible(3, c);
    FAIL("non-monic accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotMonic);
  }
  try {
    const std::vector<u64> c{1};
    is_irreducible(3, c);
    FAIL("constant accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroDegree);
  }
}

TEST_CASE("is_irreducible agrees with trial division for p <= 5, deg <= 4") {
  for (u64 p : {3, 5}) {
    for (unsigned deg = 1; deg <= 4; ++deg) {
      for (const auto& f : monics(p, deg)) {
        CAPTURE(p);
        CAPTURE(deg);
        CHECK(is_irreducible(p, f) == irreducible_by_trial_division(f, p));
      }
    }
  }
}

TEST_CASE("elem_pow examples") {
  const FieldCtx F9 = make_field(3, 2);
  const FieldElem u = F9.gen();
  CHECK(F9.mul(u, u) == F9.from_int(-1));
  CHECK(elem_pow(F9, u, ExponentSpec::tower(3, 1)) == F9.scale(u, 2));
  CHECK(F9.pretty(elem_pow(F9, u, ExponentSpec::tower(3, 1))) == "2u");

  const FieldCtx F7 = make_field(7, 1);
  CHECK(elem_pow(F7, F7.from_int(3), ExponentSpec::plain(u64{0})) == F7.one());
  CHECK(elem_pow(F9, F9.zero(), ExponentSpec::tower(3, 5)) == F9.zero());
  try {
    elem_pow(F9, F9.zero(), ExponentSpec::plain(u64{0}));
    FAIL("0^0 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroToZero);
  }
}

TEST_CASE("huge tower exponents are never materialized") {
  const FieldCtx F9 = make_field(3, 2);
  const FieldElem u = F9.gen();
  const u64 ell = 1'000'000'000'000'000'001ull;  // odd
  CHECK(elem_pow(F9, u, ExponentSpec::tower(3, ell)) == frobenius(F9, u, 1));
  CHECK(elem_pow(F9, u, ExponentSpec::tower(3, ell + 1)) == u);
  BigInt huge = boost::multiprecision::pow(BigInt(2), 200) + 3;
  // 2^200 + 3 mod 8 = 3
  CHECK(elem_pow(F9, u, ExponentSpec::plain(huge)) == F9.pow_u64(u, 3));
}

TEST_CASE("reduce_tower_exponent") {
  CHECK(reduce_tower_exponent(3, 2, BigInt(8)) == 1);
  CHECK(reduce_tower_exponent(4, 3, BigInt(24)) == 16);
  CHECK(reduce_tower_exponent(7, 0, BigInt(100)) == 1);
  CHECK(reduce_tower_exponent(5, 3, u64{1}) == 0);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const u64 base = 2 + rng() % 50, ell = rng() % 40, m = 1 + rng() % 100000;
    const BigInt direct = boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(ell)) % m;
    CHECK(reduce_tower_exponent(base, ell, BigInt(m)) == direct);
    CHECK(BigInt(reduce_tower_exponent(base, ell, m)) == direct);
  }
}

TEST_CASE("frobenius and trace examples") {
  const FieldCtx F9 = make_field(3, 2);
  const FieldElem u = F9.gen();
  CHECK(frobenius(F9, u, 2) == u);
  CHECK(frobenius(F9, u, 1) == F9.scale(u, 2));
  const FieldCtx F5 = make_field(5, 1);
  CHECK(frobenius(F5, F5.from_int(3), 4) == F5.from_int(3));

  CHECK(trace(F9, F9.one()) == 2);
  CHECK(trace(F9, u) == 0);
  CHECK(trace(F5, F5.from_int(4)) == 4);
}

TEST_CASE("enumerate_field order and size") {
  const FieldCtx F3 = make_field(3, 1);
  std::vector<std::string> seen;
  for (const auto& z : enumerate_field(F3)) seen.push_back(F3.pretty(z));
  CHECK(seen == std::vector<std::string>{"0", "1", "2"});

  const FieldCtx F9 = make_field(3, 2);
  seen.clear();
  for (const auto& z : enumerate_field(F9)) seen.push_back(F9.pretty(z));
  CHECK(seen == std::vector<std::string>{"0", "1", "2", "u", "u+1", "u+2", "2u", "2u+1",
                                         "2u+2"});

  const FieldCtx F25 = make_field(5, 2);
  u64 count = 0;
  for ([[maybe_unused]] const auto& z : enumerate_field(F25)) ++count;
  CHECK(count == 25);

  Limits tiny;
  tiny.enumeration_cap = 10;
  try {
    enumerate_field(F25, tiny);
    FAIL("cap ignored");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}

TEST_CASE("context mismatch is rejected") {
  const FieldCtx F9 = make_field(3, 2);
  const FieldCtx F25 = make_field(5, 2);
  const FieldCtx F27 = make_field(3, 3);
  try {
    F25.add(F25.one(), F9.one());
    FAIL("foreign element accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CtxMismatch);
  }
  CHECK_THROWS_AS(frobenius(F27, F9.gen(), 1), Error);
  CHECK_THROWS_AS(trace(F9, F27.gen()), Error);
  // A second construction of the same field is interchangeable.
  CHECK_NOTHROW(make_field(3, 2).add(F9.gen(), F9.one()));
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(42);
  for (auto [p, n] : std::vector<std::pair<u64, unsigned>>{{3, 1}, {3, 4}, {5, 3}, {7, 2}, {13, 3}}) {
    const FieldCtx F = make_field(p, n);
    for (int i = 0; i < 100; ++i) {
      const auto a = random_elem(F, rng), b = random_elem(F, rng), c = random_elem(F, rng);
      CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      CHECK(F.mul(a, b) == F.mul(b, a));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.add(a, F.neg(a)).is_zero());
      if (!a.is_zero()) CHECK(F.mul(a, F.inv(a)) == F.one());
    }
  }
}

TEST_CASE("plain exponents reduce modulo q - 1") {
  std::mt19937_64 rng(3);
  for (auto [p, n] : std::vector<std::pair<u64, unsigned>>{{3, 2}, {3, 3}, {5, 2}, {7, 2}, {11, 1}}) {
    const FieldCtx F = make_field(p, n);
    const u64 q1 = *F.order_u64() - 1;
    for (int i = 0; i < 100; ++i) {
      auto z = random_elem(F, rng);
      if (z.is_zero()) continue;
      const u64 e = 1 + rng() % 100000;
      const auto lhs = elem_pow(F, z, ExponentSpec::plain(e));
      const FieldElem rhs = e % q1 == 0 ? F.one() : elem_pow(F, z, ExponentSpec::plain(e % q1));
      CHECK(lhs == rhs);
      CHECK(lhs == F.pow_u64(z, e));
    }
  }
}

TEST_CASE("frobenius periodicity, fixed fields, and trace invariance") {
  for (auto [p, n] : std::vector<std::pair<u64, unsigned>>{
           {3, 1}, {3, 2}, {3, 3}, {3, 4}, {5, 1}, {5, 2}, {5, 3}, {7, 2}}) {
    const FieldCtx F = make_field(p, n);
    for (u64 ell = 1; ell <= 2 * n; ++ell) {
      u64 fixed = 0;
      for (const auto& z : enumerate_field(F)) {
        const auto fz = frobenius(F, z, ell);
        CHECK(fz == frobenius(F, z, ell % n));
        CHECK(fz == elem_pow(F, z, ExponentSpec::tower(p, ell)) );
        if (fz == z) ++fixed;
      }
      u64 expected = 1;
      for (u64 i = 0; i < std::gcd(ell, static_cast<u64>(n)); ++i) expected *= p;
      CAPTURE(p);
      CAPTURE(n);
      CAPTURE(ell);
      CHECK(fixed == expected);
    }
    for (const auto& z : enumerate_field(F)) {
      const u64 t = trace(F, z);
      CHECK(t < p);
      CHECK(trace(F, frobenius(F, z, 1)) == t);
    }
  }
}

TEST_CASE("serialization") {
  CHECK(parse_monic("p=3:1,0,1").pretty('t') == "t^2+1");
  CHECK(parse_monic("p=5:0,1").pretty('t') == "t");
  CHECK_THROWS_AS(parse_monic("3:1,0,1"), Error);
  CHECK_THROWS_AS(parse_monic("p=3:1,,1"), Error);
  const FieldCtx F = make_field(7, 3);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto z = random_elem(F, rng);
    CHECK(F.parse(F.serialize(z)) == z);
    CHECK(F.decode(F.encode(z)) == z);
  }
  CHECK_THROWS_AS(F.parse("p=5:1,2,3"), Error);
}
