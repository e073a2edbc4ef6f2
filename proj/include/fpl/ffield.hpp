#pragma once

// Exact arithmetic in F_p and F_{p^n} = F_p[x]/(f).
//
// Elements are dense coefficient vectors (coefficient i multiplies x^i) and
// carry the tag of the context that created them; every operation goes
// through the owning FieldCtx, which rejects foreign elements.

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fpl/error.hpp"
#include "fpl/modarith.hpp"

namespace fpl {

using BigInt = boost::multiprecision::cpp_int;

/// Resource caps shared by every enumeration-based routine.
struct Limits {
  u64 enumeration_cap = u64{1} << 20;
  u64 explicit_degree_cap = 4096;
  u64 sieve_cap = 100'000'000;
};

/// Defaults, with FIXEDPOINT_LAB_CAP overriding the enumeration cap.
Limits default_limits();

/// Monic polynomial over F_p, constant term first. The leading 1 is stored.
class MonicPoly {
 public:
  /// Validates p (odd prime), reduces coefficients mod p and checks that the
  /// last one is 1.
  static MonicPoly from_coeffs(u64 p, std::vector<u64> coeffs);
  /// The polynomial x.
  static MonicPoly x(u64 p);

  u64 p() const noexcept { return p_; }
  unsigned degree() const noexcept {
    return static_cast<unsigned>(coeffs_.size() - 1);
  }
  std::span<const u64> coeffs() const noexcept { return coeffs_; }

  /// "p=3:1,0,1" for x^2 + 1.
  std::string to_string() const;
  /// Human form, e.g. "t^2+1".
  std::string pretty(char var = 'x') const;

  friend bool operator==(const MonicPoly&, const MonicPoly&) = default;

 private:
  MonicPoly(u64 p, std::vector<u64> coeffs)
      : p_(p), coeffs_(std::move(coeffs)) {}

  u64 p_;
  std::vector<u64> coeffs_;
};

/// Parses "p=<p>:c0,c1,...". Throws ParseError on malformed input.
struct ParsedCoeffs {
  u64 p;
  std::vector<u64> coeffs;
};
ParsedCoeffs parse_coeffs(std::string_view text);
MonicPoly parse_monic(std::string_view text);

/// Exponents that may be far too large to materialize: base^ell or a plain
/// arbitrary-precision integer.
class ExponentSpec {
 public:
  static ExponentSpec tower(u64 base, u64 ell);
  static ExponentSpec plain(BigInt e);
  static ExponentSpec plain(u64 e) { return plain(BigInt(e)); }

  bool is_tower() const noexcept { return is_tower_; }
  u64 base() const noexcept { return base_; }
  u64 ell() const noexcept { return ell_; }
  const BigInt& plain_value() const noexcept { return value_; }

  bool is_zero() const;
  /// Residue of the exponent modulo m (m >= 1), never building base^ell.
  u64 mod(u64 m) const;
  BigInt mod(const BigInt& m) const;
  /// exponent >= bound, decided without overflow.
  bool at_least(u64 bound) const;
  /// Exact value when it fits in 64 bits.
  std::optional<u64> small_value() const;

  std::string to_string() const;

 private:
  bool is_tower_ = false;
  u64 base_ = 0;
  u64 ell_ = 0;
  BigInt value_;
};

/// base^ell mod modulus by square-and-multiply.
BigInt reduce_tower_exponent(u64 base, u64 ell, const BigInt& modulus);
u64 reduce_tower_exponent(u64 base, u64 ell, u64 modulus);

class FieldCtx;

class FieldElem {
 public:
  using Coeffs = boost::container::small_vector<u64, 4>;

  std::span<const u64> coeffs() const noexcept {
    return {coeffs_.data(), coeffs_.size()};
  }
  bool is_zero() const noexcept;
  u64 ctx_tag() const noexcept { return tag_; }

  friend bool operator==(const FieldElem&, const FieldElem&) = default;

 private:
  friend class FieldCtx;
  FieldElem(Coeffs coeffs, u64 tag) : coeffs_(std::move(coeffs)), tag_(tag) {}

  Coeffs coeffs_;
  u64 tag_ = 0;
};

class FieldCtx {
 public:
  /// F_p[x]/(modulus); throws NotIrreducible if modulus is reducible.
  static FieldCtx from_modulus(const MonicPoly& modulus);

  u64 p() const noexcept { return p_; }
  unsigned n() const noexcept { return modulus_.degree(); }
  const MonicPoly& modulus() const noexcept { return modulus_; }
  /// q = p^n.
  const BigInt& order() const noexcept { return order_; }
  std::optional<u64> order_u64() const noexcept { return order_u64_; }
  u64 tag() const noexcept { return tag_; }

  FieldElem zero() const;
  FieldElem one() const;
  /// The class of x (the generator u of the model).
  FieldElem gen() const;
  FieldElem from_int(std::int64_t v) const;
  FieldElem from_coeffs(std::span<const u64> coeffs) const;
  /// Reduces an arbitrary polynomial over F_p modulo the field modulus.
  FieldElem reduce(std::span<const u64> poly) const;

  /// Sum c_i p^i; requires q < 2^64.
  u64 encode(const FieldElem& z) const;
  FieldElem decode(u64 code) const;

  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  /// Multiplicative inverse; throws DivisionByZero for a = 0.
  FieldElem inv(const FieldElem& a) const;
  FieldElem scale(const FieldElem& a, u64 k) const;
  /// Advances z to the next element in encoding order (wrapping to 0).
  void step(FieldElem& z) const;

  /// Plain binary exponentiation with a machine-word exponent (0^0 = 1).
  FieldElem pow_u64(const FieldElem& z, u64 e) const;
  FieldElem pow_big(const FieldElem& z, const BigInt& e) const;

  bool in_prime_subfield(const FieldElem& z) const;

  /// Throws CtxMismatch unless z was created by this context.
  void check(const FieldElem& z) const;

  /// "p=3:1,2" (n coefficients, constant first).
  std::string serialize(const FieldElem& z) const;
  FieldElem parse(std::string_view text) const;
  /// "2u+1" style rendering; '\0' picks u for n >= 2.
  std::string pretty(const FieldElem& z, char var = 'u') const;

 private:
  FieldCtx(MonicPoly modulus);

  u64 p_;
  MonicPoly modulus_;
  std::vector<u64> neg_low_;  // -f_i for i < n, so x^n == sum neg_low_[i] x^i
  BigInt order_;
  std::optional<u64> order_u64_;
  u64 tag_;
};

/// F_{p^n} defined by canonical_irreducible(p, n).
FieldCtx make_field(u64 p, unsigned n);

/// Monic irreducible of degree n minimizing sum c_i p^i over the
/// non-leading coefficients.
MonicPoly canonical_irreducible(u64 p, unsigned n);

/// Rabin's test: x^{p^n} == x mod f and gcd(x^{p^{n/r}} - x, f) = 1 for
/// every prime r | n.
bool is_irreducible(const MonicPoly& f);
/// Same, validating raw coefficients first (NotMonic / ZeroDegree).
bool is_irreducible(u64 p, std::span<const u64> coeffs);

/// z^e with exponents reduced mod q - 1 for z != 0.
FieldElem elem_pow(const FieldCtx& ctx, const FieldElem& z,
                   const ExponentSpec& e);

/// z^{p^times}; only times mod n matters.
FieldElem frobenius(const FieldCtx& ctx, const FieldElem& z, u64 times);

/// z + z^p + ... + z^{p^{n-1}} as a residue mod p.
u64 trace(const FieldCtx& ctx, const FieldElem& z);

/// All q elements in ascending encoding order.
class FieldEnumeration {
 public:
  class iterator {
   public:
    using value_type = FieldElem;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    const FieldElem& operator*() const { return *current_; }
    const FieldElem* operator->() const { return &*current_; }
    iterator& operator++();
    iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    bool operator==(const iterator& other) const {
      return index_ == other.index_;
    }

   private:
    friend class FieldEnumeration;
    iterator(const FieldCtx* ctx, u64 index);

    const FieldCtx* ctx_ = nullptr;
    u64 index_ = 0;
    std::optional<FieldElem> current_;
  };

  iterator begin() const { return iterator(ctx_, 0); }
  iterator end() const { return iterator(nullptr, size_); }
  u64 size() const noexcept { return size_; }

 private:
  friend FieldEnumeration enumerate_field(const FieldCtx&, const Limits&);
  FieldEnumeration(const FieldCtx* ctx, u64 size) : ctx_(ctx), size_(size) {}

  const FieldCtx* ctx_;
  u64 size_;
};

/// Throws TooLarge when q exceeds the enumeration cap. The context must
/// outlive the enumeration.
FieldEnumeration enumerate_field(const FieldCtx& ctx,
                                 const Limits& limits = default_limits());

/// Enumeration-size guard shared by the brute-force routines.
u64 checked_ring_size(const FieldCtx& ctx, const Limits& limits);

}  // namespace fpl
