#include "fpl/ffield.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "fpl/fp_poly.hpp"

namespace fpl {

using modarith::add_mod;
using modarith::mul_mod;
using modarith::sub_mod;

Limits default_limits() {
  Limits limits;
  if (const char* env = std::getenv("FIXEDPOINT_LAB_CAP")) {
    u64 value = 0;
    std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc() && ptr == text.data() + text.size() && value > 0) {
      limits.enumeration_cap = value;
    }
  }
  return limits;
}

namespace {

void require_odd_prime(u64 p) {
  if (p == 2 || !modarith::is_prime(p)) {
    throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not an odd prime");
  }
}

u64 fnv1a(u64 h, u64 v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffu;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string render_poly(std::span<const u64> coeffs, char var) {
  std::string out;
  for (size_t i = coeffs.size(); i-- > 0;) {
    const u64 c = coeffs[i];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0 || c != 1) out += std::to_string(c);
    if (i >= 1) out += var;
    if (i >= 2) out += '^' + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

u64 parse_u64(std::string_view text) {
  u64 value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::ParseError, "bad integer '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

// ---------------------------------------------------------------- MonicPoly

MonicPoly MonicPoly::from_coeffs(u64 p, std::vector<u64> coeffs) {
  require_odd_prime(p);
  for (u64& c : coeffs) c %= p;
  fp_poly::trim(coeffs);
  if (coeffs.size() <= 1) {
    throw Error(ErrorCode::ZeroDegree, "polynomial must have degree >= 1");
  }
  if (coeffs.back() != 1) {
    throw Error(ErrorCode::NotMonic, "leading coefficient is " +
                                         std::to_string(coeffs.back()));
  }
  return MonicPoly(p, std::move(coeffs));
}

MonicPoly MonicPoly::x(u64 p) { return from_coeffs(p, {0, 1}); }

std::string MonicPoly::to_string() const {
  std::string out = "p=" + std::to_string(p_) + ":";
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(coeffs_[i]);
  }
  return out;
}

std::string MonicPoly::pretty(char var) const { return render_poly(coeffs_, var); }

ParsedCoeffs parse_coeffs(std::string_view text) {
  if (text.substr(0, 2) != "p=") {
    throw Error(ErrorCode::ParseError, "expected 'p=<p>:...' in '" + std::string(text) + "'");
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::ParseError, "missing ':' in '" + std::string(text) + "'");
  }
  ParsedCoeffs out;
  out.p = parse_u64(text.substr(2, colon - 2));
  std::string_view rest = text.substr(colon + 1);
  while (true) {
    const auto comma = rest.find(',');
    out.coeffs.push_back(parse_u64(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

MonicPoly parse_monic(std::string_view text) {
  ParsedCoeffs parsed = parse_coeffs(text);
  return MonicPoly::from_coeffs(parsed.p, std::move(parsed.coeffs));
}

// ------------------------------------------------------------- ExponentSpec

ExponentSpec ExponentSpec::tower(u64 base, u64 ell) {
  if (base < 2) {
    throw Error(ErrorCode::InvalidDegreeSpec, "tower base must be >= 2");
  }
  ExponentSpec e;
  e.is_tower_ = true;
  e.base_ = base;
  e.ell_ = ell;
  return e;
}

ExponentSpec ExponentSpec::plain(BigInt value) {
  if (value < 0) {
    throw Error(ErrorCode::InvalidDegreeSpec, "exponent must be non-negative");
  }
  ExponentSpec e;
  e.value_ = std::move(value);
  return e;
}

bool ExponentSpec::is_zero() const { return !is_tower_ && value_ == 0; }

u64 ExponentSpec::mod(u64 m) const {
  if (is_tower_) return reduce_tower_exponent(base_, ell_, m);
  return static_cast<u64>(value_ % m);
}

BigInt ExponentSpec::mod(const BigInt& m) const {
  if (is_tower_) return reduce_tower_exponent(base_, ell_, m);
  return value_ % m;
}

bool ExponentSpec::at_least(u64 bound) const {
  if (is_tower_) {
    auto v = modarith::checked_pow(base_, ell_);
    return !v || *v >= bound;
  }
  return value_ >= bound;
}

std::optional<u64> ExponentSpec::small_value() const {
  if (is_tower_) return modarith::checked_pow(base_, ell_);
  if (value_ > std::numeric_limits<u64>::max()) return std::nullopt;
  return static_cast<u64>(value_);
}

std::string ExponentSpec::to_string() const {
  if (is_tower_) return std::to_string(base_) + "^" + std::to_string(ell_);
  return value_.str();
}

BigInt reduce_tower_exponent(u64 base, u64 ell, const BigInt& modulus) {
  if (modulus == 1) return 0;
  return boost::multiprecision::powm(BigInt(base), BigInt(ell), modulus);
}

u64 reduce_tower_exponent(u64 base, u64 ell, u64 modulus) {
  return modarith::pow_mod(base, ell, modulus);
}

// ---------------------------------------------------------------- FieldElem

bool FieldElem::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](u64 c) { return c == 0; });
}

// ----------------------------------------------------------------- FieldCtx

FieldCtx::FieldCtx(MonicPoly modulus)
    : p_(modulus.p()), modulus_(std::move(modulus)) {
  const unsigned n = modulus_.degree();
  auto f = modulus_.coeffs();
  neg_low_.resize(n);
  for (unsigned i = 0; i < n; ++i) neg_low_[i] = (p_ - f[i]) % p_;
  order_ = boost::multiprecision::pow(BigInt(p_), n);
  if (order_ <= std::numeric_limits<u64>::max()) order_u64_ = static_cast<u64>(order_);
  u64 h = 0xcbf29ce484222325ull;
  h = fnv1a(h, p_);
  for (u64 c : f) h = fnv1a(h, c);
  tag_ = h;
}

FieldCtx FieldCtx::from_modulus(const MonicPoly& modulus) {
  if (!is_irreducible(modulus)) {
    throw Error(ErrorCode::NotIrreducible, modulus.to_string() + " is reducible");
  }
  return FieldCtx(modulus);
}

FieldElem FieldCtx::zero() const {
  return FieldElem(FieldElem::Coeffs(n(), 0), tag_);
}

FieldElem FieldCtx::one() const {
  FieldElem z = zero();
  z.coeffs_[0] = 1 % p_;
  return z;
}

FieldElem FieldCtx::gen() const {
  const u64 x[2] = {0, 1};
  return reduce(x);
}

FieldElem FieldCtx::from_int(std::int64_t v) const {
  FieldElem z = zero();
  const auto sp = static_cast<std::int64_t>(p_);
  std::int64_t r = v % sp;
  if (r < 0) r += sp;
  z.coeffs_[0] = static_cast<u64>(r);
  return z;
}

FieldElem FieldCtx::from_coeffs(std::span<const u64> coeffs) const {
  if (coeffs.size() > n()) return reduce(coeffs);
  FieldElem z = zero();
  for (size_t i = 0; i < coeffs.size(); ++i) z.coeffs_[i] = coeffs[i] % p_;
  return z;
}

FieldElem FieldCtx::reduce(std::span<const u64> poly) const {
  const unsigned deg = n();
  std::vector<u64> r(poly.begin(), poly.end());
  for (u64& c : r) c %= p_;
  for (size_t i = r.size(); i-- > deg;) {
    const u64 top = r[i];
    if (top == 0) continue;
    r[i] = 0;
    for (unsigned j = 0; j < deg; ++j) {
      r[i - deg + j] = add_mod(r[i - deg + j], mul_mod(top, neg_low_[j], p_), p_);
    }
  }
  FieldElem z = zero();
  for (unsigned i = 0; i < deg && i < r.size(); ++i) z.coeffs_[i] = r[i];
  return z;
}

u64 FieldCtx::encode(const FieldElem& z) const {
  check(z);
  if (!order_u64_) throw Error(ErrorCode::TooLarge, "field order exceeds 64 bits");
  u64 code = 0;
  for (size_t i = z.coeffs_.size(); i-- > 0;) code = code * p_ + z.coeffs_[i];
  return code;
}

FieldElem FieldCtx::decode(u64 code) const {
  FieldElem z = zero();
  for (unsigned i = 0; i < n(); ++i) {
    z.coeffs_[i] = code % p_;
    code /= p_;
  }
  return z;
}

FieldElem FieldCtx::add(const FieldElem& a, const FieldElem& b) const {
  check(a);
  check(b);
  FieldElem r = a;
  for (unsigned i = 0; i < n(); ++i) r.coeffs_[i] = add_mod(a.coeffs_[i], b.coeffs_[i], p_);
  return r;
}

FieldElem FieldCtx::sub(const FieldElem& a, const FieldElem& b) const {
  check(a);
  check(b);
  FieldElem r = a;
  for (unsigned i = 0; i < n(); ++i) r.coeffs_[i] = sub_mod(a.coeffs_[i], b.coeffs_[i], p_);
  return r;
}

FieldElem FieldCtx::neg(const FieldElem& a) const {
  check(a);
  FieldElem r = a;
  for (u64& c : r.coeffs_) c = c == 0 ? 0 : p_ - c;
  return r;
}

FieldElem FieldCtx::scale(const FieldElem& a, u64 k) const {
  check(a);
  FieldElem r = a;
  k %= p_;
  for (u64& c : r.coeffs_) c = mul_mod(c, k, p_);
  return r;
}

FieldElem FieldCtx::mul(const FieldElem& a, const FieldElem& b) const {
  check(a);
  check(b);
  const unsigned deg = n();
  if (deg == 1) {
    FieldElem r = a;
    r.coeffs_[0] = mul_mod(a.coeffs_[0], b.coeffs_[0], p_);
    return r;
  }
  boost::container::small_vector<u64, 8> prod(2 * deg - 1, 0);
  for (unsigned i = 0; i < deg; ++i) {
    const u64 ai = a.coeffs_[i];
    if (ai == 0) continue;
    for (unsigned j = 0; j < deg; ++j) {
      prod[i + j] = add_mod(prod[i + j], mul_mod(ai, b.coeffs_[j], p_), p_);
    }
  }
  for (size_t i = prod.size(); i-- > deg;) {
    const u64 top = prod[i];
    if (top == 0) continue;
    for (unsigned j = 0; j < deg; ++j) {
      prod[i - deg + j] = add_mod(prod[i - deg + j], mul_mod(top, neg_low_[j], p_), p_);
    }
  }
  FieldElem r = a;
  for (unsigned i = 0; i < deg; ++i) r.coeffs_[i] = prod[i];
  return r;
}

FieldElem FieldCtx::inv(const FieldElem& a) const {
  check(a);
  if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (n() == 1) {
    FieldElem r = a;
    r.coeffs_[0] = *modarith::inv_mod(a.coeffs_[0], p_);
    return r;
  }
  return pow_big(a, order_ - 2);
}

void FieldCtx::step(FieldElem& z) const {
  check(z);
  for (u64& c : z.coeffs_) {
    if (++c < p_) return;
    c = 0;
  }
}

FieldElem FieldCtx::pow_u64(const FieldElem& z, u64 e) const {
  check(z);
  FieldElem result = one();
  FieldElem base = z;
  while (e != 0) {
    if (e & 1u) result = mul(result, base);
    e >>= 1;
    if (e != 0) base = mul(base, base);
  }
  return result;
}

FieldElem FieldCtx::pow_big(const FieldElem& z, const BigInt& e) const {
  check(z);
  if (e <= std::numeric_limits<u64>::max()) return pow_u64(z, static_cast<u64>(e));
  FieldElem result = one();
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(e)) + 1;
  for (unsigned i = bits; i-- > 0;) {
    result = mul(result, result);
    if (boost::multiprecision::bit_test(e, i)) result = mul(result, z);
  }
  return result;
}

bool FieldCtx::in_prime_subfield(const FieldElem& z) const {
  check(z);
  return std::all_of(z.coeffs_.begin() + 1, z.coeffs_.end(), [](u64 c) { return c == 0; });
}

void FieldCtx::check(const FieldElem& z) const {
  if (z.tag_ != tag_ || z.coeffs_.size() != n()) {
    throw Error(ErrorCode::CtxMismatch, "element belongs to a different field");
  }
}

std::string FieldCtx::serialize(const FieldElem& z) const {
  check(z);
  std::string out = "p=" + std::to_string(p_) + ":";
  for (size_t i = 0; i < z.coeffs_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(z.coeffs_[i]);
  }
  return out;
}

FieldElem FieldCtx::parse(std::string_view text) const {
  ParsedCoeffs parsed = parse_coeffs(text);
  if (parsed.p != p_) {
    throw Error(ErrorCode::CtxMismatch, "element has characteristic " +
                                            std::to_string(parsed.p) + ", field has " +
                                            std::to_string(p_));
  }
  return from_coeffs(parsed.coeffs);
}

std::string FieldCtx::pretty(const FieldElem& z, char var) const {
  check(z);
  return render_poly(z.coeffs(), var);
}

// ---------------------------------------------------------- free functions

FieldCtx make_field(u64 p, unsigned n) {
  if (n < 1) throw Error(ErrorCode::DegreeOutOfRange, "extension degree must be >= 1");
  require_odd_prime(p);
  return FieldCtx::from_modulus(canonical_irreducible(p, n));
}

MonicPoly canonical_irreducible(u64 p, unsigned n) {
  if (n < 1) throw Error(ErrorCode::DegreeOutOfRange, "extension degree must be >= 1");
  require_odd_prime(p);
  if (n == 1) return MonicPoly::x(p);
  // Low coefficients counted little-endian in base p, i.e. by sum c_i p^i.
  std::vector<u64> coeffs(n + 1, 0);
  coeffs[n] = 1;
  while (true) {
    // A zero constant term leaves x as a factor.
    if (coeffs[0] != 0) {
      MonicPoly f = MonicPoly::from_coeffs(p, coeffs);
      if (is_irreducible(f)) return f;
    }
    unsigned i = 0;
    while (i < n && ++coeffs[i] == p) coeffs[i++] = 0;
    assert(i < n && "an irreducible of every degree exists");
  }
}

bool is_irreducible(const MonicPoly& f) {
  const unsigned n = f.degree();
  if (n == 1) return true;
  const u64 p = f.p();
  const fp_poly::Poly modulus(f.coeffs().begin(), f.coeffs().end());
  const fp_poly::Poly x{0, 1};
  // powers[k] = x^{p^k} mod f
  std::vector<fp_poly::Poly> powers{fp_poly::mod(x, modulus, p)};
  for (unsigned k = 1; k <= n; ++k) {
    powers.push_back(fp_poly::powmod(powers.back(), p, modulus, p));
  }
  if (powers[n] != powers[0]) return false;
  u64 rest = n;
  for (u64 r = 2; r <= rest; ++r) {
    if (rest % r != 0) continue;
    while (rest % r == 0) rest /= r;
    const auto g = fp_poly::gcd(fp_poly::sub(powers[n / r], x, p), modulus, p);
    if (g.size() != 1) return false;
  }
  return true;
}

bool is_irreducible(u64 p, std::span<const u64> coeffs) {
  return is_irreducible(MonicPoly::from_coeffs(p, {coeffs.begin(), coeffs.end()}));
}

FieldElem elem_pow(const FieldCtx& ctx, const FieldElem& z, const ExponentSpec& e) {
  ctx.check(z);
  if (z.is_zero()) {
    if (e.is_zero()) throw Error(ErrorCode::ZeroToZero, "0^0 is undefined here");
    return ctx.zero();
  }
  if (auto q = ctx.order_u64()) return ctx.pow_u64(z, e.mod(*q - 1));
  return ctx.pow_big(z, e.mod(BigInt(ctx.order() - 1)));
}

FieldElem frobenius(const FieldCtx& ctx, const FieldElem& z, u64 times) {
  ctx.check(z);
  FieldElem r = z;
  for (u64 i = 0; i < times % ctx.n(); ++i) r = ctx.pow_u64(r, ctx.p());
  return r;
}

u64 trace(const FieldCtx& ctx, const FieldElem& z) {
  ctx.check(z);
  FieldElem acc = ctx.zero();
  FieldElem conj = z;
  for (unsigned i = 0; i < ctx.n(); ++i) {
    acc = ctx.add(acc, conj);
    conj = ctx.pow_u64(conj, ctx.p());
  }
  assert(ctx.in_prime_subfield(acc));
  return acc.coeffs()[0];
}

u64 checked_ring_size(const FieldCtx& ctx, const Limits& limits) {
  const auto q = ctx.order_u64();
  if (!q || *q > limits.enumeration_cap) {
    throw Error(ErrorCode::TooLarge, "field of order " + ctx.order().str() +
                                         " exceeds enumeration cap " +
                                         std::to_string(limits.enumeration_cap));
  }
  return *q;
}

FieldEnumeration enumerate_field(const FieldCtx& ctx, const Limits& limits) {
  return FieldEnumeration(&ctx, checked_ring_size(ctx, limits));
}

FieldEnumeration::iterator::iterator(const FieldCtx* ctx, u64 index)
    : ctx_(ctx), index_(index) {
  if (ctx_ != nullptr) current_ = ctx_->zero();
}

FieldEnumeration::iterator& FieldEnumeration::iterator::operator++() {
  ++index_;
  ctx_->step(*current_);
  return *this;
}

}  // namespace fpl
