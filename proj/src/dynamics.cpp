#include "fpl/dynamics.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

#include "fpl/error.hpp"
#include "fpl/modarith.hpp"

namespace fpl {

namespace {

using modarith::add_mod;
using modarith::mul_mod;

// Word and bignum arithmetic behind one interface so the Z/p^k power rule
// and the Newton step are written once.
u64 powm(u64 b, u64 e, u64 m) { return modarith::pow_mod(b, e, m); }
BigInt powm(const BigInt& b, const BigInt& e, const BigInt& m) {
  return boost::multiprecision::powm(b, e, m);
}
u64 mulm(u64 a, u64 b, u64 m) { return mul_mod(a, b, m); }
u64 addm(u64 a, u64 b, u64 m) { return add_mod(a, b, m); }
BigInt addm(const BigInt& a, const BigInt& b, const BigInt& m) { return (a + b) % m; }
BigInt mulm(const BigInt& a, const BigInt& b, const BigInt& m) { return a * b % m; }

std::optional<u64> invm(u64 a, u64 m) { return modarith::inv_mod(a, m); }
std::optional<BigInt> invm(const BigInt& a, const BigInt& m) {
  BigInt r0 = m, r1 = a % m, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const BigInt q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
  }
  if (r0 != 1) return std::nullopt;
  if (s0 < 0) s0 += m;
  return s0;
}

template <class I>
class PkRing {
 public:
  PkRing(u64 p, unsigned k) : p_(p), k_(k), m_(1) {
    for (unsigned i = 0; i < k; ++i) m_ *= I(p);
    phi_ = m_ / I(p) * I(p - 1);
  }

  const I& modulus() const { return m_; }

  I reduce(std::int64_t c) const {
    // Magnitude first so INT64_MIN does not overflow.
    const u64 mag = c < 0 ? u64(0) - static_cast<u64>(c) : static_cast<u64>(c);
    I r = I(mag) % m_;
    if (c < 0 && r != 0) r = m_ - r;
    return r;
  }

  I pow(const I& z0, const ExponentSpec& d, unsigned shift) const {
    const I z = z0 % m_;
    if (shift == 0 ? d.is_zero() : !d.at_least(2)) return I(1) % m_;
    if (z % I(p_) != 0) {
      I e = I(d.mod(phi_));
      e = (e + phi_ - I(shift)) % phi_;
      return powm(z, e, m_);
    }
    if (z == 0) return I(0);
    unsigned v = 0;
    for (I t = z; t % I(p_) == 0; t /= I(p_)) ++v;
    // (d - shift) * v >= k  <=>  d >= ceil(k / v) + shift
    const u64 bound = (k_ + v - 1) / v + shift;
    if (d.at_least(bound)) return I(0);
    const u64 e = *d.small_value() - shift;
    return powm(z, I(e), m_);
  }

  I f(const ExponentSpec& d, const I& c, const I& z) const {
    const I r = addm(pow(z, d, 0), c, m_);
    const I zr = z % m_;
    return r >= zr ? I(r - zr) : I(m_ - (zr - r));
  }

  I df(const ExponentSpec& d, const I& z) const {
    const I r = mulm(I(d.mod(m_)), pow(z, d, 1), m_);
    return r == 0 ? I(m_ - 1) : I(r - 1);
  }

 private:
  u64 p_;
  unsigned k_;
  I m_;
  I phi_;
};

void require_odd_prime(u64 p) {
  if (p < 3 || !modarith::is_prime(p)) {
    throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not an odd prime");
  }
}

OrbitCensus census_of(const std::vector<u64>& next) {
  const u64 n = next.size();
  OrbitCensus census;
  census.ring_size = n;
  enum : std::uint8_t { Unseen, OnPath, Done };
  std::vector<std::uint8_t> state(n, Unseen);
  std::vector<u64> pos(n, 0);
  std::vector<u64> path;
  u64 periodic = 0;
  for (u64 s = 0; s < n; ++s) {
    if (state[s] != Unseen) continue;
    path.clear();
    u64 x = s;
    while (state[x] == Unseen) {
      state[x] = OnPath;
      pos[x] = path.size();
      path.push_back(x);
      x = next[x];
    }
    if (state[x] == OnPath) {
      const u64 len = path.size() - pos[x];
      census.cycle_lengths.push_back(len);
      periodic += len;
      if (len == 1) census.fixed_points.push_back(x);
    }
    for (u64 y : path) state[y] = Done;
  }
  std::sort(census.cycle_lengths.begin(), census.cycle_lengths.end());
  std::sort(census.fixed_points.begin(), census.fixed_points.end());
  census.fixed_count = census.fixed_points.size();
  census.tail_count = n - periodic;
  return census;
}

}  // namespace

std::string OrbitCensus::cycles_string() const {
  std::map<u64, u64> mult;
  for (u64 len : cycle_lengths) ++mult[len];
  std::string out;
  for (auto [len, m] : mult) {
    if (!out.empty()) out += ';';
    out += std::to_string(len) + '^' + std::to_string(m);
  }
  return out;
}

bool OrbitCensus::has_cycle_of_length(u64 len) const {
  return std::binary_search(cycle_lengths.begin(), cycle_lengths.end(), len);
}

unsigned max_word_precision(u64 p) {
  unsigned k = 0;
  while (modarith::checked_pow(p, k + 1)) ++k;
  return k;
}

Truncation::Truncation(u64 p, unsigned k) : p_(p), k_(k) {
  require_odd_prime(p);
  if (k < 1) throw Error(ErrorCode::DegreeOutOfRange, "precision k must be >= 1");
  if (k > max_word_precision(p)) {
    throw Error(ErrorCode::PrecisionTooLarge,
                std::to_string(p) + "^" + std::to_string(k) + " does not fit in 64 bits");
  }
  m_ = *modarith::checked_pow(p, k);
}

u64 Truncation::reduce(std::int64_t c) const { return PkRing<u64>(p_, k_).reduce(c); }

u64 Truncation::pow(u64 z, const ExponentSpec& d, unsigned shift) const {
  return PkRing<u64>(p_, k_).pow(z, d, shift);
}

u64 Truncation::apply(u64 z, const ExponentSpec& d, u64 c) const {
  return add_mod(pow(z, d), c % m_, m_);
}

u64 fixed_point_poly(const Truncation& ring, const ExponentSpec& d, u64 c, u64 z) {
  return PkRing<u64>(ring.p(), ring.k()).f(d, c % ring.modulus(), z);
}

u64 fixed_point_derivative(const Truncation& ring, const ExponentSpec& d, u64 z) {
  return PkRing<u64>(ring.p(), ring.k()).df(d, z);
}

OrbitCensus functional_graph_census(const RingSpec& ring, const DegreeSpec& dspec,
                                    const FieldElem& c, const Limits& limits) {
  const ExponentSpec e = dspec.exponent(ring.p());
  const FieldCtx field = ring.field();
  field.check(c);
  const u64 q = checked_ring_size(field, limits);
  const u64 reduced = e.mod(q - 1);
  std::vector<u64> next(q);
  if (field.n() == 1) {
    const u64 p = field.p();
    const u64 cc = field.encode(c);
    for (u64 z = 0; z < p; ++z) {
      next[z] = add_mod(z == 0 ? 0 : modarith::pow_mod(z, reduced, p), cc, p);
    }
  } else {
    FieldElem z = field.zero();
    for (u64 i = 0; i < q; ++i, field.step(z)) {
      const FieldElem zd = z.is_zero() ? z : field.pow_u64(z, reduced);
      next[i] = field.encode(field.add(zd, c));
    }
  }
  return census_of(next);
}

OrbitCensus functional_graph_census(const RingSpec& ring, const DegreeSpec& dspec,
                                    std::int64_t c, const Limits& limits) {
  return functional_graph_census(ring, dspec, ring.field().from_int(c), limits);
}

OrbitCensus functional_graph_census(const Truncation& ring, const DegreeSpec& dspec,
                                    std::int64_t c, const Limits& limits) {
  const u64 m = ring.modulus();
  if (m > limits.enumeration_cap) {
    throw Error(ErrorCode::TooLarge, "Z/" + std::to_string(ring.p()) + "^" +
                                         std::to_string(ring.k()) +
                                         " exceeds the enumeration cap");
  }
  const ExponentSpec e = dspec.exponent(ring.p());
  const PkRing<u64> R(ring.p(), ring.k());
  const u64 cc = R.reduce(c);
  std::vector<u64> next(m);
  for (u64 z = 0; z < m; ++z) next[z] = add_mod(R.pow(z, e, 0), cc, m);
  return census_of(next);
}

ProbeReport dichotomy_probe(u64 p, u64 ell, std::int64_t c, unsigned k,
                             const Limits& limits) {
  const Truncation ring(p, k);
  ProbeReport report{p, ell, c, k, functional_graph_census(ring, DegreeSpec::p_pow(ell), c, limits)};
  report.p_fixed_points = report.census.fixed_count >= p;
  report.p_cycle = report.census.has_cycle_of_length(p);
  return report;
}

std::string PadicApprox::to_string() const {
  return value.str() + " mod " + std::to_string(p) + "^" + std::to_string(k);
}

namespace {

template <class I>
I newton_lift(u64 p, const ExponentSpec& d, std::int64_t c, u64 root, unsigned k) {
  I z = I(root);
  for (unsigned j = 1; j < k;) {
    const unsigned next = std::min(2 * j, k);
    const PkRing<I> R(p, next);
    const I cc = R.reduce(c);
    const I fz = R.f(d, cc, z);
    const auto inv = invm(R.df(d, z), R.modulus());
    if (!inv) throw Error(ErrorCode::SingularRoot, "derivative is not a unit");
    const I step = mulm(fz, *inv, R.modulus());
    z = z >= step ? I(z - step) : I(R.modulus() - (step - z));
    j = next;
  }
  return z;
}

}  // namespace

PadicApprox hensel_lift(u64 p, const DegreeSpec& dspec, std::int64_t c, u64 root,
                        unsigned k, bool arbitrary_precision) {
  require_odd_prime(p);
  dspec.validate(p);
  if (k < 1) throw Error(ErrorCode::DegreeOutOfRange, "precision k must be >= 1");
  const bool fits = k <= max_word_precision(p);
  if (!fits && !arbitrary_precision) {
    throw Error(ErrorCode::PrecisionTooLarge,
                "k=" + std::to_string(k) + " exceeds the word-size limit " +
                    std::to_string(max_word_precision(p)) + " for p=" + std::to_string(p));
  }
  const ExponentSpec d = dspec.exponent(p);
  const Truncation base(p, 1);
  root %= p;
  if (fixed_point_poly(base, d, base.reduce(c), root) != 0) {
    throw Error(ErrorCode::NotARoot, std::to_string(root) + " is not a fixed point mod " +
                                         std::to_string(p));
  }
  if (fixed_point_derivative(base, d, root) == 0) {
    throw Error(ErrorCode::SingularRoot,
                "f'(" + std::to_string(root) + ") = 0 mod " + std::to_string(p));
  }
  PadicApprox out{p, k, {}};
  if (fits) {
    out.value = BigInt(newton_lift<u64>(p, d, c, root, k));
  } else {
    out.value = newton_lift<BigInt>(p, d, c, root, k);
  }
  return out;
}

Table census_table() {
  return Table{{"ring", "p", "param", "dspec", "ell", "c", "k", "ring_size", "fixed",
                "tails", "cycles"},
               {}};
}

void append_census_row(Table& table, const RingSpec& ring, const DegreeSpec& dspec,
                       const std::string& c, const OrbitCensus& census) {
  table.add({ring.name(), ring.p(), ring.param(), dspec.name(), dspec.param(), c, u64{1},
             census.ring_size, census.fixed_count, census.tail_count,
             census.cycles_string()});
}

void append_census_row(Table& table, const Truncation& ring, const DegreeSpec& dspec,
                       std::int64_t c, const OrbitCensus& census) {
  table.add({std::string("trunc"), ring.p(), static_cast<u64>(ring.k()), dspec.name(),
             dspec.param(), c, static_cast<u64>(ring.k()), census.ring_size,
             census.fixed_count, census.tail_count, census.cycles_string()});
}

}  // namespace fpl
