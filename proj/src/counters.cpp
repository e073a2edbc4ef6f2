#include "fpl/counters.hpp"

#include <cassert>

namespace fpl {

// ----------------------------------------------------------------- RingSpec

RingSpec RingSpec::prime_field(u64 p) {
  if (p == 2 || !modarith::is_prime(p)) {
    throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not an odd prime");
  }
  return RingSpec(Kind::PrimeField, p, 1, std::nullopt);
}

RingSpec RingSpec::ext_field(u64 p, unsigned n) {
  if (p == 2 || !modarith::is_prime(p)) {
    throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not an odd prime");
  }
  if (n < 1) throw Error(ErrorCode::DegreeOutOfRange, "extension degree must be >= 1");
  return RingSpec(Kind::ExtField, p, n, std::nullopt);
}

RingSpec RingSpec::func_field(MonicPoly pi) {
  if (!is_irreducible(pi)) {
    throw Error(ErrorCode::NotIrreducible, pi.to_string() + " is reducible");
  }
  const u64 p = pi.p();
  const unsigned m = pi.degree();
  return RingSpec(Kind::FuncField, p, m, std::move(pi));
}

FieldCtx RingSpec::field() const {
  switch (kind_) {
    case Kind::PrimeField: return make_field(p_, 1);
    case Kind::ExtField: return make_field(p_, degree_);
    case Kind::FuncField: return FieldCtx::from_modulus(*pi_);
  }
  throw std::logic_error("unreachable");
}

std::string RingSpec::name() const {
  switch (kind_) {
    case Kind::PrimeField: return "prime";
    case Kind::ExtField: return "ext";
    case Kind::FuncField: return "func";
  }
  return "?";
}

std::string RingSpec::param() const {
  if (kind_ == Kind::FuncField) return pi_->pretty('t');
  return std::to_string(degree_);
}

// --------------------------------------------------------------- DegreeSpec

DegreeSpec DegreeSpec::p_pow(u64 ell) {
  if (ell < 1) throw Error(ErrorCode::InvalidDegreeSpec, "ell must be >= 1");
  return DegreeSpec(Kind::PPow, ell);
}

DegreeSpec DegreeSpec::p_minus_one_pow(u64 ell) {
  if (ell < 1) throw Error(ErrorCode::InvalidDegreeSpec, "ell must be >= 1");
  return DegreeSpec(Kind::PMinusOnePow, ell);
}

DegreeSpec DegreeSpec::explicit_degree(u64 d) {
  if (d < 2) throw Error(ErrorCode::InvalidDegreeSpec, "explicit degree must be >= 2");
  return DegreeSpec(Kind::Explicit, d);
}

void DegreeSpec::validate(u64 p) const {
  if (kind_ == Kind::PMinusOnePow && p < 5) {
    throw Error(ErrorCode::InvalidDegreeSpec, "d = (p-1)^ell requires p >= 5");
  }
}

ExponentSpec DegreeSpec::exponent(u64 p) const {
  validate(p);
  switch (kind_) {
    case Kind::PPow: return ExponentSpec::tower(p, param_);
    case Kind::PMinusOnePow: return ExponentSpec::tower(p - 1, param_);
    case Kind::Explicit: return ExponentSpec::plain(param_);
  }
  throw std::logic_error("unreachable");
}

std::string DegreeSpec::name() const {
  switch (kind_) {
    case Kind::PPow: return "ppow";
    case Kind::PMinusOnePow: return "pm1pow";
    case Kind::Explicit: return "explicit";
  }
  return "?";
}

// ----------------------------------------------------------------- counting

namespace {

// z^d for every z, with the exponent reduced once for the whole field.
class PowerMap {
 public:
  PowerMap(const FieldCtx& field, const ExponentSpec& e, u64 q)
      : field_(field), reduced_(e.mod(q - 1)) {}

  FieldElem operator()(const FieldElem& z) const {
    if (z.is_zero()) return field_.zero();
    return field_.pow_u64(z, reduced_);
  }

 private:
  const FieldCtx& field_;
  u64 reduced_;
};

}  // namespace

bool satisfies_fixed_point(const FieldCtx& ctx, const ExponentSpec& d,
                           const FieldElem& c, const FieldElem& z) {
  return ctx.sub(ctx.add(elem_pow(ctx, z, d), c), z).is_zero();
}

CountResult fixed_point_count(const RingSpec& ring, const DegreeSpec& dspec,
                              const FieldElem& c, const Limits& limits) {
  const ExponentSpec e = dspec.exponent(ring.p());
  FieldCtx field = ring.field();
  field.check(c);
  const u64 q = checked_ring_size(field, limits);
  const PowerMap power(field, e, q);

  CountResult result{0, {}, ring, dspec, c, field};
  FieldElem z = field.zero();
  for (u64 i = 0; i < q; ++i, field.step(z)) {
    if (field.add(power(z), c) == z) result.roots.push_back(z);
  }
  result.count = result.roots.size();
  return result;
}

CountResult fixed_point_count(const RingSpec& ring, const DegreeSpec& dspec,
                              std::int64_t c, const Limits& limits) {
  return fixed_point_count(ring, dspec, ring.field().from_int(c), limits);
}

std::vector<u64> fixed_point_histogram(const RingSpec& ring, const DegreeSpec& dspec,
                                       const Limits& limits) {
  const ExponentSpec e = dspec.exponent(ring.p());
  const FieldCtx field = ring.field();
  const u64 q = checked_ring_size(field, limits);
  std::vector<u64> counts(q, 0);
  if (field.n() == 1) {
    const u64 p = field.p();
    const u64 reduced = e.mod(p - 1);
    for (u64 z = 0; z < p; ++z) {
      const u64 zd = z == 0 ? 0 : modarith::pow_mod(z, reduced, p);
      ++counts[modarith::sub_mod(z, zd, p)];
    }
    return counts;
  }
  const PowerMap power(field, e, q);
  FieldElem z = field.zero();
  for (u64 i = 0; i < q; ++i, field.step(z)) {
    ++counts[field.encode(field.sub(z, power(z)))];
  }
  return counts;
}

CountResult count_N(u64 p, unsigned n, u64 ell, const FieldElem& c, const Limits& limits) {
  if (n < 2) throw Error(ErrorCode::DegreeOutOfRange, "count_N needs n >= 2");
  return fixed_point_count(RingSpec::ext_field(p, n), DegreeSpec::p_pow(ell), c, limits);
}

CountResult count_X(u64 p, u64 ell, std::int64_t c, const Limits& limits) {
  return fixed_point_count(RingSpec::prime_field(p), DegreeSpec::p_pow(ell), c, limits);
}

CountResult count_Y(u64 p, u64 ell, std::int64_t c, const Limits& limits) {
  return fixed_point_count(RingSpec::prime_field(p), DegreeSpec::p_minus_one_pow(ell), c,
                           limits);
}

namespace {

CountResult count_func(u64 p, const MonicPoly& pi, const DegreeSpec& dspec,
                       std::span<const u64> c, const Limits& limits) {
  if (pi.p() != p) {
    throw Error(ErrorCode::CtxMismatch, "pi is over F_" + std::to_string(pi.p()));
  }
  const RingSpec ring = RingSpec::func_field(pi);
  dspec.validate(p);
  return fixed_point_count(ring, dspec, ring.field().reduce(c), limits);
}

}  // namespace

CountResult count_Nct(u64 p, const MonicPoly& pi, u64 ell, std::span<const u64> c,
                      const Limits& limits) {
  return count_func(p, pi, DegreeSpec::p_pow(ell), c, limits);
}

CountResult count_Mct(u64 p, const MonicPoly& pi, u64 ell, std::span<const u64> c,
                      const Limits& limits) {
  return count_func(p, pi, DegreeSpec::p_minus_one_pow(ell), c, limits);
}

// ------------------------------------------------------- gcd root counting

namespace {

// Dense polynomials over F_q, constant term first; zero is empty.
class QPolyOps {
 public:
  using Poly = std::vector<FieldElem>;

  explicit QPolyOps(const FieldCtx& field) : f_(field) {}

  void trim(Poly& a) const {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
  }

  Poly sub(Poly a, const Poly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), f_.zero());
    for (size_t i = 0; i < b.size(); ++i) a[i] = f_.sub(a[i], b[i]);
    trim(a);
    return a;
  }

  Poly mul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, f_.zero());
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_zero()) continue;
      for (size_t j = 0; j < b.size(); ++j) {
        if (b[j].is_zero()) continue;
        r[i + j] = f_.add(r[i + j], f_.mul(a[i], b[j]));
      }
    }
    trim(r);
    return r;
  }

  // Remainder mod a nonzero divisor; walks only the divisor's nonzero terms.
  Poly mod(Poly a, const Poly& divisor) const {
    trim(a);
    const size_t dd = divisor.size() - 1;
    if (a.size() <= dd) return a;
    const FieldElem lead_inv = f_.inv(divisor.back());
    std::vector<size_t> support;
    for (size_t j = 0; j < dd; ++j) {
      if (!divisor[j].is_zero()) support.push_back(j);
    }
    for (size_t i = a.size(); i-- > dd;) {
      if (a[i].is_zero()) continue;
      const FieldElem factor = f_.mul(a[i], lead_inv);
      a[i] = f_.zero();
      for (size_t j : support) {
        a[i - dd + j] = f_.sub(a[i - dd + j], f_.mul(factor, divisor[j]));
      }
    }
    a.resize(dd, f_.zero());
    trim(a);
    return a;
  }

  // a^p mod divisor, with a direct path for monomials.
  Poly pow_mod(const Poly& a, u64 e, const Poly& divisor) const {
    size_t nonzero = 0, where = 0;
    for (size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_zero()) {
        ++nonzero;
        where = i;
      }
    }
    if (nonzero <= 1) {
      if (nonzero == 0) return {};
      Poly mono(where * e + 1, f_.zero());
      mono.back() = f_.pow_u64(a[where], e);
      return mod(std::move(mono), divisor);
    }
    Poly result = mod(Poly{f_.one()}, divisor);
    Poly base = a;
    while (e != 0) {
      if (e & 1u) result = mod(mul(result, base), divisor);
      e >>= 1;
      if (e != 0) base = mod(mul(base, base), divisor);
    }
    return result;
  }

  // Degree of gcd(a, b).
  size_t gcd_degree(Poly a, Poly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      Poly r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    assert(!a.empty());
    return a.size() - 1;
  }

 private:
  const FieldCtx& f_;
};

}  // namespace

u64 gcd_root_count(const FieldCtx& ctx, u64 d, const FieldElem& c, const Limits& limits) {
  ctx.check(c);
  if (d > limits.explicit_degree_cap) {
    throw Error(ErrorCode::DegreeTooLarge, "d = " + std::to_string(d) +
                                               " exceeds explicit-degree cap " +
                                               std::to_string(limits.explicit_degree_cap));
  }
  if (d < 2) throw Error(ErrorCode::InvalidDegreeSpec, "gcd_root_count needs d >= 2");
  const QPolyOps ops(ctx);
  QPolyOps::Poly f(d + 1, ctx.zero());
  f[0] = c;
  f[1] = ctx.neg(ctx.one());
  f[d] = ctx.one();

  const QPolyOps::Poly x{ctx.zero(), ctx.one()};
  // x^q = x^{p^n}: n successive p-power steps.
  QPolyOps::Poly h = ops.mod(x, f);
  for (unsigned i = 0; i < ctx.n(); ++i) h = ops.pow_mod(h, ctx.p(), f);
  return ops.gcd_degree(ops.sub(h, x), f);
}

// ------------------------------------------------------------ serialization

Table count_table() {
  return Table{{"ring", "p", "n_or_m", "dspec", "ell", "c", "count", "witnesses"}, {}};
}

void append_count_row(Table& table, const CountResult& r) {
  std::string witnesses;
  for (const auto& w : r.roots) {
    if (!witnesses.empty()) witnesses += ';';
    witnesses += r.field.pretty(w, r.ring.var());
  }
  table.add({r.ring.name(), r.ring.p(), static_cast<u64>(r.ring.degree()), r.dspec.name(),
             r.dspec.param(), r.field.pretty(r.c, r.ring.var()), r.count, witnesses});
}

}  // namespace fpl
