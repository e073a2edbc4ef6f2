#include "fpl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fpl/error.hpp"
#include "fpl/modarith.hpp"
#include "fpl/parallel.hpp"
#include "fpl/sieve.hpp"

namespace fpl {

std::vector<u64> prime_divisors(u64 c) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= c; d += (d == 2 ? 1 : 2)) {
    if (c % d == 0) {
      out.push_back(d);
      while (c % d == 0) c /= d;
    }
  }
  if (c > 1) out.push_back(c);
  return out;
}

u64 omega(u64 c, u64 min_prime) {
  u64 n = 0;
  for (u64 p : prime_divisors(c)) n += p >= min_prime;
  return n;
}

u64 prime_count(u64 x, const Limits& limits) { return primes_up_to(x, limits).size(); }

u64 sigma1p(u64 c) {
  u64 s = 0;
  for (u64 p : prime_divisors(c)) {
    if (p >= 3) s += p;
  }
  return s;
}

u64 sum_primes_exact(u64 c, const Limits& limits) {
  u64 s = 0;
  for (u64 p : primes_up_to(c, limits)) {
    if (p >= 3) s += p;
  }
  return s;
}

double sum_primes_asymptotic(u64 c) {
  if (c < 16) {
    throw Error(ErrorCode::DomainTooSmall, "the expansion needs c >= 16, got " + std::to_string(c));
  }
  const double x = static_cast<double>(c);
  const double L = std::log(x);
  const double LL = std::log(L);
  return x * x / 2 * (L + LL - 1.5 + (LL - 2.5) / L);
}

u64 sum_first_primes(u64 n, const Limits& limits) {
  if (n == 0) return 0;
  // p_n < n (log n + log log n) for n >= 6.
  u64 bound = 13;
  if (n >= 6) {
    const double x = static_cast<double>(n);
    bound = static_cast<u64>(x * (std::log(x) + std::log(std::log(x)))) + 1;
  }
  const auto primes = primes_up_to(bound, limits);
  u64 s = 0;
  for (u64 i = 0; i < n; ++i) s += primes.at(i);
  return s;
}

SumPrimesComparison compare_sum_primes(u64 c, const Limits& limits) {
  SumPrimesComparison out;
  out.c = c;
  out.formula = sum_primes_asymptotic(c);
  out.exact = sum_primes_exact(c, limits);
  const double exact = static_cast<double>(out.exact);
  out.relative_error = std::abs(exact - out.formula) / exact;
  try {
    out.first_c_primes = sum_first_primes(c, limits);
    const double alt = static_cast<double>(*out.first_c_primes);
    out.first_c_relative_error = std::abs(alt - out.formula) / alt;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SieveCapExceeded) throw;
  }
  return out;
}

Rational local_maximality_density(u64 p) {
  if (p < 3 || !modarith::is_prime(p)) {
    throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not an odd prime");
  }
  const BigInt pp = BigInt(p) * p;
  return Rational(pp - 1, pp);
}

std::string rational_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

double rational_decimal(const Rational& r) { return r.convert_to<double>(); }

// ---------------------------------------------------------------- averages

AvgSetting AvgSetting::parse(std::string_view text) {
  static const std::pair<std::string_view, AvgFamily> prefixes[] = {
      {"7.1", AvgFamily::Cor71}, {"7.3", AvgFamily::Cor73},  {"7.5", AvgFamily::Cor75},
      {"co6", AvgFamily::Co6},   {"cor6.1", AvgFamily::Cor61}};
  for (const auto& [prefix, family] : prefixes) {
    if (text.size() == prefix.size() + 1 && text.substr(0, prefix.size()) == prefix) {
      const char w = text.back();
      if (w == 'a' || w == 'b' || w == 'c') return {family, w};
    }
  }
  throw Error(ErrorCode::ParseError, "unknown average setting '" + std::string(text) + "'");
}

std::string AvgSetting::name() const {
  const char* prefix = "";
  switch (family) {
    case AvgFamily::Cor71: prefix = "7.1"; break;
    case AvgFamily::Cor73: prefix = "7.3"; break;
    case AvgFamily::Cor75: prefix = "7.5"; break;
    case AvgFamily::Co6: prefix = "co6"; break;
    case AvgFamily::Cor61: prefix = "cor6.1"; break;
  }
  return std::string(prefix) + which;
}

namespace {

bool minus_one_family(AvgFamily f) { return f == AvgFamily::Cor75 || f == AvgFamily::Cor61; }
bool function_family(AvgFamily f) { return f == AvgFamily::Co6 || f == AvgFamily::Cor61; }

}  // namespace

u64 AvgSetting::min_prime() const { return minus_one_family(family) ? 5 : 3; }

std::string AvgSetting::claimed() const {
  if (minus_one_family(family)) return which == 'a' ? "1" : which == 'b' ? "2" : "0";
  return which == 'a' ? "0" : which == 'b' ? "2..ell" : "infinity";
}

bool AvgSetting::divergent() const { return !minus_one_family(family) && which == 'c'; }

std::vector<AvgSetting> all_avg_settings() {
  std::vector<AvgSetting> out;
  for (auto f : {AvgFamily::Cor71, AvgFamily::Cor73, AvgFamily::Cor75, AvgFamily::Co6,
                 AvgFamily::Cor61}) {
    for (char w : {'a', 'b', 'c'}) out.push_back({f, w});
  }
  return out;
}

namespace {

RingSpec avg_ring(const AvgSetting& s, u64 p, const AvgOptions& o) {
  if (function_family(s.family)) return RingSpec::func_field(MonicPoly::x(p));
  if (s.family == AvgFamily::Cor71 && o.degree_n >= 2) return RingSpec::ext_field(p, o.degree_n);
  return RingSpec::prime_field(p);
}

DegreeSpec avg_degree(const AvgSetting& s, const AvgOptions& o) {
  return minus_one_family(s.family) ? DegreeSpec::p_minus_one_pow(o.ell)
                                    : DegreeSpec::p_pow(o.ell);
}

bool ell_in_1_p(u64 ell, u64 p) { return ell == 1 || ell == p; }

// Does (c mod p = r) together with p qualify for the setting? `r` is the
// residue of c (or of c(t) mod pi for the function-field families).
bool admissible_residue(const AvgSetting& s, u64 p, u64 r, u64 ell) {
  if (minus_one_family(s.family)) {
    if (s.which == 'a') return r == 1;
    if (s.which == 'b') return r == 0;
    return r == p - 1;
  }
  if (s.which == 'a') return r != 0;
  if (r != 0) return false;
  return (s.which == 'c') == ell_in_1_p(ell, p);
}

// Smallest c for which p is inside the setting's prime range.
u64 range_start(const AvgSetting& s, u64 p) {
  if (s.family == AvgFamily::Cor75) {
    if (s.which == 'a') return p + 1;  // p <= c - 1
    if (s.which == 'c') return p - 1;  // p <= c + 1
  }
  return p;
}

// #{c in [lo, hi] : c = r mod p}, lo >= 1.
u64 residue_class_size(u64 lo, u64 hi, u64 r, u64 p) {
  if (lo > hi) return 0;
  auto upto = [&](u64 x) -> u64 { return x < r ? 0 : (x - r) / p + 1; };
  return upto(hi) - upto(lo - 1);
}

struct Contribution {
  u64 numerator = 0;
  u64 denominator = 0;
};

Contribution prime_contribution(const AvgSetting& s, u64 p, u64 bound, const AvgOptions& o) {
  const RingSpec ring = avg_ring(s, p, o);
  const FieldCtx field = ring.field();
  const auto hist = fixed_point_histogram(ring, avg_degree(s, o), o.limits);
  Contribution out;
  if (!function_family(s.family)) {
    const u64 lo = range_start(s, p);
    for (u64 r = 0; r < p; ++r) {
      if (!admissible_residue(s, p, r, o.ell)) continue;
      const u64 pairs = residue_class_size(lo, bound, r, p);
      out.numerator += pairs * hist[field.encode(field.from_int(static_cast<std::int64_t>(r)))];
      out.denominator += pairs;
    }
    return out;
  }
  // c_n(t) = t^n + n, n in [p, bound]; t^n is carried along incrementally.
  FieldElem tn = field.pow_u64(field.gen(), p);
  for (u64 n = p; n <= bound; ++n, tn = field.mul(tn, field.gen())) {
    const FieldElem cn = field.add(tn, field.from_int(static_cast<std::int64_t>(n % p)));
    const u64 code = field.encode(cn);
    u64 r = p;  // sentinel: not in the prime subfield
    if (field.in_prime_subfield(cn)) r = code;
    if (r == p || !admissible_residue(s, p, r, o.ell)) continue;
    out.numerator += hist[code];
    ++out.denominator;
  }
  return out;
}

}  // namespace

GrowthSample avg_single(const AvgSetting& s, u64 c, const AvgOptions& o) {
  GrowthSample g{c, 0, 0};
  const DegreeSpec dspec = avg_degree(s, o);
  std::vector<u64> candidates;
  const bool coprime_case = !minus_one_family(s.family) && s.which == 'a';
  if (coprime_case) {
    candidates = primes_up_to(c, o.limits);
  } else {
    u64 target = c;
    if (minus_one_family(s.family) && s.which == 'a') target = c - 1;
    if (minus_one_family(s.family) && s.which == 'c') target = c + 1;
    if (target >= 1) candidates = prime_divisors(target);
  }
  for (u64 p : candidates) {
    if (p < std::max(s.min_prime(), o.min_prime)) continue;
    if (c < range_start(s, p)) continue;
    const RingSpec ring = avg_ring(s, p, o);
    const FieldCtx field = ring.field();
    FieldElem cc = field.from_int(static_cast<std::int64_t>(c % p));
    if (function_family(s.family)) cc = field.add(field.pow_u64(field.gen(), c), cc);
    if (!field.in_prime_subfield(cc) || !admissible_residue(s, p, field.encode(cc), o.ell)) {
      continue;
    }
    g.numerator += fixed_point_count(ring, dspec, cc, o.limits).count;
    ++g.denominator;
  }
  return g;
}

AvgReport avg_estimator(const AvgSetting& s, u64 bound, const AvgOptions& o) {
  if (o.ell < 1) throw Error(ErrorCode::InvalidDegreeSpec, "ell must be >= 1");
  if (o.degree_n >= 2 && s.family != AvgFamily::Cor71) {
    throw Error(ErrorCode::DegreeOutOfRange, "degree-n mode applies to 7.1 only");
  }
  std::vector<u64> primes;
  for (u64 p : primes_up_to(bound + 1, o.limits)) {
    if (p >= std::max(s.min_prime(), o.min_prime) && range_start(s, p) <= bound) primes.push_back(p);
  }
  const auto parts = parallel_map<Contribution>(primes.size(), o.jobs, [&](std::size_t i) {
    return prime_contribution(s, primes[i], bound, o);
  });
  AvgReport r;
  r.setting = s;
  r.bound = bound;
  r.ell = o.ell;
  r.degree_n = o.degree_n;
  r.claimed = s.claimed();
  r.divergent_trend = s.divergent();
  for (const auto& part : parts) {
    r.numerator += part.numerator;
    r.denominator += part.denominator;
  }
  if (r.denominator == 0) {
    throw Error(ErrorCode::EmptyDenominator,
                "no admissible (c, p) pairs for " + s.name() + " up to " + std::to_string(bound));
  }
  r.value = Rational(BigInt(r.numerator), BigInt(r.denominator));
  if (!minus_one_family(s.family) && s.which != 'a') {
    for (u64 c : o.growth_points) r.growth.push_back(avg_single(s, c, o));
  }
  return r;
}

Table avg_table() {
  return Table{{"setting", "bound", "ell", "degree_n", "numerator", "denominator", "value",
                "value_decimal", "divergent_trend", "claimed", "growth"},
               {}};
}

void append_avg_row(Table& table, const AvgReport& r) {
  std::string growth;
  for (const auto& g : r.growth) {
    if (!growth.empty()) growth += ';';
    growth += std::to_string(g.c) + ':' + std::to_string(g.numerator) + '/' +
              std::to_string(g.denominator);
  }
  table.add({r.setting.name(), r.bound, r.ell, static_cast<u64>(r.degree_n), r.numerator,
             r.denominator, rational_string(r.value), rational_decimal(r.value),
             r.divergent_trend, r.claimed, growth});
}

// --------------------------------------------------------------- densities

namespace {

struct FamilyInfo {
  DensityFamily family;
  std::string_view name;
  bool minus_one;
  const char* claim;
};

constexpr FamilyInfo kFamilies[] = {
    {DensityFamily::D91, "9.1", false, "0%"},   {DensityFamily::D92, "9.2", false, "0%"},
    {DensityFamily::D93, "9.3", false, "100%"}, {DensityFamily::D94, "9.4", false, "0%"},
    {DensityFamily::D95, "9.5", false, "0%"},   {DensityFamily::D96, "9.6", false, "100%"},
    {DensityFamily::D101, "10.1", true, "0%"},  {DensityFamily::D102, "10.2", true, "0%"},
    {DensityFamily::D103, "10.3", true, "100%"}};

const FamilyInfo& info(DensityFamily f) {
  for (const auto& i : kFamilies) {
    if (i.family == f) return i;
  }
  throw std::logic_error("unknown density family");
}

bool density_condition(DensityFamily f, u64 count, u64 p, u64 ell) {
  switch (f) {
    case DensityFamily::D91:
    case DensityFamily::D94: return count == p;
    case DensityFamily::D92:
    case DensityFamily::D95: return count >= 2 && count <= ell;
    case DensityFamily::D93:
    case DensityFamily::D96:
    case DensityFamily::D103: return count == 0;
    case DensityFamily::D101: return count == 2;
    case DensityFamily::D102: return count == 1;
  }
  return false;
}

// Counts in Z/pZ: z^(p^ell) = z, so p or 0; z^((p-1)^ell) is 1 on units.
u64 closed_form_count(bool minus_one, u64 p, u64 r) {
  if (!minus_one) return r == 0 ? p : 0;
  return (r == 0 ? 1 : 0) + (r != p - 1 ? 1 : 0);
}

struct PrimeVerdict {
  bool hit = false;
  bool enumerated = false;
  bool checked = false;
};

}  // namespace

DensityFamily parse_density_family(std::string_view text) {
  for (const auto& i : kFamilies) {
    if (i.name == text) return i.family;
  }
  throw Error(ErrorCode::ParseError, "unknown density family '" + std::string(text) + "'");
}

std::string density_family_name(DensityFamily f) { return std::string(info(f).name); }

std::vector<DensityFamily> all_density_families() {
  std::vector<DensityFamily> out;
  for (const auto& i : kFamilies) out.push_back(i.family);
  return out;
}

DensityReport density_estimator(DensityFamily family, u64 c, const DensityOptions& o) {
  const FamilyInfo& fi = info(family);
  const u64 min_p = fi.minus_one ? 5 : 3;
  if (o.ell < 1) throw Error(ErrorCode::InvalidDegreeSpec, "ell must be >= 1");
  std::vector<u64> primes;
  for (u64 p : primes_up_to(c, o.limits)) {
    if (p >= min_p) primes.push_back(p);
  }
  if (primes.empty()) {
    throw Error(ErrorCode::EmptyDenominator,
                "no primes in [" + std::to_string(min_p) + ", " + std::to_string(c) + "]");
  }
  const DegreeSpec dspec =
      fi.minus_one ? DegreeSpec::p_minus_one_pow(o.ell) : DegreeSpec::p_pow(o.ell);
  const u64 stride = std::max<u64>(1, o.sample_stride);
  const auto verdicts = parallel_map<PrimeVerdict>(primes.size(), o.jobs, [&](std::size_t i) {
    const u64 p = primes[i];
    const u64 r = c % p;
    const u64 closed = closed_form_count(fi.minus_one, p, r);
    PrimeVerdict v;
    const bool enumerate = p <= o.exact_limit;
    const bool sample = !enumerate && i % stride == 0 && p <= o.limits.enumeration_cap;
    u64 count = closed;
    if (enumerate || sample) {
      count = fixed_point_count(RingSpec::prime_field(p), dspec, static_cast<std::int64_t>(r),
                                o.limits)
                  .count;
      if (count != closed) {
        throw Error(ErrorCode::CrossCheckFailed,
                    "p=" + std::to_string(p) + ": enumeration " + std::to_string(count) +
                        " vs closed form " + std::to_string(closed));
      }
      v.enumerated = enumerate;
      v.checked = sample;
    }
    v.hit = density_condition(family, count, p, o.ell);
    return v;
  });
  DensityReport r;
  r.family = family;
  r.c = c;
  r.ell = o.ell;
  r.denominator = primes.size();
  r.claimed = fi.claim;
  for (const auto& v : verdicts) {
    r.numerator += v.hit;
    r.enumerated_primes += v.enumerated;
    r.cross_checked_primes += v.checked;
  }
  r.ratio = Rational(BigInt(r.numerator), BigInt(r.denominator));
  return r;
}

Table density_table() {
  return Table{{"family", "c", "ell", "numerator", "denominator", "ratio", "ratio_decimal",
                "claimed", "enumerated_primes", "cross_checked_primes"},
               {}};
}

void append_density_row(Table& table, const DensityReport& r) {
  table.add({density_family_name(r.family), r.c, r.ell, r.numerator, r.denominator,
             rational_string(r.ratio), rational_decimal(r.ratio), r.claimed,
             r.enumerated_primes, r.cross_checked_primes});
}

Table sumprimes_table() {
  return Table{{"c", "exact", "formula", "relative_error", "first_c_primes",
                "first_c_relative_error"},
               {}};
}

void append_sumprimes_row(Table& table, const SumPrimesComparison& cmp) {
  table.add({cmp.c, cmp.exact, cmp.formula, cmp.relative_error,
             cmp.first_c_primes ? Cell(*cmp.first_c_primes) : Cell(std::string()),
             cmp.first_c_relative_error ? Cell(*cmp.first_c_relative_error)
                                        : Cell(std::string())});
}

}  // namespace fpl
