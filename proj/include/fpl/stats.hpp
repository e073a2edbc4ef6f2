#pragma once

// Arithmetic functions and the average / density estimators over families
// of maps z -> z^d + c, with the counting function taken from counters.

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fpl/counters.hpp"
#include "fpl/table.hpp"

namespace fpl {

using Rational = boost::multiprecision::cpp_rational;

/// Distinct primes dividing c, ascending (trial division). c >= 1.
std::vector<u64> prime_divisors(u64 c);

/// #{primes p >= min_prime, p | c}.
u64 omega(u64 c, u64 min_prime = 3);
/// #{primes <= x}.
u64 prime_count(u64 x, const Limits& limits = default_limits());
/// Sum of the primes 3 <= p <= c dividing c.
u64 sigma1p(u64 c);
/// Sum of the primes in [3, c]. SieveCapExceeded above the sieve cap.
u64 sum_primes_exact(u64 c, const Limits& limits = default_limits());
/// Main term (c^2/2)(log c + log log c - 3/2 + (log log c - 5/2)/log c).
/// DomainTooSmall below 16.
double sum_primes_asymptotic(u64 c);
/// Sum of the first n primes (2 included).
u64 sum_first_primes(u64 n, const Limits& limits = default_limits());

struct SumPrimesComparison {
  u64 c = 0;
  u64 exact = 0;  // primes in [3, c]
  double formula = 0;
  double relative_error = 0;  // |exact - formula| / exact
  // The same expansion against the sum of the first c primes, if sieveable.
  std::optional<u64> first_c_primes;
  std::optional<double> first_c_relative_error;
};

SumPrimesComparison compare_sum_primes(u64 c, const Limits& limits = default_limits());

/// 1 - p^-2. NotPrime unless p is an odd prime.
Rational local_maximality_density(u64 p);

// ---------------------------------------------------------------- averages

enum class AvgFamily { Cor71, Cor73, Cor75, Co6, Cor61 };

struct AvgSetting {
  AvgFamily family = AvgFamily::Cor73;
  char which = 'a';  // 'a', 'b' or 'c'

  /// "7.1a", "7.3c", "co6b", "cor6.1a", ...; ParseError otherwise.
  static AvgSetting parse(std::string_view text);
  std::string name() const;
  /// 3 for the p^ell families, 5 for the (p-1)^ell ones.
  u64 min_prime() const;
  /// The stated limiting value: "0", "2..ell", "infinity",
  /// "1", "2".
  std::string claimed() const;
  bool divergent() const;  // the (c) cases of 7.1, 7.3, co6

  friend bool operator==(const AvgSetting&, const AvgSetting&) = default;
};

std::vector<AvgSetting> all_avg_settings();

struct GrowthSample {
  u64 c = 0;
  u64 numerator = 0;
  u64 denominator = 0;
};

struct AvgOptions {
  u64 ell = 1;
  /// 0: count in Z/pZ. n >= 2 (7.1 only): count in F_{p^n} per prime.
  unsigned degree_n = 0;
  /// Floor on the prime range, on top of the family's own minimum.
  u64 min_prime = 0;
  std::vector<u64> growth_points{30030, 510510, 9699690, 223092870};
  unsigned jobs = 1;
  Limits limits = default_limits();
};

struct AvgReport {
  AvgSetting setting;
  u64 bound = 0;
  u64 ell = 0;
  unsigned degree_n = 0;
  u64 numerator = 0;
  u64 denominator = 0;
  Rational value;
  bool divergent_trend = false;
  std::string claimed;
  std::vector<GrowthSample> growth;  // (b) and (c) of 7.1, 7.3, co6
};

/// Sum over c in [1, bound] and admissible primes p of the counting function,
/// divided by the number of admissible pairs. EmptyDenominator if none.
AvgReport avg_estimator(const AvgSetting& setting, u64 bound, const AvgOptions& options = {});

/// The same ratio for a single c (used for the growth samples).
GrowthSample avg_single(const AvgSetting& setting, u64 c, const AvgOptions& options = {});

/// setting,bound,ell,degree_n,numerator,denominator,value,value_decimal,
/// divergent_trend,claimed,growth
Table avg_table();
void append_avg_row(Table& table, const AvgReport& report);

// --------------------------------------------------------------- densities

enum class DensityFamily { D91, D92, D93, D94, D95, D96, D101, D102, D103 };

DensityFamily parse_density_family(std::string_view text);
std::string density_family_name(DensityFamily f);
std::vector<DensityFamily> all_density_families();

struct DensityOptions {
  u64 ell = 1;
  /// Primes up to this bound are counted by enumeration; above it the
  /// closed form in Z/pZ is used and spot-checked by enumeration.
  u64 exact_limit = 5000;
  u64 sample_stride = 256;
  unsigned jobs = 1;
  Limits limits = default_limits();
};

struct DensityReport {
  DensityFamily family = DensityFamily::D91;
  u64 c = 0;
  u64 ell = 0;
  u64 numerator = 0;
  u64 denominator = 0;
  Rational ratio;
  std::string claimed;  // "0%" or "100%"
  u64 enumerated_primes = 0;
  u64 cross_checked_primes = 0;
};

/// #{p in range : condition on the count for this c} / #{p in range}.
DensityReport density_estimator(DensityFamily family, u64 c, const DensityOptions& options = {});

/// family,c,ell,numerator,denominator,ratio,ratio_decimal,claimed,
/// enumerated_primes,cross_checked_primes
Table density_table();
void append_density_row(Table& table, const DensityReport& report);

/// c,exact,formula,relative_error,first_c_primes,first_c_relative_error
Table sumprimes_table();
void append_sumprimes_row(Table& table, const SumPrimesComparison& cmp);

std::string rational_string(const Rational& r);
double rational_decimal(const Rational& r);

}  // namespace fpl
