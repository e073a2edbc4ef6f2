#pragma once

// Orbit structure of z -> z^d + c on finite rings, and Hensel lifting of
// mod-p fixed points.

#include <string>
#include <vector>

#include "fpl/counters.hpp"

namespace fpl {

struct OrbitCensus {
  std::vector<u64> cycle_lengths;  // one entry per cycle, ascending
  u64 fixed_count = 0;
  u64 tail_count = 0;
  u64 ring_size = 0;
  std::vector<u64> fixed_points;  // element encodings, ascending

  /// "1^3;2^1" style multiset rendering.
  std::string cycles_string() const;
  bool has_cycle_of_length(u64 len) const;
};

/// Z/p^kZ with residues in machine words.
class Truncation {
 public:
  /// Throws NotPrime, DegreeOutOfRange (k < 1) or PrecisionTooLarge when p^k
  /// does not fit in 64 bits.
  Truncation(u64 p, unsigned k);

  u64 p() const noexcept { return p_; }
  unsigned k() const noexcept { return k_; }
  u64 modulus() const noexcept { return m_; }

  u64 reduce(std::int64_t c) const;
  /// z^(d - shift) mod p^k for shift in {0, 1}. Units reduce the exponent
  /// mod p^(k-1)(p-1); non-units saturate to 0 once valuation * exponent >= k.
  u64 pow(u64 z, const ExponentSpec& d, unsigned shift = 0) const;
  /// z^d + c.
  u64 apply(u64 z, const ExponentSpec& d, u64 c) const;

 private:
  u64 p_;
  unsigned k_;
  u64 m_;
};

/// Largest k with p^k < 2^64.
unsigned max_word_precision(u64 p);

OrbitCensus functional_graph_census(const RingSpec& ring, const DegreeSpec& dspec,
                                    const FieldElem& c,
                                    const Limits& limits = default_limits());
OrbitCensus functional_graph_census(const RingSpec& ring, const DegreeSpec& dspec,
                                    std::int64_t c,
                                    const Limits& limits = default_limits());
OrbitCensus functional_graph_census(const Truncation& ring, const DegreeSpec& dspec,
                                    std::int64_t c,
                                    const Limits& limits = default_limits());

struct ProbeReport {
  u64 p = 0;
  u64 ell = 0;
  std::int64_t c = 0;
  unsigned k = 0;
  OrbitCensus census;
  bool p_fixed_points = false;  // fixed_count >= p
  bool p_cycle = false;         // some cycle of exact length p
};

/// Finite-precision probe of z -> z^(p^ell) + c on Z/p^kZ.
ProbeReport dichotomy_probe(u64 p, u64 ell, std::int64_t c, unsigned k,
                             const Limits& limits = default_limits());

struct PadicApprox {
  u64 p = 0;
  unsigned k = 0;
  BigInt value;  // 0 <= value < p^k

  std::string to_string() const;  // "3 mod 3^2"
};

/// f(z) = z^d - z + c and f'(z) = d z^(d-1) - 1 reduced mod p^k.
u64 fixed_point_poly(const Truncation& ring, const ExponentSpec& d, u64 c, u64 z);
u64 fixed_point_derivative(const Truncation& ring, const ExponentSpec& d, u64 z);

/// Newton lift of a simple mod-p root of z^d - z + c to precision k. Above
/// max_word_precision(p) this needs arbitrary_precision, otherwise it throws
/// PrecisionTooLarge.
PadicApprox hensel_lift(u64 p, const DegreeSpec& dspec, std::int64_t c, u64 root,
                        unsigned k, bool arbitrary_precision = false);

/// ring,p,param,dspec,ell,c,k,ring_size,fixed,tails,cycles
Table census_table();
void append_census_row(Table& table, const RingSpec& ring, const DegreeSpec& dspec,
                       const std::string& c, const OrbitCensus& census);
void append_census_row(Table& table, const Truncation& ring, const DegreeSpec& dspec,
                       std::int64_t c, const OrbitCensus& census);

}  // namespace fpl
