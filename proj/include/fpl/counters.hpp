#pragma once

// Fixed-point counts of z -> z^d + c over finite residue rings.
//
// Ground truth is exhaustive enumeration with per-element exponent
// reduction. gcd_root_count is the independent route: deg gcd(x^q - x, f)
// for f = x^d - x + c.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fpl/ffield.hpp"
#include "fpl/table.hpp"

namespace fpl {

/// Which residue ring: Z/pZ, O_K/pO_K = F_{p^n}, or F_p[t]/(pi).
class RingSpec {
 public:
  enum class Kind { PrimeField, ExtField, FuncField };

  static RingSpec prime_field(u64 p);
  static RingSpec ext_field(u64 p, unsigned n);
  static RingSpec func_field(MonicPoly pi);

  Kind kind() const noexcept { return kind_; }
  u64 p() const noexcept { return p_; }
  /// n for ExtField, deg pi for FuncField, 1 for PrimeField.
  unsigned degree() const noexcept { return degree_; }
  const std::optional<MonicPoly>& pi() const noexcept { return pi_; }

  /// The concrete field model; deterministic for equal specs.
  FieldCtx field() const;

  /// "prime" / "ext" / "func".
  std::string name() const;
  /// n, or the pretty form of pi ("t^2+1"), or 1.
  std::string param() const;
  /// Variable used when rendering ring elements.
  char var() const noexcept { return kind_ == Kind::FuncField ? 't' : 'u'; }

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

 private:
  RingSpec(Kind kind, u64 p, unsigned degree, std::optional<MonicPoly> pi)
      : kind_(kind), p_(p), degree_(degree), pi_(std::move(pi)) {}

  Kind kind_;
  u64 p_;
  unsigned degree_;
  std::optional<MonicPoly> pi_;
};

/// d = p^ell, d = (p-1)^ell, or an explicit d.
class DegreeSpec {
 public:
  enum class Kind { PPow, PMinusOnePow, Explicit };

  static DegreeSpec p_pow(u64 ell);
  static DegreeSpec p_minus_one_pow(u64 ell);
  static DegreeSpec explicit_degree(u64 d);

  Kind kind() const noexcept { return kind_; }
  /// ell for the tower families, d for Explicit.
  u64 param() const noexcept { return param_; }

  /// Throws InvalidDegreeSpec when the family is not admissible for p.
  void validate(u64 p) const;
  ExponentSpec exponent(u64 p) const;

  /// "ppow" / "pm1pow" / "explicit".
  std::string name() const;

  friend bool operator==(const DegreeSpec&, const DegreeSpec&) = default;

 private:
  DegreeSpec(Kind kind, u64 param) : kind_(kind), param_(param) {}

  Kind kind_;
  u64 param_;
};

struct CountResult {
  u64 count = 0;
  std::vector<FieldElem> roots;  // ascending encoding
  RingSpec ring;
  DegreeSpec dspec;
  FieldElem c;
  FieldCtx field;
};

/// #{z : z^d - z + c = 0} by enumeration.
CountResult fixed_point_count(const RingSpec& ring, const DegreeSpec& dspec,
                              const FieldElem& c,
                              const Limits& limits = default_limits());
CountResult fixed_point_count(const RingSpec& ring, const DegreeSpec& dspec,
                              std::int64_t c,
                              const Limits& limits = default_limits());

/// Counts for every c at once: entry e is the count for the c with
/// encoding e (roots of z^d + c = z are the z with z - z^d = c).
std::vector<u64> fixed_point_histogram(const RingSpec& ring,
                                       const DegreeSpec& dspec,
                                       const Limits& limits = default_limits());

/// N_c(p) over O_K/pO_K modelled as F_{p^n}, d = p^ell, n >= 2.
CountResult count_N(u64 p, unsigned n, u64 ell, const FieldElem& c,
                    const Limits& limits = default_limits());
/// X_c(p) over Z_p/pZ_p, d = p^ell.
CountResult count_X(u64 p, u64 ell, std::int64_t c,
                    const Limits& limits = default_limits());
/// Y_c(p) over Z_p/pZ_p, d = (p-1)^ell, p >= 5.
CountResult count_Y(u64 p, u64 ell, std::int64_t c,
                    const Limits& limits = default_limits());
/// N_{c(t)}(pi, p) over F_p[t]/(pi), d = p^ell. c is a polynomial over F_p
/// (constant term first), reduced mod pi.
CountResult count_Nct(u64 p, const MonicPoly& pi, u64 ell,
                      std::span<const u64> c,
                      const Limits& limits = default_limits());
/// M_{c(t)}(pi, p) over F_p[t]/(pi), d = (p-1)^ell, p >= 5.
CountResult count_Mct(u64 p, const MonicPoly& pi, u64 ell,
                      std::span<const u64> c,
                      const Limits& limits = default_limits());

/// deg gcd(x^q - x mod f, f) for f = x^d - x + c over ctx.
u64 gcd_root_count(const FieldCtx& ctx, u64 d, const FieldElem& c,
                   const Limits& limits = default_limits());

/// z^d + c - z == 0 by direct evaluation (used to re-verify witnesses).
bool satisfies_fixed_point(const FieldCtx& ctx, const ExponentSpec& d,
                           const FieldElem& c, const FieldElem& z);

/// ring,p,n_or_m,dspec,ell,c,count,witnesses
Table count_table();
void append_count_row(Table& table, const CountResult& result);

}  // namespace fpl
