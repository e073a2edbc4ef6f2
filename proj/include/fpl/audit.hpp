#pragma once

// Theorem case tables as executable claims, checked against enumeration.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fpl/counters.hpp"
#include "fpl/table.hpp"

namespace fpl {

struct Claim {
  enum class Selector { Zero, One, MinusOne, NonZero };
  enum class EllCond { Any, In1p, NotIn1p };
  enum class Predict { Value, P, TwoToEll };

  std::string id;  // "T2.1" ... "T6.3", "C2.4"
  RingSpec::Kind ring;
  DegreeSpec::Kind family;
  u64 fixed_p = 0;         // 0: any admissible p
  bool ell_one_only = false;
  Selector selector;
  EllCond ell_cond = EllCond::Any;
  Predict predict;
  u64 value = 0;           // for Predict::Value
  std::string hypothesis;  // paraphrased case condition

  /// Inclusive predicted range for this p and ell.
  std::pair<u64, u64> predicted(u64 p, u64 ell) const;
  bool range_case() const { return predict == Predict::TwoToEll; }
  bool applies(const RingSpec& ring, u64 ell) const;
};

/// Every theorem case, ordered by id.
const std::vector<Claim>& claim_table();

enum class AuditRegime { Degree1, Extension, All };

AuditRegime parse_regime(std::string_view text);
std::string regime_name(AuditRegime r);

struct AuditGrid {
  std::string name;
  std::vector<RingSpec> rings;
  std::vector<u64> ells;
  bool include_ell_p = true;  // also run ell = p
  /// Extension rings with more elements than this use a stratified c sample.
  u64 full_c_limit = 343;

  static AuditGrid small();
  static AuditGrid medium();
  /// "small" or "medium"; ParseError otherwise.
  static AuditGrid named(std::string_view name);
};

struct AuditOptions {
  AuditRegime regime = AuditRegime::All;
  /// Recompute every count with gcd_root_count when d fits the degree cap.
  bool double_entry = true;
  unsigned jobs = 1;
  Limits limits = default_limits();
};

struct AuditRecord {
  std::string claim_id;
  std::string hypothesis;
  RingSpec ring = RingSpec::prime_field(3);
  u64 ell = 0;
  u64 c_code = 0;  // encoding of c in the ring
  std::string c;   // pretty form
  bool subring_c = false;  // c lies in the prime subfield
  u64 predicted_lo = 0;
  u64 predicted_hi = 0;
  u64 computed = 0;
  bool match = false;
  std::vector<std::string> witnesses;  // roots, recorded on mismatch

  bool degree_one() const { return ring.degree() == 1; }
};

std::vector<AuditRecord> run_audit(const AuditGrid& grid, const AuditOptions& options = {});

/// Per-claim match rates split by ring degree and c stratum, and the
/// smallest mismatch per claim. EmptyInput on no records.
nlohmann::ordered_json summarize(const std::vector<AuditRecord>& records);

std::size_t mismatch_count(const std::vector<AuditRecord>& records);

/// claim_id,ring,p,param,ell,c,predicted_lo,predicted_hi,computed,verdict,witnesses
Table audit_table(const std::vector<AuditRecord>& records);

/// The c values audited on a ring: everything up to full_c_limit elements,
/// otherwise the prime subfield plus the first few elements of each trace
/// class outside it.
std::vector<FieldElem> audit_c_values(const FieldCtx& field, u64 full_c_limit);

}  // namespace fpl
