#include "fpl/audit.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "fpl/error.hpp"
#include "fpl/parallel.hpp"

namespace fpl {

using Sel = Claim::Selector;
using Ell = Claim::EllCond;
using Pred = Claim::Predict;
using RK = RingSpec::Kind;
using DK = DegreeSpec::Kind;

std::pair<u64, u64> Claim::predicted(u64 p, u64 ell) const {
  switch (predict) {
    case Pred::P: return {p, p};
    case Pred::TwoToEll: return {2, ell};
    case Pred::Value: break;
  }
  return {value, value};
}

bool Claim::applies(const RingSpec& r, u64 ell) const {
  if (r.kind() != ring) return false;
  if (ring == RK::ExtField && r.degree() < 2) return false;
  if (fixed_p && r.p() != fixed_p) return false;
  if (family == DK::PMinusOnePow && r.p() < 5) return false;
  if (ell_one_only && ell != 1) return false;
  const bool one_or_p = ell == 1 || ell == r.p();
  if (ell_cond == Ell::In1p && !one_or_p) return false;
  if (ell_cond == Ell::NotIn1p && one_or_p) return false;
  return true;
}

namespace {

Claim make(std::string id, RK ring, DK family, u64 fixed_p, bool ell_one, Sel sel,
           Ell ell_cond, Pred pred, u64 value, std::string hypothesis) {
  return Claim{std::move(id), ring, family, fixed_p, ell_one, sel,
               ell_cond, pred, value, std::move(hypothesis)};
}

// The p^ell theorems share one case shape; only scope and ring differ.
void add_ppow(std::vector<Claim>& out, const std::string& id, RK ring, u64 fixed_p,
              bool ell_one, const std::string& zero_text, const std::string& unit_text) {
  const std::string scope = fixed_p ? "p=" + std::to_string(fixed_p) : "p>=3";
  if (ell_one) {
    const Pred pz = fixed_p ? Pred::Value : Pred::P;
    out.push_back(make(id, ring, DK::PPow, fixed_p, true, Sel::Zero, Ell::Any, pz, fixed_p,
                       scope + " d=p " + zero_text));
    out.push_back(make(id, ring, DK::PPow, fixed_p, true, Sel::NonZero, Ell::Any, Pred::Value, 0,
                       scope + " d=p " + unit_text));
    return;
  }
  out.push_back(make(id, ring, DK::PPow, 0, false, Sel::Zero, Ell::In1p, Pred::P, 0,
                     scope + " d=p^ell " + zero_text + " ell in {1 p}"));
  out.push_back(make(id, ring, DK::PPow, 0, false, Sel::Zero, Ell::NotIn1p, Pred::TwoToEll, 0,
                     scope + " d=p^ell " + zero_text + " ell not in {1 p}"));
  out.push_back(make(id, ring, DK::PPow, 0, false, Sel::NonZero, Ell::Any, Pred::Value, 0,
                     scope + " d=p^ell " + unit_text));
}

void add_pm1(std::vector<Claim>& out, const std::string& id, RK ring, u64 fixed_p, bool ell_one,
             const std::string& mod) {
  const std::string scope = (fixed_p ? "p=" + std::to_string(fixed_p) : "p>=5") +
                            (ell_one ? " d=p-1 " : " d=(p-1)^ell ");
  out.push_back(make(id, ring, DK::PMinusOnePow, fixed_p, ell_one, Sel::One, Ell::Any,
                     Pred::Value, 1, scope + "c = 1 mod " + mod));
  out.push_back(make(id, ring, DK::PMinusOnePow, fixed_p, ell_one, Sel::Zero, Ell::Any,
                     Pred::Value, 2, scope + "c = 0 mod " + mod));
  out.push_back(make(id, ring, DK::PMinusOnePow, fixed_p, ell_one, Sel::MinusOne, Ell::Any,
                     Pred::Value, 0, scope + "c = -1 mod " + mod));
}

std::vector<Claim> build_claims() {
  std::vector<Claim> out;
  const std::string ext0 = "c in pO_K", ext1 = "c not in pO_K";
  const std::string z0 = "c = 0 mod p", z1 = "c != 0 mod p";
  const std::string f0 = "c in (pi)", f1 = "c not in (pi)";
  // Ordered by id; C2.4 follows T2.3.
  add_ppow(out, "T2.1", RK::ExtField, 3, true, ext0, ext1);
  add_ppow(out, "T2.2", RK::ExtField, 0, true, ext0, ext1);
  add_ppow(out, "T2.3", RK::ExtField, 0, false, ext0, ext1);
  add_ppow(out, "C2.4", RK::PrimeField, 0, false, z0, z1);
  add_ppow(out, "T3.1", RK::PrimeField, 3, true, z0, z1);
  add_ppow(out, "T3.2", RK::PrimeField, 0, true, z0, z1);
  add_ppow(out, "T3.3", RK::PrimeField, 0, false, z0, z1);
  add_pm1(out, "T4.1", RK::PrimeField, 5, true, "p");
  add_pm1(out, "T4.2", RK::PrimeField, 0, true, "p");
  add_pm1(out, "T4.3", RK::PrimeField, 0, false, "p");
  add_ppow(out, "T5.1", RK::FuncField, 3, true, f0, f1);
  add_ppow(out, "T5.2", RK::FuncField, 0, true, f0, f1);
  add_ppow(out, "T5.3", RK::FuncField, 0, false, f0, f1);
  add_pm1(out, "T6.1", RK::FuncField, 5, true, "pi");
  add_pm1(out, "T6.2", RK::FuncField, 0, true, "pi");
  add_pm1(out, "T6.3", RK::FuncField, 0, false, "pi");
  return out;
}

bool selects(Sel sel, const FieldCtx& F, const FieldElem& c) {
  switch (sel) {
    case Sel::Zero: return c.is_zero();
    case Sel::NonZero: return !c.is_zero();
    case Sel::One: return c == F.one();
    case Sel::MinusOne: return c == F.from_int(-1);
  }
  return false;
}

bool regime_wants(AuditRegime regime, const RingSpec& ring, const Claim& claim) {
  const bool degree1_case = ring.degree() == 1 && !claim.range_case();
  switch (regime) {
    case AuditRegime::Degree1: return degree1_case;
    case AuditRegime::Extension: return !degree1_case;
    case AuditRegime::All: return true;
  }
  return true;
}

std::vector<u64> ells_for(const AuditGrid& grid, u64 p) {
  std::vector<u64> ells = grid.ells;
  if (grid.include_ell_p) ells.push_back(p);
  std::sort(ells.begin(), ells.end());
  ells.erase(std::unique(ells.begin(), ells.end()), ells.end());
  return ells;
}

struct Unit {
  RingSpec ring;
  DK family;
  u64 ell;
};

// Sort key: claim order, then ring, ell, c.
auto ring_key(const RingSpec& r) {
  std::vector<u64> pi;
  if (r.pi()) pi.assign(r.pi()->coeffs().begin(), r.pi()->coeffs().end());
  return std::make_tuple(static_cast<int>(r.kind()), r.p(), r.degree(), pi);
}

}  // namespace

const std::vector<Claim>& claim_table() {
  static const std::vector<Claim> claims = build_claims();
  return claims;
}

AuditRegime parse_regime(std::string_view text) {
  if (text == "degree1") return AuditRegime::Degree1;
  if (text == "extension") return AuditRegime::Extension;
  if (text == "all") return AuditRegime::All;
  throw Error(ErrorCode::ParseError, "unknown regime '" + std::string(text) + "'");
}

std::string regime_name(AuditRegime r) {
  switch (r) {
    case AuditRegime::Degree1: return "degree1";
    case AuditRegime::Extension: return "extension";
    case AuditRegime::All: break;
  }
  return "all";
}

AuditGrid AuditGrid::small() {
  AuditGrid g;
  g.name = "small";
  for (u64 p : {3, 5, 7, 11, 13}) {
    g.rings.push_back(RingSpec::prime_field(p));
    g.rings.push_back(RingSpec::func_field(MonicPoly::x(p)));
    g.rings.push_back(RingSpec::func_field(MonicPoly::from_coeffs(p, {1, 1})));
  }
  for (auto [p, n] : std::vector<std::pair<u64, unsigned>>{{3, 2}, {3, 3}, {5, 2}, {7, 2}}) {
    g.rings.push_back(RingSpec::ext_field(p, n));
  }
  for (u64 p : {3, 5, 7}) g.rings.push_back(RingSpec::func_field(canonical_irreducible(p, 2)));
  g.ells = {1, 2, 3, 4, 5};
  return g;
}

AuditGrid AuditGrid::medium() {
  AuditGrid g = small();
  g.name = "medium";
  for (u64 p : {17, 19, 23}) {
    g.rings.push_back(RingSpec::prime_field(p));
    g.rings.push_back(RingSpec::func_field(MonicPoly::x(p)));
  }
  for (auto [p, n] : std::vector<std::pair<u64, unsigned>>{{3, 4}, {3, 5}, {3, 6}, {5, 3}, {11, 2}}) {
    g.rings.push_back(RingSpec::ext_field(p, n));
  }
  for (u64 p : {3, 5}) g.rings.push_back(RingSpec::func_field(canonical_irreducible(p, 3)));
  g.rings.push_back(RingSpec::func_field(canonical_irreducible(11, 2)));
  return g;
}

AuditGrid AuditGrid::named(std::string_view name) {
  if (name == "small") return small();
  if (name == "medium") return medium();
  throw Error(ErrorCode::ParseError, "unknown grid '" + std::string(name) + "'");
}

std::vector<FieldElem> audit_c_values(const FieldCtx& F, u64 full_c_limit) {
  const u64 q = checked_ring_size(F, default_limits());
  std::vector<FieldElem> out;
  if (q <= full_c_limit) {
    out.reserve(q);
    for (u64 e = 0; e < q; ++e) out.push_back(F.decode(e));
    return out;
  }
  constexpr unsigned kPerTrace = 8;
  const u64 p = F.p();
  for (u64 a = 0; a < p; ++a) out.push_back(F.from_int(static_cast<std::int64_t>(a)));
  std::vector<unsigned> taken(p, 0);
  unsigned done = 0;
  for (u64 e = 0; e < q && done < p; ++e) {
    FieldElem c = F.decode(e);
    if (F.in_prime_subfield(c)) continue;
    const u64 t = trace(F, c);
    if (taken[t] == kPerTrace) continue;
    out.push_back(c);
    if (++taken[t] == kPerTrace) ++done;
  }
  std::sort(out.begin(), out.end(), [&](const FieldElem& a, const FieldElem& b) {
    return F.encode(a) < F.encode(b);
  });
  return out;
}

std::vector<AuditRecord> run_audit(const AuditGrid& grid, const AuditOptions& options) {
  const auto& claims = claim_table();
  std::vector<Unit> units;
  for (const RingSpec& ring : grid.rings) {
    for (DK family : {DK::PPow, DK::PMinusOnePow}) {
      if (family == DK::PMinusOnePow && ring.p() < 5) continue;
      for (u64 ell : ells_for(grid, ring.p())) units.push_back({ring, family, ell});
    }
  }

  auto run_unit = [&](std::size_t i) {
    const Unit& u = units[i];
    std::vector<const Claim*> active;
    for (const Claim& cl : claims) {
      if (cl.family == u.family && cl.applies(u.ring, u.ell) &&
          regime_wants(options.regime, u.ring, cl)) {
        active.push_back(&cl);
      }
    }
    std::vector<AuditRecord> out;
    if (active.empty()) return out;

    const DegreeSpec dspec = u.family == DK::PPow ? DegreeSpec::p_pow(u.ell)
                                                  : DegreeSpec::p_minus_one_pow(u.ell);
    const FieldCtx F = u.ring.field();
    const ExponentSpec d = dspec.exponent(u.ring.p());
    const std::vector<u64> hist = fixed_point_histogram(u.ring, dspec, options.limits);
    const auto small_d = d.small_value();
    const bool gcd_ok = options.double_entry && small_d &&
                        *small_d <= options.limits.explicit_degree_cap;

    for (const FieldElem& c : audit_c_values(F, grid.full_c_limit)) {
      const u64 code = F.encode(c);
      const u64 computed = hist[code];
      bool checked = false;
      for (const Claim* cl : active) {
        if (!selects(cl->selector, F, c)) continue;
        if (gcd_ok && !checked) {
          const u64 g = gcd_root_count(F, *small_d, c, options.limits);
          if (g != computed) {
            throw Error(ErrorCode::CrossCheckFailed,
                        "gcd count " + std::to_string(g) + " != enumeration " +
                            std::to_string(computed) + " for c=" + F.pretty(c, u.ring.var()));
          }
          checked = true;
        }
        AuditRecord rec;
        rec.claim_id = cl->id;
        rec.hypothesis = cl->hypothesis;
        rec.ring = u.ring;
        rec.ell = u.ell;
        rec.c_code = code;
        rec.c = F.pretty(c, u.ring.var());
        rec.subring_c = F.in_prime_subfield(c);
        std::tie(rec.predicted_lo, rec.predicted_hi) = cl->predicted(u.ring.p(), u.ell);
        rec.computed = computed;
        rec.match = rec.predicted_lo <= computed && computed <= rec.predicted_hi;
        if (!rec.match) {
          CountResult full = fixed_point_count(u.ring, dspec, c, options.limits);
          for (const FieldElem& z : full.roots) {
            if (!satisfies_fixed_point(F, d, c, z)) {
              throw Error(ErrorCode::CrossCheckFailed,
                          "witness " + F.pretty(z, u.ring.var()) + " fails direct evaluation");
            }
            rec.witnesses.push_back(F.pretty(z, u.ring.var()));
          }
        }
        out.push_back(std::move(rec));
      }
    }
    return out;
  };

  auto parts = parallel_map<std::vector<AuditRecord>>(units.size(), options.jobs, run_unit);
  std::vector<AuditRecord> records;
  for (auto& part : parts) {
    for (auto& rec : part) records.push_back(std::move(rec));
  }

  std::map<std::string, std::size_t> order;
  for (std::size_t i = 0; i < claims.size(); ++i) order.emplace(claims[i].id, i);
  std::stable_sort(records.begin(), records.end(), [&](const AuditRecord& a, const AuditRecord& b) {
    return std::make_tuple(order[a.claim_id], ring_key(a.ring), a.ell, a.c_code) <
           std::make_tuple(order[b.claim_id], ring_key(b.ring), b.ell, b.c_code);
  });
  return records;
}

std::size_t mismatch_count(const std::vector<AuditRecord>& records) {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const AuditRecord& r) { return !r.match; }));
}

namespace {

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

nlohmann::ordered_json record_json(const AuditRecord& r) {
  nlohmann::ordered_json j;
  j["claim_id"] = r.claim_id;
  j["ring"] = r.ring.name();
  j["p"] = r.ring.p();
  j["param"] = r.ring.param();
  j["ell"] = r.ell;
  j["c"] = r.c;
  j["predicted_lo"] = r.predicted_lo;
  j["predicted_hi"] = r.predicted_hi;
  j["computed"] = r.computed;
  j["witnesses"] = r.witnesses;
  return j;
}

}  // namespace

nlohmann::ordered_json summarize(const std::vector<AuditRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::EmptyInput, "no audit records to summarize");

  struct Tally {
    u64 records = 0, matches = 0;
    void add(bool m) { ++records; matches += m; }
    nlohmann::ordered_json json() const {
      nlohmann::ordered_json j;
      j["records"] = records;
      j["matches"] = matches;
      j["match_rate"] = records ? static_cast<double>(matches) / static_cast<double>(records) : 0.0;
      return j;
    }
  };
  struct PerClaim {
    std::string hypothesis;
    Tally total;
    std::map<std::string, Tally> by_degree, by_stratum;
    const AuditRecord* minimal = nullptr;
  };

  // Keyed by claim id and case, kept in claim-table order.
  std::vector<std::pair<std::string, PerClaim>> claims;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  for (const Claim& cl : claim_table()) {
    index.emplace(std::make_pair(cl.id, cl.hypothesis), claims.size());
    claims.push_back({cl.id, PerClaim{cl.hypothesis, {}, {}, {}, nullptr}});
  }

  Tally overall;
  std::map<std::string, Tally> by_degree;
  // Smallest mismatch: fewest ring elements, then ell, then c.
  auto smaller = [](const AuditRecord& a, const AuditRecord& b) {
    auto size = [](const AuditRecord& r) {
      u64 q = 1;
      for (unsigned i = 0; i < r.ring.degree(); ++i) q *= r.ring.p();
      return q;
    };
    return std::make_tuple(size(a), a.ell, a.c_code) < std::make_tuple(size(b), b.ell, b.c_code);
  };

  for (const AuditRecord& r : records) {
    auto it = index.find({r.claim_id, r.hypothesis});
    if (it == index.end()) {
      throw Error(ErrorCode::ParseError, "record for unknown claim " + r.claim_id);
    }
    PerClaim& pc = claims[it->second].second;
    const std::string degree = r.degree_one() ? "degree1" : "degree2plus";
    const std::string stratum = r.subring_c ? "prime_subfield_c" : "general_c";
    pc.total.add(r.match);
    pc.by_degree[degree].add(r.match);
    pc.by_stratum[stratum].add(r.match);
    overall.add(r.match);
    by_degree[degree].add(r.match);
    if (!r.match && (!pc.minimal || smaller(r, *pc.minimal))) pc.minimal = &r;
  }

  nlohmann::ordered_json out;
  out["records"] = overall.records;
  out["matches"] = overall.matches;
  out["mismatches"] = overall.records - overall.matches;
  out["match_rate"] = overall.json()["match_rate"];
  for (const auto& [k, t] : by_degree) out["by_degree"][k] = t.json();
  out["claims"] = nlohmann::ordered_json::array();
  for (const auto& [id, pc] : claims) {
    if (pc.total.records == 0) continue;
    nlohmann::ordered_json j;
    j["claim_id"] = id;
    j["hypothesis"] = pc.hypothesis;
    j["records"] = pc.total.records;
    j["matches"] = pc.total.matches;
    j["match_rate"] = pc.total.json()["match_rate"];
    for (const auto& [k, t] : pc.by_degree) j["by_degree"][k] = t.json();
    for (const auto& [k, t] : pc.by_stratum) j["by_stratum"][k] = t.json();
    j["minimal_mismatch"] = pc.minimal ? record_json(*pc.minimal) : nlohmann::ordered_json();
    out["claims"].push_back(std::move(j));
  }
  return out;
}

Table audit_table(const std::vector<AuditRecord>& records) {
  Table t;
  t.columns = {"claim_id", "ring", "p", "param", "ell", "c", "predicted_lo",
               "predicted_hi", "computed", "verdict", "witnesses"};
  for (const AuditRecord& r : records) {
    t.add({r.claim_id, r.ring.name(), r.ring.p(), r.ring.param(), r.ell, r.c, r.predicted_lo,
           r.predicted_hi, r.computed, std::string(r.match ? "match" : "mismatch"),
           join(r.witnesses, ';')});
  }
  return t;
}

}  // namespace fpl
