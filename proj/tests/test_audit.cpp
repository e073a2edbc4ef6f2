#include <doctest.h>

#include <algorithm>
#include <set>

#include "fpl/audit.hpp"
#include "fpl/error.hpp"

using namespace fpl;

namespace {

const std::vector<AuditRecord>& small_all() {
  static const std::vector<AuditRecord> records = [] {
    AuditOptions opt;
    opt.regime = AuditRegime::All;
    return run_audit(AuditGrid::small(), opt);
  }();
  return records;
}

const AuditRecord* find(const std::vector<AuditRecord>& recs, const std::string& id,
                        const std::string& ring, const std::string& param, u64 ell,
                        const std::string& c) {
  for (const auto& r : recs) {
    if (r.claim_id == id && r.ring.name() == ring && r.ring.param() == param && r.ell == ell &&
        r.c == c) {
      return &r;
    }
  }
  return nullptr;
}

}  // namespace

TEST_CASE("claim table covers every case once, ordered by id") {
  const auto& claims = claim_table();
  CHECK(claims.size() == 42);
  std::set<std::pair<std::string, std::string>> seen;
  std::set<std::string> ids;
  for (const auto& cl : claims) {
    CHECK(seen.insert({cl.id, cl.hypothesis}).second);
    ids.insert(cl.id);
  }
  CHECK(ids.size() == 16);
  for (const char* id : {"T2.1", "T2.2", "T2.3", "C2.4", "T3.1", "T3.2", "T3.3", "T4.1",
                         "T4.2", "T4.3", "T5.1", "T5.2", "T5.3", "T6.1", "T6.2", "T6.3"}) {
    CHECK(ids.count(id) == 1);
  }
  // grouped: once an id is left, it never returns
  std::set<std::string> closed;
  for (std::size_t i = 1; i < claims.size(); ++i) {
    if (claims[i].id != claims[i - 1].id) {
      closed.insert(claims[i - 1].id);
      CHECK(closed.count(claims[i].id) == 0);
    }
  }
}

TEST_CASE("claim predictions") {
  const auto& claims = claim_table();
  auto get = [&](const std::string& id, Claim::Selector s, Claim::EllCond e) -> const Claim& {
    for (const auto& cl : claims) {
      if (cl.id == id && cl.selector == s && cl.ell_cond == e) return cl;
    }
    FAIL("missing claim");
    return claims.front();
  };
  using S = Claim::Selector;
  using E = Claim::EllCond;
  CHECK(get("T2.1", S::Zero, E::Any).predicted(3, 1) == std::pair<u64, u64>{3, 3});
  CHECK(get("T3.3", S::Zero, E::NotIn1p).predicted(7, 4) == std::pair<u64, u64>{2, 4});
  CHECK(get("T3.3", S::Zero, E::In1p).predicted(7, 7) == std::pair<u64, u64>{7, 7});
  CHECK(get("T4.2", S::Zero, E::Any).predicted(11, 1) == std::pair<u64, u64>{2, 2});
  CHECK(get("T6.3", S::MinusOne, E::Any).predicted(11, 3) == std::pair<u64, u64>{0, 0});

  CHECK(get("T2.1", S::Zero, E::Any).applies(RingSpec::ext_field(3, 2), 1));
  CHECK_FALSE(get("T2.1", S::Zero, E::Any).applies(RingSpec::ext_field(5, 2), 1));
  CHECK_FALSE(get("T2.2", S::Zero, E::Any).applies(RingSpec::ext_field(5, 2), 2));
  CHECK_FALSE(get("T2.2", S::Zero, E::Any).applies(RingSpec::prime_field(5), 1));
  CHECK_FALSE(get("T4.3", S::One, E::Any).applies(RingSpec::prime_field(3), 1));
  CHECK(get("T5.3", S::Zero, E::NotIn1p).applies(RingSpec::func_field(MonicPoly::x(5)), 3));
  CHECK_FALSE(get("T5.3", S::Zero, E::NotIn1p).applies(RingSpec::func_field(MonicPoly::x(5)), 5));
}

TEST_CASE("degree-1 regime matches everywhere") {
  AuditOptions opt;
  opt.regime = AuditRegime::Degree1;
  const auto recs = run_audit(AuditGrid::small(), opt);
  REQUIRE(recs.size() > 1000);
  CHECK(mismatch_count(recs) == 0);
  std::set<std::string> ids;
  for (const auto& r : recs) {
    CHECK(r.degree_one());
    ids.insert(r.claim_id);
    CHECK(r.witnesses.empty());
  }
  // T2.x live on extensions only
  CHECK(ids.size() == 13);
  // every c for p = 13 appears for the zero-free case of T3.2
  std::set<std::string> cs;
  for (const auto& r : recs) {
    if (r.claim_id == "T3.2" && r.ring.name() == "prime" && r.ring.p() == 13) cs.insert(r.c);
  }
  CHECK(cs.size() == 13);
}

TEST_CASE("regimes partition the full run") {
  AuditOptions a;
  a.regime = AuditRegime::Degree1;
  AuditOptions b;
  b.regime = AuditRegime::Extension;
  const auto d1 = run_audit(AuditGrid::small(), a);
  const auto ext = run_audit(AuditGrid::small(), b);
  CHECK(d1.size() + ext.size() == small_all().size());
  for (const auto& r : ext) {
    const bool range = r.predicted_lo == 2 && r.predicted_hi == r.ell && r.ell > 1;
    CHECK((!r.degree_one() || range));
  }
}

TEST_CASE("documented mismatches") {
  const auto& recs = small_all();
  const AuditRecord* a = find(recs, "T3.3", "prime", "1", 2, "0");
  REQUIRE(a);
  CHECK_FALSE(a->match);
  CHECK(a->predicted_lo == 2);
  CHECK(a->predicted_hi == 2);
  CHECK(a->computed == 3);
  CHECK(a->witnesses == std::vector<std::string>{"0", "1", "2"});

  const AuditRecord* b = find(recs, "T5.2", "func", "t^2+1", 1, "t");
  REQUIRE(b);
  CHECK_FALSE(b->match);
  CHECK(b->computed == 3);
  CHECK(b->witnesses == std::vector<std::string>{"2t", "2t+1", "2t+2"});
  CHECK_FALSE(b->subring_c);
  CHECK(mismatch_count(recs) > 0);
}

TEST_CASE("mismatch witnesses re-verify by direct evaluation") {
  for (const auto& r : small_all()) {
    if (r.match) continue;
    REQUIRE(r.witnesses.size() == r.computed);
    const FieldCtx F = r.ring.field();
    FieldElem c = F.decode(r.c_code);
    const u64 p = r.ring.p();
    // the record's family is recoverable from its claim
    const bool pm1 = r.claim_id[1] == '4' || r.claim_id[1] == '6';
    const ExponentSpec d = ExponentSpec::tower(pm1 ? p - 1 : p, r.ell);
    u64 hits = 0;
    for (const auto& z : enumerate_field(F)) {
      if (satisfies_fixed_point(F, d, c, z)) {
        ++hits;
        CHECK(std::find(r.witnesses.begin(), r.witnesses.end(), F.pretty(z, r.ring.var())) !=
              r.witnesses.end());
      }
    }
    CHECK(hits == r.computed);
  }
}

TEST_CASE("computed values agree with per-c enumeration") {
  // spot-check one record in seven against the non-histogram route
  std::size_t i = 0;
  for (const auto& r : small_all()) {
    if (i++ % 7) continue;
    const bool pm1 = r.claim_id[1] == '4' || r.claim_id[1] == '6';
    const DegreeSpec ds = pm1 ? DegreeSpec::p_minus_one_pow(r.ell) : DegreeSpec::p_pow(r.ell);
    const FieldCtx F = r.ring.field();
    CHECK(fixed_point_count(r.ring, ds, F.decode(r.c_code)).count == r.computed);
  }
}

TEST_CASE("audit is deterministic across job counts and double-entry") {
  AuditOptions one;
  one.jobs = 1;
  AuditOptions many;
  many.jobs = 4;
  many.double_entry = false;
  CHECK(to_csv(audit_table(run_audit(AuditGrid::small(), one))) ==
        to_csv(audit_table(run_audit(AuditGrid::small(), many))));
}

TEST_CASE("summary") {
  CHECK_THROWS_AS(summarize({}), Error);
  try {
    summarize({});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyInput);
  }
  const auto& recs = small_all();
  const auto s = summarize(recs);
  CHECK(s["records"].get<u64>() == recs.size());
  CHECK(s["mismatches"].get<u64>() == mismatch_count(recs));
  u64 total = 0, d1 = 0;
  for (const auto& cl : s["claims"]) {
    total += cl["records"].get<u64>();
    u64 parts = 0;
    for (const auto& [k, v] : cl["by_degree"].items()) parts += v["records"].get<u64>();
    CHECK(parts == cl["records"].get<u64>());
    u64 strata = 0;
    for (const auto& [k, v] : cl["by_stratum"].items()) strata += v["records"].get<u64>();
    CHECK(strata == cl["records"].get<u64>());
    if (cl["matches"] != cl["records"]) CHECK_FALSE(cl["minimal_mismatch"].is_null());
    if (cl.contains("by_degree") && cl["by_degree"].contains("degree1")) {
      d1 += cl["by_degree"]["degree1"]["records"].get<u64>();
    }
  }
  CHECK(total == recs.size());
  CHECK(d1 == s["by_degree"]["degree1"]["records"].get<u64>());

  // the minimal T3.3 mismatch is the smallest field, smallest ell
  for (const auto& cl : s["claims"]) {
    if (cl["claim_id"] == "T3.3" && !cl["minimal_mismatch"].is_null()) {
      CHECK(cl["minimal_mismatch"]["p"] == 3);
      CHECK(cl["minimal_mismatch"]["ell"] == 2);
    }
  }
}

TEST_CASE("stratified c sample on large extensions") {
  const FieldCtx F = make_field(3, 6);  // 729 elements
  const auto cs = audit_c_values(F, 343);
  CHECK(cs.size() == 3 + 3 * 8);
  u64 subfield = 0;
  std::vector<u64> per_trace(3, 0);
  for (const auto& c : cs) {
    if (F.in_prime_subfield(c)) {
      ++subfield;
    } else {
      ++per_trace[trace(F, c)];
    }
  }
  CHECK(subfield == 3);
  CHECK(per_trace == std::vector<u64>{8, 8, 8});
  CHECK(std::is_sorted(cs.begin(), cs.end(), [&](const FieldElem& a, const FieldElem& b) {
    return F.encode(a) < F.encode(b);
  }));
  CHECK(audit_c_values(make_field(7, 2), 343).size() == 49);
}

TEST_CASE("audit CSV") {
  const auto t = audit_table(small_all());
  const std::string csv = to_csv(t);
  CHECK(csv.rfind("claim_id,ring,p,param,ell,c,predicted_lo,predicted_hi,computed,verdict,witnesses\n", 0) == 0);
  CHECK(csv.find("T3.3,prime,3,1,2,0,2,2,3,mismatch,0;1;2\n") != std::string::npos);
  CHECK(parse_regime("all") == AuditRegime::All);
  CHECK_THROWS_AS(parse_regime("bogus"), Error);
  CHECK_THROWS_AS(AuditGrid::named("huge"), Error);
}
