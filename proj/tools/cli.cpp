#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "fpl/audit.hpp"
#include "fpl/counters.hpp"
#include "fpl/dynamics.hpp"
#include "fpl/error.hpp"
#include "fpl/parallel.hpp"
#include "fpl/stats.hpp"

namespace fpl::cli {
namespace {

// A usage problem tied to one flag; reported as a single line.
struct UsageError {
  std::string flag;
  std::string message;
};

template <class Fn>
auto for_flag(const std::string& flag, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw UsageError{flag, e.what()};
  }
}

std::int64_t parse_int(const std::string& flag, std::string_view text) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError{flag, "expected an integer, got '" + std::string(text) + "'"};
  }
  return v;
}

// Integers, optionally in 1e5 notation.
u64 parse_count(const std::string& flag, std::string_view text) {
  if (text.find_first_of("eE") != std::string_view::npos) {
    std::string s(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !(v >= 1) || v > 1e18 || v != std::floor(v)) {
      throw UsageError{flag, "expected a positive integer, got '" + s + "'"};
    }
    return static_cast<u64>(v);
  }
  const std::int64_t v = parse_int(flag, text);
  if (v < 1) throw UsageError{flag, "expected a positive integer, got '" + std::string(text) + "'"};
  return static_cast<u64>(v);
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<u64> parse_schedule(const std::string& flag, const std::string& text) {
  std::vector<u64> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_count(flag, item));
  return out;
}

// Integer lists with a..b ranges.
std::vector<std::int64_t> parse_int_list(const std::string& flag, const std::string& text) {
  std::vector<std::int64_t> out;
  for (const auto& item : split(text, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(flag, item));
      continue;
    }
    const std::int64_t a = parse_int(flag, std::string_view(item).substr(0, dots));
    const std::int64_t b = parse_int(flag, std::string_view(item).substr(dots + 2));
    if (b < a) throw UsageError{flag, "empty range '" + item + "'"};
    if (b - a > 10'000'000) throw UsageError{flag, "range '" + item + "' is too long"};
    for (std::int64_t v = a; v <= b; ++v) out.push_back(v);
  }
  return out;
}

// Integers, a..b, @all, or serialized elements "p=3:0,1".
std::vector<FieldElem> parse_c_values(const std::string& text, const FieldCtx& F,
                                      const Limits& limits) {
  std::vector<FieldElem> out;
  if (text == "@all") {
    for (const auto& z : for_flag("--c", [&] { return enumerate_field(F, limits); })) {
      out.push_back(z);
    }
    return out;
  }
  if (text.rfind("p=", 0) == 0) {
    // a serialized element holds commas of its own
    for (const auto& item : split(text, ';')) {
      out.push_back(for_flag("--c", [&] { return F.parse(item); }));
    }
    return out;
  }
  for (std::int64_t v : parse_int_list("--c", text)) out.push_back(F.from_int(v));
  return out;
}

struct Common {
  std::string format = "csv";
  std::string out_path;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::optional<u64> cap, sieve_cap, degree_cap;

  Limits limits() const {
    Limits l = default_limits();
    if (cap) l.enumeration_cap = *cap;
    if (sieve_cap) l.sieve_cap = *sieve_cap;
    if (degree_cap) l.explicit_degree_cap = *degree_cap;
    return l;
  }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out_path, "output file (default: standard output)");
  sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--cap", c.cap, "enumeration cap")->check(CLI::PositiveNumber);
  sub->add_option("--sieve-cap", c.sieve_cap, "sieve cap")->check(CLI::PositiveNumber);
  sub->add_option("--degree-cap", c.degree_cap, "explicit-degree cap")
      ->check(CLI::PositiveNumber);
}

struct RingArgs {
  std::string ring = "prime";
  std::optional<u64> p;
  unsigned n = 2;
  std::string pi;
  unsigned m = 0;
  unsigned k = 1;
};

void add_ring(CLI::App* sub, RingArgs& r, bool allow_trunc) {
  std::vector<std::string> kinds{"prime", "ext", "func"};
  if (allow_trunc) kinds.push_back("trunc");
  sub->add_option("--ring", r.ring, "prime, ext, func" + std::string(allow_trunc ? ", trunc" : ""))
      ->check(CLI::IsMember(kinds));
  sub->add_option("--p", r.p, "characteristic");
  sub->add_option("--n", r.n, "extension degree (ext)");
  sub->add_option("--pi", r.pi, "modulus as p=<p>:c0,c1,..., or auto (func)");
  sub->add_option("--m", r.m, "degree of the canonical modulus with --pi auto");
  if (allow_trunc) sub->add_option("--k", r.k, "precision (trunc)");
}

RingSpec build_ring(const RingArgs& r) {
  if (r.ring == "func") {
    if (r.pi.empty()) throw UsageError{"--pi", "required with --ring func"};
    if (r.pi == "auto") {
      if (!r.p) throw UsageError{"--p", "required with --pi auto"};
      if (r.m < 1) throw UsageError{"--m", "--pi auto needs --m >= 1"};
      return for_flag("--m", [&] { return RingSpec::func_field(canonical_irreducible(*r.p, r.m)); });
    }
    MonicPoly pi = for_flag("--pi", [&] { return parse_monic(r.pi); });
    if (r.p && *r.p != pi.p()) throw UsageError{"--pi", "characteristic differs from --p"};
    return for_flag("--pi", [&] { return RingSpec::func_field(pi); });
  }
  if (!r.p) throw UsageError{"--p", "required"};
  if (r.ring == "ext") return for_flag("--n", [&] {
    for_flag("--p", [&] { return RingSpec::prime_field(*r.p); });
    return RingSpec::ext_field(*r.p, r.n);
  });
  return for_flag("--p", [&] { return RingSpec::prime_field(*r.p); });
}

struct DegreeArgs {
  std::string family = "ppow";
  u64 ell = 1;
  u64 d = 0;
};

void add_degree(CLI::App* sub, DegreeArgs& d, bool allow_explicit) {
  std::vector<std::string> kinds{"ppow", "pm1pow"};
  if (allow_explicit) kinds.push_back("explicit");
  sub->add_option("--family", d.family, "ppow (d=p^ell), pm1pow (d=(p-1)^ell)" +
                                            std::string(allow_explicit ? ", explicit (--d)" : ""))
      ->check(CLI::IsMember(kinds));
  sub->add_option("--ell", d.ell, "tower height");
  if (allow_explicit) sub->add_option("--d", d.d, "explicit degree");
}

DegreeSpec build_degree(const DegreeArgs& d, u64 p) {
  if (d.family == "pm1pow" && p < 5) throw UsageError{"--family", "pm1pow needs p >= 5"};
  return for_flag(d.family == "explicit" ? "--d" : "--ell", [&] {
    DegreeSpec spec = d.family == "explicit" ? DegreeSpec::explicit_degree(d.d)
                      : d.family == "pm1pow" ? DegreeSpec::p_minus_one_pow(d.ell)
                                             : DegreeSpec::p_pow(d.ell);
    spec.validate(p);
    return spec;
  });
}

// '# tool version subcommand --flag=value ...' built from the parsed options.
std::string config_echo(const CLI::App* sub) {
  std::string out = std::string("# fixedpoint-lab ") + kVersion + " " + sub->get_name();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames()[0] == "help") continue;
    const std::string& name = opt->get_lnames()[0];
    if (name == "out" || name == "jobs") continue;  // no effect on the data
    std::string value;
    if (opt->count() > 0) {
      for (std::size_t i = 0; i < opt->results().size(); ++i) {
        value += (i ? "," : "") + opt->results()[i];
      }
      if (opt->get_type_size() == 0) value = "true";
    } else {
      value = opt->get_default_str();
      if (opt->get_type_size() == 0) value = "false";
    }
    if (value.empty()) continue;
    out += " --" + name + "=" + value;
  }
  return out;
}

void emit(const Common& common, const CLI::App* sub, const Table& table, std::ostream& stdout_) {
  std::ostringstream buf;
  const std::string meta = config_echo(sub);
  if (common.format == "csv") {
    buf << meta << '\n' << to_csv(table);
  } else {
    nlohmann::ordered_json j;
    j["meta"] = meta.substr(2);
    j["rows"] = to_json(table);
    buf << j.dump(2) << '\n';
  }
  if (common.out_path.empty()) {
    stdout_ << buf.str();
    return;
  }
  std::ofstream f(common.out_path, std::ios::binary);
  if (!f) throw UsageError{"--out", "cannot open '" + common.out_path + "'"};
  f << buf.str();
}

void emit_json(const Common& common, const CLI::App* sub, nlohmann::ordered_json body,
               std::ostream& stdout_) {
  nlohmann::ordered_json j;
  j["meta"] = config_echo(sub).substr(2);
  j["summary"] = std::move(body);
  const std::string text = j.dump(2) + "\n";
  if (common.out_path.empty()) {
    stdout_ << text;
    return;
  }
  std::ofstream f(common.out_path, std::ios::binary);
  if (!f) throw UsageError{"--out", "cannot open '" + common.out_path + "'"};
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fixed points of z -> z^d + c over finite residue rings", "fixedpoint-lab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  Common common;
  RingArgs ring_args;
  DegreeArgs deg_args;

  // count
  std::string c_text = "0";
  auto* count = app.add_subcommand("count", "fixed-point counts, one row per c");
  add_common(count, common);
  add_ring(count, ring_args, false);
  add_degree(count, deg_args, true);
  count->add_option("--c", c_text, "integers, a..b, @all, or p=<p>:c0,c1 elements");

  // census
  auto* census = app.add_subcommand("census", "cycle structure of the functional graph");
  add_common(census, common);
  add_ring(census, ring_args, true);
  add_degree(census, deg_args, true);
  census->add_option("--c", c_text, "integers, a..b, @all, or p=<p>:c0,c1 elements");

  // probe
  u64 probe_p = 3, probe_ell = 1;
  std::string probe_c = "0";
  unsigned probe_k = 2;
  auto* probe = app.add_subcommand("probe", "finite-precision orbits of z -> z^(p^ell) + c mod p^k");
  add_common(probe, common);
  probe->add_option("--p", probe_p, "prime");
  probe->add_option("--ell", probe_ell, "tower height");
  probe->add_option("--c", probe_c, "integers or a..b");
  probe->add_option("--k", probe_k, "precision");

  // lift
  u64 lift_p = 3;
  std::string lift_c = "0";
  std::optional<u64> lift_root;
  unsigned lift_k = 10;
  bool arbitrary = false;
  auto* lift = app.add_subcommand("lift", "Newton lifts of mod-p fixed points");
  add_common(lift, common);
  lift->add_option("--p", lift_p, "prime");
  add_degree(lift, deg_args, false);
  lift->add_option("--c", lift_c, "integers or a..b");
  lift->add_option("--root", lift_root, "one mod-p root (default: every fixed point)");
  lift->add_option("--k", lift_k, "target precision");
  lift->add_flag("--arbitrary-precision", arbitrary, "allow p^k beyond 64 bits");

  // avg
  std::string setting_text;
  std::string bounds_text = "1e2,1e3";
  std::string growth_text;
  u64 avg_ell = 1, min_prime = 0;
  unsigned degree_n = 0;
  auto* avg = app.add_subcommand("avg", "averages over c <= bound and primes p");
  add_common(avg, common);
  avg->add_option("--setting", setting_text, "7.1a .. 7.5c, co6a .. co6c, cor6.1a .. cor6.1c")
      ->required();
  avg->add_option("--bounds", bounds_text, "comma-separated bound schedule, e.g. 1e2,1e3");
  avg->add_option("--ell", avg_ell, "tower height");
  avg->add_option("--degree-n-mode", degree_n, "count in F_{p^n} per prime (7.1 only)");
  avg->add_option("--min-prime", min_prime, "floor on the prime range");
  avg->add_option("--growth", growth_text, "single-c growth points (default: primorials)");

  // density
  std::string fam_text;
  std::string dens_c = "210";
  u64 dens_ell = 1, exact_limit = 5000, stride = 256;
  auto* density = app.add_subcommand("density", "share of primes with a given count");
  add_common(density, common);
  density->add_option("--family", fam_text, "9.1 .. 9.6, 10.1 .. 10.3")->required();
  density->add_option("--c", dens_c, "integers or a..b");
  density->add_option("--ell", dens_ell, "tower height");
  density->add_option("--exact-limit", exact_limit, "enumerate primes up to this bound");
  density->add_option("--stride", stride, "cross-check every stride-th prime above it")
      ->check(CLI::PositiveNumber);

  // sumprimes
  std::string sp_c = "1e3,1e6";
  auto* sumprimes = app.add_subcommand("sumprimes", "sum of primes against its expansion");
  add_common(sumprimes, common);
  sumprimes->add_option("--c", sp_c, "comma-separated c values");

  // audit
  std::string grid_name = "small", regime_text = "all";
  bool expect_all = false, summary = false, no_double = false;
  auto* audit = app.add_subcommand("audit", "theorem case tables against enumeration");
  add_common(audit, common);
  audit->add_option("--grid", grid_name, "small or medium")->check(CLI::IsMember({"small", "medium"}));
  audit->add_option("--regime", regime_text, "degree1, extension or all")
      ->check(CLI::IsMember({"degree1", "extension", "all"}));
  audit->add_flag("--expect-all-match", expect_all, "exit 2 on any mismatch");
  audit->add_flag("--summary", summary, "emit the JSON summary instead of records");
  audit->add_flag("--no-double-entry", no_double, "skip the gcd recount");

  std::vector<const char*> argv{"fixedpoint-lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
        sub && e.get_name() == "CallForHelp") {
      out << sub->help();
      return 0;
    }
    err << "fixedpoint-lab: " << e.what() << '\n';
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    const Limits limits = common.limits();

    if (sub == count || sub == census) {
      if (sub == census && ring_args.ring == "trunc") {
        if (!ring_args.p) throw UsageError{"--p", "required"};
        Truncation T = for_flag("--k", [&] { return Truncation(*ring_args.p, ring_args.k); });
        const DegreeSpec ds = build_degree(deg_args, T.p());
        const auto cs = parse_int_list("--c", c_text);
        auto results = parallel_map<OrbitCensus>(cs.size(), common.jobs, [&](std::size_t i) {
          return functional_graph_census(T, ds, cs[i], limits);
        });
        Table t = census_table();
        for (std::size_t i = 0; i < cs.size(); ++i) append_census_row(t, T, ds, cs[i], results[i]);
        emit(common, sub, t, out);
        return 0;
      }
      const RingSpec ring = build_ring(ring_args);
      const DegreeSpec ds = build_degree(deg_args, ring.p());
      const FieldCtx F = ring.field();
      const auto cs = parse_c_values(c_text, F, limits);
      if (sub == count) {
        auto results = parallel_map<std::optional<CountResult>>(
            cs.size(), common.jobs,
            [&](std::size_t i) { return fixed_point_count(ring, ds, cs[i], limits); });
        Table t = count_table();
        for (const auto& r : results) append_count_row(t, *r);
        emit(common, sub, t, out);
      } else {
        auto results = parallel_map<OrbitCensus>(cs.size(), common.jobs, [&](std::size_t i) {
          return functional_graph_census(ring, ds, cs[i], limits);
        });
        Table t = census_table();
        for (std::size_t i = 0; i < cs.size(); ++i) {
          append_census_row(t, ring, ds, F.pretty(cs[i], ring.var()), results[i]);
        }
        emit(common, sub, t, out);
      }
      return 0;
    }

    if (sub == probe) {
      const auto cs = parse_int_list("--c", probe_c);
      for_flag("--p", [&] { return RingSpec::prime_field(probe_p); });
      for_flag("--k", [&] { return Truncation(probe_p, probe_k); });
      auto results = parallel_map<ProbeReport>(cs.size(), common.jobs, [&](std::size_t i) {
        return dichotomy_probe(probe_p, probe_ell, cs[i], probe_k, limits);
      });
      Table t{{"p", "ell", "c", "k", "ring_size", "fixed", "tails", "cycles", "p_fixed_points",
               "p_cycle"},
              {}};
      for (const auto& r : results) {
        t.add({r.p, r.ell, r.c, static_cast<u64>(r.k), r.census.ring_size, r.census.fixed_count,
               r.census.tail_count, r.census.cycles_string(), r.p_fixed_points, r.p_cycle});
      }
      emit(common, sub, t, out);
      return 0;
    }

    if (sub == lift) {
      const RingSpec ring = for_flag("--p", [&] { return RingSpec::prime_field(lift_p); });
      const DegreeSpec ds = build_degree(deg_args, lift_p);
      Table t{{"p", "dspec", "ell", "c", "root", "k", "lift"}, {}};
      for (std::int64_t c : parse_int_list("--c", lift_c)) {
        std::vector<u64> roots;
        if (lift_root) {
          roots.push_back(*lift_root);
        } else {
          const CountResult r = fixed_point_count(ring, ds, c, limits);
          for (const auto& z : r.roots) roots.push_back(r.field.encode(z));
        }
        for (u64 root : roots) {
          const PadicApprox a = for_flag("--root", [&] {
            return hensel_lift(lift_p, ds, c, root, lift_k, arbitrary);
          });
          t.add({lift_p, ds.name(), ds.param(), c, root, static_cast<u64>(lift_k),
                 a.value.str()});
        }
      }
      emit(common, sub, t, out);
      return 0;
    }

    if (sub == avg) {
      const AvgSetting s = for_flag("--setting", [&] { return AvgSetting::parse(setting_text); });
      AvgOptions o;
      o.ell = avg_ell;
      o.degree_n = degree_n;
      o.min_prime = min_prime;
      o.jobs = common.jobs;
      o.limits = limits;
      if (!growth_text.empty()) o.growth_points = parse_schedule("--growth", growth_text);
      Table t = avg_table();
      for (u64 bound : parse_schedule("--bounds", bounds_text)) {
        append_avg_row(t, for_flag("--bounds", [&] { return avg_estimator(s, bound, o); }));
      }
      emit(common, sub, t, out);
      return 0;
    }

    if (sub == density) {
      const DensityFamily f = for_flag("--family", [&] { return parse_density_family(fam_text); });
      DensityOptions o;
      o.ell = dens_ell;
      o.exact_limit = exact_limit;
      o.sample_stride = stride;
      o.jobs = common.jobs;
      o.limits = limits;
      Table t = density_table();
      for (std::int64_t c : parse_int_list("--c", dens_c)) {
        if (c < 1) throw UsageError{"--c", "density needs c >= 1"};
        append_density_row(t, for_flag("--c", [&] {
          return density_estimator(f, static_cast<u64>(c), o);
        }));
      }
      emit(common, sub, t, out);
      return 0;
    }

    if (sub == sumprimes) {
      Table t = sumprimes_table();
      for (u64 c : parse_schedule("--c", sp_c)) {
        append_sumprimes_row(t, for_flag("--c", [&] { return compare_sum_primes(c, limits); }));
      }
      emit(common, sub, t, out);
      return 0;
    }

    if (sub == audit) {
      AuditOptions o;
      o.regime = parse_regime(regime_text);
      o.double_entry = !no_double;
      o.jobs = common.jobs;
      o.limits = limits;
      const auto records = run_audit(AuditGrid::named(grid_name), o);
      if (summary) {
        emit_json(common, sub, summarize(records), out);
      } else {
        emit(common, sub, audit_table(records), out);
      }
      return expect_all && mismatch_count(records) > 0 ? 2 : 0;
    }
  } catch (const UsageError& e) {
    err << "fixedpoint-lab: " << e.flag << ": " << e.message << '\n';
    return 1;
  } catch (const Error& e) {
    err << "fixedpoint-lab: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace fpl::cli
