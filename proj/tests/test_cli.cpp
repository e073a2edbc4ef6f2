#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = fpl::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("count on the quadratic extension of F_3") {
  const Run r = run({"count", "--ring", "ext", "--p", "3", "--n", "2", "--family", "ppow",
                     "--ell", "1", "--c", "0"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0].rfind("# fixedpoint-lab 0.1.0 count", 0) == 0);
  CHECK(ls[1] == "ring,p,n_or_m,dspec,ell,c,count,witnesses");
  CHECK(ls[2] == "ext,3,2,ppow,1,0,3,0;1;2");
}

TEST_CASE("c ranges and element sweeps") {
  const Run a = run({"count", "--p", "7", "--c", "0..6"});
  CHECK(lines(a.out).size() == 2 + 7);
  const Run b = run({"count", "--ring", "func", "--pi", "auto", "--p", "3", "--m", "2", "--c",
                     "@all"});
  CHECK(b.code == 0);
  CHECK(lines(b.out).size() == 2 + 9);
  const Run c = run({"count", "--ring", "ext", "--p", "3", "--n", "2", "--c", "p=3:0,1"});
  CHECK(c.code == 0);
  CHECK(lines(c.out)[2] == "ext,3,2,ppow,1,u,3,2u;2u+1;2u+2");
  CHECK(run({"count", "--p", "7", "--c", "5..2"}).code == 1);
}

TEST_CASE("density of a power of two is zero") {
  const Run r = run({"density", "--family", "9.1", "--c", "128"});
  CHECK(r.code == 0);
  CHECK(lines(r.out)[2].rfind("9.1,128,1,0,", 0) == 0);
  CHECK(lines(r.out)[2].find(",0/1,0,") != std::string::npos);
}

TEST_CASE("audit exit codes") {
  CHECK(run({"audit", "--grid", "small", "--regime", "degree1", "--expect-all-match"}).code == 0);
  CHECK(run({"audit", "--grid", "small", "--regime", "extension", "--expect-all-match"}).code == 2);
  // mismatches alone do not fail the run
  const Run r = run({"audit", "--grid", "small", "--regime", "extension"});
  CHECK(r.code == 0);
  CHECK(r.out.find("T3.3,prime,3,1,2,0,2,2,3,mismatch,0;1;2") != std::string::npos);
  const Run s = run({"audit", "--grid", "small", "--summary"});
  CHECK(s.code == 0);
  const auto j = nlohmann::json::parse(s.out);
  CHECK(j["summary"]["records"].get<long>() > 0);
}

TEST_CASE("usage errors name the flag on one line") {
  auto check_err = [](std::vector<std::string> args, const std::string& flag) {
    const Run r = run(std::move(args));
    CHECK(r.code == 1);
    CHECK(r.out.empty());
    CHECK(lines(r.err).size() == 1);
    CHECK(r.err.find(flag) != std::string::npos);
  };
  check_err({"count", "--p", "4"}, "--p");
  check_err({"count", "--ring", "func", "--pi", "p=3:2,0,1"}, "--pi");
  check_err({"count", "--ring", "func", "--pi", "auto", "--p", "3"}, "--m");
  check_err({"count", "--p", "3", "--family", "pm1pow"}, "--family");
  check_err({"count", "--p", "3", "--format", "xml"}, "--format");
  check_err({"count", "--p", "3", "--cap", "0"}, "--cap");
  check_err({"count", "--p", "3", "--c", "x"}, "--c");
  check_err({"avg", "--setting", "7.9z"}, "--setting");
  check_err({"avg", "--setting", "7.3a", "--bounds", "1e2,abc"}, "--bounds");
  check_err({"count", "--p", "3", "--bogus"}, "--bogus");
  check_err({"count", "--p", "3", "--family", "explicit"}, "--d");
  check_err({"count", "--p", "3", "--ell", "0"}, "--ell");
  CHECK(run({}).code == 1);
}

TEST_CASE("json and csv carry the same fields") {
  const std::vector<std::vector<std::string>> cmds{
      {"count", "--p", "5", "--c", "0..4"},
      {"census", "--p", "5", "--family", "explicit", "--d", "2", "--c", "1"},
      {"census", "--ring", "trunc", "--p", "3", "--k", "2", "--c", "3"},
      {"probe", "--p", "3", "--k", "2", "--c", "0..2"},
      {"lift", "--p", "5", "--k", "6"},
      {"avg", "--setting", "7.5a", "--bounds", "1e2"},
      {"density", "--family", "9.3", "--c", "210"},
      {"sumprimes", "--c", "1e3"},
      {"audit", "--regime", "degree1"},
  };
  for (auto cmd : cmds) {
    CAPTURE(cmd[0]);
    const Run csv = run(cmd);
    REQUIRE(csv.code == 0);
    cmd.insert(cmd.end(), {"--format", "json"});
    const Run js = run(cmd);
    REQUIRE(js.code == 0);
    const auto ls = lines(csv.out);
    std::vector<std::string> header;
    std::istringstream h(ls.at(1));
    for (std::string col; std::getline(h, col, ',');) header.push_back(col);
    const auto j = nlohmann::ordered_json::parse(js.out);
    REQUIRE(j["rows"].size() == ls.size() - 2);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j["rows"][0].items()) keys.push_back(k);
    CHECK(keys == header);
  }
}

TEST_CASE("output is independent of job count") {
  const std::vector<std::string> base{"audit", "--grid", "small"};
  auto one = base;
  one.insert(one.end(), {"--jobs", "1"});
  auto four = base;
  four.insert(four.end(), {"--jobs", "4"});
  CHECK(run(one).out == run(four).out);
  CHECK(run({"avg", "--setting", "7.3c", "--bounds", "1e3", "--jobs", "1"}).out ==
        run({"avg", "--setting", "7.3c", "--bounds", "1e3", "--jobs", "3"}).out);
}

TEST_CASE("version") {
  const Run r = run({"--version"});
  CHECK(r.code == 0);
  CHECK(r.out == "0.1.0\n");
}
