#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "criteria.hpp"
#include "salcheck/cli.hpp"

using namespace salcheck;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "salcheck_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("list") {
  const Run r = run({"list"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 14);
  std::size_t flagged = 0;
  std::istringstream in(r.out);
  std::string prev, line;
  while (std::getline(in, line)) {
    flagged += line.find("KNOWN-BUGGY") != std::string::npos;
    const std::string id = line.substr(0, line.find(' '));
    CHECK(prev < id);
    prev = id;
  }
  CHECK(flagged == 1);

  const Run j = run({"list", "--json"});
  CHECK(j.code == 0);
  const auto arr = nlohmann::json::parse(j.out);
  CHECK(arr.is_array());
  CHECK(arr.size() == 14);
}

TEST_CASE("check") {
  const fs::path report = scratch() / "buggy.json";
  const Run bad = run({"check", "ew-flag-buggy", "--seed", "42", "--out", report.string()});
  CHECK(bad.code == 1);
  CHECK(bad.out.find(report.string()) != std::string::npos);
  const SuiteReport parsed = parse_report(criteria::read_text(report.string()));
  CHECK_FALSE(parsed.counterexamples.empty());
  CHECK(parsed.config.seed == 42);

  const fs::path pass = scratch() / "pass.json";
  const Run ok = run({"check", "ctr-inc-mrdt", "--seed", "1", "--tests", "200", "--out", pass.string()});
  CHECK(ok.code == 0);
  CHECK(fs::exists(pass));

  CHECK(run({"check", "nosuch"}).code == 2);
  const Run prop = run({"check", "ctr-inc-mrdt", "--props", "MergeIdem,Bogus"});
  CHECK(prop.code == 2);
  CHECK(prop.err.find("MergeComm") != std::string::npos);
  CHECK(run({"check", "ctr-inc-mrdt", "--props", "LatticeComm"}).code == 2);
  CHECK(run({"check", "ctr-inc-mrdt", "--tests", "0"}).code == 2);
  CHECK(run({"check", "ctr-inc-mrdt", "--tests", "many"}).code == 2);
  CHECK(run({"check", "ctr-inc-mrdt", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"check", "ctr-inc-mrdt", "--max-events", "3", "--tests", "20", "--seed", "1"}).code == 0);
  CHECK(run({"check", "ctr-inc-mrdt", "--props", "MergeIdem", "--tests", "20", "--seed", "1"}).code == 0);
}

TEST_CASE("check seed handling") {
  const Run picked = run({"check", "ctr-inc-mrdt", "--tests", "10"});
  CHECK(picked.code == 0);
  CHECK(picked.out.find("--seed ") != std::string::npos);

  const fs::path a = scratch() / "env_a.json";
  const fs::path b = scratch() / "env_b.json";
  setenv("SALCHECK_SEED", "77", 1);
  CHECK(run({"check", "or-set-crdt", "--tests", "30", "--out", a.string()}).code == 0);
  unsetenv("SALCHECK_SEED");
  CHECK(run({"check", "or-set-crdt", "--tests", "30", "--seed", "77", "--out", b.string()}).code == 0);
  CHECK(criteria::read_text(a.string()) == criteria::read_text(b.string()));

  setenv("SALCHECK_SEED", "abc", 1);
  CHECK(run({"check", "or-set-crdt", "--tests", "30"}).code == 2);
  unsetenv("SALCHECK_SEED");
}

TEST_CASE("render") {
  const fs::path report = scratch() / "render.json";
  run({"check", "ew-flag-buggy", "--seed", "5", "--tests", "50", "--out", report.string()});

  const fs::path html = scratch() / "render.html";
  CHECK(run({"render", report.string(), "--format", "html", "--out", html.string()}).code == 0);
  const std::string page = criteria::read_text(html.string());
  CHECK(page.find("<h2>LHS</h2>") != std::string::npos);
  CHECK(page.find("<h2>RHS</h2>") != std::string::npos);

  const Run dot = run({"render", report.string(), "--format", "dot"});
  CHECK(dot.code == 0);
  CHECK(dot.out.find("label=\"LHS\"") != std::string::npos);
  CHECK(dot.out.find("label=\"RHS\"") != std::string::npos);

  CHECK(run({"render", report.string()}).code == 0);
  CHECK(run({"render", report.string(), "--format", "pdf"}).code == 2);
  CHECK(run({"render", (scratch() / "missing.json").string()}).code == 2);

  const std::string text = criteria::read_text(report.string());
  const fs::path cut = scratch() / "cut.json";
  std::ofstream(cut) << text.substr(0, text.size() / 3);
  CHECK(run({"render", cut.string()}).code == 2);

  auto j = nlohmann::json::parse(text);
  j["counterexample"]["lhs"] = 3;
  const fs::path wrong = scratch() / "wrong.json";
  std::ofstream(wrong) << j.dump();
  const Run w = run({"render", wrong.string()});
  CHECK(w.code == 2);
  CHECK(w.err.find("$.counterexample.lhs") != std::string::npos);
}

TEST_CASE("oracle") {
  const Run bug = run({"oracle", "ew-flag-buggy", "--max-events", "5"});
  CHECK(bug.code == 1);
  CHECK(bug.out.find("(2, true)") != std::string::npos);
  CHECK(run({"oracle", "or-set-mrdt", "--max-events", "4"}).code == 0);
  const Run zero = run({"oracle", "ctr-inc-mrdt", "--max-events", "0"});
  CHECK(zero.code == 0);
  CHECK(zero.out.find("1 histories checked") != std::string::npos);
  CHECK(run({"oracle", "ctr-inc-mrdt", "--max-events", "10"}).code == 2);
  CHECK(run({"oracle", "nosuch"}).code == 2);
}

TEST_CASE("demo") {
  const fs::path dir = scratch() / "demos";
  const Run set = run({"demo", "or-set-mrdt", "--out-dir", dir.string()});
  CHECK(set.code == 0);
  CHECK(set.out.find("--merge(lca v0)--> v3 [#[(1, 3)]#]") != std::string::npos);
  CHECK(fs::exists(dir / "or-set-mrdt.html"));
  CHECK(fs::exists(dir / "or-set-mrdt.txt"));

  const Run bug = run({"demo", "ew-flag-buggy", "--out-dir", dir.string()});
  CHECK(bug.code == 0);
  CHECK(bug.out.find("v6 [(2, true)]\nresult: (2, true)  <-- mismatch") != std::string::npos);
  CHECK(bug.out.find("ANOMALY") != std::string::npos);

  const Run fixed = run({"demo", "ew-flag-fixed", "--out-dir", dir.string()});
  CHECK(fixed.code == 0);
  CHECK(fixed.out.find("value false") != std::string::npos);
  CHECK(fixed.out.find("ANOMALY") == std::string::npos);

  CHECK(run({"demo", "g-set-mrdt"}).code == 2);
  CHECK(run({"demo", "nosuch"}).code == 2);
}
