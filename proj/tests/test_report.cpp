#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "criteria.hpp"
#include "salcheck/report.hpp"

using namespace salcheck;

namespace {

const Rdt& rdt(const char* id) { return *find_entry(id)->rdt; }

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

SuiteReport buggy_report() {
  CheckConfig cfg;
  cfg.tests = 50;
  return run_suite(rdt("ew-flag-buggy"), cfg);
}

RenderModel fig2_model() {
  const auto o = rdt("ew-flag-buggy").check(find_demo("ew-flag-buggy")->recipe, {PropertyId::BottomUpStep});
  return violation_model("flag", *o.front().violation);
}

}  // namespace

TEST_CASE("JSON report shape") {
  CheckConfig cfg;
  cfg.tests = 20;
  const std::string pass = render_json(run_suite(rdt("ctr-inc-mrdt"), cfg));
  const auto j = nlohmann::json::parse(pass);
  CHECK(j["schema"] == "salcheck/1");
  CHECK(j["rdt"] == "ctr-inc-mrdt");
  CHECK_FALSE(j.contains("counterexample"));
  CHECK(j["property"].is_null());
  CHECK(pass.back() == '\n');

  const SuiteReport bad = buggy_report();
  const auto b = nlohmann::json::parse(render_json(bad));
  REQUIRE(b.contains("counterexample"));
  const auto& cx = b["counterexample"];
  for (const char* key : {"recipe", "nodes", "edges", "lhs", "rhs", "shrink_steps"}) CHECK(cx.contains(key));
  CHECK(b["property"] == cx["property"]);
  // Keys come out sorted.
  std::string prev;
  for (const auto& [key, value] : b.items()) {
    CHECK(prev < key);
    prev = key;
  }
}

TEST_CASE("buggy flag report strings") {
  const SuiteReport r = buggy_report();
  REQUIRE_FALSE(r.counterexamples.empty());
  for (const Counterexample& cx : r.counterexamples) {
    CHECK(cx.violation.lhs == "(2, true)");
    CHECK(cx.violation.rhs == "(2, false)");
  }
}

TEST_CASE("JSON round trip") {
  for (const char* id : {"ew-flag-buggy", "or-set-mrdt", "mv-reg-crdt", "g-map-mrdt"}) {
    CheckConfig cfg;
    cfg.tests = 30;
    cfg.seed = 3;
    const SuiteReport r = run_suite(rdt(id), cfg);
    const std::string text = render_json(r);
    CHECK(parse_report(text) == r);
    CHECK(render_json(parse_report(text)) == text);
  }
  HistoryRecipe recipe = find_demo("ew-flag-buggy")->recipe;
  recipe.steps.push_back(DoStep{0, op::map_set(2, 3)});
  CHECK(recipe_from_json(recipe_to_json(recipe)) == recipe);
}

TEST_CASE("schema errors name the field") {
  const std::string text = render_json(buggy_report());
  auto j = nlohmann::json::parse(text);

  auto path_of = [](const std::string& t) -> std::string {
    try {
      parse_report(t);
    } catch (const ReportParseError& e) {
      return e.path();
    }
    return "none";
  };
  CHECK(path_of(text.substr(0, text.size() / 2)) == "$");
  CHECK(path_of("[]") == "$");

  auto broken = j;
  broken["counterexample"]["nodes"][2]["state"] = 5;
  CHECK(path_of(broken.dump()) == "$.counterexample.nodes[2].state");
  broken = j;
  broken["schema"] = "salcheck/0";
  CHECK(path_of(broken.dump()) == "$.schema");
  broken = j;
  broken["verdicts"][0].erase("status");
  CHECK(path_of(broken.dump()) == "$.verdicts[0].status");
  broken = j;
  broken["counterexample"]["recipe"]["steps"][0]["op"]["kind"] = "explode";
  CHECK(path_of(broken.dump()) == "$.counterexample.recipe.steps[0].op.kind");
  broken = j;
  broken["config"]["tests"] = -1;
  CHECK(path_of(broken.dump()) == "$.config.tests");
}

TEST_CASE("text rendering") {
  HistoryRecipe one;
  one.replica_count = 1;
  one.steps = {DoStep{0, op::inc()}};
  const auto lines = trace_lines(rdt("ctr-inc-mrdt").view(one));
  REQUIRE(lines.size() == 2);
  CHECK(lines[1] == "v0 [0] --inc(t=1,r=0)--> v1 [1]");

  const std::string fig = render_text(fig2_model());
  CHECK(fig.find("LCA: v1 [(1, true)]") < fig.find("== LHS =="));
  CHECK(fig.find("--merge(lca v1)--> v6 [(2, true)]") != std::string::npos);

  const std::string set = render_text(run_demo(*find_demo("or-set-mrdt")).model);
  CHECK(set.find("#[(1, 3)]#") != std::string::npos);
}

TEST_CASE("DOT rendering") {
  HistoryRecipe d;
  d.steps = {DoStep{0, op::inc()}, DoStep{1, op::inc()}};
  const std::string dot = render_dot(history_model("diamond", rdt("ctr-inc-mrdt").view(d)));
  CHECK(count(dot, "fillcolor=yellow") == 2);
  CHECK(count(dot, "\" [label=\"v") == 4);
  CHECK(count(dot, "-> \"p0_v3\";") == 2);
  CHECK(count(dot, "style=dashed, label=\"lca\"") == 1);

  const std::string fig = render_dot(fig2_model());
  CHECK(count(fig, "subgraph cluster_") == 3);
  CHECK(fig.find("label=\"LHS\"") != std::string::npos);
  CHECK(fig.find("label=\"RHS\"") != std::string::npos);
  CHECK(fig.find("v6\\n(2, true)\", fillcolor=\"#f4a6a6\"") != std::string::npos);
  CHECK(fig.find("v6**\\n(2, false)\", fillcolor=\"#f4a6a6\"") != std::string::npos);
  CHECK(fig.find("rank=min; \"lca\"") != std::string::npos);

  const std::string empty = render_dot(history_model("empty", rdt("ctr-inc-mrdt").view(HistoryRecipe{})));
  CHECK(count(empty, "[label=\"v0\\n0\"") == 1);
  CHECK(count(empty, "->") == 0);
  CHECK(render_dot(fig2_model()) == fig);
}

TEST_CASE("HTML rendering") {
  const std::string fig = render_html(fig2_model());
  CHECK(count(fig, "<section class=\"panel\">") == 2);
  CHECK(count(fig, "state mismatch") >= 2);
  CHECK(fig.find("(2, true)</span>") != std::string::npos);
  CHECK(fig.find("(2, false)</span>") != std::string::npos);
  CHECK(fig.find("http") == std::string::npos);

  const std::string set = render_html(run_demo(*find_demo("or-set-mrdt")).model);
  CHECK(count(set, "<section class=\"panel\">") == 1);
  CHECK(count(set, "state mismatch") == 0);
  CHECK(set.find("#[(1, 3)]#") != std::string::npos);

  const std::string empty = render_html(history_model("empty", rdt("ctr-inc-mrdt").view(HistoryRecipe{})));
  CHECK(empty.rfind("<!DOCTYPE html>", 0) == 0);
  CHECK(empty.find("</html>") != std::string::npos);
  CHECK(count(empty, "class=\"step\"") == 1);

  RenderModel nasty;
  nasty.title = "<b>&\"";
  CHECK(render_html(nasty).find("&lt;b&gt;&amp;&quot;") != std::string::npos);
}

TEST_CASE("golden files") {
  const std::string dir = SALCHECK_GOLDEN_DIR;
  const bool update = std::getenv("SALCHECK_UPDATE_GOLDEN") != nullptr;
  for (const auto& [name, text] : criteria::golden_outputs()) {
    if (update) std::ofstream(dir + "/" + name, std::ios::binary) << text;
    CHECK_MESSAGE(criteria::read_text(dir + "/" + name) == text, name);
  }
}
