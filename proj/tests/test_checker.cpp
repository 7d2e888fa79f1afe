#include <doctest.h>

#include "criteria.hpp"
#include "salcheck/checker.hpp"
#include "salcheck/demos.hpp"
#include "salcheck/rdt.hpp"

using namespace salcheck;

namespace {

const Rdt& rdt(const char* id) { return *find_entry(id)->rdt; }

HistoryRecipe fig2() { return find_demo("ew-flag-buggy")->recipe; }

PropertyOutcome check_one(const char* id, const HistoryRecipe& r, PropertyId p) {
  return rdt(id).check(r, {p}).front();
}

HistoryRecipe diamond(OpPayload left, OpPayload right) {
  HistoryRecipe r;
  r.steps = {DoStep{0, left}, DoStep{1, right}};
  return r;
}

const Verdict& verdict(const SuiteReport& r, PropertyId p) {
  for (const Verdict& v : r.verdicts) {
    if (v.property == p) return v;
  }
  FAIL("no verdict");
  return r.verdicts.front();
}

}  // namespace

TEST_CASE("property names") {
  for (PropertyId p : all_properties()) CHECK(parse_property(to_string(p)) == p);
  CHECK_FALSE(parse_property("Nope"));
  CHECK(properties_for(RdtKind::Mrdt).size() == 6);
  CHECK(properties_for(RdtKind::Crdt).size() == 8);
}

TEST_CASE("config validation") {
  CheckConfig c;
  CHECK_NOTHROW(c.validate());
  c.tests = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.max_events = 2;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.exhaustive_below = 3;
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("BottomUpStep on the flag history") {
  const auto o = check_one("ew-flag-buggy", fig2(), PropertyId::BottomUpStep);
  REQUIRE(o.outcome == Outcome::Fail);
  CHECK(o.violation->lhs == "(2, true)");
  CHECK(o.violation->rhs == "(2, false)");
  CHECK(o.violation->focus == "v6");
  CHECK(o.violation->lca == "v1");
  REQUIRE(o.violation->rhs_panel);
  CHECK(o.violation->rhs_panel->nodes.back().state == "(2, false)");
  CHECK(check_one("ew-flag-fixed", fig2(), PropertyId::BottomUpStep).outcome != Outcome::Fail);
}

TEST_CASE("counter properties hold on random histories") {
  Rng rng(17);
  const Rdt& c = rdt("ctr-inc-mrdt");
  int checked = 0;
  while (checked < 300) {
    const HistoryRecipe r = random_recipe(rng, c.domain(), GeneratorBounds{3, 7, 3});
    try {
      for (const PropertyOutcome& o : c.check(r, properties_for(RdtKind::Mrdt))) CHECK(o.outcome != Outcome::Fail);
      ++checked;
    } catch (const RecipeError&) {
    }
  }
}

TEST_CASE("merge with an unchanged side") {
  HistoryRecipe r;
  r.steps = {DoStep{0, op::inc()}, MergeStep{1, 0}, DoStep{0, op::inc()}, DoStep{1, op::inc()}};
  CHECK(check_one("ctr-inc-mrdt", r, PropertyId::MergeWithLca).outcome == Outcome::Pass);
  CHECK(check_one("or-set-mrdt", diamond(op::add(1), op::add(2)), PropertyId::MergeComm).outcome ==
        Outcome::Pass);
}

TEST_CASE("RcPolicy") {
  const auto set = check_one("or-set-mrdt", diamond(op::rem(3), op::add(3)), PropertyId::RcPolicy);
  CHECK(set.outcome == Outcome::Pass);
  CHECK(set.instances == 1);
  const auto flag = check_one("ew-flag-fixed", diamond(op::disable(), op::enable()), PropertyId::RcPolicy);
  CHECK(flag.outcome == Outcome::Pass);
  CHECK(rdt("ew-flag-fixed").final_value(diamond(op::disable(), op::enable())) == "true");
  CHECK(check_one("ctr-inc-mrdt", diamond(op::inc(), op::inc()), PropertyId::RcPolicy).outcome ==
        Outcome::NotApplicable);
}

TEST_CASE("linearization oracle") {
  CHECK(check_one("ew-flag-buggy", fig2(), PropertyId::LinearizationExists).outcome == Outcome::Fail);
  CHECK_FALSE(rdt("ew-flag-buggy").oracle(fig2()).found);

  const OracleSummary fixed = rdt("ew-flag-fixed").oracle(fig2());
  REQUIRE(fixed.found);
  // The result is false, so the last enable must be followed by a disable.
  std::size_t last_enable = 0, last_disable = 0;
  for (std::size_t i = 0; i < fixed.witness.size(); ++i) {
    (fixed.witness[i].rfind("enable", 0) == 0 ? last_enable : last_disable) = i + 1;
  }
  CHECK(last_disable > last_enable);

  HistoryRecipe linear;
  linear.replica_count = 1;
  linear.steps = {DoStep{0, op::add(1)}, DoStep{0, op::add(2)}, DoStep{0, op::rem(1)}};
  const OracleSummary lin = rdt("or-set-mrdt").oracle(linear);
  REQUIRE(lin.found);
  CHECK(lin.witness == std::vector<std::string>{"add(1,t=1,r=0)", "add(2,t=2,r=0)", "rem(1,t=3,r=0)"});

  const OracleSummary empty = rdt("or-set-mrdt").oracle(HistoryRecipe{});
  CHECK(empty.found);
  CHECK(empty.witness.empty());
}

TEST_CASE("suite on the faulty flag") {
  const SuiteReport r = run_suite(rdt("ew-flag-buggy"), CheckConfig{});
  CHECK(verdict(r, PropertyId::BottomUpStep).status == VerdictStatus::Fail);
  CHECK(verdict(r, PropertyId::LinearizationExists).status == VerdictStatus::Fail);
  for (const Verdict& v : r.verdicts) {
    if (v.property != PropertyId::BottomUpStep && v.property != PropertyId::LinearizationExists) {
      CHECK(v.status != VerdictStatus::Fail);
    }
  }
  for (const Counterexample& cx : r.counterexamples) {
    CHECK(cx.shrunk.event_count() <= 4);
    CHECK(cx.minimal);
    // Shrinking a minimal counterexample changes nothing.
    const ShrinkResult again = shrink(rdt("ew-flag-buggy"), cx.property, cx.shrunk, 500);
    CHECK(again.recipe == cx.shrunk);
    CHECK(again.steps == 0);
  }
}

TEST_CASE("suites on correct entries") {
  for (const char* id : {"ctr-inc-mrdt", "or-set-mrdt"}) {
    const SuiteReport r = run_suite(rdt(id), CheckConfig{});
    CHECK(r.passed());
    for (const Verdict& v : r.verdicts) CHECK(v.status != VerdictStatus::Fail);
  }
  CheckConfig cfg;
  cfg.tests = 100;
  const SuiteReport c = run_suite(rdt("ctr-inc-mrdt"), cfg);
  CHECK(verdict(c, PropertyId::RcPolicy).status == VerdictStatus::Vacuous);
}

TEST_CASE("the right branch's disable is needed") {
  // Dropping r1's Disable leaves a history the flag handles correctly.
  HistoryRecipe r = fig2();
  r.steps.erase(r.steps.begin() + 4);
  CHECK(check_one("ew-flag-buggy", r, PropertyId::BottomUpStep).outcome != Outcome::Fail);
  CHECK(check_one("ew-flag-buggy", r, PropertyId::LinearizationExists).outcome != Outcome::Fail);

  const ShrinkResult s = shrink(rdt("ew-flag-buggy"), PropertyId::BottomUpStep, fig2(), 500);
  CHECK(s.recipe.event_count() <= 4);
  CHECK(check_one("ew-flag-buggy", s.recipe, PropertyId::BottomUpStep).outcome == Outcome::Fail);
  std::size_t disables = 0;
  for (const RecipeStep& step : s.recipe.steps) {
    if (const auto* d = std::get_if<DoStep>(&step)) disables += d->op.kind == OpKind::Disable;
  }
  CHECK(disables >= 1);
}

TEST_CASE("suite is deterministic") {
  CheckConfig cfg;
  cfg.tests = 100;
  cfg.seed = 9;
  for (const char* id : {"ew-flag-buggy", "pn-ctr-crdt"}) {
    CHECK(run_suite(rdt(id), cfg) == run_suite(rdt(id), cfg));
  }
}
