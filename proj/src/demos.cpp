#include "salcheck/demos.hpp"

#include <stdexcept>

#include "salcheck/rdt.hpp"

namespace salcheck {

namespace {

DoStep on(std::size_t branch, OpKind kind, std::vector<std::int64_t> args = {}) {
  return DoStep{branch, make_op(kind, args)};
}

// v1 = Enable@r0, v2 = Enable@r1, v3 = Disable@r0, v4 = Disable@r1,
// v5 = v4 merged with v1 (LCA v0), v6 = v3 merged with v5 (LCA v1).
// The fork keeps v1 reachable so r1 can pull it after its own events.
HistoryRecipe flag_history() {
  HistoryRecipe r;
  r.replica_count = 2;
  r.steps = {on(0, OpKind::Enable), ForkStep{0},           on(1, OpKind::Enable),
             on(0, OpKind::Disable), on(1, OpKind::Disable), MergeStep{1, 2},
             MergeStep{0, 1}};
  return r;
}

// r1 adds 3 while r0 concurrently removes it; the add was not observed.
HistoryRecipe or_set_history() {
  HistoryRecipe r;
  r.replica_count = 2;
  r.steps = {on(1, OpKind::Add, {3}), on(0, OpKind::Rem, {3})};
  return r;
}

HistoryRecipe counter_history() {
  HistoryRecipe r;
  r.replica_count = 2;
  r.steps = {on(0, OpKind::Inc), on(1, OpKind::Inc), on(0, OpKind::Inc)};
  return r;
}

std::vector<Demo> all_demos() {
  return {
      {"ctr-inc-mrdt", "Increment-only counter: concurrent increments add up", counter_history(),
       PropertyId::BottomUpStep},
      {"ew-flag-buggy", "Enable-wins flag: concurrent disable wrongly loses", flag_history(),
       PropertyId::BottomUpStep},
      {"ew-flag-fixed", "Enable-wins flag (corrected) on the same history", flag_history(),
       PropertyId::BottomUpStep},
      {"or-set-mrdt", "OR-set: remove does not cancel an unseen add", or_set_history(),
       PropertyId::LinearizationExists},
  };
}

}  // namespace

std::vector<std::string> demo_ids() {
  std::vector<std::string> out;
  for (const Demo& d : all_demos()) out.push_back(d.rdt);
  return out;
}

std::optional<Demo> find_demo(std::string_view rdt) {
  for (Demo& d : all_demos()) {
    if (d.rdt == rdt) return std::move(d);
  }
  return std::nullopt;
}

DemoResult run_demo(const Demo& demo) {
  const CatalogEntry* entry = find_entry(demo.rdt);
  if (!entry) throw std::invalid_argument("unknown rdt: " + demo.rdt);
  const Rdt& rdt = *entry->rdt;
  DemoResult out;
  out.final_state = rdt.final_state(demo.recipe);
  out.final_value = rdt.final_value(demo.recipe);
  if (demo.property) {
    const PropertyOutcome o = rdt.check(demo.recipe, {*demo.property}).front();
    if (o.outcome == Outcome::Fail) {
      out.anomalous = true;
      out.model = violation_model(demo.title, *o.violation);
      return out;
    }
  }
  out.model = history_model(demo.title, rdt.view(demo.recipe));
  out.model.notes.push_back("final state " + out.final_state + ", value " + out.final_value);
  if (demo.property) out.model.notes.push_back(std::string(to_string(*demo.property)) + " holds on this history");
  return out;
}

}  // namespace salcheck
