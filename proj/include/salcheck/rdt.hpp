#pragma once

// Type-erased view of a catalog spec, so the suite driver, the CLI and the
// Python module can work with any entry by id.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "salcheck/checker.hpp"
#include "salcheck/history.hpp"
#include "salcheck/model.hpp"
#include "salcheck/oracle.hpp"
#include "salcheck/properties.hpp"
#include "salcheck/view.hpp"

namespace salcheck {

struct OracleSummary {
  bool in_scope = true;
  bool found = false;
  std::size_t effective_events = 0;
  std::vector<std::string> witness;  // event labels in order
  std::string final_state;
  std::string canonical_state;
  std::uint64_t orders = 0;
};

class Rdt {
 public:
  virtual ~Rdt() = default;
  virtual std::string_view id() const = 0;
  virtual RdtKind kind() const = 0;
  virtual PayloadDomain domain() const = 0;
  virtual RcRelation rc() const = 0;
  virtual std::string label_format() const = 0;

  /// Builds and executes the recipe. Throws RecipeError or SpecMismatch.
  virtual GraphView view(const HistoryRecipe& recipe) const = 0;
  virtual std::string final_state(const HistoryRecipe& recipe) const = 0;
  /// Observable value of the final state, e.g. "false" for a flag.
  virtual std::string final_value(const HistoryRecipe& recipe) const = 0;
  /// Re-runs the recorded trace and compares every state.
  virtual bool replays(const HistoryRecipe& recipe) const = 0;
  /// Executes once and evaluates each property. Throws RecipeError.
  virtual std::vector<PropertyOutcome> check(const HistoryRecipe& recipe,
                                             const std::vector<PropertyId>& props) const = 0;
  virtual OracleSummary oracle(const HistoryRecipe& recipe) const = 0;
};

template <AnySpec S>
class RdtModel final : public Rdt {
 public:
  explicit RdtModel(S spec = {}) : spec_(std::move(spec)) {}

  std::string_view id() const override { return S::kId; }
  RdtKind kind() const override { return S::kKind; }
  PayloadDomain domain() const override { return spec_.domain(); }
  RcRelation rc() const override { return spec_.rc(); }
  std::string label_format() const override { return salcheck::label_format(spec_); }

  GraphView view(const HistoryRecipe& recipe) const override {
    return view_of(spec_, execute(spec_, recipe));
  }
  std::string final_state(const HistoryRecipe& recipe) const override {
    return spec_.format(execute(spec_, recipe).final_state());
  }
  std::string final_value(const HistoryRecipe& recipe) const override {
    return spec_.read(execute(spec_, recipe).final_state());
  }
  bool replays(const HistoryRecipe& recipe) const override {
    return replay_matches(spec_, execute(spec_, recipe));
  }
  std::vector<PropertyOutcome> check(const HistoryRecipe& recipe,
                                     const std::vector<PropertyId>& props) const override {
    return check_properties(spec_, execute(spec_, recipe), props);
  }
  OracleSummary oracle(const HistoryRecipe& recipe) const override {
    const auto ex = execute(spec_, recipe);
    OracleSummary out;
    out.final_state = spec_.format(ex.final_state());
    try {
      const auto r = find_linearization(spec_, ex);
      const std::string fmt = salcheck::label_format(spec_);
      out.found = r.found();
      out.effective_events = r.effective.size();
      for (const Event& e : r.witness) out.witness.push_back(format_event(e, fmt));
      out.canonical_state = spec_.format(r.canonical_state);
      out.orders = r.orders;
    } catch (const OracleScopeError&) {
      out.in_scope = false;
    }
    return out;
  }

  const S& spec() const { return spec_; }

 private:
  S spec_;
};

struct CatalogEntry {
  std::string id;
  RdtKind kind = RdtKind::Mrdt;
  bool known_buggy = false;
  std::string name;   // descriptive name
  std::string notes;
  std::shared_ptr<const Rdt> rdt;
};

/// All fourteen entries, sorted by id.
const std::vector<CatalogEntry>& catalog_list();
/// Null when the id is unknown.
const CatalogEntry* find_entry(std::string_view id);

}  // namespace salcheck
