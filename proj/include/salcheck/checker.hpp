#pragma once

// Property family, suite configuration and verdicts. The per-history
// equations live in properties.hpp; run_suite and shrink drive them through
// the type-erased Rdt interface.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "salcheck/history.hpp"
#include "salcheck/model.hpp"
#include "salcheck/view.hpp"

namespace salcheck {

class Rdt;

enum class PropertyId {
  MergeIdem,
  MergeComm,
  MergeWithLca,
  BottomUpStep,
  RcPolicy,
  LinearizationExists,
  LatticeComm,
  LatticeAssoc,
  LatticeIdem,
};

std::string_view to_string(PropertyId p);
std::optional<PropertyId> parse_property(std::string_view name);
std::vector<PropertyId> all_properties();
/// Properties run for a kind of RDT, in suite order.
std::vector<PropertyId> properties_for(RdtKind kind);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CheckConfig {
  std::uint64_t tests = 1000;  // random histories per property
  std::uint64_t seed = 42;
  std::size_t max_events = 8;
  std::size_t replicas = 2;
  /// Every recipe with fewer events than this is enumerated before sampling.
  std::size_t exhaustive_below = 5;
  std::size_t shrink_budget = 500;
  std::size_t literal_pool = 3;
  /// Empty means every property applicable to the RDT kind.
  std::vector<PropertyId> properties;

  /// Throws ConfigError on out-of-range bounds.
  void validate() const;
  friend bool operator==(const CheckConfig&, const CheckConfig&) = default;
};

/// A failed equation instance, already rendered to strings.
struct Violation {
  PropertyId property = PropertyId::MergeIdem;
  std::string message;
  std::string lhs;
  std::string rhs;
  std::string focus;               // node where the equation was evaluated
  std::optional<std::string> lca;  // its LCA, for merge equations
  GraphView history;               // the executed history
  std::optional<GraphView> rhs_panel;  // synthetic computation of the RHS
  std::uint64_t linearizations_tried = 0;
  friend bool operator==(const Violation&, const Violation&) = default;
};

enum class Outcome { Pass, Fail, NotApplicable };

struct PropertyOutcome {
  Outcome outcome = Outcome::NotApplicable;
  std::uint64_t instances = 0;  // equation instances evaluated
  std::optional<Violation> violation;
};

enum class VerdictStatus { Pass, Fail, Vacuous };
std::string_view to_string(VerdictStatus s);
std::optional<VerdictStatus> parse_verdict_status(std::string_view s);

struct Verdict {
  PropertyId property = PropertyId::MergeIdem;
  VerdictStatus status = VerdictStatus::Vacuous;
  std::uint64_t exhaustive = 0;    // enumerated histories checked
  std::uint64_t random = 0;        // random histories checked
  std::uint64_t instances = 0;     // equation instances evaluated
  std::uint64_t inapplicable = 0;  // histories with no instance (or over the oracle cap)
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct Counterexample {
  std::string rdt;
  PropertyId property = PropertyId::MergeIdem;
  std::uint64_t seed = 0;
  HistoryRecipe original;
  GraphView original_history;
  HistoryRecipe shrunk;
  Violation violation;  // on the shrunk recipe
  std::size_t shrink_steps = 0;
  std::size_t attempts = 0;
  bool minimal = true;
  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct SuiteReport {
  std::string rdt;
  CheckConfig config;
  std::vector<Verdict> verdicts;
  /// First counterexample of each failing property, in suite order.
  std::vector<Counterexample> counterexamples;

  bool passed() const { return counterexamples.empty(); }
  friend bool operator==(const SuiteReport&, const SuiteReport&) = default;
};

struct ShrinkResult {
  HistoryRecipe recipe;
  std::size_t steps = 0;     // accepted reductions
  std::size_t attempts = 0;  // candidates evaluated
  bool minimal = true;
};

/// Candidate reductions of a recipe, in the fixed order they are tried.
std::vector<HistoryRecipe> shrink_candidates(const HistoryRecipe& recipe);

/// Greedy shrinking: accept the first candidate that still fails `property`,
/// restart, stop at a fixpoint or when the budget runs out.
ShrinkResult shrink(const Rdt& rdt, PropertyId property, const HistoryRecipe& failing,
                    std::size_t budget);

/// Shrinks and packages a failing recipe. Throws std::logic_error if the
/// recipe does not fail or the shrunk history does not replay.
Counterexample make_counterexample(const Rdt& rdt, PropertyId property, const HistoryRecipe& failing,
                                   const CheckConfig& cfg);

SuiteReport run_suite(const Rdt& rdt, const CheckConfig& cfg);

}  // namespace salcheck
