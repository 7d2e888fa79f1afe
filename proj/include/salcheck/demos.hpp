#pragma once

// Bundled worked examples: the flag history whose merge goes wrong, the
// same shape on the corrected flag, and the OR-set remove/add diamond.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "salcheck/checker.hpp"
#include "salcheck/history.hpp"
#include "salcheck/report.hpp"

namespace salcheck {

struct Demo {
  std::string rdt;
  std::string title;
  HistoryRecipe recipe;
  /// Equation evaluated on the history; a failure is shown as LHS/RHS panels.
  std::optional<PropertyId> property;
};

struct DemoResult {
  RenderModel model;
  std::string final_state;
  std::string final_value;  // observable value, e.g. the flag
  bool anomalous = false;
};

std::vector<std::string> demo_ids();
std::optional<Demo> find_demo(std::string_view rdt);
/// Throws std::invalid_argument when the demo's RDT is not in the catalog.
DemoResult run_demo(const Demo& demo);

}  // namespace salcheck
