#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "salcheck/checker.hpp"
#include "salcheck/history.hpp"
#include "salcheck/view.hpp"

namespace salcheck {

inline constexpr const char* kReportSchema = "salcheck/1";

// ---- JSON -------------------------------------------------------------------

/// Report text that does not match the schema. `path` names the offending
/// field, e.g. "$.counterexample.nodes[2].state".
class ReportParseError : public std::runtime_error {
 public:
  ReportParseError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Keys sorted, two-space indent, trailing newline.
std::string render_json(const SuiteReport& report);
SuiteReport parse_report(const std::string& text);

std::string recipe_to_json(const HistoryRecipe& recipe);
HistoryRecipe recipe_from_json(const std::string& text);

// ---- render model -----------------------------------------------------------

struct Panel {
  std::string title;
  GraphView graph;
  std::string sink;  // id of the node holding the panel's result
};

struct RenderModel {
  std::string title;
  std::optional<NodeView> lca;
  std::vector<Panel> panels;  // two exactly when an equation was violated
  std::vector<std::string> notes;
  /// Set when the panel results disagree; both sinks are highlighted.
  bool mismatch = false;
};

/// One panel showing an executed history; sink is its last node.
RenderModel history_model(const std::string& title, const GraphView& history);
/// LHS/RHS panels for equation violations, one panel otherwise.
RenderModel counterexample_model(const Counterexample& cx);
RenderModel violation_model(const std::string& title, const Violation& v);
/// First counterexample when there is one, else a verdict summary.
RenderModel report_model(const SuiteReport& report);

std::string render_text(const RenderModel& model);
std::string render_dot(const RenderModel& model);
std::string render_html(const RenderModel& model);

/// Text lines for a history, in execution order.
std::vector<std::string> trace_lines(const GraphView& history);

}  // namespace salcheck
