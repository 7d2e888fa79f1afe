#pragma once

// Git-like version histories: a recipe of per-branch steps is built into a
// version DAG whose merge nodes carry the LCA found when the merge was
// created, then executed against a spec with every intermediate state kept.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "salcheck/model.hpp"

namespace salcheck {

using NodeId = std::size_t;

/// Apply `op` at the head of `branch`.
struct DoStep {
  std::size_t branch = 0;
  OpPayload op;
  friend bool operator==(const DoStep&, const DoStep&) = default;
};

/// Merge the head of `from` into `into`. Fast-forwards when one head is an
/// ancestor of the other; otherwise creates a merge node.
struct MergeStep {
  std::size_t into = 0;
  std::size_t from = 0;
  friend bool operator==(const MergeStep&, const MergeStep&) = default;
};

/// Start a new branch (and replica) at the current head of `from`.
struct ForkStep {
  std::size_t from = 0;
  friend bool operator==(const ForkStep&, const ForkStep&) = default;
};

using RecipeStep = std::variant<DoStep, MergeStep, ForkStep>;

struct HistoryRecipe {
  std::size_t replica_count = 2;
  std::vector<RecipeStep> steps;
  /// Append merges that bring every branch to one final, fully merged version.
  bool converge = true;

  std::size_t event_count() const;
  friend bool operator==(const HistoryRecipe&, const HistoryRecipe&) = default;
};

/// Malformed recipe: bad branch index, self-merge, no replicas, or a merge
/// whose branches have more than one lowest common ancestor.
class RecipeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class NodeKind { Root, Apply, Merge };

struct VersionNode {
  NodeId id = 0;
  NodeKind kind = NodeKind::Root;
  std::vector<NodeId> parents;  // Apply: {parent}; Merge: {into-head, from-head}
  std::optional<Event> event;   // Apply only
  std::optional<NodeId> lca;    // Merge only
  std::size_t branch = 0;
  std::string label;            // "v<id>"
};

class VersionGraph {
 public:
  VersionGraph();

  const std::vector<VersionNode>& nodes() const { return nodes_; }
  const VersionNode& node(NodeId id) const { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }
  NodeId root() const { return 0; }
  /// The fully merged version (head of branch 0 after convergence).
  NodeId final_node() const { return final_; }
  std::size_t branch_count() const { return heads_.size(); }
  NodeId head(std::size_t branch) const { return heads_.at(branch); }

  /// Events in timestamp order.
  std::vector<Event> events() const;
  NodeId event_node(Timestamp ts) const;
  /// True when `a` is an ancestor of `b` or equal to it.
  bool reaches(NodeId a, NodeId b) const { return ancestors_.at(b).at(a); }

  /// Maximal common ancestors of two nodes.
  std::vector<NodeId> common_lcas(NodeId a, NodeId b) const;

 private:
  friend VersionGraph build(const HistoryRecipe& recipe);
  NodeId add_node(VersionNode n);

  std::vector<VersionNode> nodes_;
  std::vector<std::vector<bool>> ancestors_;  // ancestors_[n][m]: m reaches n
  std::vector<NodeId> heads_;
  std::vector<NodeId> event_nodes_;  // index = timestamp - 1
  NodeId final_ = 0;
};

/// Builds the skeleton: timestamps from a global counter in step order,
/// replica id = branch index, LCAs recorded at merge creation.
VersionGraph build(const HistoryRecipe& recipe);

/// Lowest common ancestor. Throws RecipeError if it is not unique.
NodeId lca(const VersionGraph& g, NodeId v1, NodeId v2);
bool happens_before(const VersionGraph& g, const Event& e1, const Event& e2);
bool concurrent(const VersionGraph& g, const Event& e1, const Event& e2);

struct ApplyStep {
  NodeId from = 0;
  NodeId to = 0;
  Event event;
};

struct MergeTraceStep {
  NodeId left = 0;
  NodeId right = 0;
  NodeId lca = 0;
  NodeId to = 0;
};

/// One do or merge, with the states it consumed and produced.
template <class State>
struct TraceStep {
  std::variant<ApplyStep, MergeTraceStep> step;
  std::vector<State> inputs;  // apply: {pre}; merge: {lca, left, right}
  State output;
};

template <class State>
struct Trace {
  State initial;
  std::vector<TraceStep<State>> steps;
};

/// An executed history: one state per graph node, plus the trace.
template <class State>
struct Execution {
  VersionGraph graph;
  std::vector<State> states;
  Trace<State> trace;

  const State& state(NodeId n) const { return states.at(n); }
  const State& final_state() const { return states.at(graph.final_node()); }
  /// True when the event at `n` left its parent's state unchanged.
  bool no_op(NodeId n) const {
    const VersionNode& v = graph.node(n);
    return v.kind == NodeKind::Apply && states.at(n) == states.at(v.parents[0]);
  }
};

/// Runs do/merge in node order (a topological order by construction).
template <AnySpec S>
Execution<typename S::State> execute(const S& spec, VersionGraph graph) {
  using State = typename S::State;
  Execution<State> ex{std::move(graph), {}, {}};
  ex.trace.initial = spec.initial();
  ex.states.reserve(ex.graph.size());
  for (const VersionNode& n : ex.graph.nodes()) {
    switch (n.kind) {
      case NodeKind::Root:
        ex.states.push_back(spec.initial());
        break;
      case NodeKind::Apply: {
        const State& pre = ex.states[n.parents[0]];
        State post = checked_apply(spec, pre, *n.event);
        ex.trace.steps.push_back({ApplyStep{n.parents[0], n.id, *n.event}, {pre}, post});
        ex.states.push_back(std::move(post));
        break;
      }
      case NodeKind::Merge: {
        const State& l = ex.states[*n.lca];
        const State& a = ex.states[n.parents[0]];
        const State& b = ex.states[n.parents[1]];
        State merged = merge_states(spec, l, a, b);
        ex.trace.steps.push_back(
            {MergeTraceStep{n.parents[0], n.parents[1], *n.lca, n.id}, {l, a, b}, merged});
        ex.states.push_back(std::move(merged));
        break;
      }
    }
  }
  return ex;
}

template <AnySpec S>
Execution<typename S::State> execute(const S& spec, const HistoryRecipe& recipe) {
  return execute(spec, build(recipe));
}

/// Re-runs every trace step from its recorded inputs and checks the outputs
/// and the node states. Used to assert replay fidelity.
template <AnySpec S>
bool replay_matches(const S& spec, const Execution<typename S::State>& ex) {
  using State = typename S::State;
  std::vector<std::optional<State>> seen(ex.graph.size());
  seen[0] = ex.trace.initial;
  for (const auto& st : ex.trace.steps) {
    if (const auto* ap = std::get_if<ApplyStep>(&st.step)) {
      if (!seen[ap->from] || *seen[ap->from] != st.inputs[0]) return false;
      State out = spec.apply(*seen[ap->from], ap->event);
      if (out != st.output) return false;
      seen[ap->to] = out;
    } else {
      const auto& m = std::get<MergeTraceStep>(st.step);
      if (!seen[m.lca] || !seen[m.left] || !seen[m.right]) return false;
      State out = merge_states(spec, *seen[m.lca], *seen[m.left], *seen[m.right]);
      if (out != st.output) return false;
      seen[m.to] = out;
    }
  }
  for (NodeId n = 0; n < ex.graph.size(); ++n) {
    if (!seen[n] || *seen[n] != ex.states[n]) return false;
  }
  return true;
}

}  // namespace salcheck
