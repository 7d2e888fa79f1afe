#pragma once

// String-level snapshot of an executed history. Everything the renderers
// show comes from here, so the states are exactly what execution produced.

#include <optional>
#include <string>
#include <vector>

#include "salcheck/history.hpp"
#include "salcheck/model.hpp"

namespace salcheck {

struct NodeView {
  std::string id;     // unique within a report, e.g. "v3" or "v6*"
  std::string label;  // shown to the user
  std::string state;
  friend bool operator==(const NodeView&, const NodeView&) = default;
};

/// kind: "do" (event application), "merge" (parent into merge node) or
/// "lca" (annotation from the LCA to a merge node).
struct EdgeView {
  std::string from;
  std::string to;
  std::string kind;
  std::optional<std::string> event;
  friend bool operator==(const EdgeView&, const EdgeView&) = default;
};

struct GraphView {
  std::vector<NodeView> nodes;
  std::vector<EdgeView> edges;

  const NodeView* find(const std::string& id) const {
    for (const auto& n : nodes) {
      if (n.id == id) return &n;
    }
    return nullptr;
  }
  friend bool operator==(const GraphView&, const GraphView&) = default;
};

template <AnySpec S>
GraphView view_of(const S& spec, const Execution<typename S::State>& ex) {
  GraphView v;
  const std::string fmt = label_format(spec);
  for (const VersionNode& n : ex.graph.nodes()) {
    v.nodes.push_back({n.label, n.label, spec.format(ex.state(n.id))});
    switch (n.kind) {
      case NodeKind::Root:
        break;
      case NodeKind::Apply:
        v.edges.push_back({ex.graph.node(n.parents[0]).label, n.label, "do", format_event(*n.event, fmt)});
        break;
      case NodeKind::Merge:
        v.edges.push_back({ex.graph.node(n.parents[0]).label, n.label, "merge", std::nullopt});
        v.edges.push_back({ex.graph.node(n.parents[1]).label, n.label, "merge", std::nullopt});
        v.edges.push_back({ex.graph.node(*n.lca).label, n.label, "lca", std::nullopt});
        break;
    }
  }
  return v;
}

}  // namespace salcheck
