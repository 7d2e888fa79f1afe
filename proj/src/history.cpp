#include "salcheck/history.hpp"

#include <algorithm>

namespace salcheck {

std::size_t HistoryRecipe::event_count() const {
  return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const RecipeStep& s) {
    return std::holds_alternative<DoStep>(s);
  }));
}

VersionGraph::VersionGraph() {
  VersionNode root;
  root.label = "v0";
  nodes_.push_back(root);
  ancestors_.push_back({true});
}

NodeId VersionGraph::add_node(VersionNode n) {
  const NodeId id = nodes_.size();
  n.id = id;
  n.label = "v" + std::to_string(id);
  std::vector<bool> anc(id + 1, false);
  anc[id] = true;
  for (NodeId p : n.parents) {
    for (NodeId m = 0; m < ancestors_[p].size(); ++m) {
      if (ancestors_[p][m]) anc[m] = true;
    }
  }
  for (auto& row : ancestors_) row.resize(id + 1, false);
  ancestors_.push_back(std::move(anc));
  nodes_.push_back(std::move(n));
  return id;
}

std::vector<Event> VersionGraph::events() const {
  std::vector<Event> out;
  out.reserve(event_nodes_.size());
  for (NodeId n : event_nodes_) out.push_back(*nodes_[n].event);
  return out;
}

NodeId VersionGraph::event_node(Timestamp ts) const {
  if (ts.value == 0 || ts.value > event_nodes_.size()) {
    throw std::out_of_range("no event with timestamp " + std::to_string(ts.value));
  }
  return event_nodes_[ts.value - 1];
}

std::vector<NodeId> VersionGraph::common_lcas(NodeId a, NodeId b) const {
  std::vector<NodeId> common;
  for (NodeId m = 0; m < nodes_.size(); ++m) {
    if (reaches(m, a) && reaches(m, b)) common.push_back(m);
  }
  std::vector<NodeId> lowest;
  for (NodeId c : common) {
    const bool dominated = std::any_of(common.begin(), common.end(),
                                       [&](NodeId d) { return d != c && reaches(c, d); });
    if (!dominated) lowest.push_back(c);
  }
  return lowest;
}

namespace {

void check_branch(std::size_t branch, std::size_t count) {
  if (branch >= count) {
    throw RecipeError("branch " + std::to_string(branch) + " does not exist (" +
                      std::to_string(count) + " branches)");
  }
}

}  // namespace

VersionGraph build(const HistoryRecipe& recipe) {
  if (recipe.replica_count == 0) throw RecipeError("recipe has no replicas");
  VersionGraph g;
  g.heads_.assign(recipe.replica_count, g.root());
  std::uint64_t clock = 0;

  auto merge = [&](std::size_t into, std::size_t from) {
    check_branch(into, g.heads_.size());
    check_branch(from, g.heads_.size());
    if (into == from) throw RecipeError("branch " + std::to_string(into) + " merged into itself");
    const NodeId a = g.heads_[into];
    const NodeId b = g.heads_[from];
    if (g.reaches(b, a)) return;
    if (g.reaches(a, b)) {
      g.heads_[into] = b;
      return;
    }
    const std::vector<NodeId> lowest = g.common_lcas(a, b);
    if (lowest.size() != 1) {
      throw RecipeError("merge of v" + std::to_string(a) + " and v" + std::to_string(b) +
                        " has " + std::to_string(lowest.size()) + " lowest common ancestors");
    }
    VersionNode n;
    n.kind = NodeKind::Merge;
    n.parents = {a, b};
    n.lca = lowest.front();
    n.branch = into;
    g.heads_[into] = g.add_node(std::move(n));
  };

  for (const RecipeStep& step : recipe.steps) {
    if (const auto* d = std::get_if<DoStep>(&step)) {
      check_branch(d->branch, g.heads_.size());
      VersionNode n;
      n.kind = NodeKind::Apply;
      n.parents = {g.heads_[d->branch]};
      n.event = Event{Timestamp{++clock}, ReplicaId{d->branch}, d->op};
      n.branch = d->branch;
      const NodeId id = g.add_node(std::move(n));
      g.event_nodes_.push_back(id);
      g.heads_[d->branch] = id;
    } else if (const auto* m = std::get_if<MergeStep>(&step)) {
      merge(m->into, m->from);
    } else {
      const auto& f = std::get<ForkStep>(step);
      check_branch(f.from, g.heads_.size());
      g.heads_.push_back(g.heads_[f.from]);
    }
  }

  if (recipe.converge) {
    for (std::size_t b = 1; b < g.heads_.size(); ++b) merge(0, b);
    for (std::size_t b = 1; b < g.heads_.size(); ++b) g.heads_[b] = g.heads_[0];
  }
  g.final_ = g.heads_[0];
  return g;
}

NodeId lca(const VersionGraph& g, NodeId v1, NodeId v2) {
  const std::vector<NodeId> lowest = g.common_lcas(v1, v2);
  if (lowest.size() != 1) {
    throw RecipeError("v" + std::to_string(v1) + " and v" + std::to_string(v2) +
                      " have no unique lowest common ancestor");
  }
  return lowest.front();
}

bool happens_before(const VersionGraph& g, const Event& e1, const Event& e2) {
  if (e1.ts == e2.ts) return false;
  return g.reaches(g.event_node(e1.ts), g.event_node(e2.ts));
}

bool concurrent(const VersionGraph& g, const Event& e1, const Event& e2) {
  return e1.ts != e2.ts && !happens_before(g, e1, e2) && !happens_before(g, e2, e1);
}

}  // namespace salcheck
