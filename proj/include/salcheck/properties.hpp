#pragma once

// Per-history evaluation of the property family. Each check executes nothing
// itself; it reads an Execution and evaluates its equation at every
// applicable place, reporting the first violation.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "salcheck/checker.hpp"
#include "salcheck/history.hpp"
#include "salcheck/oracle.hpp"
#include "salcheck/view.hpp"

namespace salcheck {

namespace detail {

template <AnySpec S>
struct PropertyContext {
  const S& spec;
  const Execution<typename S::State>& ex;
};

template <AnySpec S>
Violation make_violation(const PropertyContext<S>& ctx, PropertyId p, std::string message,
                         const typename S::State& lhs, const typename S::State& rhs, NodeId focus) {
  Violation v;
  v.property = p;
  v.message = std::move(message);
  v.lhs = ctx.spec.format(lhs);
  v.rhs = ctx.spec.format(rhs);
  v.focus = ctx.ex.graph.node(focus).label;
  if (const auto& l = ctx.ex.graph.node(focus).lca) v.lca = ctx.ex.graph.node(*l).label;
  v.history = view_of(ctx.spec, ctx.ex);
  return v;
}

inline PropertyOutcome fail(std::uint64_t instances, Violation v) {
  return {Outcome::Fail, instances, std::move(v)};
}

inline PropertyOutcome settle(std::uint64_t instances) {
  return {instances == 0 ? Outcome::NotApplicable : Outcome::Pass, instances, std::nullopt};
}

template <class State>
std::vector<std::pair<NodeId, const State*>> distinct_states(const Execution<State>& ex) {
  std::vector<std::pair<NodeId, const State*>> out;
  std::set<State> seen;
  for (NodeId n = 0; n < ex.graph.size(); ++n) {
    if (seen.insert(ex.state(n)).second) out.emplace_back(n, &ex.state(n));
  }
  return out;
}

template <AnySpec S>
PropertyOutcome merge_idem(const PropertyContext<S>& ctx) {
  std::uint64_t count = 0;
  for (const auto& [n, s] : distinct_states(ctx.ex)) {
    ++count;
    const auto m = merge_states(ctx.spec, *s, *s, *s);
    if (m != *s) {
      return fail(count, make_violation(ctx, PropertyId::MergeIdem,
                                        "merging " + ctx.ex.graph.node(n).label + " with itself changed it",
                                        m, *s, n));
    }
  }
  return settle(count);
}

template <AnySpec S>
PropertyOutcome merge_comm(const PropertyContext<S>& ctx) {
  std::uint64_t count = 0;
  for (const VersionNode& n : ctx.ex.graph.nodes()) {
    if (n.kind != NodeKind::Merge) continue;
    ++count;
    const auto& l = ctx.ex.state(*n.lca);
    const auto& a = ctx.ex.state(n.parents[0]);
    const auto& b = ctx.ex.state(n.parents[1]);
    const auto ab = merge_states(ctx.spec, l, a, b);
    const auto ba = merge_states(ctx.spec, l, b, a);
    if (ab != ba) {
      return fail(count, make_violation(ctx, PropertyId::MergeComm,
                                        "merge at " + n.label + " depends on argument order", ab, ba, n.id));
    }
  }
  return settle(count);
}

template <AnySpec S>
PropertyOutcome merge_with_lca(const PropertyContext<S>& ctx) {
  std::uint64_t count = 0;
  for (const VersionNode& n : ctx.ex.graph.nodes()) {
    if (n.kind != NodeKind::Merge) continue;
    const auto& l = ctx.ex.state(*n.lca);
    for (const NodeId side : n.parents) {
      ++count;
      const auto& x = ctx.ex.state(side);
      const auto lx = merge_states(ctx.spec, l, l, x);
      if (lx != x) {
        return fail(count, make_violation(ctx, PropertyId::MergeWithLca,
                                          "merging the LCA with " + ctx.ex.graph.node(side).label +
                                              " did not return " + ctx.ex.graph.node(side).label,
                                          lx, x, n.id));
      }
      const auto xl = merge_states(ctx.spec, l, x, l);
      if (xl != x) {
        return fail(count, make_violation(ctx, PropertyId::MergeWithLca,
                                          "merging " + ctx.ex.graph.node(side).label +
                                              " with the LCA did not return it",
                                          xl, x, n.id));
      }
    }
  }
  return settle(count);
}

/// Effective events in `tip`'s history that are not in `base`'s.
template <class State>
std::vector<Event> effective_since(const Execution<State>& ex, NodeId base, NodeId tip) {
  std::vector<Event> out;
  for (const Event& e : ex.graph.events()) {
    const NodeId n = ex.graph.event_node(e.ts);
    if (ex.graph.reaches(n, tip) && !ex.graph.reaches(n, base) && !ex.no_op(n)) out.push_back(e);
  }
  return out;
}

/// Whether the last event `e` of one branch may be peeled off past the merge:
/// no live concurrent event on the other branch is ordered after it by rc, and
/// rc-unordered concurrent events commute with it at the LCA. Events act as
/// effectors of the state they were generated in.
template <AnySpec S>
bool peelable(const PropertyContext<S>& ctx, const typename S::State& l, const Event& e,
              const typename S::State& e_origin, const std::vector<Event>& others) {
  const RcRelation rc = ctx.spec.rc();
  const VersionGraph& g = ctx.ex.graph;
  for (const Event& o : others) {
    const bool cancelled = std::any_of(others.begin(), others.end(), [&](const Event& o2) {
      return happens_before(g, o, o2) && rc(o2.op, o.op);
    });
    if (cancelled) continue;
    if (rc(e.op, o.op)) return false;
    if (!rc(o.op, e.op)) {
      const auto& o_origin = ctx.ex.state(g.node(g.event_node(o.ts)).parents[0]);
      const auto oe = replay_event(ctx.spec, replay_event(ctx.spec, l, o, o_origin), e, e_origin);
      const auto eo = replay_event(ctx.spec, replay_event(ctx.spec, l, e, e_origin), o, o_origin);
      if (oe != eo) return false;
    }
  }
  return true;
}

template <AnySpec S>
PropertyOutcome bottom_up_step(const PropertyContext<S>& ctx) {
  const VersionGraph& g = ctx.ex.graph;
  std::uint64_t count = 0;
  for (const VersionNode& m : g.nodes()) {
    if (m.kind != NodeKind::Merge) continue;
    const NodeId lca_id = *m.lca;
    const auto& l = ctx.ex.state(lca_id);
    for (int side = 0; side < 2; ++side) {
      const NodeId a_id = m.parents[side];
      const NodeId b_id = m.parents[1 - side];
      const VersionNode& a = g.node(a_id);
      if (a.kind != NodeKind::Apply || ctx.ex.no_op(a_id)) continue;
      const Event& e = *a.event;
      const NodeId a_prev = a.parents[0];
      const auto& a_prev_state = ctx.ex.state(a_prev);
      if (!peelable(ctx, l, e, a_prev_state, effective_since(ctx.ex, lca_id, b_id))) continue;
      ++count;
      const auto& b = ctx.ex.state(b_id);
      const auto& a_state = ctx.ex.state(a_id);
      const auto lhs = side == 0 ? merge_states(ctx.spec, l, a_state, b) : merge_states(ctx.spec, l, b, a_state);
      const auto inner = side == 0 ? merge_states(ctx.spec, l, a_prev_state, b)
                                   : merge_states(ctx.spec, l, b, a_prev_state);
      const auto rhs = replay_event(ctx.spec, inner, e, a_prev_state);
      if (lhs == rhs) continue;

      const std::string fmt = label_format(ctx.spec);
      Violation v = make_violation(ctx, PropertyId::BottomUpStep,
                                   "peeling " + format_event(e, fmt) + " off " + a.label +
                                       " does not commute with the merge at " + m.label,
                                   lhs, rhs, m.id);
      const std::string star = m.label + "*";
      const std::string star2 = m.label + "**";
      GraphView rp;
      const std::string& ll = g.node(lca_id).label;
      const std::string& pl = g.node(a_prev).label;
      const std::string& bl = g.node(b_id).label;
      rp.nodes.push_back({ll, ll, ctx.spec.format(l)});
      if (a_prev != lca_id) rp.nodes.push_back({pl, pl, ctx.spec.format(a_prev_state)});
      if (b_id != lca_id && b_id != a_prev) rp.nodes.push_back({bl, bl, ctx.spec.format(b)});
      rp.nodes.push_back({star, star, ctx.spec.format(inner)});
      rp.nodes.push_back({star2, star2, ctx.spec.format(rhs)});
      const std::string& first = side == 0 ? pl : bl;
      const std::string& second = side == 0 ? bl : pl;
      rp.edges.push_back({first, star, "merge", std::nullopt});
      rp.edges.push_back({second, star, "merge", std::nullopt});
      rp.edges.push_back({ll, star, "lca", std::nullopt});
      rp.edges.push_back({star, star2, "do", format_event(e, fmt)});
      v.rhs_panel = std::move(rp);
      return fail(count, std::move(v));
    }
  }
  return settle(count);
}

/// Applies to two-sided diamonds: the final merge joins two single events
/// applied to the same LCA, and exactly one of the two rc orders holds.
template <AnySpec S>
PropertyOutcome rc_policy(const PropertyContext<S>& ctx) {
  const VersionGraph& g = ctx.ex.graph;
  const VersionNode& m = g.node(g.final_node());
  if (m.kind != NodeKind::Merge) return settle(0);
  const VersionNode& x = g.node(m.parents[0]);
  const VersionNode& y = g.node(m.parents[1]);
  if (x.kind != NodeKind::Apply || y.kind != NodeKind::Apply) return settle(0);
  if (x.parents[0] != *m.lca || y.parents[0] != *m.lca) return settle(0);
  const RcRelation rc = ctx.spec.rc();
  const bool xy = rc(x.event->op, y.event->op);
  const bool yx = rc(y.event->op, x.event->op);
  if (xy == yx) return settle(0);
  const Event& o1 = xy ? *x.event : *y.event;
  const Event& o2 = xy ? *y.event : *x.event;
  const auto& l = ctx.ex.state(*m.lca);
  const auto step = ctx.spec.apply(l, o1);
  const auto expected = ctx.spec.apply(step, o2);
  const auto& merged = ctx.ex.state(m.id);
  if (merged == expected) return settle(1);

  const std::string fmt = label_format(ctx.spec);
  Violation v = make_violation(ctx, PropertyId::RcPolicy,
                               "merge at " + m.label + " does not place " + format_event(o1, fmt) +
                                   " before " + format_event(o2, fmt),
                               merged, expected, m.id);
  const std::string ll = g.node(*m.lca).label;
  const std::string star = m.label + "*";
  const std::string star2 = m.label + "**";
  GraphView rp;
  rp.nodes.push_back({ll, ll, ctx.spec.format(l)});
  rp.nodes.push_back({star, star, ctx.spec.format(step)});
  rp.nodes.push_back({star2, star2, ctx.spec.format(expected)});
  rp.edges.push_back({ll, star, "do", format_event(o1, fmt)});
  rp.edges.push_back({star, star2, "do", format_event(o2, fmt)});
  v.rhs_panel = std::move(rp);
  return fail(1, std::move(v));
}

template <AnySpec S>
PropertyOutcome linearization_exists(const PropertyContext<S>& ctx) {
  try {
    const auto r = find_linearization(ctx.spec, ctx.ex);
    if (r.found()) return settle(1);
    Violation v = make_violation(ctx, PropertyId::LinearizationExists,
                                 "no order of the " + std::to_string(r.effective.size()) +
                                     " effective events that respects happens-before and rc "
                                     "reproduces the merged state",
                                 ctx.ex.final_state(), r.canonical_state, ctx.ex.graph.final_node());
    v.linearizations_tried = r.orders;
    return fail(1, std::move(v));
  } catch (const OracleScopeError&) {
    return settle(0);
  }
}

template <AnySpec S>
PropertyOutcome lattice(const PropertyContext<S>& ctx, PropertyId p) {
  if constexpr (!CrdtSpec<S>) {
    return settle(0);
  } else {
    const auto states = distinct_states(ctx.ex);
    const auto& spec = ctx.spec;
    const auto& label = [&](NodeId n) { return ctx.ex.graph.node(n).label; };
    std::uint64_t count = 0;
    const std::size_t k = states.size();
    if (p == PropertyId::LatticeIdem) {
      for (const auto& [n, s] : states) {
        ++count;
        const auto m = spec.merge2(*s, *s);
        if (m != *s) {
          return fail(count, make_violation(ctx, p, "join of " + label(n) + " with itself changed it", m, *s, n));
        }
      }
    } else if (p == PropertyId::LatticeComm) {
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
          ++count;
          const auto ab = spec.merge2(*states[i].second, *states[j].second);
          const auto ba = spec.merge2(*states[j].second, *states[i].second);
          if (ab != ba) {
            return fail(count, make_violation(ctx, p,
                                              "join of " + label(states[i].first) + " and " +
                                                  label(states[j].first) + " is not commutative",
                                              ab, ba, states[j].first));
          }
        }
      }
    } else {
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          for (std::size_t q = 0; q < k; ++q) {
            if (i == j || j == q || i == q) continue;
            ++count;
            const auto& a = *states[i].second;
            const auto& b = *states[j].second;
            const auto& c = *states[q].second;
            const auto left = spec.merge2(a, spec.merge2(b, c));
            const auto right = spec.merge2(spec.merge2(a, b), c);
            if (left != right) {
              return fail(count, make_violation(ctx, p,
                                                "join of " + label(states[i].first) + ", " +
                                                    label(states[j].first) + " and " +
                                                    label(states[q].first) + " is not associative",
                                                left, right, states[q].first));
            }
          }
        }
      }
    }
    return settle(count);
  }
}

}  // namespace detail

/// Evaluates each property on one executed history.
template <AnySpec S>
std::vector<PropertyOutcome> check_properties(const S& spec, const Execution<typename S::State>& ex,
                                              const std::vector<PropertyId>& props) {
  detail::PropertyContext<S> ctx{spec, ex};
  std::vector<PropertyOutcome> out;
  out.reserve(props.size());
  for (PropertyId p : props) {
    switch (p) {
      case PropertyId::MergeIdem:
        out.push_back(detail::merge_idem(ctx));
        break;
      case PropertyId::MergeComm:
        out.push_back(detail::merge_comm(ctx));
        break;
      case PropertyId::MergeWithLca:
        out.push_back(detail::merge_with_lca(ctx));
        break;
      case PropertyId::BottomUpStep:
        out.push_back(detail::bottom_up_step(ctx));
        break;
      case PropertyId::RcPolicy:
        out.push_back(detail::rc_policy(ctx));
        break;
      case PropertyId::LinearizationExists:
        out.push_back(detail::linearization_exists(ctx));
        break;
      case PropertyId::LatticeComm:
      case PropertyId::LatticeAssoc:
      case PropertyId::LatticeIdem:
        out.push_back(detail::lattice(ctx, p));
        break;
    }
  }
  return out;
}

}  // namespace salcheck
