#pragma once

// Brute-force RA-linearizability oracle. Searches every total order of a
// history's events that extends happens-before and follows rc on concurrent
// pairs, looking for one whose sequential replay from the initial state gives
// the fully merged state.
//
// Three refinements over the literal reading:
//   * an event that left its origin state unchanged is dropped; it has no
//     effect to explain, and keeping it can make hb and rc contradict;
//   * when hb plus the rc pairs contain a cycle, the rc pairs are relaxed to
//     each inclusion-maximal subset that is acyclic with hb;
//   * events are replayed as effectors: each carries the state it was
//     generated in, so an observed-remove only removes what it observed
//     (see replay_event).
// Orders are explored with a DP over event subsets, deduplicating states.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "salcheck/history.hpp"
#include "salcheck/model.hpp"

namespace salcheck {

inline constexpr std::size_t kOracleCap = 9;

class OracleScopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OracleStatus { Witness, NoWitness };

template <class State>
struct OracleResult {
  OracleStatus status = OracleStatus::NoWitness;
  std::vector<Event> effective;  // events considered, by timestamp
  std::vector<Event> witness;    // the matching order when found
  /// Greedy smallest-timestamp order under the first constraint set, with its
  /// final state; the "explanation" shown when no witness exists.
  std::vector<Event> canonical;
  State canonical_state{};
  std::uint64_t orders = 0;  // valid total orders considered
  bool found() const { return status == OracleStatus::Witness; }
};

namespace detail {

using Mask = std::uint32_t;

struct Edge {
  std::size_t from;
  std::size_t to;
};

/// preds[i]: bitmask of events that must precede i.
inline bool acyclic(const std::vector<Mask>& preds) {
  const std::size_t n = preds.size();
  Mask placed = 0;
  for (std::size_t round = 0; round < n; ++round) {
    bool progress = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(placed >> i & 1U) && (preds[i] & ~placed) == 0) {
        placed |= Mask{1} << i;
        progress = true;
      }
    }
    if (!progress) return false;
  }
  return true;
}

/// Every inclusion-maximal subset of `edges` acyclic together with `hb`,
/// returned as predecessor masks.
inline std::vector<std::vector<Mask>> maximal_constraint_sets(const std::vector<Mask>& hb,
                                                              const std::vector<Edge>& edges) {
  std::vector<std::vector<Mask>> out;
  auto with = [&](std::vector<Mask> p, const Edge& e) {
    p[e.to] |= Mask{1} << e.from;
    return p;
  };
  {
    std::vector<Mask> all = hb;
    for (const Edge& e : edges) all = with(all, e);
    if (acyclic(all)) return {all};
  }
  std::vector<bool> chosen(edges.size(), false);
  auto rec = [&](auto&& self, std::size_t i, const std::vector<Mask>& cur) -> void {
    if (i == edges.size()) {
      for (std::size_t j = 0; j < edges.size(); ++j) {
        if (!chosen[j] && acyclic(with(cur, edges[j]))) return;  // not maximal
      }
      out.push_back(cur);
      return;
    }
    std::vector<Mask> next = with(cur, edges[i]);
    if (acyclic(next)) {
      chosen[i] = true;
      self(self, i + 1, next);
      chosen[i] = false;
    }
    self(self, i + 1, cur);
  };
  rec(rec, 0, hb);
  return out;
}

}  // namespace detail

/// Searches the executed history for a witness order. Throws OracleScopeError
/// when more than `cap` effective events remain.
template <AnySpec S>
OracleResult<typename S::State> find_linearization(const S& spec,
                                                   const Execution<typename S::State>& ex,
                                                   std::size_t cap = kOracleCap) {
  using State = typename S::State;
  using detail::Mask;
  OracleResult<State> result;
  const VersionGraph& g = ex.graph;

  std::vector<NodeId> nodes;
  std::vector<const State*> origins;
  for (const Event& e : g.events()) {
    const NodeId n = g.event_node(e.ts);
    if (ex.no_op(n)) continue;
    nodes.push_back(n);
    origins.push_back(&ex.state(g.node(n).parents[0]));
    result.effective.push_back(e);
  }
  auto step = [&](const State& s, std::size_t i) {
    return replay_event(spec, s, result.effective[i], *origins[i]);
  };
  const std::size_t n = nodes.size();
  if (n > std::min<std::size_t>(cap, 20)) {
    throw OracleScopeError("history has " + std::to_string(n) + " effective events; oracle cap is " +
                           std::to_string(cap));
  }

  std::vector<Mask> hb(n, 0);
  std::vector<detail::Edge> edges;
  const RcRelation rc = spec.rc();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (g.reaches(nodes[i], nodes[j])) {
        hb[j] |= Mask{1} << i;
      } else if (!g.reaches(nodes[j], nodes[i]) && rc(result.effective[i].op, result.effective[j].op)) {
        edges.push_back({i, j});
      }
    }
  }

  const State& target = ex.final_state();
  const Mask full = n == 0 ? 0 : static_cast<Mask>((std::uint64_t{1} << n) - 1);
  const auto constraint_sets = detail::maximal_constraint_sets(hb, edges);

  for (std::size_t si = 0; si < constraint_sets.size(); ++si) {
    const std::vector<Mask>& preds = constraint_sets[si];

    if (si == 0) {
      State s = spec.initial();
      Mask placed = 0;
      while (placed != full) {
        for (std::size_t i = 0; i < n; ++i) {
          if (!(placed >> i & 1U) && (preds[i] & ~placed) == 0) {
            s = step(s, i);
            result.canonical.push_back(result.effective[i]);
            placed |= Mask{1} << i;
            break;
          }
        }
      }
      result.canonical_state = s;
    }

    // Number of linear extensions, for reporting.
    std::vector<std::uint64_t> count(std::size_t{1} << n, 0);
    count[0] = 1;
    for (Mask m = 0; m <= full; ++m) {
      if (count[m] == 0) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if (!(m >> i & 1U) && (preds[i] & ~m) == 0) count[m | Mask{1} << i] += count[m];
      }
      if (m == full) break;
    }
    result.orders += count[full];

    // Reachable states per placed-set, with back-pointers for the witness.
    struct Back {
      Mask prev_mask;
      std::size_t prev_index;
      std::size_t event;
    };
    std::vector<std::vector<State>> states(std::size_t{1} << n);
    std::vector<std::vector<Back>> back(std::size_t{1} << n);
    states[0].push_back(spec.initial());
    back[0].push_back({0, 0, 0});
    for (Mask m = 0; m <= full; ++m) {
      for (std::size_t k = 0; k < states[m].size(); ++k) {
        for (std::size_t i = 0; i < n; ++i) {
          if ((m >> i & 1U) || (preds[i] & ~m) != 0) continue;
          const Mask next = m | Mask{1} << i;
          State s = step(states[m][k], i);
          auto& bucket = states[next];
          if (std::find(bucket.begin(), bucket.end(), s) == bucket.end()) {
            bucket.push_back(std::move(s));
            back[next].push_back({m, k, i});
          }
        }
      }
      if (m == full) break;
    }
    const auto& finals = states[full];
    const auto hit = std::find(finals.begin(), finals.end(), target);
    if (hit != finals.end()) {
      std::vector<Event> order;
      Mask m = full;
      std::size_t k = static_cast<std::size_t>(hit - finals.begin());
      while (m != 0) {
        const Back& b = back[m][k];
        order.push_back(result.effective[b.event]);
        m = b.prev_mask;
        k = b.prev_index;
      }
      std::reverse(order.begin(), order.end());
      result.witness = std::move(order);
      result.status = OracleStatus::Witness;
      return result;
    }
  }
  return result;
}

}  // namespace salcheck
