#pragma once

// The RDT catalog: thirteen reference data types plus a corrected enable-wins
// flag. Each spec is a small value type; the checker is generic over them.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "salcheck/collections.hpp"
#include "salcheck/model.hpp"

namespace salcheck {

/// Timestamped element, displayed as "(ts, element)".
using Tagged = std::pair<std::uint64_t, std::int64_t>;

namespace catalog {

/// Increment-only counter: the three-way merge adds both deltas to the LCA.
struct CtrIncMrdt {
  using State = std::uint64_t;
  static constexpr RdtKind kKind = RdtKind::Mrdt;
  static constexpr std::string_view kId = "ctr-inc-mrdt";

  State initial() const { return 0; }
  State apply(const State& s, const Event& e) const;
  State merge3(const State& lca, const State& a, const State& b) const;
  RcRelation rc() const { return {}; }
  PayloadDomain domain() const { return {OpKind::Inc}; }
  std::string format(const State& s) const { return display(s); }
  std::string read(const State& s) const { return display(s); }
};

struct PnCounterState {
  std::uint64_t p = 0;
  std::uint64_t n = 0;
  friend auto operator<=>(const PnCounterState&, const PnCounterState&) = default;
};

/// PN-counter MRDT: componentwise three-way counter merge.
struct PnCtrMrdt {
  using State = PnCounterState;
  static constexpr RdtKind kKind = RdtKind::Mrdt;
  static constexpr std::string_view kId = "pn-ctr-mrdt";

  State initial() const { return {}; }
  State apply(const State& s, const Event& e) const;
  State merge3(const State& lca, const State& a, const State& b) const;
  RcRelation rc() const { return {}; }
  PayloadDomain domain() const { return {OpKind::Inc, OpKind::Dec}; }
  std::string format(const State& s) const;
  std::string read(const State& s) const;
};

/// OR-set MRDT over (timestamp, element) pairs; concurrent adds win.
struct OrSetMrdt {
  using State = TrackedSet<Tagged>;
  static constexpr RdtKind kKind = RdtKind::Mrdt;
  static constexpr std::string_view kId = "or-set-mrdt";

  State initial() const { return {}; }
  State apply(const State& s, const Event& e) const;
  /// Observed-remove effect: only the entries present at the origin go.
  State replay(const State& s, const Event& e, const State& origin) const;
  State merge3(const State& lca, const State& a, const State& b) const;
  RcRelation rc() const;
  PayloadDomain domain() const { return {OpKind::Add, OpKind::Rem}; }
  std::string format(const State& s) const { return display(s); }
  std::string read(const State& s) const;
};

/// OR-set that keeps only the latest add per (element, replica).
struct OrSetEffMrdt {
  /// (timestamp, replica, element)
  using Entry = std::tuple<std::uint64_t, std::uint64_t, std::int64_t>;
  using State = TrackedSet<Entry>;
  static constexpr RdtKind kKind = RdtKind::Mrdt;
  static constexpr std::string_view kId = "or-set-eff-mrdt";

  State initial() const { return {}; }
  State apply(const State& s, const Event& e) const;
  /// Observed-remove effect: only the entries present at the origin go.
  State replay(const State& s, const Event& e, const State& origin) const;
  State merge3(const State& lca, const State& a, const State& b) const;
  RcRelation rc() const;
  PayloadDomain domain() const { return {OpKind::Add, OpKind::Rem}; }
  std::string format(const State& s) const { return display(s); }
  std::string read(const State& s) const;
};

/// The enable-wins flag with a counter-based merge, kept with its known bug:
/// the merge consults only counters, so enables disabled on their own replica
/// can still turn the merged flag on.
struct EwFlagBuggyMrdt {
  using State = std::pair<std::int64_t, bool>;
  static constexpr RdtKind kKind = RdtKind::Mrdt;
  static constexpr std::string_view kId = "ew-flag-buggy";

  State initial() const { return {0, false}; }
  State apply(const State& s, const Event& e) const;
  State merge3(const State& lca, const State& a, const State& b) const;
  RcRelation rc() const;
  PayloadDomain domain() const { return {OpKind::Enable, OpKind::Disable}; }
  std::string format(const State& s) const { return display(s); }
  std::string read(const State& s) const { return display(s.second); }
  std::string_view label_format() const { return "{op}(t={t},r={r})"; }
};

/// Enable-wins flag as a set of live enable timestamps.
struct EwFlagFixedMrdt {
  using State = TrackedSet<std::uint64_t>;
  static constexpr RdtKind kKind = RdtKind::Mrdt;
  static constexpr std::string_view kId = "ew-flag-fixed";

  State initial() const { return {}; }
  State apply(const State& s, const Event& e) const;
  /// Observed-remove effect: only the entries present at the origin go.
  State replay(const State& s, const Event& e, const State& origin) const;
  State merge3(const State& lca, const State& a, const State& b) const;
  RcRelation rc() const;
  PayloadDomain domain() const { return {OpKind::Enable, OpKind::Disable}; }
  std::string format(const State& s) const { return display(s); }
  std::string read(const State& s) const { return display(!s.empty()); }
  std::string_view label_format() const { return "{op}(t={t},r={r})"; }
};

struct GSetMrdt {
  using State = TrackedSet<std::int64_t>;
  static constexpr RdtKind kKind = RdtKind::Mrdt;
  static constexpr std::string_view kId = "g-set-mrdt";

  State initial() const { return {}; }
  State apply(const State& s, const Event& e) const;
  State merge3(const State& lca, const State& a, const State& b) const;
  RcRelation rc() const { return {}; }
  PayloadDomain domain() const { return {OpKind::Add}; }
  std::string format(const State& s) const { return display(s); }
  std::string read(const State& s) const { return display(s); }
};

/// Map from key to grow-only set; merged key by key.
struct GMapMrdt {
  using State = ExtensionalMap<std::int64_t, TrackedSet<std::int64_t>>;
  static constexpr RdtKind kKind = RdtKind::Mrdt;
  static constexpr std::string_view kId = "g-map-mrdt";

  State initial() const { return State(TrackedSet<std::int64_t>{}); }
  State apply(const State& s, const Event& e) const;
  State merge3(const State& lca, const State& a, const State& b) const;
  RcRelation rc() const { return {}; }
  PayloadDomain domain() const { return {OpKind::MapSet}; }
  std::string format(const State& s) const { return display(s); }
  std::string read(const State& s) const { return display(s); }
};

struct RgaState {
  TrackedSet<Tagged> nodes;
  TrackedSet<std::uint64_t> tombstones;
  friend bool operator==(const RgaState&, const RgaState&) = default;
  friend auto operator<=>(const RgaState&, const RgaState&) = default;
};

/// Simplified replicated growable array: timestamped inserts, tombstoned
/// deletes, read newest-first.
struct RgaMrdt {
  using State = RgaState;
  static constexpr RdtKind kKind = RdtKind::Mrdt;
  static constexpr std::string_view kId = "rga-mrdt";

  State initial() const { return {}; }
  State apply(const State& s, const Event& e) const;
  /// Observed-remove effect: only the entries present at the origin go.
  State replay(const State& s, const Event& e, const State& origin) const;
  State merge3(const State& lca, const State& a, const State& b) const;
  RcRelation rc() const;
  PayloadDomain domain() const { return {OpKind::Insert, OpKind::Delete}; }
  std::string format(const State& s) const;
  std::string read(const State& s) const;
};

/// Multi-valued register over (timestamp, value) entries; a write replaces
/// the state with its own entry.
struct MvRegMrdt {
  using State = TrackedSet<Tagged>;
  static constexpr RdtKind kKind = RdtKind::Mrdt;
  static constexpr std::string_view kId = "mv-reg-mrdt";

  State initial() const { return {}; }
  State apply(const State& s, const Event& e) const;
  /// A write replaces the entries it observed.
  State replay(const State& s, const Event& e, const State& origin) const;
  State merge3(const State& lca, const State& a, const State& b) const;
  RcRelation rc() const { return {}; }
  PayloadDomain domain() const { return {OpKind::Write}; }
  std::string format(const State& s) const { return display(s); }
  std::string read(const State& s) const;
};

using ReplicaVector = ExtensionalMap<std::uint64_t, std::uint64_t>;

/// State-based grow-only counter: one slot per replica, pointwise max.
struct CtrIncCrdt {
  using State = ReplicaVector;
  static constexpr RdtKind kKind = RdtKind::Crdt;
  static constexpr std::string_view kId = "ctr-inc-crdt";

  State initial() const { return State(0); }
  State apply(const State& s, const Event& e) const;
  State merge2(const State& a, const State& b) const;
  RcRelation rc() const { return {}; }
  PayloadDomain domain() const { return {OpKind::Inc}; }
  std::string format(const State& s) const { return display(s); }
  std::string read(const State& s) const;
};

struct PnCrdtState {
  ReplicaVector p{0};
  ReplicaVector n{0};
  friend bool operator==(const PnCrdtState&, const PnCrdtState&) = default;
  friend auto operator<=>(const PnCrdtState&, const PnCrdtState&) = default;
};

struct PnCtrCrdt {
  using State = PnCrdtState;
  static constexpr RdtKind kKind = RdtKind::Crdt;
  static constexpr std::string_view kId = "pn-ctr-crdt";

  State initial() const { return {}; }
  State apply(const State& s, const Event& e) const;
  State merge2(const State& a, const State& b) const;
  RcRelation rc() const { return {}; }
  PayloadDomain domain() const { return {OpKind::Inc, OpKind::Dec}; }
  std::string format(const State& s) const;
  std::string read(const State& s) const;
};

struct MvRegCrdtState {
  TrackedSet<Tagged> entries;
  TrackedSet<std::uint64_t> seen;  // timestamps overwritten somewhere
  friend bool operator==(const MvRegCrdtState&, const MvRegCrdtState&) = default;
  friend auto operator<=>(const MvRegCrdtState&, const MvRegCrdtState&) = default;
};

/// State-based multi-valued register: entries plus the overwritten-timestamp
/// context; the join drops entries the other side has overwritten.
struct MvRegCrdt {
  using State = MvRegCrdtState;
  static constexpr RdtKind kKind = RdtKind::Crdt;
  static constexpr std::string_view kId = "mv-reg-crdt";

  State initial() const { return {}; }
  State apply(const State& s, const Event& e) const;
  /// A write replaces the entries it observed.
  State replay(const State& s, const Event& e, const State& origin) const;
  State merge2(const State& a, const State& b) const;
  RcRelation rc() const { return {}; }
  PayloadDomain domain() const { return {OpKind::Write}; }
  std::string format(const State& s) const;
  std::string read(const State& s) const;
};

struct OrSetCrdtState {
  TrackedSet<Tagged> adds;
  TrackedSet<Tagged> tombstones;
  friend bool operator==(const OrSetCrdtState&, const OrSetCrdtState&) = default;
  friend auto operator<=>(const OrSetCrdtState&, const OrSetCrdtState&) = default;
};

struct OrSetCrdt {
  using State = OrSetCrdtState;
  static constexpr RdtKind kKind = RdtKind::Crdt;
  static constexpr std::string_view kId = "or-set-crdt";

  State initial() const { return {}; }
  State apply(const State& s, const Event& e) const;
  /// Observed-remove effect: only the entries present at the origin go.
  State replay(const State& s, const Event& e, const State& origin) const;
  State merge2(const State& a, const State& b) const;
  RcRelation rc() const;
  PayloadDomain domain() const { return {OpKind::Add, OpKind::Rem}; }
  std::string format(const State& s) const;
  std::string read(const State& s) const;
};

// Constructors named after the data types they build.
inline CtrIncMrdt ctr_inc_mrdt() { return {}; }
inline PnCtrMrdt pn_ctr_mrdt() { return {}; }
inline OrSetMrdt or_set_mrdt() { return {}; }
inline OrSetEffMrdt efficient_or_set_mrdt() { return {}; }
inline EwFlagBuggyMrdt ew_flag_buggy_mrdt() { return {}; }
inline EwFlagFixedMrdt ew_flag_fixed_mrdt() { return {}; }
inline GSetMrdt g_set_mrdt() { return {}; }
inline GMapMrdt g_map_mrdt() { return {}; }
inline RgaMrdt rga_mrdt() { return {}; }
inline MvRegMrdt mv_reg_mrdt() { return {}; }
inline CtrIncCrdt ctr_inc_crdt() { return {}; }
inline PnCtrCrdt pn_ctr_crdt() { return {}; }
inline MvRegCrdt mv_reg_crdt() { return {}; }
inline OrSetCrdt or_set_crdt() { return {}; }

/// Live elements of the OR-set CRDT (adds minus tombstones).
TrackedSet<Tagged> live(const OrSetCrdtState& s);
/// Integer value of a replica vector.
std::uint64_t total(const ReplicaVector& v);

}  // namespace catalog
}  // namespace salcheck
