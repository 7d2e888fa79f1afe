#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace salcheck {

/// Logical timestamp. Unique within one history; assigned by the history builder.
struct Timestamp {
  std::uint64_t value = 0;
  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

/// Replica identifier. In a version graph every branch is one replica.
struct ReplicaId {
  std::uint64_t value = 0;
  friend auto operator<=>(const ReplicaId&, const ReplicaId&) = default;
};

enum class OpKind : std::uint8_t {
  Inc,
  Dec,
  Add,
  Rem,
  Enable,
  Disable,
  Write,
  Insert,
  Delete,
  MapSet,  // MapSet(key, Add value)
};

inline constexpr OpKind kAllOpKinds[] = {
    OpKind::Inc,    OpKind::Dec,   OpKind::Add,    OpKind::Rem,    OpKind::Enable,
    OpKind::Disable, OpKind::Write, OpKind::Insert, OpKind::Delete, OpKind::MapSet,
};

/// Number of integer literals the payload constructor carries.
constexpr int arity(OpKind kind) {
  switch (kind) {
    case OpKind::Inc:
    case OpKind::Dec:
    case OpKind::Enable:
    case OpKind::Disable:
      return 0;
    case OpKind::MapSet:
      return 2;
    default:
      return 1;
  }
}

std::string_view op_name(OpKind kind);
/// Inverse of op_name; throws std::invalid_argument for unknown names.
OpKind parse_op_kind(std::string_view name);

/// Operation descriptor. `arg` is the element/value literal; `key` is only
/// meaningful for MapSet.
struct OpPayload {
  OpKind kind = OpKind::Inc;
  std::int64_t arg = 0;
  std::int64_t key = 0;

  friend auto operator<=>(const OpPayload&, const OpPayload&) = default;
};

namespace op {
inline OpPayload inc() { return {OpKind::Inc}; }
inline OpPayload dec() { return {OpKind::Dec}; }
inline OpPayload add(std::int64_t e) { return {OpKind::Add, e}; }
inline OpPayload rem(std::int64_t e) { return {OpKind::Rem, e}; }
inline OpPayload enable() { return {OpKind::Enable}; }
inline OpPayload disable() { return {OpKind::Disable}; }
inline OpPayload write(std::int64_t v) { return {OpKind::Write, v}; }
inline OpPayload insert(std::int64_t e) { return {OpKind::Insert, e}; }
inline OpPayload erase(std::int64_t e) { return {OpKind::Delete, e}; }
inline OpPayload map_set(std::int64_t k, std::int64_t v) { return {OpKind::MapSet, v, k}; }
}  // namespace op

/// Literals of the payload in constructor order (key before value for MapSet).
std::vector<std::int64_t> op_args(const OpPayload& op);
OpPayload make_op(OpKind kind, const std::vector<std::int64_t>& args);

/// "inc", "add(3)", "mapset(1, add(2))".
std::string to_string(const OpPayload& op);

/// The `op_t` triple: timestamp, replica, operation.
struct Event {
  Timestamp ts;
  ReplicaId rid;
  OpPayload op;

  friend auto operator<=>(const Event&, const Event&) = default;
};

/// Default operation label template; placeholders {op} {args} {t} {r}.
inline constexpr std::string_view kDefaultLabelFormat = "{op}({args}t={t},r={r})";

/// Renders an event through a label template, e.g. "inc(t=1,r=0)" or "add(3,t=1,r=0)".
std::string format_event(const Event& e, std::string_view format = kDefaultLabelFormat);

/// Set of payload constructors a data type accepts.
class PayloadDomain {
 public:
  PayloadDomain() = default;
  PayloadDomain(std::initializer_list<OpKind> kinds) : kinds_(kinds) {}

  bool accepts(OpKind kind) const;
  bool accepts(const OpPayload& op) const { return accepts(op.kind); }
  const std::vector<OpKind>& kinds() const { return kinds_; }

 private:
  std::vector<OpKind> kinds_;
};

enum class RcOrder { First, Second, Unordered };

/// Conflict-resolution relation: `ordered_before(o1, o2)` means o1 is placed
/// before o2 when the two are concurrent. A null predicate is the empty relation.
struct RcRelation {
  using Predicate = bool (*)(const OpPayload&, const OpPayload&);
  Predicate ordered_before = nullptr;

  bool empty() const { return ordered_before == nullptr; }
  bool operator()(const OpPayload& a, const OpPayload& b) const {
    return ordered_before != nullptr && ordered_before(a, b);
  }
};

bool conflicting(const RcRelation& rc, const OpPayload& o1, const OpPayload& o2);
RcOrder rc_order(const RcRelation& rc, const OpPayload& o1, const OpPayload& o2);
std::string_view to_string(RcOrder order);

enum class RdtKind { Mrdt, Crdt };
std::string_view to_string(RdtKind kind);

/// A payload reached an RDT that does not declare it.
class SpecMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

[[noreturn]] void reject_payload(std::string_view rdt, const OpPayload& op);

template <class S>
concept RdtSpec = requires(const S& spec, const typename S::State& st, const Event& e) {
  typename S::State;
  { S::kKind } -> std::convertible_to<RdtKind>;
  { S::kId } -> std::convertible_to<std::string_view>;
  { spec.initial() } -> std::same_as<typename S::State>;
  { spec.apply(st, e) } -> std::same_as<typename S::State>;
  { spec.rc() } -> std::same_as<RcRelation>;
  { spec.domain() } -> std::same_as<PayloadDomain>;
  { spec.format(st) } -> std::same_as<std::string>;
  { spec.read(st) } -> std::same_as<std::string>;
} && std::totally_ordered<typename S::State>;

/// Three-way merge over (lca, a, b).
template <class S>
concept MrdtSpec = RdtSpec<S> && (S::kKind == RdtKind::Mrdt) &&
                   requires(const S& spec, const typename S::State& st) {
                     { spec.merge3(st, st, st) } -> std::same_as<typename S::State>;
                   };

/// Two-way merge, meant to be a semilattice join.
template <class S>
concept CrdtSpec = RdtSpec<S> && (S::kKind == RdtKind::Crdt) &&
                   requires(const S& spec, const typename S::State& st) {
                     { spec.merge2(st, st) } -> std::same_as<typename S::State>;
                   };

template <class S>
concept AnySpec = MrdtSpec<S> || CrdtSpec<S>;

/// Merge at a version-graph merge node. CRDTs ignore the LCA state.
template <AnySpec S>
typename S::State merge_states(const S& spec, const typename S::State& lca,
                               const typename S::State& a, const typename S::State& b) {
  if constexpr (MrdtSpec<S>) {
    return spec.merge3(lca, a, b);
  } else {
    (void)lca;
    return spec.merge2(a, b);
  }
}

/// Applies `e` after checking the payload against the spec's declared domain.
template <AnySpec S>
typename S::State checked_apply(const S& spec, const typename S::State& st, const Event& e) {
  if (!spec.domain().accepts(e.op)) {
    throw SpecMismatch(std::string(S::kId) + ": payload " + to_string(e.op) +
                       " outside domain (event t=" + std::to_string(e.ts.value) + ")");
  }
  return spec.apply(st, e);
}

/// Effect of `e`, generated at a replica whose state was `origin`, replayed on
/// `s`. Specs whose updates act only on what they observed (observed-remove)
/// provide a `replay` member; for the rest this is apply.
template <AnySpec S>
typename S::State replay_event(const S& spec, const typename S::State& s, const Event& e,
                               const typename S::State& origin) {
  if constexpr (requires { spec.replay(s, e, origin); }) {
    return spec.replay(s, e, origin);
  } else {
    (void)origin;
    return spec.apply(s, e);
  }
}

template <AnySpec S>
std::string label_format(const S& spec) {
  if constexpr (requires { spec.label_format(); }) {
    return std::string(spec.label_format());
  } else {
    return std::string(kDefaultLabelFormat);
  }
}

}  // namespace salcheck
