#include "salcheck/catalog.hpp"

#include <algorithm>

namespace salcheck::catalog {

namespace {

template <class E>
TrackedSet<E> three_way_set_merge(const TrackedSet<E>& l, const TrackedSet<E>& a,
                                  const TrackedSet<E>& b) {
  return set_union(set_intersect(l, set_intersect(a, b)),
                   set_union(set_diff(a, l), set_diff(b, l)));
}

std::uint64_t counter_merge(std::uint64_t l, std::uint64_t a, std::uint64_t b) {
  return l + (a - l) + (b - l);
}

bool remove_before_add(const OpPayload& a, const OpPayload& b) {
  return a.kind == OpKind::Rem && b.kind == OpKind::Add && a.arg == b.arg;
}

bool disable_before_enable(const OpPayload& a, const OpPayload& b) {
  return a.kind == OpKind::Disable && b.kind == OpKind::Enable;
}

bool delete_before_insert(const OpPayload& a, const OpPayload& b) {
  return a.kind == OpKind::Delete && b.kind == OpKind::Insert && a.arg == b.arg;
}

std::string value_list(std::vector<std::int64_t> xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + std::to_string(xs[i]);
  return out + "]";
}

std::string sorted_values(const TrackedSet<Tagged>& s) {
  std::vector<std::int64_t> xs;
  for (const auto& [t, x] : s.elements()) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return value_list(std::move(xs));
}

ReplicaVector pointwise_max(const ReplicaVector& a, const ReplicaVector& b) {
  return combine(a, b, [](std::uint64_t x, std::uint64_t y) { return std::max(x, y); });
}

ReplicaVector bump(const ReplicaVector& v, ReplicaId r) {
  return v.set(r.value, v.get(r.value) + 1);
}

}  // namespace

std::uint64_t total(const ReplicaVector& v) {
  std::uint64_t sum = 0;
  for (const auto& [r, n] : v.entries()) sum += n;
  return sum;
}

TrackedSet<Tagged> live(const OrSetCrdtState& s) { return set_diff(s.adds, s.tombstones); }

// ---- counters ---------------------------------------------------------------

CtrIncMrdt::State CtrIncMrdt::apply(const State& s, const Event& e) const {
  if (e.op.kind != OpKind::Inc) reject_payload(kId, e.op);
  return s + 1;
}

CtrIncMrdt::State CtrIncMrdt::merge3(const State& lca, const State& a, const State& b) const {
  return counter_merge(lca, a, b);
}

PnCtrMrdt::State PnCtrMrdt::apply(const State& s, const Event& e) const {
  switch (e.op.kind) {
    case OpKind::Inc: return {s.p + 1, s.n};
    case OpKind::Dec: return {s.p, s.n + 1};
    default: reject_payload(kId, e.op);
  }
}

PnCtrMrdt::State PnCtrMrdt::merge3(const State& lca, const State& a, const State& b) const {
  return {counter_merge(lca.p, a.p, b.p), counter_merge(lca.n, a.n, b.n)};
}

std::string PnCtrMrdt::format(const State& s) const {
  return "(" + display(s.p) + ", " + display(s.n) + ")";
}

std::string PnCtrMrdt::read(const State& s) const {
  return std::to_string(static_cast<std::int64_t>(s.p) - static_cast<std::int64_t>(s.n));
}

CtrIncCrdt::State CtrIncCrdt::apply(const State& s, const Event& e) const {
  if (e.op.kind != OpKind::Inc) reject_payload(kId, e.op);
  return bump(s, e.rid);
}

CtrIncCrdt::State CtrIncCrdt::merge2(const State& a, const State& b) const {
  return pointwise_max(a, b);
}

std::string CtrIncCrdt::read(const State& s) const { return std::to_string(total(s)); }

PnCtrCrdt::State PnCtrCrdt::apply(const State& s, const Event& e) const {
  switch (e.op.kind) {
    case OpKind::Inc: return {bump(s.p, e.rid), s.n};
    case OpKind::Dec: return {s.p, bump(s.n, e.rid)};
    default: reject_payload(kId, e.op);
  }
}

PnCtrCrdt::State PnCtrCrdt::merge2(const State& a, const State& b) const {
  return {pointwise_max(a.p, b.p), pointwise_max(a.n, b.n)};
}

std::string PnCtrCrdt::format(const State& s) const {
  return "(" + display(s.p) + ", " + display(s.n) + ")";
}

std::string PnCtrCrdt::read(const State& s) const {
  return std::to_string(static_cast<std::int64_t>(total(s.p)) -
                        static_cast<std::int64_t>(total(s.n)));
}

// ---- sets -------------------------------------------------------------------

OrSetMrdt::State OrSetMrdt::apply(const State& s, const Event& e) const {
  switch (e.op.kind) {
    case OpKind::Add: return s.insert({e.ts.value, e.op.arg});
    case OpKind::Rem:
      return s.remove_if([&](const Tagged& p) { return p.second == e.op.arg; });
    default: reject_payload(kId, e.op);
  }
}

OrSetMrdt::State OrSetMrdt::replay(const State& s, const Event& e, const State& origin) const {
  if (e.op.kind != OpKind::Rem) return apply(s, e);
  return s.remove_if([&](const Tagged& p) { return p.second == e.op.arg && origin.member(p); });
}

OrSetMrdt::State OrSetMrdt::merge3(const State& lca, const State& a, const State& b) const {
  return three_way_set_merge(lca, a, b);
}

RcRelation OrSetMrdt::rc() const { return {&remove_before_add}; }

std::string OrSetMrdt::read(const State& s) const { return sorted_values(s); }

OrSetEffMrdt::State OrSetEffMrdt::apply(const State& s, const Event& e) const {
  const std::int64_t x = e.op.arg;
  switch (e.op.kind) {
    case OpKind::Add:
      return s
          .remove_if([&](const Entry& en) {
            return std::get<1>(en) == e.rid.value && std::get<2>(en) == x;
          })
          .insert({e.ts.value, e.rid.value, x});
    case OpKind::Rem:
      return s.remove_if([&](const Entry& en) { return std::get<2>(en) == x; });
    default: reject_payload(kId, e.op);
  }
}

OrSetEffMrdt::State OrSetEffMrdt::replay(const State& s, const Event& e,
                                         const State& origin) const {
  const std::int64_t x = e.op.arg;
  switch (e.op.kind) {
    case OpKind::Add:
      return s
          .remove_if([&](const Entry& en) {
            return std::get<1>(en) == e.rid.value && std::get<2>(en) == x && origin.member(en);
          })
          .insert({e.ts.value, e.rid.value, x});
    case OpKind::Rem:
      return s.remove_if([&](const Entry& en) { return std::get<2>(en) == x && origin.member(en); });
    default: reject_payload(kId, e.op);
  }
}

OrSetEffMrdt::State OrSetEffMrdt::merge3(const State& lca, const State& a,
                                         const State& b) const {
  return three_way_set_merge(lca, a, b);
}

RcRelation OrSetEffMrdt::rc() const { return {&remove_before_add}; }

std::string OrSetEffMrdt::read(const State& s) const {
  std::vector<std::int64_t> xs;
  for (const auto& en : s.elements()) xs.push_back(std::get<2>(en));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return value_list(std::move(xs));
}

GSetMrdt::State GSetMrdt::apply(const State& s, const Event& e) const {
  if (e.op.kind != OpKind::Add) reject_payload(kId, e.op);
  return s.insert(e.op.arg);
}

GSetMrdt::State GSetMrdt::merge3(const State& lca, const State& a, const State& b) const {
  return three_way_set_merge(lca, a, b);
}

GMapMrdt::State GMapMrdt::apply(const State& s, const Event& e) const {
  if (e.op.kind != OpKind::MapSet) reject_payload(kId, e.op);
  return s.set(e.op.key, s.get(e.op.key).insert(e.op.arg));
}

GMapMrdt::State GMapMrdt::merge3(const State& lca, const State& a, const State& b) const {
  return combine3(lca, a, b,
                  [](const TrackedSet<std::int64_t>& l, const TrackedSet<std::int64_t>& x,
                     const TrackedSet<std::int64_t>& y) { return three_way_set_merge(l, x, y); });
}

OrSetCrdt::State OrSetCrdt::apply(const State& s, const Event& e) const {
  switch (e.op.kind) {
    case OpKind::Add: return {s.adds.insert({e.ts.value, e.op.arg}), s.tombstones};
    case OpKind::Rem: {
      auto removed = live(s).filter([&](const Tagged& p) { return p.second == e.op.arg; });
      return {s.adds, set_union(s.tombstones, removed)};
    }
    default: reject_payload(kId, e.op);
  }
}

OrSetCrdt::State OrSetCrdt::replay(const State& s, const Event& e, const State& origin) const {
  if (e.op.kind != OpKind::Rem) return apply(s, e);
  auto removed = live(origin).filter([&](const Tagged& p) { return p.second == e.op.arg; });
  return {s.adds, set_union(s.tombstones, removed)};
}

OrSetCrdt::State OrSetCrdt::merge2(const State& a, const State& b) const {
  return {set_union(a.adds, b.adds), set_union(a.tombstones, b.tombstones)};
}

RcRelation OrSetCrdt::rc() const { return {&remove_before_add}; }

std::string OrSetCrdt::format(const State& s) const {
  return "(" + display(s.adds) + ", " + display(s.tombstones) + ")";
}

std::string OrSetCrdt::read(const State& s) const { return sorted_values(live(s)); }

// ---- flags ------------------------------------------------------------------

EwFlagBuggyMrdt::State EwFlagBuggyMrdt::apply(const State& s, const Event& e) const {
  switch (e.op.kind) {
    case OpKind::Enable: return {s.first + 1, true};
    case OpKind::Disable: return {s.first, false};
    default: reject_payload(kId, e.op);
  }
}

EwFlagBuggyMrdt::State EwFlagBuggyMrdt::merge3(const State& l, const State& a,
                                               const State& b) const {
  bool flag = false;
  if (a.second && b.second) {
    flag = true;
  } else if (!a.second && !b.second) {
    flag = false;
  } else if (a.second) {
    flag = a.first > l.first;
  } else {
    flag = b.first > l.first;
  }
  return {a.first + b.first - l.first, flag};
}

RcRelation EwFlagBuggyMrdt::rc() const { return {&disable_before_enable}; }

EwFlagFixedMrdt::State EwFlagFixedMrdt::apply(const State& s, const Event& e) const {
  switch (e.op.kind) {
    case OpKind::Enable: return s.insert(e.ts.value);
    case OpKind::Disable: return s.remove_if([](std::uint64_t) { return true; });
    default: reject_payload(kId, e.op);
  }
}

EwFlagFixedMrdt::State EwFlagFixedMrdt::replay(const State& s, const Event& e,
                                               const State& origin) const {
  if (e.op.kind != OpKind::Disable) return apply(s, e);
  return set_diff(s, origin);
}

EwFlagFixedMrdt::State EwFlagFixedMrdt::merge3(const State& lca, const State& a,
                                               const State& b) const {
  return three_way_set_merge(lca, a, b);
}

RcRelation EwFlagFixedMrdt::rc() const { return {&disable_before_enable}; }

// ---- sequences and registers --------------------------------------------------

RgaMrdt::State RgaMrdt::apply(const State& s, const Event& e) const {
  switch (e.op.kind) {
    case OpKind::Insert: return {s.nodes.insert({e.ts.value, e.op.arg}), s.tombstones};
    case OpKind::Delete: {
      State out = s;
      for (const auto& [t, x] : s.nodes.elements()) {
        if (x == e.op.arg && !s.tombstones.member(t)) out.tombstones = out.tombstones.insert(t);
      }
      return out;
    }
    default: reject_payload(kId, e.op);
  }
}

RgaMrdt::State RgaMrdt::replay(const State& s, const Event& e, const State& origin) const {
  if (e.op.kind != OpKind::Delete) return apply(s, e);
  State out = s;
  for (const auto& [t, x] : origin.nodes.elements()) {
    if (x == e.op.arg && !origin.tombstones.member(t)) out.tombstones = out.tombstones.insert(t);
  }
  return out;
}

RgaMrdt::State RgaMrdt::merge3(const State& lca, const State& a, const State& b) const {
  return {three_way_set_merge(lca.nodes, a.nodes, b.nodes),
          three_way_set_merge(lca.tombstones, a.tombstones, b.tombstones)};
}

RcRelation RgaMrdt::rc() const { return {&delete_before_insert}; }

std::string RgaMrdt::format(const State& s) const {
  return "(" + display(s.nodes) + ", " + display(s.tombstones) + ")";
}

std::string RgaMrdt::read(const State& s) const {
  std::vector<std::int64_t> xs;
  const auto& nodes = s.nodes.elements();
  for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
    if (!s.tombstones.member(it->first)) xs.push_back(it->second);
  }
  return value_list(std::move(xs));
}

MvRegMrdt::State MvRegMrdt::apply(const State& s, const Event& e) const {
  if (e.op.kind != OpKind::Write) reject_payload(kId, e.op);
  (void)s;
  return State{}.insert({e.ts.value, e.op.arg});
}

MvRegMrdt::State MvRegMrdt::replay(const State& s, const Event& e, const State& origin) const {
  if (e.op.kind != OpKind::Write) reject_payload(kId, e.op);
  return set_diff(s, origin).insert({e.ts.value, e.op.arg});
}

MvRegMrdt::State MvRegMrdt::merge3(const State& lca, const State& a, const State& b) const {
  return three_way_set_merge(lca, a, b);
}

std::string MvRegMrdt::read(const State& s) const { return sorted_values(s); }

MvRegCrdt::State MvRegCrdt::apply(const State& s, const Event& e) const {
  if (e.op.kind != OpKind::Write) reject_payload(kId, e.op);
  return replay(s, e, s);
}

MvRegCrdt::State MvRegCrdt::replay(const State& s, const Event& e, const State& origin) const {
  if (e.op.kind != OpKind::Write) reject_payload(kId, e.op);
  State out = s;
  for (const auto& [ts, v] : origin.entries.elements()) out.seen = out.seen.insert(ts);
  out.entries = set_diff(s.entries, origin.entries).insert({e.ts.value, e.op.arg});
  return out;
}

MvRegCrdt::State MvRegCrdt::merge2(const State& a, const State& b) const {
  State out;
  out.seen = set_union(a.seen, b.seen);
  out.entries = set_union(a.entries, b.entries).remove_if([&](const Tagged& p) {
    return out.seen.member(p.first);
  });
  return out;
}

std::string MvRegCrdt::format(const State& s) const {
  return "(" + display(s.entries) + ", " + display(s.seen) + ")";
}

std::string MvRegCrdt::read(const State& s) const { return sorted_values(s.entries); }

}  // namespace salcheck::catalog
