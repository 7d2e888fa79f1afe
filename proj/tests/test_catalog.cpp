#include <doctest.h>

#include "criteria.hpp"
#include "salcheck/catalog.hpp"
#include "salcheck/rdt.hpp"

using namespace salcheck;
using namespace salcheck::catalog;

namespace {

Event ev(std::uint64_t t, std::uint64_t r, OpPayload op) { return {Timestamp{t}, ReplicaId{r}, op}; }

HistoryRecipe diamond(OpPayload left, OpPayload right) {
  HistoryRecipe r;
  r.steps = {DoStep{0, left}, DoStep{1, right}};
  return r;
}

}  // namespace

TEST_CASE("rc relations") {
  const RcRelation set_rc = or_set_mrdt().rc();
  const RcRelation flag_rc = ew_flag_buggy_mrdt().rc();
  CHECK(set_rc(op::rem(3), op::add(3)));
  CHECK_FALSE(set_rc(op::add(3), op::rem(3)));
  CHECK_FALSE(conflicting(ctr_inc_mrdt().rc(), op::inc(), op::inc()));
  CHECK_FALSE(conflicting(flag_rc, op::enable(), op::enable()));
  CHECK(rc_order(flag_rc, op::disable(), op::enable()) == RcOrder::First);
  CHECK(rc_order(flag_rc, op::enable(), op::disable()) == RcOrder::Second);
  CHECK(rc_order(set_rc, op::add(1), op::rem(2)) == RcOrder::Unordered);
}

TEST_CASE("catalog listing") {
  const auto& list = catalog_list();
  REQUIRE(list.size() == 14);
  for (std::size_t i = 1; i < list.size(); ++i) CHECK(list[i - 1].id < list[i].id);
  std::size_t buggy = 0;
  for (const auto& e : list) {
    buggy += e.known_buggy;
    CHECK(e.rdt->id() == e.id);
    CHECK(e.rdt->kind() == e.kind);
  }
  CHECK(buggy == 1);
  CHECK(find_entry("ew-flag-buggy")->known_buggy);
  CHECK(find_entry("ctr-inc-mrdt")->kind == RdtKind::Mrdt);
  CHECK(find_entry("or-set-crdt")->kind == RdtKind::Crdt);
  CHECK(find_entry("nosuch") == nullptr);
}

TEST_CASE("increment-only counter") {
  const CtrIncMrdt c;
  CHECK(c.apply(0, ev(1, 0, op::inc())) == 1);
  CHECK(c.merge3(0, 0, 0) == 0);
  CHECK(c.merge3(2, 5, 3) == 6);
  CHECK(c.merge3(2, 3, 5) == 6);
  CHECK(c.merge3(4, 4, 4) == 4);
  CHECK(execute(c, diamond(op::inc(), op::inc())).final_state() == 2);
  CHECK_THROWS_AS(c.apply(0, ev(1, 0, op::add(1))), SpecMismatch);
}

TEST_CASE("counter algebra") {
  const auto r = criteria::counter_algebra(10000, 2000, 3);
  CHECK_MESSAGE(r.ok, r.detail);
}

TEST_CASE("OR-set") {
  const OrSetMrdt s;
  CHECK(s.format(s.apply(s.initial(), ev(1, 0, op::add(3)))) == "#[(1, 3)]#");

  // Rem(3) on the left, Add(3)@1 on the right.
  HistoryRecipe r;
  r.steps = {DoStep{1, op::add(3)}, DoStep{0, op::rem(3)}};
  const auto ex = execute(s, r);
  CHECK(s.format(ex.state(1)) == "#[(1, 3)]#");
  CHECK(s.format(ex.state(2)) == "#[]#");
  CHECK(s.format(ex.final_state()) == "#[(1, 3)]#");

  // Add(1) | Add(2): both merge orders agree.
  const auto l = s.initial();
  const auto a = s.apply(l, ev(1, 0, op::add(1)));
  const auto b = s.apply(l, ev(2, 1, op::add(2)));
  CHECK(s.format(s.merge3(l, a, b)) == "#[(1, 1), (2, 2)]#");
  CHECK(s.merge3(l, a, b) == s.merge3(l, b, a));

  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto states = criteria::sample_states(s, rng, 1);
    CHECK(s.merge3(states[0], states[0], states[0]) == states[0]);
  }
}

TEST_CASE("OR-set diamonds match the closed form") {
  const auto r = criteria::or_set_semantics(4);
  CHECK_MESSAGE(r.ok, r.detail);
}

TEST_CASE("enable-wins flag with the faulty merge") {
  const EwFlagBuggyMrdt f;
  using S = EwFlagBuggyMrdt::State;
  CHECK(f.apply(S{0, false}, ev(1, 0, op::enable())) == S{1, true});
  CHECK(f.apply(S{1, true}, ev(2, 0, op::disable())) == S{1, false});
  const auto ex = execute(f, find_demo("ew-flag-buggy")->recipe);
  CHECK(f.format(ex.state(6)) == "(2, true)");
  // Both replicas last applied a Disable.
  CHECK(ex.graph.node(3).event->op == op::disable());
  CHECK(ex.graph.node(4).event->op == op::disable());
}

TEST_CASE("enable-wins flag, corrected") {
  const EwFlagFixedMrdt f;
  const auto off = f.apply(f.initial(), ev(1, 0, op::disable()));
  CHECK(off.empty());
  CHECK(f.read(off) == "false");
  CHECK(f.read(execute(f, diamond(op::enable(), op::disable())).final_state()) == "true");
  CHECK(f.read(execute(f, diamond(op::disable(), op::enable())).final_state()) == "true");
  CHECK(f.read(execute(f, find_demo("ew-flag-fixed")->recipe).final_state()) == "false");
}

TEST_CASE("other catalog examples") {
  const PnCtrMrdt pn;
  CHECK(pn.read(pn.apply(pn.apply(pn.initial(), ev(1, 0, op::inc())), ev(2, 0, op::dec()))) == "0");

  const CtrIncCrdt g;
  const auto x = g.initial().set(0, 2).set(1, 1);
  const auto y = g.initial().set(0, 1).set(1, 3);
  // Pointwise maximum, computed by hand.
  const auto expected = g.initial().set(0, 2).set(1, 3);
  CHECK(g.merge2(x, y) == expected);
  CHECK(g.merge2(y, x) == expected);
  CHECK(total(g.merge2(x, y)) == 5);
  CHECK(g.merge2(x, x) == x);

  const MvRegMrdt mv;
  CHECK(mv.read(execute(mv, diamond(op::write(1), op::write(2))).final_state()) == "[1, 2]");
  const MvRegCrdt mvc;
  CHECK(mvc.read(execute(mvc, diamond(op::write(1), op::write(2))).final_state()) == "[1, 2]");
}

TEST_CASE("join of initial states is the initial state") {
  CHECK(ctr_inc_crdt().merge2(ctr_inc_crdt().initial(), ctr_inc_crdt().initial()) == ctr_inc_crdt().initial());
  CHECK(pn_ctr_crdt().merge2(pn_ctr_crdt().initial(), pn_ctr_crdt().initial()) == pn_ctr_crdt().initial());
  CHECK(mv_reg_crdt().merge2(mv_reg_crdt().initial(), mv_reg_crdt().initial()) == mv_reg_crdt().initial());
  CHECK(or_set_crdt().merge2(or_set_crdt().initial(), or_set_crdt().initial()) == or_set_crdt().initial());
}

TEST_CASE("OR-set CRDT tombstone union associates") {
  const OrSetCrdt s;
  Rng rng(8);
  for (int i = 0; i < 300; ++i) {
    const auto xs = criteria::sample_states(s, rng, 3);
    CHECK(s.merge2(s.merge2(xs[0], xs[1]), xs[2]).tombstones ==
          set_union(xs[0].tombstones, set_union(xs[1].tombstones, xs[2].tombstones)));
  }
}

TEST_CASE("lattice laws") {
  const auto r = criteria::lattice_laws(300, 21);
  CHECK_MESSAGE(r.ok, r.detail);
}
