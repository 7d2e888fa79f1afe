#include <doctest.h>

#include <map>
#include <set>

#include "salcheck/collections.hpp"
#include "salcheck/rng.hpp"

using namespace salcheck;

namespace {

constexpr int kCases = 1000;

struct Sample {
  TrackedSet<int> set;
  std::set<int> members;   // reference membership
  std::set<int> universe;  // everything ever touched
};

// Random insert/remove sequence, mirrored into std::set.
Sample random_set(Rng& rng) {
  Sample s;
  const std::uint64_t steps = rng.below(8);
  for (std::uint64_t i = 0; i < steps; ++i) {
    const int x = static_cast<int>(rng.between(0, 6));
    s.universe.insert(x);
    if (rng.chance(7, 10)) {
      s.set = s.set.insert(x);
      s.members.insert(x);
    } else {
      s.set = s.set.remove(x);
      s.members.erase(x);
    }
  }
  return s;
}

std::vector<int> as_vector(const std::set<int>& s) { return {s.begin(), s.end()}; }

bool includes(const std::vector<int>& big, const std::set<int>& small) {
  std::set<int> b(big.begin(), big.end());
  return std::includes(b.begin(), b.end(), small.begin(), small.end());
}

}  // namespace

TEST_CASE("tracked set examples") {
  CHECK(set_member(set_insert(set_empty<std::pair<int, int>>(), {1, 3}), {1, 3}));
  const auto a = TrackedSet<int>::from_elements({1, 2, 3});
  const auto d = set_diff(a, a);
  CHECK(d.empty());
  CHECK(d.universe() == std::vector<int>{1, 2, 3});
  CHECK(display(set_insert(set_empty<std::pair<std::uint64_t, std::int64_t>>(), {1, 3})) == "#[(1, 3)]#");
  CHECK(display(TrackedSet<int>{}) == "#[]#");
}

TEST_CASE("tracked set membership matches a reference set") {
  Rng rng(11);
  for (int i = 0; i < kCases; ++i) {
    const Sample s = random_set(rng);
    CHECK(s.set.elements() == as_vector(s.members));
    CHECK(s.set.universe() == as_vector(s.universe));
  }
}

TEST_CASE("union, intersection and difference laws") {
  Rng rng(12);
  for (int i = 0; i < kCases; ++i) {
    const Sample a = random_set(rng), b = random_set(rng), c = random_set(rng);
    const auto &A = a.set, &B = b.set, &C = c.set;

    std::set<int> u, n, d;
    std::set_union(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(), std::inserter(u, u.end()));
    std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                          std::inserter(n, n.end()));
    std::set_difference(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                        std::inserter(d, d.end()));
    CHECK(set_union(A, B).elements() == as_vector(u));
    CHECK(set_intersect(A, B).elements() == as_vector(n));
    CHECK(set_diff(A, B).elements() == as_vector(d));

    CHECK(set_equal(set_union(A, B), set_union(B, A)));
    CHECK(set_equal(set_intersect(A, B), set_intersect(B, A)));
    CHECK(set_equal(set_union(set_union(A, B), C), set_union(A, set_union(B, C))));
    CHECK(set_equal(set_intersect(set_intersect(A, B), C), set_intersect(A, set_intersect(B, C))));
    CHECK(set_equal(set_intersect(A, set_union(B, C)), set_union(set_intersect(A, B), set_intersect(A, C))));
    CHECK(set_equal(set_union(A, set_intersect(A, B)), A));
    CHECK(set_equal(set_intersect(A, set_union(A, B)), A));
    CHECK(set_equal(set_diff(A, set_union(B, C)), set_intersect(set_diff(A, B), set_diff(A, C))));
    CHECK(set_equal(set_union(set_diff(A, B), set_intersect(A, B)), A));
    CHECK(set_diff(A, A).empty());
    CHECK(set_equal(set_union(A, A), A));
  }
}

TEST_CASE("universe is monotone") {
  Rng rng(13);
  for (int i = 0; i < kCases; ++i) {
    const Sample a = random_set(rng), b = random_set(rng);
    for (const auto& r : {set_union(a.set, b.set), set_intersect(a.set, b.set), set_diff(a.set, b.set)}) {
      CHECK(includes(r.universe(), a.universe));
      CHECK(includes(r.universe(), b.universe));
      CHECK(includes(r.universe(), std::set<int>(r.elements().begin(), r.elements().end())));
    }
    const int x = static_cast<int>(rng.between(0, 6));
    std::set<int> grown = a.universe;
    grown.insert(x);
    CHECK(includes(a.set.insert(x).universe(), grown));
    CHECK(includes(a.set.remove(x).universe(), grown));
    CHECK_FALSE(a.set.remove(x).member(x));
  }
}

TEST_CASE("extensional map examples") {
  const auto e = map_empty<int, int>(0);
  for (int k = -3; k <= 3; ++k) CHECK(map_get(e, k) == 0);
  CHECK(map_equal(map_set(map_set(e, 1, 5), 2, 7), map_set(map_set(e, 2, 7), 1, 5)));
  CHECK(map_equal(map_set(map_set(e, 4, 1), 4, 2), map_set(e, 4, 2)));
}

TEST_CASE("extensional map laws") {
  Rng rng(14);
  auto random_map = [&](std::map<int, int>& ref) {
    auto m = map_empty<int, int>(0);
    const std::uint64_t steps = rng.below(7);
    for (std::uint64_t i = 0; i < steps; ++i) {
      const int k = static_cast<int>(rng.between(0, 5));
      const int v = static_cast<int>(rng.between(0, 4));
      m = map_set(m, k, v);
      ref[k] = v;
    }
    return m;
  };
  for (int i = 0; i < kCases; ++i) {
    std::map<int, int> ra, rb;
    const auto a = random_map(ra);
    const auto b = random_map(rb);

    for (int k = 0; k <= 6; ++k) {
      const auto it = ra.find(k);
      CHECK(map_get(a, k) == (it == ra.end() ? 0 : it->second));
      CHECK(map_domain(a).member(k) == (it != ra.end()));
    }

    // Insertion order does not matter: rebuild from the reference in reverse.
    auto rebuilt = map_empty<int, int>(0);
    for (auto it = ra.rbegin(); it != ra.rend(); ++it) rebuilt = map_set(rebuilt, it->first, it->second);
    CHECK(map_equal(a, rebuilt));
    CHECK(map_equal(a, b) == (ra == rb));

    const auto sum = combine(a, b, [](int x, int y) { return x + y; });
    for (int k = 0; k <= 6; ++k) {
      const int x = ra.count(k) ? ra[k] : 0;
      const int y = rb.count(k) ? rb[k] : 0;
      CHECK(map_get(sum, k) == x + y);
      CHECK(map_domain(sum).member(k) == (ra.count(k) + rb.count(k) > 0));
    }
    CHECK(map_equal(sum, combine(b, a, [](int x, int y) { return x + y; })));

    const int k = static_cast<int>(rng.between(0, 5));
    CHECK(map_get(map_set(a, k, 9), k) == 9);
    CHECK(includes(map_set(a, k, 9).domain().universe(), std::set<int>(map_domain(a).universe().begin(),
                                                                        map_domain(a).universe().end())));
  }
}
