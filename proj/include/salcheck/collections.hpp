#pragma once

// Sets and maps with decidable, extensional equality and a finite observed
// universe. Membership is total; the universe records every element that was
// ever inserted or removed so that states can be listed and compared.

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <iterator>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

namespace salcheck {

namespace detail {

template <class T>
std::vector<T> sorted_union(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

template <class T>
std::vector<T> sorted_intersection(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

template <class T>
std::vector<T> sorted_difference(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

template <class T>
void sorted_insert(std::vector<T>& v, const T& x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

}  // namespace detail

template <std::totally_ordered E>
class TrackedSet {
 public:
  using value_type = E;

  TrackedSet() = default;

  static TrackedSet from_elements(std::vector<E> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    TrackedSet s;
    s.members_ = xs;
    s.universe_ = std::move(xs);
    return s;
  }

  bool member(const E& x) const {
    return std::binary_search(members_.begin(), members_.end(), x);
  }

  /// Members in display order.
  const std::vector<E>& elements() const { return members_; }
  const std::vector<E>& universe() const { return universe_; }
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }

  TrackedSet insert(const E& x) const {
    TrackedSet out = *this;
    detail::sorted_insert(out.members_, x);
    detail::sorted_insert(out.universe_, x);
    return out;
  }

  TrackedSet remove(const E& x) const {
    TrackedSet out = *this;
    auto it = std::lower_bound(out.members_.begin(), out.members_.end(), x);
    if (it != out.members_.end() && *it == x) out.members_.erase(it);
    detail::sorted_insert(out.universe_, x);
    return out;
  }

  /// Removes every member satisfying `pred`; removed members stay in the universe.
  template <class Pred>
  TrackedSet remove_if(Pred pred) const {
    TrackedSet out = *this;
    std::erase_if(out.members_, pred);
    return out;
  }

  template <class Pred>
  TrackedSet filter(Pred pred) const {
    return remove_if([&](const E& x) { return !pred(x); });
  }

  friend TrackedSet set_union(const TrackedSet& a, const TrackedSet& b) {
    return make(detail::sorted_union(a.members_, b.members_),
                detail::sorted_union(a.universe_, b.universe_));
  }
  friend TrackedSet set_intersect(const TrackedSet& a, const TrackedSet& b) {
    return make(detail::sorted_intersection(a.members_, b.members_),
                detail::sorted_union(a.universe_, b.universe_));
  }
  friend TrackedSet set_diff(const TrackedSet& a, const TrackedSet& b) {
    return make(detail::sorted_difference(a.members_, b.members_),
                detail::sorted_union(a.universe_, b.universe_));
  }

  // Extensional: members agree on the union of both universes.
  friend bool operator==(const TrackedSet& a, const TrackedSet& b) {
    return a.members_ == b.members_;
  }
  friend auto operator<=>(const TrackedSet& a, const TrackedSet& b) {
    return std::lexicographical_compare_three_way(a.members_.begin(), a.members_.end(),
                                                  b.members_.begin(), b.members_.end());
  }

 private:
  static TrackedSet make(std::vector<E> members, std::vector<E> universe) {
    TrackedSet s;
    s.members_ = std::move(members);
    s.universe_ = std::move(universe);
    return s;
  }

  std::vector<E> members_;   // sorted, unique, subset of universe_
  std::vector<E> universe_;  // sorted, unique
};

template <class E>
TrackedSet<E> set_empty() {
  return {};
}
template <class E>
TrackedSet<E> set_insert(const TrackedSet<E>& s, const E& x) {
  return s.insert(x);
}
template <class E>
TrackedSet<E> set_remove(const TrackedSet<E>& s, const E& x) {
  return s.remove(x);
}
template <class E>
bool set_member(const TrackedSet<E>& s, const E& x) {
  return s.member(x);
}
template <class E>
bool set_equal(const TrackedSet<E>& a, const TrackedSet<E>& b) {
  return a == b;
}
template <class E>
std::vector<E> set_elements(const TrackedSet<E>& s) {
  return s.elements();
}

/// Map with an explicit domain and a declared default for keys outside it.
template <std::totally_ordered K, std::totally_ordered V>
class ExtensionalMap {
 public:
  ExtensionalMap() = default;
  explicit ExtensionalMap(V default_value) : default_(std::move(default_value)) {}

  const V& get(const K& k) const {
    auto it = find(k);
    return it == entries_.end() ? default_ : it->second;
  }

  ExtensionalMap set(const K& k, V v) const {
    ExtensionalMap out = *this;
    out.domain_ = out.domain_.insert(k);
    auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), k,
                               [](const auto& e, const K& key) { return e.first < key; });
    if (it != out.entries_.end() && it->first == k) {
      it->second = std::move(v);
    } else {
      out.entries_.insert(it, {k, std::move(v)});
    }
    return out;
  }

  const TrackedSet<K>& domain() const { return domain_; }
  const V& default_value() const { return default_; }
  /// (key, value) pairs for keys in the domain, ascending by key.
  const std::vector<std::pair<K, V>>& entries() const { return entries_; }

  /// Pointwise combination over the union of both domains.
  template <class F>
  friend ExtensionalMap combine(const ExtensionalMap& a, const ExtensionalMap& b, F f) {
    ExtensionalMap out(a.default_);
    const TrackedSet<K> keys = set_union(a.domain_, b.domain_);
    for (const K& k : keys.elements()) out = out.set(k, f(a.get(k), b.get(k)));
    out.domain_ = set_union(out.domain_, keys);
    return out;
  }

  template <class F>
  friend ExtensionalMap combine3(const ExtensionalMap& l, const ExtensionalMap& a,
                                 const ExtensionalMap& b, F f) {
    ExtensionalMap out(a.default_);
    const TrackedSet<K> keys = set_union(l.domain_, set_union(a.domain_, b.domain_));
    for (const K& k : keys.elements()) out = out.set(k, f(l.get(k), a.get(k), b.get(k)));
    out.domain_ = set_union(out.domain_, keys);
    return out;
  }

  friend bool operator==(const ExtensionalMap& a, const ExtensionalMap& b) {
    return a.domain_ == b.domain_ && a.entries_ == b.entries_;
  }
  friend auto operator<=>(const ExtensionalMap& a, const ExtensionalMap& b) {
    return std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.end(),
                                                  b.entries_.begin(), b.entries_.end());
  }

 private:
  auto find(const K& k) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                               [](const auto& e, const K& key) { return e.first < key; });
    return (it != entries_.end() && it->first == k) ? it : entries_.end();
  }

  V default_{};
  TrackedSet<K> domain_;
  std::vector<std::pair<K, V>> entries_;
};

template <class K, class V>
ExtensionalMap<K, V> map_empty(V default_value) {
  return ExtensionalMap<K, V>(std::move(default_value));
}
template <class K, class V>
ExtensionalMap<K, V> map_set(const ExtensionalMap<K, V>& m, const K& k, V v) {
  return m.set(k, std::move(v));
}
template <class K, class V>
const V& map_get(const ExtensionalMap<K, V>& m, const K& k) {
  return m.get(k);
}
template <class K, class V>
const TrackedSet<K>& map_domain(const ExtensionalMap<K, V>& m) {
  return m.domain();
}
template <class K, class V>
bool map_equal(const ExtensionalMap<K, V>& a, const ExtensionalMap<K, V>& b) {
  return a == b;
}

// ---- display ---------------------------------------------------------------

inline std::string display(bool b) { return b ? "true" : "false"; }

template <std::integral T>
  requires(!std::same_as<T, bool>)
std::string display(T x) {
  return std::to_string(x);
}

template <class A, class B>
std::string display(const std::pair<A, B>& p);
template <class... Ts>
std::string display(const std::tuple<Ts...>& t);
template <class E>
std::string display(const TrackedSet<E>& s);
template <class K, class V>
std::string display(const ExtensionalMap<K, V>& m);

template <class A, class B>
std::string display(const std::pair<A, B>& p) {
  return "(" + display(p.first) + ", " + display(p.second) + ")";
}

template <class... Ts>
std::string display(const std::tuple<Ts...>& t) {
  std::string out = "(";
  std::apply(
      [&](const auto&... xs) {
        std::size_t i = 0;
        ((out += (i++ ? ", " : "") + display(xs)), ...);
      },
      t);
  return out + ")";
}

/// `#[` elements `]#`, comma-space separated, in ascending order.
template <class E>
std::string display(const TrackedSet<E>& s) {
  std::string out = "#[";
  bool first = true;
  for (const E& x : s.elements()) {
    if (!first) out += ", ";
    out += display(x);
    first = false;
  }
  return out + "]#";
}

template <class K, class V>
std::string display(const ExtensionalMap<K, V>& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : m.entries()) {
    if (!first) out += ", ";
    out += display(k) + ": " + display(v);
    first = false;
  }
  return out + "}";
}

}  // namespace salcheck
