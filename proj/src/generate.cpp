#include "salcheck/generate.hpp"

#include <algorithm>

namespace salcheck {

namespace {

std::int64_t random_literal(Rng& rng, std::size_t pool) {
  return static_cast<std::int64_t>(rng.between(1, std::max<std::size_t>(pool, 1)));
}

/// Restricted growth strings of length n with values < limit.
void for_each_rgs(std::size_t n, std::size_t limit,
                  const std::function<bool(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> seq(n, 0);
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == n) return f(seq);
    for (std::size_t v = 0; v < std::min(used + 1, limit); ++v) {
      seq[i] = v;
      if (!rec(i + 1, std::max(used, v + 1))) return false;
    }
    return true;
  };
  if (limit == 0 && n > 0) return;
  rec(0, 0);
}

/// All tuples in [0, base)^n, last position fastest.
void for_each_tuple(std::size_t n, std::size_t base,
                    const std::function<bool(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> t(n, 0);
  if (base == 0 && n > 0) return;
  while (true) {
    if (!f(t)) return;
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++t[i] < base) break;
      t[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

struct MergeOption {
  std::vector<MergeStep> merges;
};

std::vector<MergeOption> merge_options(std::size_t replicas) {
  std::vector<MergeOption> opts{{}};
  for (std::size_t a = 0; a < replicas; ++a) {
    for (std::size_t b = 0; b < replicas; ++b) {
      if (a != b) opts.push_back({{MergeStep{a, b}}});
    }
  }
  if (replicas >= 2) {
    MergeOption sync;
    for (std::size_t b = 1; b < replicas; ++b) sync.merges.push_back({0, b});
    for (std::size_t b = 1; b < replicas; ++b) sync.merges.push_back({b, 0});
    opts.push_back(sync);
  }
  return opts;
}

}  // namespace

OpPayload random_payload(Rng& rng, const PayloadDomain& domain, std::size_t literal_pool) {
  const auto& kinds = domain.kinds();
  const OpKind kind = kinds[rng.below(kinds.size())];
  std::vector<std::int64_t> args;
  for (int i = 0; i < arity(kind); ++i) args.push_back(random_literal(rng, literal_pool));
  return make_op(kind, args);
}

HistoryRecipe random_recipe(Rng& rng, const PayloadDomain& domain, const GeneratorBounds& bounds) {
  HistoryRecipe r;
  r.replica_count = bounds.replicas;
  const std::size_t events = bounds.max_events == 0 ? 0 : rng.between(1, bounds.max_events);
  for (std::size_t i = 0; i < events; ++i) {
    r.steps.push_back(DoStep{rng.below(bounds.replicas), random_payload(rng, domain, bounds.literal_pool)});
    if (i + 1 < events && bounds.replicas > 1 && rng.chance(1, 3)) {
      const std::size_t into = rng.below(bounds.replicas);
      std::size_t from = rng.below(bounds.replicas - 1);
      if (from >= into) ++from;
      r.steps.push_back(MergeStep{into, from});
    }
  }
  return r;
}

std::vector<OpPayload> all_payloads(const PayloadDomain& domain, std::size_t literal_pool) {
  std::vector<OpPayload> out;
  for (OpKind kind : domain.kinds()) {
    for_each_tuple(static_cast<std::size_t>(arity(kind)), literal_pool,
                   [&](const std::vector<std::size_t>& t) {
                     std::vector<std::int64_t> args;
                     for (std::size_t v : t) args.push_back(static_cast<std::int64_t>(v) + 1);
                     out.push_back(make_op(kind, args));
                     return true;
                   });
  }
  return out;
}

std::size_t enumerate_recipes(const PayloadDomain& domain, const GeneratorBounds& bounds,
                              const RecipeVisitor& visit) {
  const auto& kinds = domain.kinds();
  const std::vector<MergeOption> options = merge_options(bounds.replicas);
  std::size_t visited = 0;
  bool stop = false;

  for (std::size_t k = 0; k <= bounds.max_events && !stop; ++k) {
    for_each_rgs(k, bounds.replicas, [&](const std::vector<std::size_t>& branches) {
      for_each_tuple(k, kinds.size(), [&](const std::vector<std::size_t>& kind_idx) {
        // Literal slots: keys and element/value literals are canonicalised separately.
        std::size_t key_slots = 0;
        std::size_t value_slots = 0;
        for (std::size_t i = 0; i < k; ++i) {
          const int a = arity(kinds[kind_idx[i]]);
          if (a == 2) ++key_slots;
          if (a >= 1) ++value_slots;
        }
        for_each_rgs(key_slots, bounds.literal_pool, [&](const std::vector<std::size_t>& keys) {
          for_each_rgs(value_slots, bounds.literal_pool, [&](const std::vector<std::size_t>& vals) {
            const std::size_t gaps = k == 0 ? 0 : k - 1;
            for_each_tuple(gaps, options.size(), [&](const std::vector<std::size_t>& gap) {
              HistoryRecipe r;
              r.replica_count = bounds.replicas;
              std::size_t ki = 0;
              std::size_t vi = 0;
              for (std::size_t i = 0; i < k; ++i) {
                const OpKind kind = kinds[kind_idx[i]];
                std::vector<std::int64_t> args;
                if (arity(kind) == 2) args.push_back(static_cast<std::int64_t>(keys[ki++]) + 1);
                if (arity(kind) >= 1) args.push_back(static_cast<std::int64_t>(vals[vi++]) + 1);
                r.steps.push_back(DoStep{branches[i], make_op(kind, args)});
                if (i + 1 < k) {
                  for (const MergeStep& m : options[gap[i]].merges) r.steps.push_back(m);
                }
              }
              ++visited;
              if (!visit(r)) stop = true;
              return !stop;
            });
            return !stop;
          });
          return !stop;
        });
        return !stop;
      });
      return !stop;
    });
  }
  return visited;
}

namespace {

std::vector<std::pair<OpPayload, OpPayload>> ordered_pairs(const PayloadDomain& domain,
                                                           const RcRelation& rc,
                                                           std::size_t pool) {
  std::vector<std::pair<OpPayload, OpPayload>> out;
  const auto ops = all_payloads(domain, pool);
  for (const auto& a : ops) {
    for (const auto& b : ops) {
      if (rc(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

HistoryRecipe diamond(std::vector<OpPayload> prefix, const OpPayload& first,
                      const OpPayload& second, bool first_on_branch0, bool first_stamped_first) {
  HistoryRecipe r;
  r.replica_count = 2;
  for (const auto& op : prefix) r.steps.push_back(DoStep{0, op});
  r.steps.push_back(MergeStep{1, 0});
  const DoStep s1{first_on_branch0 ? 0u : 1u, first};
  const DoStep s2{first_on_branch0 ? 1u : 0u, second};
  if (first_stamped_first) {
    r.steps.push_back(s1);
    r.steps.push_back(s2);
  } else {
    r.steps.push_back(s2);
    r.steps.push_back(s1);
  }
  return r;
}

}  // namespace

std::optional<HistoryRecipe> random_conflict_diamond(Rng& rng, const PayloadDomain& domain,
                                                     const RcRelation& rc,
                                                     const GeneratorBounds& bounds) {
  if (rc.empty() || bounds.max_events < 2) return std::nullopt;
  const auto pairs = ordered_pairs(domain, rc, bounds.literal_pool);
  if (pairs.empty()) return std::nullopt;
  const std::size_t prefix_len = rng.below(bounds.max_events - 1);
  std::vector<OpPayload> prefix;
  for (std::size_t i = 0; i < prefix_len; ++i) {
    prefix.push_back(random_payload(rng, domain, bounds.literal_pool));
  }
  const auto& [o1, o2] = pairs[rng.below(pairs.size())];
  const bool left = rng.chance(1, 2);
  const bool stamped_first = rng.chance(1, 2);
  return diamond(std::move(prefix), o1, o2, left, stamped_first);
}

std::size_t enumerate_conflict_diamonds(const PayloadDomain& domain, const RcRelation& rc,
                                        const GeneratorBounds& bounds,
                                        const RecipeVisitor& visit) {
  if (rc.empty() || bounds.max_events < 2) return 0;
  const auto pairs = ordered_pairs(domain, rc, bounds.literal_pool);
  const auto ops = all_payloads(domain, bounds.literal_pool);
  std::size_t visited = 0;
  bool stop = false;
  for (std::size_t len = 0; len + 2 <= bounds.max_events && !stop; ++len) {
    for_each_tuple(len, ops.size(), [&](const std::vector<std::size_t>& idx) {
      std::vector<OpPayload> prefix;
      for (std::size_t i : idx) prefix.push_back(ops[i]);
      for (const auto& [o1, o2] : pairs) {
        for (int variant = 0; variant < 4 && !stop; ++variant) {
          ++visited;
          if (!visit(diamond(prefix, o1, o2, variant & 1, variant & 2))) stop = true;
        }
        if (stop) break;
      }
      return !stop;
    });
  }
  return visited;
}

}  // namespace salcheck
