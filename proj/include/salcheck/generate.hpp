#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "salcheck/history.hpp"
#include "salcheck/model.hpp"
#include "salcheck/rng.hpp"

namespace salcheck {

struct GeneratorBounds {
  std::size_t replicas = 2;
  std::size_t max_events = 8;
  /// Literals are drawn from {1, ..., literal_pool}.
  std::size_t literal_pool = 3;
};

OpPayload random_payload(Rng& rng, const PayloadDomain& domain, std::size_t literal_pool);

/// Random fork/merge history: events on random branches, with merges between
/// random branch pairs sprinkled between events.
HistoryRecipe random_recipe(Rng& rng, const PayloadDomain& domain, const GeneratorBounds& bounds);

/// Visitor returns false to stop the enumeration.
using RecipeVisitor = std::function<bool(const HistoryRecipe&)>;

/// Every recipe with at most `max_events` events, in order of increasing size.
/// Branch numbering and literals are canonical (first use gets the smallest
/// label); between consecutive events there is no merge, a merge of one
/// ordered branch pair, or a full sync. Returns the number visited.
std::size_t enumerate_recipes(const PayloadDomain& domain, const GeneratorBounds& bounds,
                              const RecipeVisitor& visit);

/// All payloads of the domain over the literal pool.
std::vector<OpPayload> all_payloads(const PayloadDomain& domain, std::size_t literal_pool);

/// Diamond whose two branches hold exactly one event each, forming a pair
/// ordered by rc, on top of a random single-replica prefix. Empty rc gives
/// no recipe.
std::optional<HistoryRecipe> random_conflict_diamond(Rng& rng, const PayloadDomain& domain,
                                                     const RcRelation& rc,
                                                     const GeneratorBounds& bounds);

/// All such diamonds with at most `bounds.max_events` events.
std::size_t enumerate_conflict_diamonds(const PayloadDomain& domain, const RcRelation& rc,
                                        const GeneratorBounds& bounds,
                                        const RecipeVisitor& visit);

}  // namespace salcheck
