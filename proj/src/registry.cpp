#include <algorithm>

#include "salcheck/catalog.hpp"
#include "salcheck/rdt.hpp"

namespace salcheck {

namespace {

template <class S>
CatalogEntry entry(S spec, std::string name, std::string notes, bool buggy = false) {
  CatalogEntry e;
  e.id = std::string(S::kId);
  e.kind = S::kKind;
  e.known_buggy = buggy;
  e.name = std::move(name);
  e.notes = std::move(notes);
  e.rdt = std::make_shared<RdtModel<S>>(std::move(spec));
  return e;
}

std::vector<CatalogEntry> make_catalog() {
  using namespace catalog;
  std::vector<CatalogEntry> v;
  v.push_back(entry(ctr_inc_mrdt(), "Increment-only counter MRDT",
                    "merge3(l, a, b) = l + (a - l) + (b - l)"));
  v.push_back(entry(or_set_mrdt(), "OR-set MRDT",
                    "(timestamp, element) pairs; concurrent add wins over remove"));
  v.push_back(entry(ew_flag_buggy_mrdt(), "Enable-wins flag MRDT",
                    "counter-based merge that can resurrect a disabled flag", true));
  v.push_back(entry(efficient_or_set_mrdt(), "Efficient OR-set MRDT",
                    "keeps one timestamp per (element, replica)"));
  v.push_back(entry(g_set_mrdt(), "Grows-only set MRDT", "add only; merge is union"));
  v.push_back(entry(g_map_mrdt(), "Grows-only map MRDT",
                    "key to grow-only set of values, merged key by key"));
  v.push_back(entry(rga_mrdt(), "Replicated growable array MRDT",
                    "simplified: timestamped inserts, tombstones, newest-first read"));
  v.push_back(entry(mv_reg_mrdt(), "Multi-valued register MRDT",
                    "(timestamp, value) entries; concurrent writes survive"));
  v.push_back(entry(pn_ctr_mrdt(), "PN-counter MRDT", "componentwise counter merge; value p - n"));
  v.push_back(entry(ctr_inc_crdt(), "Increment-only counter CRDT",
                    "per-replica vector, pointwise max"));
  v.push_back(entry(pn_ctr_crdt(), "PN-counter CRDT", "two per-replica vectors"));
  v.push_back(entry(mv_reg_crdt(), "Multi-valued register CRDT",
                    "entries plus overwritten-timestamp context"));
  v.push_back(entry(or_set_crdt(), "OR-set CRDT", "add set plus tombstone set, both unioned"));
  v.push_back(entry(ew_flag_fixed_mrdt(), "Enable-wins flag MRDT (corrected)",
                    "live enable timestamps merged OR-set style"));
  std::sort(v.begin(), v.end(), [](const CatalogEntry& a, const CatalogEntry& b) { return a.id < b.id; });
  return v;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_list() {
  static const std::vector<CatalogEntry> entries = make_catalog();
  return entries;
}

const CatalogEntry* find_entry(std::string_view id) {
  for (const auto& e : catalog_list()) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

}  // namespace salcheck
