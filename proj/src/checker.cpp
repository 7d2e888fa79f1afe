#include "salcheck/checker.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "salcheck/generate.hpp"
#include "salcheck/rdt.hpp"
#include "salcheck/rng.hpp"

namespace salcheck {

namespace {

constexpr std::array<std::pair<PropertyId, std::string_view>, 9> kPropertyNames{{
    {PropertyId::MergeIdem, "MergeIdem"},
    {PropertyId::MergeComm, "MergeComm"},
    {PropertyId::MergeWithLca, "MergeWithLca"},
    {PropertyId::BottomUpStep, "BottomUpStep"},
    {PropertyId::RcPolicy, "RcPolicy"},
    {PropertyId::LinearizationExists, "LinearizationExists"},
    {PropertyId::LatticeComm, "LatticeComm"},
    {PropertyId::LatticeAssoc, "LatticeAssoc"},
    {PropertyId::LatticeIdem, "LatticeIdem"},
}};

}  // namespace

std::string_view to_string(PropertyId p) {
  for (const auto& [id, name] : kPropertyNames) {
    if (id == p) return name;
  }
  return "?";
}

std::optional<PropertyId> parse_property(std::string_view name) {
  for (const auto& [id, n] : kPropertyNames) {
    if (n == name) return id;
  }
  return std::nullopt;
}

std::vector<PropertyId> all_properties() {
  std::vector<PropertyId> out;
  for (const auto& [id, name] : kPropertyNames) out.push_back(id);
  return out;
}

std::vector<PropertyId> properties_for(RdtKind kind) {
  using P = PropertyId;
  if (kind == RdtKind::Mrdt) {
    return {P::MergeIdem, P::MergeComm, P::MergeWithLca, P::BottomUpStep, P::RcPolicy, P::LinearizationExists};
  }
  return {P::MergeIdem,   P::MergeComm,    P::BottomUpStep, P::RcPolicy,
          P::LinearizationExists, P::LatticeComm, P::LatticeAssoc, P::LatticeIdem};
}

std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Pass:
      return "pass";
    case VerdictStatus::Fail:
      return "fail";
    case VerdictStatus::Vacuous:
      return "vacuous";
  }
  return "?";
}

std::optional<VerdictStatus> parse_verdict_status(std::string_view s) {
  for (VerdictStatus v : {VerdictStatus::Pass, VerdictStatus::Fail, VerdictStatus::Vacuous}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

void CheckConfig::validate() const {
  auto positive = [](std::uint64_t v, const char* name) {
    if (v < 1) throw ConfigError(std::string(name) + " must be at least 1");
  };
  positive(tests, "tests");
  positive(max_events, "max-events");
  positive(replicas, "replicas");
  positive(exhaustive_below, "exhaustive-below");
  positive(shrink_budget, "shrink-budget");
  positive(literal_pool, "literal-pool");
  if (exhaustive_below > max_events + 1) {
    throw ConfigError("exhaustive-below (" + std::to_string(exhaustive_below) +
                      ") must not exceed max-events + 1 (" + std::to_string(max_events + 1) + ")");
  }
}

// ---------------------------------------------------------------------------
// Shrinking

namespace {

bool has_fork(const HistoryRecipe& r) {
  return std::any_of(r.steps.begin(), r.steps.end(),
                     [](const RecipeStep& s) { return std::holds_alternative<ForkStep>(s); });
}

HistoryRecipe without_step(const HistoryRecipe& r, std::size_t i) {
  HistoryRecipe out = r;
  out.steps.erase(out.steps.begin() + static_cast<std::ptrdiff_t>(i));
  return out;
}

/// Removes branch `b`, or folds it into `into` when given, renumbering the
/// branches above it.
HistoryRecipe remove_branch(const HistoryRecipe& r, std::size_t b, std::optional<std::size_t> into) {
  auto renumber = [&](std::size_t x) {
    if (x == b) return *into;
    return x > b ? x - 1 : x;
  };
  const std::optional<std::size_t> target =
      into ? std::optional<std::size_t>(*into > b ? *into - 1 : *into) : std::nullopt;
  HistoryRecipe out;
  out.replica_count = r.replica_count - 1;
  out.converge = r.converge;
  for (const RecipeStep& s : r.steps) {
    if (const auto* d = std::get_if<DoStep>(&s)) {
      if (d->branch == b && !into) continue;
      out.steps.push_back(DoStep{d->branch == b ? *target : renumber(d->branch), d->op});
    } else if (const auto* m = std::get_if<MergeStep>(&s)) {
      if (!into && (m->into == b || m->from == b)) continue;
      const std::size_t i = m->into == b ? *target : renumber(m->into);
      const std::size_t f = m->from == b ? *target : renumber(m->from);
      if (i != f) out.steps.push_back(MergeStep{i, f});
    }
  }
  return out;
}

}  // namespace

std::vector<HistoryRecipe> shrink_candidates(const HistoryRecipe& recipe) {
  std::vector<HistoryRecipe> out;
  std::vector<std::size_t> dos;
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < recipe.steps.size(); ++i) {
    (std::holds_alternative<DoStep>(recipe.steps[i]) ? dos : others).push_back(i);
  }
  // Trailing event first, then the remaining events from last to first.
  for (auto it = dos.rbegin(); it != dos.rend(); ++it) out.push_back(without_step(recipe, *it));
  for (auto it = others.rbegin(); it != others.rend(); ++it) out.push_back(without_step(recipe, *it));

  if (recipe.replica_count > 1 && !has_fork(recipe)) {
    for (std::size_t b = recipe.replica_count; b-- > 0;) out.push_back(remove_branch(recipe, b, std::nullopt));
    for (std::size_t b = recipe.replica_count; b-- > 1;) {
      for (std::size_t a = 0; a < b; ++a) out.push_back(remove_branch(recipe, b, a));
    }
  }

  for (std::size_t i : dos) {
    const auto& d = std::get<DoStep>(recipe.steps[i]);
    std::vector<std::int64_t> args = op_args(d.op);
    for (std::size_t k = 0; k < args.size(); ++k) {
      const std::int64_t v = args[k];
      std::vector<std::int64_t> tries;
      if (v != 0) tries.push_back(0);
      if (v > 1) tries.push_back(v - 1);
      for (std::int64_t t : tries) {
        std::vector<std::int64_t> a2 = args;
        a2[k] = t;
        HistoryRecipe c = recipe;
        c.steps[i] = DoStep{d.branch, make_op(d.op.kind, a2)};
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

namespace {

bool fails(const Rdt& rdt, PropertyId p, const HistoryRecipe& r) {
  try {
    return rdt.check(r, {p}).front().outcome == Outcome::Fail;
  } catch (const RecipeError&) {
    return false;
  }
}

}  // namespace

ShrinkResult shrink(const Rdt& rdt, PropertyId property, const HistoryRecipe& failing, std::size_t budget) {
  ShrinkResult res{failing, 0, 0, true};
  bool progress = true;
  while (progress) {
    progress = false;
    for (const HistoryRecipe& c : shrink_candidates(res.recipe)) {
      if (res.attempts >= budget) {
        res.minimal = false;
        return res;
      }
      ++res.attempts;
      if (fails(rdt, property, c)) {
        res.recipe = c;
        ++res.steps;
        progress = true;
        break;
      }
    }
  }
  return res;
}

Counterexample make_counterexample(const Rdt& rdt, PropertyId property, const HistoryRecipe& failing,
                                   const CheckConfig& cfg) {
  if (!fails(rdt, property, failing)) {
    throw std::logic_error("recipe does not fail " + std::string(to_string(property)));
  }
  const ShrinkResult s = shrink(rdt, property, failing, cfg.shrink_budget);
  const PropertyOutcome out = rdt.check(s.recipe, {property}).front();
  if (out.outcome != Outcome::Fail || !out.violation || !rdt.replays(s.recipe)) {
    throw std::logic_error("shrunk counterexample for " + std::string(to_string(property)) +
                           " did not re-fail on replay");
  }
  Counterexample cx;
  cx.rdt = std::string(rdt.id());
  cx.property = property;
  cx.seed = cfg.seed;
  cx.original = failing;
  cx.original_history = rdt.view(failing);
  cx.shrunk = s.recipe;
  cx.violation = *out.violation;
  cx.shrink_steps = s.steps;
  cx.attempts = s.attempts;
  cx.minimal = s.minimal;
  return cx;
}

// ---------------------------------------------------------------------------
// Suite driver

namespace {

struct Track {
  Verdict verdict;
  std::optional<HistoryRecipe> failing;
  bool skip = false;  // vacuous by construction
};

void record(Track& t, const PropertyOutcome& o, const HistoryRecipe& r, bool exhaustive) {
  (exhaustive ? t.verdict.exhaustive : t.verdict.random) += 1;
  t.verdict.instances += o.instances;
  if (o.outcome == Outcome::NotApplicable) ++t.verdict.inapplicable;
  if (o.outcome == Outcome::Fail) t.failing = r;
}

}  // namespace

SuiteReport run_suite(const Rdt& rdt, const CheckConfig& cfg) {
  cfg.validate();
  std::vector<PropertyId> props = cfg.properties.empty() ? properties_for(rdt.kind()) : cfg.properties;
  std::sort(props.begin(), props.end());
  props.erase(std::unique(props.begin(), props.end()), props.end());

  const PayloadDomain domain = rdt.domain();
  const RcRelation rc = rdt.rc();
  std::vector<Track> tracks;
  for (PropertyId p : props) {
    Track t;
    t.verdict.property = p;
    t.skip = p == PropertyId::RcPolicy && rc.empty();
    tracks.push_back(t);
  }
  auto open = [&](const Track& t) { return !t.skip && !t.failing; };

  GeneratorBounds small{cfg.replicas, std::min(cfg.exhaustive_below - 1, cfg.max_events), cfg.literal_pool};
  const GeneratorBounds full{cfg.replicas, cfg.max_events, cfg.literal_pool};

  // Exhaustive phase: one execution per recipe serves every general property.
  enumerate_recipes(domain, small, [&](const HistoryRecipe& r) {
    std::vector<std::size_t> idx;
    std::vector<PropertyId> ps;
    for (std::size_t i = 0; i < tracks.size(); ++i) {
      if (open(tracks[i]) && tracks[i].verdict.property != PropertyId::RcPolicy) {
        idx.push_back(i);
        ps.push_back(tracks[i].verdict.property);
      }
    }
    if (ps.empty()) return false;
    std::vector<PropertyOutcome> outs;
    try {
      outs = rdt.check(r, ps);
    } catch (const RecipeError&) {
      return true;
    }
    for (std::size_t k = 0; k < idx.size(); ++k) record(tracks[idx[k]], outs[k], r, true);
    return true;
  });
  for (Track& t : tracks) {
    if (t.verdict.property != PropertyId::RcPolicy || !open(t)) continue;
    small.replicas = 2;
    enumerate_conflict_diamonds(domain, rc, small, [&](const HistoryRecipe& r) {
      record(t, rdt.check(r, {PropertyId::RcPolicy}).front(), r, true);
      return !t.failing;
    });
  }

  // Random phase: an independent stream per (seed, rdt, property, iteration).
  for (Track& t : tracks) {
    const PropertyId p = t.verdict.property;
    for (std::uint64_t i = 0; i < cfg.tests && open(t); ++i) {
      Rng rng = derive_stream(cfg.seed, rdt.id(), to_string(p), i);
      std::optional<HistoryRecipe> r;
      if (p == PropertyId::RcPolicy) {
        GeneratorBounds diamond = full;
        diamond.replicas = 2;
        r = random_conflict_diamond(rng, domain, rc, diamond);
      } else {
        r = random_recipe(rng, domain, full);
      }
      if (!r) break;
      try {
        record(t, rdt.check(*r, {p}).front(), *r, false);
      } catch (const RecipeError&) {
        ++t.verdict.random;
        ++t.verdict.inapplicable;
      }
    }
  }

  SuiteReport report;
  report.rdt = std::string(rdt.id());
  report.config = cfg;
  for (Track& t : tracks) {
    if (t.failing) {
      t.verdict.status = VerdictStatus::Fail;
    } else {
      t.verdict.status = t.verdict.instances == 0 ? VerdictStatus::Vacuous : VerdictStatus::Pass;
    }
    report.verdicts.push_back(t.verdict);
  }
  for (const Track& t : tracks) {
    if (t.failing) report.counterexamples.push_back(make_counterexample(rdt, t.verdict.property, *t.failing, cfg));
  }
  return report;
}

}  // namespace salcheck
