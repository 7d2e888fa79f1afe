#include "salcheck/report.hpp"

#include <json.hpp>

namespace salcheck {

using nlohmann::json;

namespace {

// ---- writing ----------------------------------------------------------------

json op_json(const OpPayload& op) {
  return {{"kind", std::string(op_name(op.kind))}, {"args", op_args(op)}};
}

json recipe_json(const HistoryRecipe& r) {
  json steps = json::array();
  for (const RecipeStep& s : r.steps) {
    if (const auto* d = std::get_if<DoStep>(&s)) {
      steps.push_back({{"type", "do"}, {"branch", d->branch}, {"op", op_json(d->op)}});
    } else if (const auto* m = std::get_if<MergeStep>(&s)) {
      steps.push_back({{"type", "merge"}, {"into", m->into}, {"from", m->from}});
    } else {
      steps.push_back({{"type", "fork"}, {"from", std::get<ForkStep>(s).from}});
    }
  }
  return {{"replica_count", r.replica_count}, {"converge", r.converge}, {"steps", steps}};
}

json nodes_json(const GraphView& g) {
  json out = json::array();
  for (const auto& n : g.nodes) out.push_back({{"id", n.id}, {"label", n.label}, {"state", n.state}});
  return out;
}

json edges_json(const GraphView& g) {
  json out = json::array();
  for (const auto& e : g.edges) {
    json j = {{"from", e.from}, {"to", e.to}, {"kind", e.kind}};
    if (e.event) j["event"] = *e.event;
    out.push_back(j);
  }
  return out;
}

json graph_json(const GraphView& g) { return {{"nodes", nodes_json(g)}, {"edges", edges_json(g)}}; }

json config_json(const CheckConfig& c) {
  json props = json::array();
  for (PropertyId p : c.properties) props.push_back(std::string(to_string(p)));
  return {{"tests", c.tests},
          {"seed", c.seed},
          {"max_events", c.max_events},
          {"replicas", c.replicas},
          {"exhaustive_below", c.exhaustive_below},
          {"shrink_budget", c.shrink_budget},
          {"literal_pool", c.literal_pool},
          {"properties", props}};
}

json counterexample_json(const Counterexample& cx) {
  const Violation& v = cx.violation;
  json j;
  j["rdt"] = cx.rdt;
  j["property"] = std::string(to_string(cx.property));
  j["seed"] = cx.seed;
  j["recipe"] = recipe_json(cx.shrunk);
  j["nodes"] = nodes_json(v.history);
  j["edges"] = edges_json(v.history);
  j["lhs"] = v.lhs;
  j["rhs"] = v.rhs;
  j["message"] = v.message;
  j["focus"] = v.focus;
  j["lca"] = v.lca ? json(*v.lca) : json(nullptr);
  j["rhs_panel"] = v.rhs_panel ? graph_json(*v.rhs_panel) : json(nullptr);
  j["linearizations_tried"] = v.linearizations_tried;
  j["shrink_steps"] = cx.shrink_steps;
  j["attempts"] = cx.attempts;
  j["minimal"] = cx.minimal;
  json original = graph_json(cx.original_history);
  original["recipe"] = recipe_json(cx.original);
  j["original"] = original;
  return j;
}

// ---- reading ----------------------------------------------------------------

class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  Reader field(const std::string& key) const {
    expect(j_.is_object(), "expected an object");
    auto it = j_.find(key);
    if (it == j_.end()) throw ReportParseError(path_ + "." + key, "missing field");
    return Reader(*it, path_ + "." + key);
  }
  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }
  bool is_null() const { return j_.is_null(); }

  std::string str() const {
    expect(j_.is_string(), "expected a string");
    return j_.get<std::string>();
  }
  std::uint64_t u64() const {
    expect(j_.is_number_unsigned() || (j_.is_number_integer() && j_.get<std::int64_t>() >= 0),
           "expected a non-negative integer");
    return j_.get<std::uint64_t>();
  }
  std::int64_t i64() const {
    expect(j_.is_number_integer(), "expected an integer");
    return j_.get<std::int64_t>();
  }
  bool boolean() const {
    expect(j_.is_boolean(), "expected a boolean");
    return j_.get<bool>();
  }
  std::vector<Reader> items() const {
    expect(j_.is_array(), "expected an array");
    std::vector<Reader> out;
    for (std::size_t i = 0; i < j_.size(); ++i) out.emplace_back(j_[i], path_ + "[" + std::to_string(i) + "]");
    return out;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ReportParseError(path_, what); }

 private:
  void expect(bool ok, const std::string& what) const {
    if (!ok) throw ReportParseError(path_, what);
  }
  const json& j_;
  std::string path_;
};

PropertyId read_property(const Reader& r) {
  const auto p = parse_property(r.str());
  if (!p) r.fail("unknown property");
  return *p;
}

OpPayload read_op(const Reader& r) {
  OpKind kind;
  try {
    kind = parse_op_kind(r.field("kind").str());
  } catch (const std::invalid_argument&) {
    r.field("kind").fail("unknown operation");
  }
  std::vector<std::int64_t> args;
  for (const Reader& a : r.field("args").items()) args.push_back(a.i64());
  if (args.size() != static_cast<std::size_t>(arity(kind))) r.field("args").fail("wrong number of arguments");
  return make_op(kind, args);
}

HistoryRecipe read_recipe(const Reader& r) {
  HistoryRecipe out;
  out.replica_count = r.field("replica_count").u64();
  out.converge = r.field("converge").boolean();
  for (const Reader& s : r.field("steps").items()) {
    const std::string type = s.field("type").str();
    if (type == "do") {
      out.steps.push_back(DoStep{s.field("branch").u64(), read_op(s.field("op"))});
    } else if (type == "merge") {
      out.steps.push_back(MergeStep{s.field("into").u64(), s.field("from").u64()});
    } else if (type == "fork") {
      out.steps.push_back(ForkStep{s.field("from").u64()});
    } else {
      s.field("type").fail("unknown step type");
    }
  }
  return out;
}

GraphView read_graph(const Reader& nodes, const Reader& edges) {
  GraphView g;
  for (const Reader& n : nodes.items()) {
    g.nodes.push_back({n.field("id").str(), n.field("label").str(), n.field("state").str()});
  }
  for (const Reader& e : edges.items()) {
    EdgeView ev{e.field("from").str(), e.field("to").str(), e.field("kind").str(), std::nullopt};
    if (ev.kind != "do" && ev.kind != "merge" && ev.kind != "lca") e.field("kind").fail("unknown edge kind");
    if (e.has("event")) ev.event = e.field("event").str();
    g.edges.push_back(std::move(ev));
  }
  return g;
}

CheckConfig read_config(const Reader& r) {
  CheckConfig c;
  c.tests = r.field("tests").u64();
  c.seed = r.field("seed").u64();
  c.max_events = r.field("max_events").u64();
  c.replicas = r.field("replicas").u64();
  c.exhaustive_below = r.field("exhaustive_below").u64();
  c.shrink_budget = r.field("shrink_budget").u64();
  c.literal_pool = r.field("literal_pool").u64();
  for (const Reader& p : r.field("properties").items()) c.properties.push_back(read_property(p));
  return c;
}

Verdict read_verdict(const Reader& r) {
  Verdict v;
  v.property = read_property(r.field("property"));
  const auto status = parse_verdict_status(r.field("status").str());
  if (!status) r.field("status").fail("unknown verdict status");
  v.status = *status;
  v.exhaustive = r.field("exhaustive").u64();
  v.random = r.field("random").u64();
  v.instances = r.field("instances").u64();
  v.inapplicable = r.field("inapplicable").u64();
  return v;
}

Counterexample read_counterexample(const Reader& r) {
  Counterexample cx;
  cx.rdt = r.field("rdt").str();
  cx.property = read_property(r.field("property"));
  cx.seed = r.field("seed").u64();
  cx.shrunk = read_recipe(r.field("recipe"));
  Violation& v = cx.violation;
  v.property = cx.property;
  v.history = read_graph(r.field("nodes"), r.field("edges"));
  v.lhs = r.field("lhs").str();
  v.rhs = r.field("rhs").str();
  v.message = r.field("message").str();
  v.focus = r.field("focus").str();
  if (!r.field("lca").is_null()) v.lca = r.field("lca").str();
  if (!r.field("rhs_panel").is_null()) {
    const Reader p = r.field("rhs_panel");
    v.rhs_panel = read_graph(p.field("nodes"), p.field("edges"));
  }
  v.linearizations_tried = r.field("linearizations_tried").u64();
  cx.shrink_steps = r.field("shrink_steps").u64();
  cx.attempts = r.field("attempts").u64();
  cx.minimal = r.field("minimal").boolean();
  const Reader o = r.field("original");
  cx.original = read_recipe(o.field("recipe"));
  cx.original_history = read_graph(o.field("nodes"), o.field("edges"));
  return cx;
}

}  // namespace

std::string render_json(const SuiteReport& report) {
  json j;
  j["schema"] = kReportSchema;
  j["rdt"] = report.rdt;
  j["seed"] = report.config.seed;
  j["config"] = config_json(report.config);
  json verdicts = json::array();
  for (const Verdict& v : report.verdicts) {
    verdicts.push_back({{"property", std::string(to_string(v.property))},
                        {"status", std::string(to_string(v.status))},
                        {"exhaustive", v.exhaustive},
                        {"random", v.random},
                        {"instances", v.instances},
                        {"inapplicable", v.inapplicable}});
  }
  j["verdicts"] = verdicts;
  if (report.counterexamples.empty()) {
    j["property"] = nullptr;
  } else {
    j["property"] = std::string(to_string(report.counterexamples.front().property));
    j["counterexample"] = counterexample_json(report.counterexamples.front());
    if (report.counterexamples.size() > 1) {
      json more = json::array();
      for (std::size_t i = 1; i < report.counterexamples.size(); ++i) {
        more.push_back(counterexample_json(report.counterexamples[i]));
      }
      j["other_counterexamples"] = more;
    }
  }
  return j.dump(2) + "\n";
}

SuiteReport parse_report(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ReportParseError("$", std::string("invalid JSON: ") + e.what());
  }
  const Reader r(j, "$");
  if (r.field("schema").str() != kReportSchema) {
    r.field("schema").fail(std::string("unsupported schema, expected ") + kReportSchema);
  }
  SuiteReport out;
  out.rdt = r.field("rdt").str();
  out.config = read_config(r.field("config"));
  if (r.field("seed").u64() != out.config.seed) r.field("seed").fail("does not match config.seed");
  for (const Reader& v : r.field("verdicts").items()) out.verdicts.push_back(read_verdict(v));
  const Reader prop = r.field("property");
  if (r.has("counterexample")) {
    out.counterexamples.push_back(read_counterexample(r.field("counterexample")));
    if (prop.is_null() || read_property(prop) != out.counterexamples.front().property) {
      prop.fail("does not match counterexample.property");
    }
    if (r.has("other_counterexamples")) {
      for (const Reader& c : r.field("other_counterexamples").items()) {
        out.counterexamples.push_back(read_counterexample(c));
      }
    }
  } else if (!prop.is_null()) {
    prop.fail("set without a counterexample");
  }
  return out;
}

std::string recipe_to_json(const HistoryRecipe& recipe) { return recipe_json(recipe).dump(2) + "\n"; }

HistoryRecipe recipe_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ReportParseError("$", std::string("invalid JSON: ") + e.what());
  }
  return read_recipe(Reader(j, "$"));
}

}  // namespace salcheck
