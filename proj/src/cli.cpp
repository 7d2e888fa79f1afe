#include "salcheck/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "salcheck/demos.hpp"
#include "salcheck/generate.hpp"
#include "salcheck/rdt.hpp"
#include "salcheck/report.hpp"

namespace salcheck {

namespace {

constexpr int kOk = 0;
constexpr int kFound = 1;
constexpr int kUsage = 2;

/// Usage problem detected after parsing; reported on stderr with exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string joined(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

const CatalogEntry& lookup(const std::string& id) {
  if (const CatalogEntry* e = find_entry(id)) return *e;
  std::vector<std::string> ids;
  for (const auto& e : catalog_list()) ids.push_back(e.id);
  throw UsageError("unknown rdt '" + id + "'; valid ids: " + joined(ids));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
  if (!f) throw UsageError("cannot write " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::uint64_t parse_seed(const std::string& text, const std::string& source) {
  try {
    std::size_t used = 0;
    if (!text.empty() && text[0] != '-') {
      const unsigned long long v = std::stoull(text, &used, 10);
      if (used == text.size()) return v;
    }
  } catch (const std::exception&) {
  }
  throw UsageError(source + " must be a non-negative integer, got '" + text + "'");
}

// ---- list -------------------------------------------------------------------

int cmd_list(bool as_json, std::ostream& out) {
  if (as_json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : catalog_list()) {
      arr.push_back({{"id", e.id},
                     {"kind", std::string(to_string(e.kind))},
                     {"known_buggy", e.known_buggy},
                     {"name", e.name}});
    }
    out << arr.dump(2) << "\n";
    return kOk;
  }
  for (const auto& e : catalog_list()) {
    std::string line = e.id;
    line.resize(18, ' ');
    std::string kind(to_string(e.kind));
    kind.resize(6, ' ');
    std::string mark = e.known_buggy ? "KNOWN-BUGGY" : "";
    mark.resize(13, ' ');
    out << line << kind << mark << e.name << "\n";
  }
  return kOk;
}

// ---- check ------------------------------------------------------------------

struct CheckArgs {
  std::string rdt;
  std::uint64_t tests = 1000;
  std::optional<std::uint64_t> seed;
  std::size_t max_events = 8;
  std::size_t replicas = 2;
  std::vector<std::string> props;
  std::string out;
};

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  const CatalogEntry& entry = lookup(a.rdt);
  CheckConfig cfg;
  cfg.tests = a.tests;
  cfg.max_events = a.max_events;
  cfg.replicas = a.replicas;
  cfg.exhaustive_below = std::min(cfg.exhaustive_below, cfg.max_events + 1);
  if (a.seed) {
    cfg.seed = *a.seed;
  } else if (const char* env = std::getenv("SALCHECK_SEED"); env && *env) {
    cfg.seed = parse_seed(env, "SALCHECK_SEED");
  } else {
    cfg.seed = std::random_device{}() | (std::uint64_t{std::random_device{}()} << 32);
    out << "seed " << cfg.seed << " (pass --seed " << cfg.seed << " to reproduce)\n";
  }
  const std::vector<PropertyId> applicable = properties_for(entry.kind);
  std::vector<std::string> valid;
  for (PropertyId p : applicable) valid.emplace_back(to_string(p));
  for (const std::string& name : a.props) {
    const auto p = parse_property(name);
    if (!p || std::find(applicable.begin(), applicable.end(), *p) == applicable.end()) {
      throw UsageError("unknown property '" + name + "' for " + entry.id + "; valid ids: " + joined(valid));
    }
    if (std::find(cfg.properties.begin(), cfg.properties.end(), *p) == cfg.properties.end()) {
      cfg.properties.push_back(*p);
    }
  }
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }

  const SuiteReport report = run_suite(*entry.rdt, cfg);
  out << entry.id << " (seed " << cfg.seed << ")\n";
  for (const Verdict& v : report.verdicts) {
    std::string name(to_string(v.property));
    name.resize(22, ' ');
    std::string status(to_string(v.status));
    status.resize(8, ' ');
    out << "  " << name << status << v.exhaustive << " enumerated, " << v.random << " random, " << v.instances
        << " instances\n";
  }
  if (!a.out.empty()) write_file(a.out, render_json(report));
  if (report.passed()) {
    if (!a.out.empty()) out << "report written to " << a.out << "\n";
    return kOk;
  }
  for (const Counterexample& cx : report.counterexamples) {
    const std::vector<PropertyOutcome> again = entry.rdt->check(cx.shrunk, {cx.property});
    if (again.front().outcome != Outcome::Fail || !entry.rdt->replays(cx.shrunk)) {
      err << "internal error: counterexample for " << to_string(cx.property) << " does not replay\n";
      return kUsage;
    }
    out << "\n" << render_text(counterexample_model(cx));
  }
  if (!a.out.empty()) out << "counterexample written to " << a.out << "\n";
  return kFound;
}

// ---- render -----------------------------------------------------------------

int cmd_render(const std::string& path, const std::string& format, const std::string& target,
               std::ostream& out, std::ostream& err) {
  SuiteReport report;
  try {
    report = parse_report(read_file(path));
  } catch (const ReportParseError& e) {
    err << "invalid report: " << e.what() << "\n";
    return kUsage;
  }
  const RenderModel model = report_model(report);
  std::string text;
  if (format == "dot") {
    text = render_dot(model);
  } else if (format == "html") {
    text = render_html(model);
  } else {
    text = render_text(model);
  }
  if (target.empty()) {
    out << text;
  } else {
    write_file(target, text);
    out << "wrote " << target << "\n";
  }
  return kOk;
}

// ---- oracle -----------------------------------------------------------------

int cmd_oracle(const std::string& id, std::size_t max_events, std::ostream& out) {
  const CatalogEntry& entry = lookup(id);
  if (max_events > kOracleCap) {
    throw UsageError("--max-events " + std::to_string(max_events) + " is over the oracle cap of " +
                     std::to_string(kOracleCap));
  }
  const Rdt& rdt = *entry.rdt;
  std::uint64_t checked = 0;
  std::uint64_t witnesses = 0;
  std::optional<HistoryRecipe> bad;
  OracleSummary bad_summary;
  enumerate_recipes(rdt.domain(), GeneratorBounds{2, max_events, 3}, [&](const HistoryRecipe& r) {
    OracleSummary s;
    try {
      s = rdt.oracle(r);
    } catch (const RecipeError&) {
      return true;
    }
    ++checked;
    if (s.found) {
      ++witnesses;
      return true;
    }
    bad = r;
    bad_summary = s;
    return false;
  });
  out << entry.id << ": " << checked << " histories checked, " << witnesses << " witnesses found\n";
  if (!bad) return kOk;
  out << "no linearization explains this history:\n";
  for (const std::string& line : trace_lines(rdt.view(*bad))) out << "  " << line << "\n";
  out << "final state " << bad_summary.final_state << "; " << bad_summary.orders
      << " orders tried, e.g. timestamp order gives " << bad_summary.canonical_state << "\n";
  return kFound;
}

// ---- demo -------------------------------------------------------------------

int cmd_demo(const std::string& id, const std::string& dir, std::ostream& out) {
  lookup(id);
  const auto demo = find_demo(id);
  if (!demo) throw UsageError("no demo for '" + id + "'; demos exist for: " + joined(demo_ids()));
  const DemoResult result = run_demo(*demo);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::string base = (std::filesystem::path(dir) / id).string();
  const std::string text = render_text(result.model);
  write_file(base + ".txt", text);
  write_file(base + ".html", render_html(result.model));
  out << text;
  if (result.anomalous) out << "ANOMALY: final state " << result.final_state << " is not explained\n";
  out << "wrote " << base << ".txt and " << base << ".html\n";
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Property-based checker for replicated data types", "salcheck"};
  app.require_subcommand(1);

  bool list_json = false;
  auto* list = app.add_subcommand("list", "List catalog entries");
  list->add_flag("--json", list_json, "Print a JSON array");

  CheckArgs ca;
  std::uint64_t seed = 0;
  auto* check = app.add_subcommand("check", "Run the property suite for one entry");
  check->add_option("rdt", ca.rdt, "Catalog id")->required();
  check->add_option("--tests", ca.tests, "Random histories per property")->capture_default_str();
  auto* seed_opt = check->add_option("--seed", seed, "Seed for all randomness");
  check->add_option("--max-events", ca.max_events, "Events per random history")->capture_default_str();
  check->add_option("--replicas", ca.replicas, "Replicas per random history")->capture_default_str();
  check->add_option("--props", ca.props, "Comma-separated property ids")->delimiter(',');
  check->add_option("--out", ca.out, "Write the JSON report here");

  std::string render_path, render_format = "text", render_out;
  auto* render = app.add_subcommand("render", "Render a JSON report");
  render->add_option("report", render_path, "Report file")->required();
  render->add_option("--format", render_format, "Output format")
      ->check(CLI::IsMember({"text", "dot", "html"}))
      ->capture_default_str();
  render->add_option("--out", render_out, "Output file (default stdout)");

  std::string oracle_rdt;
  std::size_t oracle_events = 4;
  auto* oracle = app.add_subcommand("oracle", "Sweep all small histories through the linearization oracle");
  oracle->add_option("rdt", oracle_rdt, "Catalog id")->required();
  oracle->add_option("--max-events", oracle_events, "Largest history size")->capture_default_str();

  std::string demo_rdt, demo_dir = ".";
  auto* demo = app.add_subcommand("demo", "Run a bundled example and write text and HTML traces");
  demo->add_option("rdt", demo_rdt, "Catalog id")->required();
  demo->add_option("--out-dir", demo_dir, "Directory for the trace files")->capture_default_str();

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*list) return cmd_list(list_json, out);
    if (*check) {
      if (seed_opt->count() > 0) ca.seed = seed;
      return cmd_check(ca, out, err);
    }
    if (*render) return cmd_render(render_path, render_format, render_out, out, err);
    if (*oracle) return cmd_oracle(oracle_rdt, oracle_events, out);
    if (*demo) return cmd_demo(demo_rdt, demo_dir, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace salcheck
