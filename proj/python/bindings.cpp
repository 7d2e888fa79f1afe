#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "salcheck/cli.hpp"
#include "salcheck/demos.hpp"
#include "salcheck/generate.hpp"
#include "salcheck/rdt.hpp"
#include "salcheck/report.hpp"

namespace py = pybind11;
using namespace salcheck;

namespace {

const Rdt& rdt_for(const std::string& id) {
  const CatalogEntry* e = find_entry(id);
  if (!e) throw py::key_error("unknown rdt: " + id);
  return *e->rdt;
}

std::string check(const std::string& id, std::uint64_t tests, std::uint64_t seed, std::size_t max_events,
                  std::size_t replicas, const std::vector<std::string>& props) {
  CheckConfig cfg;
  cfg.tests = tests;
  cfg.seed = seed;
  cfg.max_events = max_events;
  cfg.replicas = replicas;
  for (const auto& name : props) {
    const auto p = parse_property(name);
    if (!p) throw py::value_error("unknown property: " + name);
    cfg.properties.push_back(*p);
  }
  cfg.validate();
  const Rdt& rdt = rdt_for(id);
  py::gil_scoped_release release;
  return render_json(run_suite(rdt, cfg));
}

std::string render(const std::string& report_json, const std::string& format) {
  const RenderModel model = report_model(parse_report(report_json));
  if (format == "text") return render_text(model);
  if (format == "dot") return render_dot(model);
  if (format == "html") return render_html(model);
  if (format == "json") return render_json(parse_report(report_json));
  throw py::value_error("format must be text, dot, html or json");
}

py::dict oracle(const std::string& id, const std::string& recipe_json) {
  const OracleSummary s = rdt_for(id).oracle(recipe_from_json(recipe_json));
  py::dict d;
  d["in_scope"] = s.in_scope;
  d["found"] = s.found;
  d["effective_events"] = s.effective_events;
  d["witness"] = s.witness;
  d["final_state"] = s.final_state;
  d["orders"] = s.orders;
  return d;
}

py::dict demo(const std::string& id) {
  const auto d = find_demo(id);
  if (!d) throw py::key_error("no demo for " + id);
  const DemoResult r = run_demo(*d);
  py::dict out;
  out["final_state"] = r.final_state;
  out["anomalous"] = r.anomalous;
  out["text"] = render_text(r.model);
  out["html"] = render_html(r.model);
  out["dot"] = render_dot(r.model);
  out["recipe"] = recipe_to_json(d->recipe);
  return out;
}

py::tuple cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = run_cli(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_salcheck, m) {
  m.doc() = "Property-based checker for replicated data types";
  py::register_exception<ReportParseError>(m, "ReportParseError", PyExc_ValueError);
  py::register_exception<RecipeError>(m, "RecipeError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("catalog", [] {
    py::list out;
    for (const auto& e : catalog_list()) {
      py::dict d;
      d["id"] = e.id;
      d["kind"] = std::string(to_string(e.kind));
      d["known_buggy"] = e.known_buggy;
      d["name"] = e.name;
      out.append(d);
    }
    return out;
  });
  m.def("check", &check, py::arg("rdt"), py::arg("tests") = 1000, py::arg("seed") = 42, py::arg("max_events") = 8,
        py::arg("replicas") = 2, py::arg("props") = std::vector<std::string>{},
        "Runs the property suite and returns the JSON report.");
  m.def("render", &render, py::arg("report_json"), py::arg("format") = "text");
  m.def("final_state", [](const std::string& id, const std::string& recipe_json) {
    return rdt_for(id).final_state(recipe_from_json(recipe_json));
  });
  m.def("oracle", &oracle, py::arg("rdt"), py::arg("recipe_json"));
  m.def("demo", &demo, py::arg("rdt"));
  m.def("demo_ids", &demo_ids);
  m.def("run_cli", &cli, py::arg("args"), "Returns (exit_code, stdout, stderr).");
}
