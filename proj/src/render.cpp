#include <map>
#include <sstream>

#include "salcheck/report.hpp"

namespace salcheck {

// ---- models -------------------------------------------------------------------

RenderModel history_model(const std::string& title, const GraphView& history) {
  RenderModel m;
  m.title = title;
  m.panels.push_back({"execution", history, history.nodes.empty() ? "" : history.nodes.back().id});
  return m;
}

RenderModel violation_model(const std::string& title, const Violation& v) {
  RenderModel m;
  m.title = title;
  if (v.lca) {
    if (const NodeView* n = v.history.find(*v.lca)) m.lca = *n;
  }
  if (v.rhs_panel) {
    m.panels.push_back({"LHS", v.history, v.focus});
    m.panels.push_back({"RHS", *v.rhs_panel, v.rhs_panel->nodes.empty() ? "" : v.rhs_panel->nodes.back().id});
  } else {
    m.panels.push_back({"execution", v.history, v.focus});
  }
  m.mismatch = v.lhs != v.rhs;
  m.notes.push_back(v.message);
  m.notes.push_back("LHS " + v.lhs + (v.lhs == v.rhs ? " == " : " != ") + "RHS " + v.rhs);
  return m;
}

RenderModel counterexample_model(const Counterexample& cx) {
  RenderModel m = violation_model(cx.rdt + ": " + std::string(to_string(cx.property)) + " violated", cx.violation);
  m.notes.push_back("seed " + std::to_string(cx.seed) + "; shrunk from " + std::to_string(cx.original.event_count()) +
                    " to " + std::to_string(cx.shrunk.event_count()) + " events in " +
                    std::to_string(cx.shrink_steps) + " steps" + (cx.minimal ? "" : " (budget exhausted)"));
  if (cx.property == PropertyId::LinearizationExists) {
    m.notes.push_back("linearizations tried: " + std::to_string(cx.violation.linearizations_tried));
  }
  return m;
}

RenderModel report_model(const SuiteReport& report) {
  if (!report.counterexamples.empty()) return counterexample_model(report.counterexamples.front());
  RenderModel m;
  m.title = report.rdt + ": no counterexample";
  for (const Verdict& v : report.verdicts) {
    m.notes.push_back(std::string(to_string(v.property)) + ": " + std::string(to_string(v.status)) + " (" +
                      std::to_string(v.exhaustive) + " enumerated, " + std::to_string(v.random) + " random, " +
                      std::to_string(v.instances) + " instances)");
  }
  return m;
}

// ---- shared walk ----------------------------------------------------------------

namespace {

/// One line of a trace: either a lone node, an applied event or a merge.
struct Line {
  enum Kind { Node, Do, Merge } kind = Node;
  std::vector<const NodeView*> inputs;
  const NodeView* lca = nullptr;
  const NodeView* output = nullptr;
  std::string event;
};

std::vector<Line> walk(const GraphView& g) {
  std::map<std::string, std::vector<const EdgeView*>> incoming;
  for (const auto& e : g.edges) incoming[e.to].push_back(&e);
  std::vector<Line> out;
  for (const NodeView& n : g.nodes) {
    Line line;
    line.output = &n;
    for (const EdgeView* e : incoming[n.id]) {
      const NodeView* from = g.find(e->from);
      if (!from) continue;
      if (e->kind == "do") {
        line.kind = Line::Do;
        line.inputs = {from};
        line.event = e->event.value_or("");
      } else if (e->kind == "merge") {
        line.kind = Line::Merge;
        line.inputs.push_back(from);
      } else if (e->kind == "lca") {
        line.lca = from;
      }
    }
    out.push_back(line);
  }
  return out;
}

std::string boxed(const NodeView& n) { return n.label + " [" + n.state + "]"; }

std::string text_line(const Line& l) {
  switch (l.kind) {
    case Line::Node:
      return boxed(*l.output);
    case Line::Do:
      return boxed(*l.inputs[0]) + " --" + l.event + "--> " + boxed(*l.output);
    case Line::Merge: {
      std::string s;
      for (std::size_t i = 0; i < l.inputs.size(); ++i) s += (i ? " + " : "") + boxed(*l.inputs[i]);
      return s + " --merge" + (l.lca ? "(lca " + l.lca->label + ")" : std::string()) + "--> " + boxed(*l.output);
    }
  }
  return {};
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string html_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> trace_lines(const GraphView& history) {
  std::vector<std::string> out;
  for (const Line& l : walk(history)) out.push_back(text_line(l));
  return out;
}

// ---- text -----------------------------------------------------------------------

std::string render_text(const RenderModel& model) {
  std::ostringstream os;
  os << model.title << "\n";
  for (const auto& n : model.notes) os << "  " << n << "\n";
  if (model.lca) os << "LCA: " << boxed(*model.lca) << "\n";
  for (const Panel& p : model.panels) {
    os << "== " << p.title << " ==\n";
    for (const std::string& line : trace_lines(p.graph)) os << line << "\n";
    if (const NodeView* sink = p.graph.find(p.sink)) {
      os << "result: " << sink->state << (model.mismatch ? "  <-- mismatch" : "") << "\n";
    }
  }
  return os.str();
}

// ---- DOT ------------------------------------------------------------------------

std::string render_dot(const RenderModel& model) {
  std::ostringstream os;
  os << "digraph salcheck {\n";
  os << "  graph [rankdir=TB, fontname=\"Helvetica\", labelloc=t, label=\"" << dot_escape(model.title) << "\"];\n";
  os << "  node [fontname=\"Helvetica\", shape=box, style=\"rounded,filled\", fillcolor=lightblue];\n";
  os << "  edge [fontname=\"Helvetica\"];\n";
  if (model.lca) {
    os << "  subgraph cluster_lca {\n    label=\"LCA\";\n";
    os << "    \"lca\" [label=\"" << dot_escape(model.lca->label + "\n" + model.lca->state) << "\"];\n";
    os << "  }\n  { rank=min; \"lca\"; }\n";
  }
  for (std::size_t pi = 0; pi < model.panels.size(); ++pi) {
    const Panel& p = model.panels[pi];
    const std::string prefix = "p" + std::to_string(pi) + "_";
    auto id = [&](const std::string& n) { return "\"" + dot_escape(prefix + n) + "\""; };
    os << "  subgraph cluster_" << pi << " {\n    label=\"" << dot_escape(p.title) << "\";\n";
    for (const NodeView& n : p.graph.nodes) {
      os << "    " << id(n.id) << " [label=\"" << dot_escape(n.label + "\n" + n.state) << "\"";
      if (model.mismatch && n.id == p.sink) os << ", fillcolor=\"#f4a6a6\", color=red, penwidth=2";
      os << "];\n";
    }
    std::size_t op = 0;
    for (const EdgeView& e : p.graph.edges) {
      if (e.kind == "do") {
        const std::string opid = id("op" + std::to_string(op++));
        os << "    " << opid << " [label=\"" << dot_escape(e.event.value_or(""))
           << "\", style=filled, fillcolor=yellow];\n";
        os << "    " << id(e.from) << " -> " << opid << " [arrowhead=none];\n";
        os << "    " << opid << " -> " << id(e.to) << ";\n";
      } else if (e.kind == "merge") {
        os << "    " << id(e.from) << " -> " << id(e.to) << ";\n";
      } else {
        os << "    " << id(e.from) << " -> " << id(e.to)
           << " [style=dashed, label=\"lca\", constraint=false];\n";
      }
    }
    os << "  }\n";
    if (model.lca && p.graph.find(p.sink)) {
      os << "  \"lca\" -> " << id(p.sink) << " [style=dashed, color=gray40];\n";
    }
  }
  os << "}\n";
  return os.str();
}

// ---- HTML -----------------------------------------------------------------------

namespace {

constexpr const char* kCss = R"(body { font-family: Helvetica, Arial, sans-serif; margin: 24px; color: #1c1c1c; }
h1 { font-size: 20px; }
h2 { font-size: 16px; margin: 0 0 8px 0; }
ul.notes { color: #444; }
.panels { display: flex; gap: 24px; align-items: flex-start; }
.panel, .lca { border: 1px solid #bbb; border-radius: 6px; padding: 12px; background: #fafafa; }
.lca { margin-bottom: 16px; display: inline-block; }
.step { margin: 6px 0; white-space: nowrap; }
.state { display: inline-block; background: #add8e6; border: 1px solid #5b8fc7; border-radius: 4px; padding: 2px 6px; font-family: monospace; }
.op { display: inline-block; background: #fff68f; border: 1px solid #c9b800; padding: 2px 6px; margin: 0 6px; font-family: monospace; }
.state.mismatch { background: #f4a6a6; border-color: #c00; color: #700; font-weight: bold; }
.label { color: #555; margin-right: 4px; }
)";

std::string html_state(const NodeView& n, bool mismatch) {
  return std::string("<span class=\"state") + (mismatch ? " mismatch" : "") + "\"><span class=\"label\">" +
         html_escape(n.label) + "</span>" + html_escape(n.state) + "</span>";
}

}  // namespace

std::string render_html(const RenderModel& model) {
  std::ostringstream os;
  os << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>" << html_escape(model.title)
     << "</title>\n<style>\n"
     << kCss << "</style>\n</head>\n<body>\n";
  os << "<h1>" << html_escape(model.title) << "</h1>\n";
  if (!model.notes.empty()) {
    os << "<ul class=\"notes\">\n";
    for (const auto& n : model.notes) os << "<li>" << html_escape(n) << "</li>\n";
    os << "</ul>\n";
  }
  if (model.lca) {
    os << "<section class=\"lca\">\n<h2>LCA</h2>\n<div class=\"step\">" << html_state(*model.lca, false)
       << "</div>\n</section>\n";
  }
  os << "<div class=\"panels\">\n";
  for (const Panel& p : model.panels) {
    os << "<section class=\"panel\">\n<h2>" << html_escape(p.title) << "</h2>\n";
    auto st = [&](const NodeView* n) { return html_state(*n, model.mismatch && n->id == p.sink); };
    for (const Line& l : walk(p.graph)) {
      os << "<div class=\"step\">";
      switch (l.kind) {
        case Line::Node:
          os << st(l.output);
          break;
        case Line::Do:
          os << st(l.inputs[0]) << "<span class=\"op\">" << html_escape(l.event) << "</span>" << st(l.output);
          break;
        case Line::Merge:
          for (std::size_t i = 0; i < l.inputs.size(); ++i) os << (i ? " + " : "") << st(l.inputs[i]);
          os << "<span class=\"op\">merge" << (l.lca ? " (lca " + html_escape(l.lca->label) + ")" : "")
             << "</span>" << st(l.output);
          break;
      }
      os << "</div>\n";
    }
    os << "</section>\n";
  }
  os << "</div>\n</body>\n</html>\n";
  return os.str();
}

}  // namespace salcheck
