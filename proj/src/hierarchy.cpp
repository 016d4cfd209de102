#include "datum/hierarchy.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace datum {

std::string CastPath::to_text() const {
  if (steps.empty()) return "(identity)";
  std::string out = steps.front().sub->name;
  for (const auto& e : steps) {
    out += " -";
    out += edge_kind_name(e.kind);
    out += "-> ";
    out += e.super->name;
  }
  return out;
}

Character apply_cast_path(const CastPath& path, const Character& c) {
  Character cur = c;
  for (const auto& e : path.steps) cur = e.kind == EdgeKind::R ? r_cast(cur, e) : p_cast(cur, e);
  return cur;
}

void TypeGraph::add_node(TypePtr t) {
  if (!t) fail(Errc::unknown_node, "null type");
  if (find(t->name)) fail(Errc::duplicate_node, "type '" + t->name + "' is already a node");
  nodes_.push_back(std::move(t));
}

const TypePtr* TypeGraph::find(const std::string& name) const {
  for (const auto& n : nodes_)
    if (n->name == name) return &n;
  return nullptr;
}

void TypeGraph::add_edge(SubtypeEdge e) {
  if (!e.sub || !e.super || !find(e.sub->name) || !find(e.super->name))
    fail(Errc::unknown_node, "edge " + (e.sub && e.super ? e.name() : std::string("?")) +
                                 " references a type outside the graph");
  if (!e.verified.passed())
    fail(Errc::unverified_edge, "edge " + e.name() + " has a failed verification report");
  for (const auto& existing : edges_) {
    if (existing.kind == e.kind && existing.sub->name == e.sub->name &&
        existing.super->name == e.super->name)
      fail(Errc::duplicate_edge, "edge " + e.name() + " already present");
  }
  edges_.push_back(std::move(e));
}

// ---------------------------------------------------------------------------
// Quotient and cycles

std::vector<std::size_t> quotient_classes(const TypeGraph& g) {
  const auto nodes = g.nodes();
  std::vector<std::string> prints;
  prints.reserve(nodes.size());
  for (const auto& n : nodes) prints.push_back(type_fingerprint(*n));
  std::vector<std::size_t> cls(nodes.size());
  std::map<std::string, std::size_t> by_print;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto [it, inserted] = by_print.emplace(prints[i], by_print.size());
    cls[i] = it->second;
  }
  return cls;
}

namespace {

struct Quotient {
  std::vector<std::size_t> cls;                 // node index -> class id
  std::vector<std::string> representative;      // class id -> smallest type name
  std::vector<std::set<std::size_t>> adjacency; // class id -> successor classes
  std::size_t count = 0;
};

Quotient build_quotient(const TypeGraph& g, std::optional<EdgeKind> only) {
  Quotient q;
  q.cls = quotient_classes(g);
  const auto nodes = g.nodes();
  q.count = q.cls.empty() ? 0 : *std::max_element(q.cls.begin(), q.cls.end()) + 1;
  q.representative.assign(q.count, "");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::string& rep = q.representative[q.cls[i]];
    if (rep.empty() || nodes[i]->name < rep) rep = nodes[i]->name;
  }
  std::map<std::string, std::size_t> class_of_name;
  for (std::size_t i = 0; i < nodes.size(); ++i) class_of_name[nodes[i]->name] = q.cls[i];
  q.adjacency.assign(q.count, {});
  for (const auto& e : g.edges()) {
    if (only && e.kind != *only) continue;
    std::size_t from = class_of_name.at(e.sub->name);
    std::size_t to = class_of_name.at(e.super->name);
    if (from != to) q.adjacency[from].insert(to);
  }
  return q;
}

void cycle_search(const Quotient& q, std::size_t start, std::size_t at,
                  std::vector<std::size_t>& path, std::vector<bool>& on_path,
                  std::vector<std::vector<std::size_t>>& found) {
  for (std::size_t next : q.adjacency[at]) {
    if (next == start) {
      found.push_back(path);
    } else if (next > start && !on_path[next]) {
      path.push_back(next);
      on_path[next] = true;
      cycle_search(q, start, next, path, on_path, found);
      on_path[next] = false;
      path.pop_back();
    }
  }
}

std::vector<std::vector<std::size_t>> elementary_cycles(const Quotient& q) {
  // Each elementary cycle is found exactly once, rooted at its smallest class.
  std::vector<std::vector<std::size_t>> found;
  for (std::size_t start = 0; start < q.count; ++start) {
    std::vector<std::size_t> path{start};
    std::vector<bool> on_path(q.count, false);
    on_path[start] = true;
    cycle_search(q, start, start, path, on_path, found);
  }
  return found;
}

} // namespace

std::vector<std::vector<std::string>> detect_cycles(const TypeGraph& g) {
  Quotient q = build_quotient(g, std::nullopt);
  std::vector<std::vector<std::string>> out;
  for (const auto& cycle : elementary_cycles(q)) {
    std::vector<std::string> names;
    names.reserve(cycle.size());
    for (std::size_t c : cycle) names.push_back(q.representative[c]);
    out.push_back(std::move(names));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Order properties

namespace {

/// Composite of two P-projections along sub -> mid -> super, extended to fix
/// the outer target where the inner map is silent.
Projection compose_projections(const SubtypeEdge& inner, const SubtypeEdge& outer) {
  const Projection& first = *inner.projection;  // V_mid u V_sub -> V_mid
  const Projection& second = *outer.projection; // V_super u V_mid -> V_super
  auto map = std::make_shared<CharMap>();
  std::set<Character> universe(outer.super->alphabet->members.begin(),
                               outer.super->alphabet->members.end());
  universe.insert(inner.sub->alphabet->members.begin(), inner.sub->alphabet->members.end());
  for (const auto& c : universe) {
    auto hop = first.map->find(c);
    Character mid = hop != first.map->end() ? hop->second : c;
    auto out = second.map->find(mid);
    if (out == second.map->end()) continue; // left out; totality check will name c
    map->emplace(c, out->second);
  }
  return Projection{inner.sub->alphabet, outer.super->alphabet, std::move(map)};
}

} // namespace

VerificationReport verify_order(const TypeGraph& g, EdgeKind kind) {
  VerificationReport report;
  report.subject = std::string("order(") + std::string(edge_kind_name(kind)) + ")";
  Quotient q = build_quotient(g, kind);

  report.checks.push_back(CheckResult{
      "reflexivity", q.count, {}, "reflexive edges adjoined by definition"});

  std::vector<const SubtypeEdge*> edges;
  for (const auto& e : g.edges())
    if (e.kind == kind) edges.push_back(&e);

  CheckResult trans{"transitivity", 0, {}, {}};
  for (const auto* e1 : edges) {
    for (const auto* e2 : edges) {
      if (e1 == e2) continue;
      if (!same_value_set(*e1->super->alphabet, *e2->sub->alphabet)) continue;
      ++trans.universe;
      const std::string pair = e1->name() + " then " + e2->name();
      if (kind == EdgeKind::R) {
        if (!sub_value_set(*e1->sub->alphabet, *e2->super->alphabet))
          trans.counterexamples.push_back(pair + ": composed alphabets are not nested");
      } else {
        Projection composed = compose_projections(*e1, *e2);
        VerificationReport valid = validate_projection(composed);
        if (!valid.passed())
          trans.counterexamples.push_back(pair + ": " + valid.failure_summary());
      }
    }
  }
  report.checks.push_back(std::move(trans));

  CheckResult antisym{"antisymmetry", q.count, {},
                      "modulo extensional type equality; the raw relation is a preorder"};
  // Any cycle in the quotient subgraph relates two non-equal types both ways.
  for (const auto& cycle : elementary_cycles(q)) {
    std::string text;
    for (std::size_t c : cycle) text += q.representative[c] + " <= ";
    text += q.representative[cycle.front()];
    antisym.counterexamples.push_back(text + " among non-equal types");
  }
  report.checks.push_back(std::move(antisym));
  return report;
}

DimensionAcyclicityReport check_dimension_acyclicity(const TypeGraph& g) {
  DimensionAcyclicityReport out;
  out.hypothesis_held = true;
  for (const auto& e : g.edges()) {
    if (e.kind != EdgeKind::P) continue;
    if (e.sub->alphabet->dimension <= e.super->alphabet->dimension) {
      out.hypothesis_held = false;
      out.same_dimension_edges.push_back(e.name());
    }
  }
  if (out.hypothesis_held) {
    out.cycles = detect_cycles(g);
    out.conclusion_held = out.cycles.empty();
  }
  return out;
}

VerificationReport DimensionAcyclicityReport::as_report() const {
  VerificationReport report;
  report.subject = "dimension-acyclicity";
  if (!hypothesis_held) {
    std::string note = "hypothesis not met (non-dimension-increasing P-edges:";
    for (const auto& e : same_dimension_edges) note += " " + e;
    note += "); acyclicity check skipped";
    report.checks.push_back(CheckResult{"dimension-increasing-p-edges", 0, {}, note});
    return report;
  }
  CheckResult check{"acyclic-under-dimension-growth", cycles.size(), {},
                    "every P-edge adds dimensions"};
  for (const auto& cycle : cycles) {
    std::string text = "cycle:";
    for (const auto& n : cycle) text += " " + n;
    check.counterexamples.push_back(text);
  }
  report.checks.push_back(std::move(check));
  return report;
}

// ---------------------------------------------------------------------------
// Cast paths

std::optional<CastPath> find_cast_path(const TypeGraph& g, const std::string& from,
                                       const std::string& to, std::optional<EdgeKind> only) {
  const TypePtr* src = g.find(from);
  const TypePtr* dst = g.find(to);
  if (!src) fail(Errc::unknown_node, "no type named '" + from + "'");
  if (!dst) fail(Errc::unknown_node, "no type named '" + to + "'");

  Quotient q = build_quotient(g, std::nullopt);
  std::map<std::string, std::size_t> class_of_name;
  {
    const auto nodes = g.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i) class_of_name[nodes[i]->name] = q.cls[i];
  }
  const std::size_t start = class_of_name.at(from);
  const std::size_t goal = class_of_name.at(to);
  if (start == goal) return CastPath{};

  std::vector<const SubtypeEdge*> edges;
  for (const auto& e : g.edges()) {
    if (!only || e.kind == *only) edges.push_back(&e);
  }
  std::sort(edges.begin(), edges.end(),
            [](const SubtypeEdge* a, const SubtypeEdge* b) { return a->name() < b->name(); });

  std::vector<const SubtypeEdge*> via(q.count, nullptr);
  std::vector<std::size_t> prev(q.count, q.count);
  std::vector<bool> seen(q.count, false);
  std::vector<std::size_t> frontier{start};
  seen[start] = true;
  while (!frontier.empty() && !seen[goal]) {
    std::vector<std::size_t> next;
    for (std::size_t at : frontier) {
      for (const SubtypeEdge* e : edges) {
        if (class_of_name.at(e->sub->name) != at) continue;
        std::size_t target = class_of_name.at(e->super->name);
        if (seen[target]) continue;
        seen[target] = true;
        via[target] = e;
        prev[target] = at;
        next.push_back(target);
      }
    }
    frontier = std::move(next);
  }
  if (!seen[goal]) return std::nullopt;

  CastPath path;
  for (std::size_t at = goal; at != start; at = prev[at]) path.steps.push_back(*via[at]);
  std::reverse(path.steps.begin(), path.steps.end());
  return path;
}

// ---------------------------------------------------------------------------
// Export

GraphSummary summarize_graph(const TypeGraph& g) {
  GraphSummary s;
  for (const auto& n : g.nodes())
    s.nodes.push_back(GraphSummary::Node{n->name, n->alphabet->dimension, n->alphabet->size()});
  std::sort(s.nodes.begin(), s.nodes.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  for (const auto& e : g.edges())
    s.edges.push_back(GraphSummary::Edge{std::string(edge_kind_name(e.kind)), e.sub->name,
                                         e.super->name});
  std::sort(s.edges.begin(), s.edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.sub, a.super, a.kind) < std::tie(b.sub, b.super, b.kind);
  });
  return s;
}

std::string render_graph_json(const GraphSummary& s) {
  nlohmann::ordered_json j;
  j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& n : s.nodes) {
    j["nodes"].push_back({{"name", n.name}, {"dimension", n.dimension}, {"size", n.size}});
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : s.edges) {
    j["edges"].push_back({{"kind", e.kind}, {"sub", e.sub}, {"super", e.super}});
  }
  return j.dump(2) + "\n";
}

GraphSummary parse_graph_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  GraphSummary s;
  for (const auto& n : j.at("nodes")) {
    s.nodes.push_back(GraphSummary::Node{n.at("name").get<std::string>(),
                                         n.at("dimension").get<std::size_t>(),
                                         n.at("size").get<std::size_t>()});
  }
  for (const auto& e : j.at("edges")) {
    s.edges.push_back(GraphSummary::Edge{e.at("kind").get<std::string>(),
                                         e.at("sub").get<std::string>(),
                                         e.at("super").get<std::string>()});
  }
  return s;
}

std::string export_graph(const TypeGraph& g, GraphFormat format) {
  GraphSummary s = summarize_graph(g);
  if (format == GraphFormat::json) return render_graph_json(s);
  if (format != GraphFormat::dot) fail(Errc::unsupported_format, "unknown graph format");
  std::ostringstream out;
  out << "digraph type_graph {\n";
  for (const auto& n : s.nodes) out << "  \"" << n.name << "\" [label=\"" << n.name << "\"];\n";
  for (const auto& e : s.edges) {
    out << "  \"" << e.sub << "\" -> \"" << e.super << "\" [style="
        << (e.kind == "R" ? "solid" : "dashed") << ", label=\"" << e.kind << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

} // namespace datum
