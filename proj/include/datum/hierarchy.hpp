#pragma once

#include "datum/subtyping.hpp"

namespace datum {

/// A chain of subtype edges with matching endpoints; applying the casts in
/// order carries a character from the first sub alphabet into the last super
/// alphabet.
struct CastPath {
  std::vector<SubtypeEdge> steps;

  std::string to_text() const; // "A -R-> B -P-> C"
};

Character apply_cast_path(const CastPath& path, const Character& c);

/// Types as nodes, verified subtype edges between them. Edges point sub ->
/// super: casts flow in edge direction. Construction is single-writer; all
/// queries are read-only.
class TypeGraph {
public:
  void add_node(TypePtr t);
  void add_edge(SubtypeEdge e);

  const TypePtr* find(const std::string& name) const;
  std::span<const TypePtr> nodes() const { return nodes_; }
  std::span<const SubtypeEdge> edges() const { return edges_; }

private:
  std::vector<TypePtr> nodes_;
  std::vector<SubtypeEdge> edges_;
};

/// Partitions the nodes by extensional type equality; returns one class id per
/// node, ids dense from 0 in first-appearance order. Cycle detection and cast
/// paths work on this quotient, so that a derived type that merely re-derives
/// an existing one (the restrict-after-extend loop) closes a genuine cycle.
std::vector<std::size_t> quotient_classes(const TypeGraph& g);

/// All elementary cycles of length >= 2 over the quotient of the mixed-kind
/// graph, as sequences of representative type names. Deterministic order.
std::vector<std::vector<std::string>> detect_cycles(const TypeGraph& g);

/// Order laws on the single-kind subgraph: reflexivity (adjoined), transitivity
/// consistency (composed R-edges stay subset chains, composed P-projections
/// validate), antisymmetry modulo extensional type equality (cycles among
/// non-equal types are the counterexamples).
VerificationReport verify_order(const TypeGraph& g, EdgeKind kind);

struct DimensionAcyclicityReport {
  bool hypothesis_held = false; // every P-edge strictly increases dimension
  std::vector<std::string> same_dimension_edges;
  std::optional<bool> conclusion_held; // cycles absent; unset when skipped
  std::vector<std::vector<std::string>> cycles;

  VerificationReport as_report() const;
};

/// The no-circles claim: when every P-edge adds dimensions, the graph is
/// acyclic. When the hypothesis fails the conclusion is skipped with a notice,
/// not reported as a violation.
DimensionAcyclicityReport check_dimension_acyclicity(const TypeGraph& g);

/// Shortest sub->super path between the (quotient classes of the) two types;
/// breadth-first, ties broken by edge-name order. Empty path when the types
/// are extensionally equal. Both cast kinds are safe, so the search mixes
/// them by default; pass `only` to stay within one relation.
std::optional<CastPath> find_cast_path(const TypeGraph& g, const std::string& from,
                                       const std::string& to,
                                       std::optional<EdgeKind> only = std::nullopt);

enum class GraphFormat { dot, json };

/// DOT uses solid edges for R and dashed for P; JSON follows the schema
/// {"nodes":[{"name","dimension","size"}],"edges":[{"kind","sub","super"}]}.
/// Both orderings are name-sorted and byte-stable.
std::string export_graph(const TypeGraph& g, GraphFormat format);

/// The JSON schema as a plain value, for reading exported graphs back.
struct GraphSummary {
  struct Node {
    std::string name;
    std::size_t dimension = 0;
    std::size_t size = 0;
  };
  struct Edge {
    std::string kind;
    std::string sub;
    std::string super;
  };
  std::vector<Node> nodes;
  std::vector<Edge> edges;
};

GraphSummary summarize_graph(const TypeGraph& g);
GraphSummary parse_graph_json(const std::string& text);
std::string render_graph_json(const GraphSummary& s);

} // namespace datum
