#include <doctest.h>

#include "support/generators.hpp"
#include "support/helpers.hpp"

using namespace datum;
using namespace datum::testing;

namespace {

/// The one-character loop: T over {a}, Text adds b with a projecting default,
/// Tprime restricts Text back to {a}.
struct Loop {
  TypePtr t, text, tprime;
  TypeGraph graph;
  SubtypeEdge p_edge, r_edge;
};

Loop make_loop() {
  Loop fixture;
  auto va = letters("VA", {"a"});
  auto keep = identity_op("keep", va);
  fixture.t = make_type("T", va, {curry(keep, 1)});
  auto ext = letters("Text", {"a", "b"});
  Derived extended =
      derive_extension(fixture.t, "Text", ext, projection_with_default(ext, va, Atom{"a"}));
  fixture.text = extended.type;
  Derived restricted = derive_restriction(fixture.text, "Tprime", letters("Tprime", {"a"}));
  fixture.tprime = restricted.type;
  fixture.graph.add_node(fixture.t);
  fixture.graph.add_node(fixture.text);
  fixture.graph.add_node(fixture.tprime);
  fixture.graph.add_edge(extended.edge);
  fixture.graph.add_edge(restricted.edge);
  fixture.p_edge = extended.edge;
  fixture.r_edge = restricted.edge;
  return fixture;
}

/// Length / Diameter / InnerDiameter as a pure restriction chain.
struct Chain {
  TypePtr length, diameter, inner;
  TypeGraph graph;
};

Chain make_chain() {
  Chain fixture;
  auto vals = letters("LengthVals", {"0", "1", "2", "3", "4", "5", "6", "7", "8", "9"});
  auto norm = identity_op("norm", vals);
  fixture.length = make_type("Length", vals, {curry(norm, 1)});
  Derived diameter = derive_restriction(fixture.length, "Diameter",
                                        letters("Diameter", {"0", "1", "2", "3", "4", "5"}));
  fixture.diameter = diameter.type;
  Derived inner = derive_restriction(fixture.diameter, "InnerDiameter",
                                     letters("InnerDiameter", {"0", "1", "2", "3"}));
  fixture.inner = inner.type;
  fixture.graph.add_node(fixture.length);
  fixture.graph.add_node(fixture.diameter);
  fixture.graph.add_node(fixture.inner);
  fixture.graph.add_edge(diameter.edge);
  fixture.graph.add_edge(inner.edge);
  return fixture;
}

} // namespace

TEST_CASE("add_edge validates endpoints, verification and uniqueness") {
  auto va = letters("VA", {"a"});
  auto keep = identity_op("keep", va);
  TypePtr t = make_type("T", va, {curry(keep, 1)});
  auto ext = letters("Text", {"a", "b"});
  Derived d = derive_extension(t, "Text", ext, projection_with_default(ext, va, Atom{"a"}));

  TypeGraph graph;
  graph.add_node(t);
  CHECK_THROWS_AS(graph.add_edge(d.edge), Error); // Text is not a node yet
  graph.add_node(d.type);
  graph.add_edge(d.edge);
  CHECK_THROWS_AS(graph.add_edge(d.edge), Error); // duplicate

  SubtypeEdge unverified = d.edge;
  unverified.kind = EdgeKind::R;
  unverified.verified.checks.push_back(CheckResult{"broken", 1, {"x"}, {}});
  CHECK_THROWS_AS(graph.add_edge(unverified), Error);

  CHECK_THROWS_AS(graph.add_node(t), Error); // duplicate node
}

TEST_CASE("the extend-then-restrict loop closes exactly one two-node cycle") {
  Loop fixture = make_loop();
  CHECK(extensionally_equal_types(*fixture.t, *fixture.tprime));

  auto cycles = detect_cycles(fixture.graph);
  REQUIRE(cycles.size() == 1);
  REQUIRE(cycles[0].size() == 2);
  CHECK(cycles[0][0] == "T");
  CHECK(cycles[0][1] == "Text");

  // Round trip: a is a fixed point, b projects to a.
  CHECK(r_cast(ch("a"), fixture.r_edge) == ch("a"));
  CHECK(p_cast(ch("a"), fixture.p_edge) == ch("a"));
  CHECK(p_cast(ch("b"), fixture.p_edge) == ch("a"));
}

TEST_CASE("pure restriction chains have no cycles") {
  Chain fixture = make_chain();
  CHECK(detect_cycles(fixture.graph).empty());

  TypeGraph empty;
  CHECK(detect_cycles(empty).empty());
}

TEST_CASE("verify_order: chains are transitive, loops pass modulo equality") {
  Chain chain = make_chain();
  VerificationReport r = verify_order(chain.graph, EdgeKind::R);
  CHECK(r.passed());
  bool saw_transitivity = false;
  for (const auto& c : r.checks) {
    if (c.law == "transitivity") {
      saw_transitivity = true;
      CHECK(c.universe == 1); // InnerDiameter -> Diameter -> Length
    }
  }
  CHECK(saw_transitivity);
  CHECK(verify_order(chain.graph, EdgeKind::P).passed());

  Loop loop = make_loop();
  CHECK(verify_order(loop.graph, EdgeKind::R).passed());
  CHECK(verify_order(loop.graph, EdgeKind::P).passed());
}

TEST_CASE("verify_order flags forged mutual R-edges between non-equal types") {
  auto ab = letters("AB", {"a", "b"});
  auto keep = identity_op("keep", ab);
  std::vector<std::pair<std::vector<Character>, Character>> swap_rows{{{ch("a")}, ch("b")},
                                                                      {{ch("b")}, ch("a")}};
  auto swap = make_table_op("swap", {ab}, ab, swap_rows);
  TypePtr t1 = make_type("T1", ab, {curry(keep, 1)});
  TypePtr t2 = make_type("T2", ab, {curry(swap, 1)});

  TypeGraph graph;
  graph.add_node(t1);
  graph.add_node(t2);
  graph.add_edge(forged_r_edge(t1, t2));
  graph.add_edge(forged_r_edge(t2, t1));

  VerificationReport r = verify_order(graph, EdgeKind::R);
  CHECK(!r.passed());
  bool antisymmetry_failed = false;
  for (const auto& c : r.checks)
    antisymmetry_failed |= (c.law == "antisymmetry" && !c.counterexamples.empty());
  CHECK(antisymmetry_failed);
}

TEST_CASE("honest derivations cannot close an R-cycle between different alphabets") {
  // Subset antisymmetry is the oracle: mutual restriction forces equality,
  // so deriving in both directions between unequal alphabets must throw.
  auto ab = letters("AB", {"a", "b"});
  auto keep = identity_op("keep", ab);
  TypePtr t = make_type("T", ab, {curry(keep, 1)});
  Derived narrowed = derive_restriction(t, "N", letters("N", {"a"}));
  CHECK_THROWS_AS(
      derive_restriction(narrowed.type, "Back", ab), Error); // AB is no subset of {a}
}

TEST_CASE("dimension growth rules out cycles; same-dimension loops skip the claim") {
  Chain chain = make_chain();
  DimensionAcyclicityReport flat = check_dimension_acyclicity(chain.graph);
  CHECK(flat.hypothesis_held); // vacuous: no P-edges at all
  CHECK(flat.conclusion_held == true);

  Loop loop = make_loop();
  DimensionAcyclicityReport looped = check_dimension_acyclicity(loop.graph);
  CHECK(!looped.hypothesis_held);
  REQUIRE(looped.same_dimension_edges.size() == 1);
  CHECK(!looped.conclusion_held.has_value());
  CHECK(looped.as_report().passed()); // a notice, not a violation

  TypeGraph empty;
  DimensionAcyclicityReport vacuous = check_dimension_acyclicity(empty);
  CHECK(vacuous.hypothesis_held);
  CHECK(vacuous.conclusion_held == true);

  TypeGraph lonely;
  lonely.add_node(loop.t);
  DimensionAcyclicityReport single = check_dimension_acyclicity(lonely);
  CHECK(single.hypothesis_held);
  CHECK(single.conclusion_held == true);

  std::mt19937 rng(7);
  TypeGraph grown = random_dimension_growing_graph(rng);
  DimensionAcyclicityReport report = check_dimension_acyclicity(grown);
  CHECK(report.hypothesis_held);
  CHECK(report.conclusion_held == true);
}

TEST_CASE("cast paths: shortest routes, determinism and path safety") {
  Loop fixture = make_loop();

  auto up = find_cast_path(fixture.graph, "Tprime", "Text");
  REQUIRE(up.has_value());
  REQUIRE(up->steps.size() == 1);
  CHECK(up->steps[0].kind == EdgeKind::R);
  CHECK(apply_cast_path(*up, ch("a")) == ch("a"));

  auto down = find_cast_path(fixture.graph, "Text", "T");
  REQUIRE(down.has_value());
  REQUIRE(down->steps.size() == 1);
  CHECK(down->steps[0].kind == EdgeKind::P);
  CHECK(apply_cast_path(*down, ch("b")) == ch("a"));

  // T and Tprime are extensionally equal: the path between them is empty.
  auto same = find_cast_path(fixture.graph, "T", "Tprime");
  REQUIRE(same.has_value());
  CHECK(same->steps.empty());

  CHECK(find_cast_path(fixture.graph, "T", "Text").has_value());
  CHECK_THROWS_AS(find_cast_path(fixture.graph, "T", "Nowhere"), Error);

  // Restricting the search to one relation drops the mixed-kind routes.
  CHECK(find_cast_path(fixture.graph, "Text", "T", EdgeKind::P).has_value());
  CHECK(!find_cast_path(fixture.graph, "Tprime", "Text", EdgeKind::P).has_value());
  CHECK(find_cast_path(fixture.graph, "Tprime", "Text", EdgeKind::R).has_value());

  // Disconnected pair.
  Chain chain = make_chain();
  CHECK(!find_cast_path(chain.graph, "Length", "InnerDiameter").has_value());
  auto upward = find_cast_path(chain.graph, "InnerDiameter", "Length");
  REQUIRE(upward.has_value());
  CHECK(upward->steps.size() == 2);
  for (const auto& c : chain.inner->alphabet->members)
    CHECK(chain.length->alphabet->contains(apply_cast_path(*upward, c)));

  // Determinism, twice.
  auto again = find_cast_path(chain.graph, "InnerDiameter", "Length");
  CHECK(again->to_text() == upward->to_text());
}

TEST_CASE("graph export: DOT styles per kind, JSON round-trips") {
  Loop fixture = make_loop();
  std::string dot = export_graph(fixture.graph, GraphFormat::dot);
  CHECK(dot.find("\"Tprime\" -> \"Text\" [style=solid") != std::string::npos);
  CHECK(dot.find("\"Text\" -> \"T\" [style=dashed") != std::string::npos);
  CHECK(dot == export_graph(fixture.graph, GraphFormat::dot)); // byte-stable

  std::string json = export_graph(fixture.graph, GraphFormat::json);
  GraphSummary parsed = parse_graph_json(json);
  CHECK(render_graph_json(parsed) == json);

  Chain chain = make_chain();
  std::string chain_dot = export_graph(chain.graph, GraphFormat::dot);
  CHECK(chain_dot.find("style=solid") != std::string::npos);
  CHECK(chain_dot.find("style=dashed") == std::string::npos);
}
