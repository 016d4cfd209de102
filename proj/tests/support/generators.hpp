#pragma once

#include "support/helpers.hpp"

#include <random>

namespace datum::testing {

/// A randomly generated base type with one restriction and one extension
/// derived from it, plus the graph holding all three.
struct GeneratedWorkspace {
  AlphabetPtr alphabet;
  std::vector<OperationPtr> ops; // total table operations over the alphabet
  TypePtr base;
  Derived restriction;
  Derived extension;
  TypeGraph graph;
};

GeneratedWorkspace random_workspace(std::mt19937& rng);

/// Rebuilds the super type of the given edge with one table row deleted. The
/// deleted row is reachable from the verified universe, so the substitutability
/// sweep must name it. Returns the forged edge to re-check.
SubtypeEdge corrupt_super_table(const GeneratedWorkspace& ws, const SubtypeEdge& edge,
                                std::mt19937& rng);

/// Remaps one projection entry of a P-edge to a character outside the target
/// alphabet.
SubtypeEdge corrupt_projection_entry(const SubtypeEdge& edge, std::mt19937& rng);

/// A random graph whose P-edges all strictly add dimensions (truncating
/// projections) and whose R-edges restrict to proper subsets.
TypeGraph random_dimension_growing_graph(std::mt19937& rng);

/// An edge that was never verified: endpoints as given, a vacuous passed
/// report. For probing the order checks with dishonest input.
SubtypeEdge forged_r_edge(TypePtr sub, TypePtr super);

} // namespace datum::testing
