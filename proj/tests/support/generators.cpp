#include "support/generators.hpp"

#include <algorithm>
#include <set>

namespace datum::testing {

namespace {

std::size_t pick(std::mt19937& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<Character> random_members(std::mt19937& rng, std::size_t count,
                                      const std::string& prefix) {
  std::vector<Character> members;
  members.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    members.push_back(Character::atom(prefix + std::to_string(i)));
  std::shuffle(members.begin(), members.end(), rng);
  return members;
}

OperationPtr random_table_op(std::mt19937& rng, const std::string& name,
                             const AlphabetPtr& alphabet, std::size_t arity) {
  std::vector<AlphabetPtr> domain(arity, alphabet);
  std::vector<std::pair<std::vector<Character>, Character>> rows;
  for (const auto& args : domain_product(domain)) {
    const Character& out = alphabet->members[pick(rng, 0, alphabet->size() - 1)];
    rows.emplace_back(args, out);
  }
  return make_table_op(name, std::move(domain), alphabet, std::move(rows));
}

} // namespace

GeneratedWorkspace random_workspace(std::mt19937& rng) {
  GeneratedWorkspace ws;
  const std::size_t size = pick(rng, 2, 12);
  ws.alphabet = make_alphabet("Base", random_members(rng, size, "s"));

  const std::size_t op_count = pick(rng, 1, 5);
  for (std::size_t i = 0; i < op_count; ++i) {
    ws.ops.push_back(
        random_table_op(rng, "op" + std::to_string(i), ws.alphabet, pick(rng, 1, 2)));
  }
  ws.base = make_type("Base", ws.alphabet, curry_over(ws.ops, ws.alphabet));

  // A proper non-empty restriction.
  std::vector<Character> sub_members = ws.alphabet->members;
  std::shuffle(sub_members.begin(), sub_members.end(), rng);
  sub_members.erase(
      sub_members.begin() + static_cast<long>(pick(rng, 1, sub_members.size() - 1)),
      sub_members.end());
  ws.restriction =
      derive_restriction(ws.base, "Narrow", make_alphabet("Narrow", sub_members));

  // An extension by fresh atoms, projected back by the keep-or-default rule.
  std::vector<Character> ext_members = ws.alphabet->members;
  const std::size_t extra = pick(rng, 1, 3);
  for (std::size_t i = 0; i < extra; ++i)
    ext_members.push_back(Character::atom("x" + std::to_string(i)));
  AlphabetPtr ext = make_alphabet("Wide", std::move(ext_members));
  const Atom fallback = ws.alphabet->members[pick(rng, 0, ws.alphabet->size() - 1)].parts[0];
  ws.extension =
      derive_extension(ws.base, "Wide", ext, projection_with_default(ext, ws.alphabet, fallback));

  ws.graph.add_node(ws.base);
  ws.graph.add_node(ws.restriction.type);
  ws.graph.add_node(ws.extension.type);
  ws.graph.add_edge(ws.restriction.edge);
  ws.graph.add_edge(ws.extension.edge);
  return ws;
}

SubtypeEdge corrupt_super_table(const GeneratedWorkspace& ws, const SubtypeEdge& edge,
                                std::mt19937& rng) {
  // The substitutability sweep reaches every row whose first component lies in
  // the checked universe (sub alphabet for R, the projection image for P),
  // because every argument slot is witnessed and residual tuples cover the
  // rest of the row.
  std::set<Character> universe;
  if (edge.kind == EdgeKind::R) {
    universe.insert(edge.sub->alphabet->members.begin(), edge.sub->alphabet->members.end());
  } else {
    for (const auto& c : edge.sub->alphabet->members)
      universe.insert(project(*edge.projection, c));
  }

  const std::size_t victim_index = pick(rng, 0, ws.ops.size() - 1);
  const auto& victim = ws.ops[victim_index];
  const auto& rows = std::get<TableRule>(victim->rule).rows;
  std::vector<std::vector<Character>> reachable;
  for (const auto& [key, out] : rows) {
    if (universe.count(key.front())) reachable.push_back(key);
  }
  const auto& doomed = reachable[pick(rng, 0, reachable.size() - 1)];

  std::vector<std::pair<std::vector<Character>, Character>> kept;
  for (const auto& [key, out] : rows) {
    if (key != doomed) kept.emplace_back(key, out);
  }
  std::vector<OperationPtr> ops = ws.ops;
  ops[victim_index] = make_table_op(victim->name, victim->domain, victim->codomain, kept);

  TypePtr corrupted =
      make_type(edge.super->name, edge.super->alphabet, curry_over(ops, edge.super->alphabet));
  SubtypeEdge forged = edge;
  forged.super = corrupted;
  return forged;
}

SubtypeEdge corrupt_projection_entry(const SubtypeEdge& edge, std::mt19937& rng) {
  const CharMap& original = *edge.projection->map;
  auto it = original.begin();
  std::advance(it, static_cast<long>(pick(rng, 0, original.size() - 1)));
  auto mutated = std::make_shared<CharMap>(original);
  mutated->insert_or_assign(it->first, Character::atom("outlaw"));

  SubtypeEdge forged = edge;
  forged.projection =
      Projection{edge.projection->source, edge.projection->target, std::move(mutated)};
  return forged;
}

TypeGraph random_dimension_growing_graph(std::mt19937& rng) {
  TypeGraph graph;
  AlphabetPtr base_alphabet = make_alphabet("G0", random_members(rng, pick(rng, 2, 5), "g"));
  std::vector<OperationPtr> ops{identity_op("gid", base_alphabet)};
  TypePtr base = make_type("G0", base_alphabet, curry_over(ops, base_alphabet));
  graph.add_node(base);

  std::vector<TypePtr> nodes{base};
  const std::size_t steps = pick(rng, 3, 6);
  for (std::size_t i = 1; i <= steps; ++i) {
    const TypePtr from = nodes[pick(rng, 0, nodes.size() - 1)];
    const std::string name = "G" + std::to_string(i);
    const bool can_restrict = from->alphabet->size() >= 2;
    if (can_restrict && pick(rng, 0, 1) == 0) {
      std::vector<Character> sub = from->alphabet->members;
      std::shuffle(sub.begin(), sub.end(), rng);
      sub.erase(sub.begin() + static_cast<long>(pick(rng, 1, sub.size() - 1)), sub.end());
      Derived d = derive_restriction(from, name, make_alphabet(name, sub));
      graph.add_node(d.type);
      graph.add_edge(d.edge);
      nodes.push_back(d.type);
    } else {
      AlphabetPtr extra = make_alphabet(
          name + "x", random_members(rng, pick(rng, 1, 3), "d" + std::to_string(i)));
      std::vector<AlphabetPtr> factors{from->alphabet, extra};
      AlphabetPtr ext = product_alphabet(name, factors);
      Derived d = derive_extension(from, name, ext, projection_truncating(ext, from->alphabet));
      graph.add_node(d.type);
      graph.add_edge(d.edge);
      nodes.push_back(d.type);
    }
  }
  return graph;
}

SubtypeEdge forged_r_edge(TypePtr sub, TypePtr super) {
  SubtypeEdge edge;
  edge.kind = EdgeKind::R;
  edge.sub = std::move(sub);
  edge.super = std::move(super);
  edge.verified.subject = "forged " + edge.name();
  edge.verified.checks.push_back(CheckResult{"forged", 0, {}, "never actually verified"});
  return edge;
}

} // namespace datum::testing
