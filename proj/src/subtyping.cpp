#include "datum/subtyping.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace datum {

bool VerificationReport::passed() const {
  for (const auto& c : checks)
    if (!c.counterexamples.empty()) return false;
  return true;
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  out << (passed() ? "ok" : "FAIL") << ": " << subject << "\n";
  for (const auto& c : checks) {
    out << "  " << (c.counterexamples.empty() ? "ok" : "FAIL") << " " << c.law
        << " (universe " << c.universe << ")";
    if (!c.note.empty()) out << " -- " << c.note;
    out << "\n";
    const std::size_t shown = std::min<std::size_t>(c.counterexamples.size(), 8);
    for (std::size_t i = 0; i < shown; ++i) out << "    at " << c.counterexamples[i] << "\n";
    if (c.counterexamples.size() > shown)
      out << "    ... (" << c.counterexamples.size() << " total)\n";
  }
  return out.str();
}

std::string VerificationReport::failure_summary() const {
  std::string out = subject + ":";
  for (const auto& c : checks) {
    if (c.counterexamples.empty()) continue;
    out += " " + c.law + " violated (first: " + c.counterexamples.front() + ")";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Projections

Projection projection_from_pairs(AlphabetPtr source, AlphabetPtr target,
                                 std::vector<std::pair<Character, Character>> pairs) {
  auto map = std::make_shared<CharMap>();
  for (auto& [from, to] : pairs) {
    auto [it, inserted] = map->emplace(std::move(from), std::move(to));
    if (!inserted)
      fail(Errc::bad_table_row, "projection: duplicate entry for " + to_string(it->first));
  }
  return Projection{std::move(source), std::move(target), std::move(map)};
}

namespace {

std::vector<std::set<Atom>> positional_atoms(const Alphabet& a) {
  std::vector<std::set<Atom>> sets(a.dimension);
  for (const auto& m : a.members)
    for (std::size_t i = 0; i < a.dimension; ++i) sets[i].insert(m.parts[i]);
  return sets;
}

std::vector<Character> union_universe(const Projection& p) {
  std::set<Character> all(p.target->members.begin(), p.target->members.end());
  all.insert(p.source->members.begin(), p.source->members.end());
  return {all.begin(), all.end()};
}

} // namespace

Projection projection_with_default(AlphabetPtr source, AlphabetPtr target,
                                   const Atom& fallback) {
  if (source->dimension < target->dimension)
    fail(Errc::signature_mismatch, "projection: source dimension " +
                                       std::to_string(source->dimension) +
                                       " is below target dimension " +
                                       std::to_string(target->dimension));
  auto keep = positional_atoms(*target);
  auto map = std::make_shared<CharMap>();
  auto add = [&](const Character& c) {
    std::vector<Atom> parts;
    parts.reserve(target->dimension);
    for (std::size_t i = 0; i < target->dimension; ++i) {
      const Atom& a = c.parts[i];
      parts.push_back(keep[i].count(a) ? a : fallback);
    }
    Character image{std::move(parts)};
    if (!target->contains(image))
      fail(Errc::domain_violation, "projection default '" + fallback.symbol +
                                       "': image " + to_string(image) + " of " + to_string(c) +
                                       " is not in " + target->name);
    map->emplace(c, std::move(image));
  };
  for (const auto& c : target->members) add(c);
  for (const auto& c : source->members)
    if (!map->count(c)) add(c);
  return Projection{std::move(source), std::move(target), std::move(map)};
}

Projection projection_truncating(AlphabetPtr source, AlphabetPtr target) {
  if (source->dimension < target->dimension)
    fail(Errc::signature_mismatch, "projection truncate: source dimension " +
                                       std::to_string(source->dimension) +
                                       " is below target dimension " +
                                       std::to_string(target->dimension));
  auto map = std::make_shared<CharMap>();
  auto add = [&](const Character& c) {
    Character image{std::vector<Atom>(c.parts.begin(),
                                      c.parts.begin() + static_cast<long>(target->dimension))};
    if (!target->contains(image))
      fail(Errc::domain_violation, "projection truncate: image " + to_string(image) + " of " +
                                       to_string(c) + " is not in " + target->name);
    map->emplace(c, std::move(image));
  };
  for (const auto& c : target->members) add(c);
  for (const auto& c : source->members)
    if (!map->count(c)) add(c);
  return Projection{std::move(source), std::move(target), std::move(map)};
}

Character project(const Projection& p, const Character& c) {
  auto it = p.map->find(c);
  if (it == p.map->end())
    fail(Errc::domain_violation, "projection: no entry for " + to_string(c));
  return it->second;
}

VerificationReport validate_projection(const Projection& p) {
  VerificationReport report;
  report.subject = "projection " + p.source->name + " -> " + p.target->name;
  const auto universe = union_universe(p);

  CheckResult totality{"totality", universe.size(), {}, {}};
  for (const auto& c : universe) {
    if (!p.map->count(c)) totality.counterexamples.push_back(to_string(c) + " has no entry");
  }
  for (const auto& [from, to] : *p.map) {
    if (!std::binary_search(universe.begin(), universe.end(), from))
      totality.counterexamples.push_back(to_string(from) +
                                         " is outside the source/target union");
  }
  report.checks.push_back(std::move(totality));

  CheckResult idem{"idempotence", universe.size(), {}, {}};
  for (const auto& c : universe) {
    auto first = p.map->find(c);
    if (first == p.map->end()) continue; // already a totality counterexample
    auto second = p.map->find(first->second);
    if (second == p.map->end()) {
      idem.counterexamples.push_back("pi(" + to_string(c) + ") = " + to_string(first->second) +
                                     " has no entry of its own");
    } else if (second->second != first->second) {
      idem.counterexamples.push_back("pi(pi(" + to_string(c) + ")) = " +
                                     to_string(second->second) + " differs from pi(" +
                                     to_string(c) + ") = " + to_string(first->second));
    }
  }
  report.checks.push_back(std::move(idem));

  // pi(V) = V together with idempotence forces pi(v) = v on V; check the
  // pointwise form directly, which also gives surjectivity onto V.
  CheckResult identity{"identity-on-target", p.target->size(), {}, {}};
  for (const auto& v : p.target->members) {
    auto it = p.map->find(v);
    if (it == p.map->end()) continue;
    if (it->second != v)
      identity.counterexamples.push_back("pi(" + to_string(v) + ") = " + to_string(it->second) +
                                         " but " + to_string(v) + " is in " + p.target->name);
  }
  report.checks.push_back(std::move(identity));

  CheckResult image{"image-in-target", p.source->size(), {}, {}};
  std::size_t mapped = 0;
  for (const auto& c : p.source->members) {
    auto it = p.map->find(c);
    if (it == p.map->end()) continue;
    ++mapped;
    if (!p.target->contains(it->second))
      image.counterexamples.push_back("pi(" + to_string(c) + ") = " + to_string(it->second) +
                                      " is outside " + p.target->name);
  }
  if (mapped == 0) image.counterexamples.push_back("pi(V') is empty");
  report.checks.push_back(std::move(image));

  return report;
}

AlphabetPtr projection_image(const Projection& p) {
  std::set<Character> image;
  for (const auto& c : p.source->members) {
    auto it = p.map->find(c);
    if (it != p.map->end()) image.insert(it->second);
  }
  if (image.empty()) fail(Errc::empty_alphabet, "projection image of " + p.source->name +
                                                    " is empty");
  return make_alphabet("pi(" + p.source->name + ")",
                       std::vector<Character>(image.begin(), image.end()));
}

// ---------------------------------------------------------------------------
// Subtype edges

std::string_view edge_kind_name(EdgeKind kind) { return kind == EdgeKind::R ? "R" : "P"; }

std::string SubtypeEdge::name() const {
  return std::string(edge_kind_name(kind)) + ":" + sub->name + "->" + super->name;
}

VerificationReport check_contains_restricted(const DataType& super,
                                             const AlphabetPtr& sub_alphabet) {
  if (!sub_alphabet || sub_alphabet->members.empty())
    fail(Errc::empty_alphabet, "contains-restricted: empty sub-alphabet");
  if (!sub_value_set(*sub_alphabet, *super.alphabet))
    fail(Errc::not_a_sub_alphabet, "contains-restricted: " + sub_alphabet->name +
                                       " is not a sub-alphabet of " + super.alphabet->name);

  VerificationReport report;
  report.subject = "contains-restricted(" + super.name + " over " + sub_alphabet->name + ")";
  CheckResult check{"contains-restricted", 0, {}, {}};
  for (const auto& w : super.witnesses) {
    CurriedOp restricted = restrict_curried(w, sub_alphabet);
    auto rest_tuples = domain_product(restricted.residual_domain());
    check.universe += sub_alphabet->size() * rest_tuples.size();
    for (const auto& focal : sub_alphabet->members) {
      for (const auto& rest : rest_tuples) {
        try {
          Character out = eval_residual(apply_curried(restricted, focal), rest);
          if (!w.codomain()->contains(out))
            check.counterexamples.push_back(w.display + " at " + to_string(focal) +
                                            ": result " + to_string(out) +
                                            " is outside " + w.codomain()->name);
        } catch (const Error& e) {
          check.counterexamples.push_back(w.display + " at " + to_string(focal) + ": " +
                                          std::string(errc_name(e.code())));
        }
      }
    }
  }
  report.checks.push_back(std::move(check));
  return report;
}

namespace {

VerificationReport merge_reports(std::string subject, std::vector<VerificationReport> parts) {
  VerificationReport out;
  out.subject = std::move(subject);
  for (auto& part : parts)
    for (auto& check : part.checks) out.checks.push_back(std::move(check));
  return out;
}

} // namespace

Derived derive_restriction(const TypePtr& t, std::string name, AlphabetPtr sub_alphabet) {
  VerificationReport contains = check_contains_restricted(*t, sub_alphabet);
  if (!contains.passed()) fail(Errc::verification_failed, contains.failure_summary());

  std::vector<CurriedOp> witnesses;
  witnesses.reserve(t->witnesses.size());
  for (const auto& w : t->witnesses) witnesses.push_back(restrict_curried(w, sub_alphabet));
  TypePtr derived = make_type(std::move(name), sub_alphabet, std::move(witnesses));

  SubtypeEdge edge;
  edge.kind = EdgeKind::R;
  edge.sub = derived;
  edge.super = t;
  VerificationReport substitutable = check_substitutability(edge);
  if (!substitutable.passed()) fail(Errc::verification_failed, substitutable.failure_summary());
  edge.verified = merge_reports(edge.name(), {std::move(contains), std::move(substitutable)});
  return Derived{derived, std::move(edge)};
}

Derived derive_extension(const TypePtr& t, std::string name, AlphabetPtr ext_alphabet,
                         Projection p) {
  if (!same_value_set(*p.target, *t->alphabet))
    fail(Errc::signature_mismatch, "extension '" + name + "': projection target " +
                                       p.target->name + " is not the alphabet of " + t->name);
  if (!same_value_set(*p.source, *ext_alphabet))
    fail(Errc::signature_mismatch, "extension '" + name + "': projection source " +
                                       p.source->name + " is not the extension alphabet");

  VerificationReport valid = validate_projection(p);
  if (!valid.passed()) fail(Errc::verification_failed, valid.failure_summary());

  VerificationReport contains = check_contains_restricted(*t, projection_image(p));
  if (!contains.passed()) fail(Errc::verification_failed, contains.failure_summary());

  // The extension processes through the projection: every witness of the
  // truncated type lifts to (witness after pi) over the extended alphabet.
  std::vector<CurriedOp> witnesses;
  witnesses.reserve(t->witnesses.size());
  for (const auto& w : t->witnesses) witnesses.push_back(precompose_map(w, p.map, ext_alphabet));
  TypePtr derived = make_type(std::move(name), ext_alphabet, std::move(witnesses));

  SubtypeEdge edge;
  edge.kind = EdgeKind::P;
  edge.sub = derived;
  edge.super = t;
  edge.projection = std::move(p);
  VerificationReport substitutable = check_substitutability(edge);
  if (!substitutable.passed()) fail(Errc::verification_failed, substitutable.failure_summary());
  edge.verified = merge_reports(
      edge.name(), {std::move(valid), std::move(contains), std::move(substitutable)});
  return Derived{derived, std::move(edge)};
}

Character r_cast(const Character& c, const SubtypeEdge& edge) {
  if (edge.kind != EdgeKind::R)
    fail(Errc::kind_mismatch, "r_cast along " + edge.name());
  if (!edge.sub->alphabet->contains(c))
    fail(Errc::domain_violation, "r_cast: " + to_string(c) + " is not a datum of " +
                                     edge.sub->name);
  return c;
}

Character p_cast(const Character& c, const SubtypeEdge& edge) {
  if (edge.kind != EdgeKind::P)
    fail(Errc::kind_mismatch, "p_cast along " + edge.name());
  if (!edge.sub->alphabet->contains(c))
    fail(Errc::domain_violation, "p_cast: " + to_string(c) + " is not a datum of " +
                                     edge.sub->name);
  Character out = project(*edge.projection, c);
  if (!edge.super->alphabet->contains(out))
    fail(Errc::domain_violation, "p_cast: projection sends " + to_string(c) + " to " +
                                     to_string(out) + " outside " + edge.super->name);
  return out;
}

VerificationReport check_substitutability(const SubtypeEdge& edge) {
  VerificationReport report;
  report.subject = "substitutability " + edge.name();
  const bool is_r = edge.kind == EdgeKind::R;
  CheckResult check{is_r ? "substitutability-R" : "substitutability-P", 0, {}, {}};

  for (const auto& x : edge.sub->alphabet->members) {
    Character probe = x;
    if (!is_r) {
      try {
        probe = project(*edge.projection, x);
      } catch (const Error& e) {
        check.universe += 1;
        check.counterexamples.push_back(to_string(x) + ": " + std::string(errc_name(e.code())));
        continue;
      }
      if (!edge.super->alphabet->contains(probe)) {
        check.universe += 1;
        check.counterexamples.push_back("pi(" + to_string(x) + ") = " + to_string(probe) +
                                        " is outside " + edge.super->alphabet->name);
        continue;
      }
    }
    for (const auto& w : edge.super->witnesses) {
      auto rest_tuples = domain_product(w.residual_domain());
      check.universe += rest_tuples.size();
      for (const auto& rest : rest_tuples) {
        try {
          Character out = eval_residual(apply_curried(w, probe), rest);
          if (!w.codomain()->contains(out))
            check.counterexamples.push_back(to_string(x) + " via " + w.display + ": result " +
                                            to_string(out) + " is outside " +
                                            w.codomain()->name);
        } catch (const Error& e) {
          check.counterexamples.push_back(to_string(x) + " via " + w.display + ": " +
                                          std::string(errc_name(e.code())));
        }
      }
    }
  }
  report.checks.push_back(std::move(check));
  return report;
}

} // namespace datum
