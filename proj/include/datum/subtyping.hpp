#pragma once

#include "datum/typesys.hpp"

namespace datum {

/// One verified law: its name, the size of the universe swept, and the
/// counterexamples found. An optional note carries context that is not a
/// violation (e.g. a skipped conditional check).
struct CheckResult {
  std::string law;
  std::size_t universe = 0;
  std::vector<std::string> counterexamples;
  std::string note;
};

struct VerificationReport {
  std::string subject;
  std::vector<CheckResult> checks;

  bool passed() const;
  std::string to_text() const;
  /// Summary of the failed laws with their first counterexamples.
  std::string failure_summary() const;
};

/// An idempotent map from V union V' onto V, stored as an explicit table.
/// Validation (totality, idempotence, identity on V, image inside V) is a
/// separate step so that broken tables are representable and detectable.
struct Projection {
  AlphabetPtr source; // V' (the extended alphabet)
  AlphabetPtr target; // V
  CharMapPtr map;     // over members(V) union members(V')
};

Projection projection_from_pairs(AlphabetPtr source, AlphabetPtr target,
                                 std::vector<std::pair<Character, Character>> pairs);

/// Keep-or-default generator: truncate to the target dimension, keep each atom
/// that occurs at that position in the target, replace the rest by `fallback`.
Projection projection_with_default(AlphabetPtr source, AlphabetPtr target, const Atom& fallback);

/// Pure dimension truncation: drop trailing components.
Projection projection_truncating(AlphabetPtr source, AlphabetPtr target);

Character project(const Projection& p, const Character& c);

/// Checks totality over V union V', pointwise idempotence, pi(V) = V (as
/// pointwise identity on V), and pi(V') a non-empty subset of V.
VerificationReport validate_projection(const Projection& p);

/// The image pi(V') as an alphabet.
AlphabetPtr projection_image(const Projection& p);

enum class EdgeKind { R, P };

std::string_view edge_kind_name(EdgeKind kind);

/// A directed subtype relation, sub -> super. R-edges carry a subset alphabet,
/// P-edges a validated projection from the extended onto the truncated
/// alphabet. Casts flow in the edge direction.
struct SubtypeEdge {
  EdgeKind kind = EdgeKind::R;
  TypePtr sub;
  TypePtr super;
  std::optional<Projection> projection; // P only
  VerificationReport verified;

  std::string name() const;
};

/// Verifies that every witness of `super`, restricted to `sub_alphabet`,
/// evaluates successfully into its codomain on the whole restricted universe.
VerificationReport check_contains_restricted(const DataType& super,
                                             const AlphabetPtr& sub_alphabet);

struct Derived {
  TypePtr type;
  SubtypeEdge edge;
};

/// Restriction: new type over the sub-alphabet, witnessed by the restricted
/// witnesses of t; records a verified R-edge. Throws VerificationFailed when
/// the contains-restricted check finds counterexamples.
Derived derive_restriction(const TypePtr& t, std::string name, AlphabetPtr sub_alphabet);

/// Extension: new type over the extended alphabet, witnessed by t's witnesses
/// precomposed with the projection; records a verified P-edge.
Derived derive_extension(const TypePtr& t, std::string name, AlphabetPtr ext_alphabet,
                         Projection p);

/// Expansion cast along an R-edge: the character is returned unchanged and is
/// a member of the super alphabet afterwards.
Character r_cast(const Character& c, const SubtypeEdge& edge);

/// Truncation cast along a P-edge: returns pi(c).
Character p_cast(const Character& c, const SubtypeEdge& edge);

/// Exhaustive Liskov-Wing sweep. R: every character of the sub alphabet is
/// processable by every witness of the super type. P: every projected
/// character is. The universe covers alphabet x witnesses x residual tuples.
VerificationReport check_substitutability(const SubtypeEdge& edge);

} // namespace datum
