#pragma once

#include "datum/kernel.hpp"

namespace datum {

/// Explicit character-to-character table, shared between curried operations
/// and projections.
using CharMap = std::map<Character, Character>;
using CharMapPtr = std::shared_ptr<const CharMap>;

/// A multi-argument operation viewed through a single focal argument slot.
/// Applying it to a focal value yields the residual function with that slot
/// pinned. The focal domain may be narrower than the base slot (restriction),
/// and pre_maps may rewrite the focal value before it reaches the base
/// (extension witnesses project first, then process).
struct CurriedOp {
  OperationPtr base;
  int focal_slot = 1; // 1-based
  AlphabetPtr focal_domain;
  std::vector<CharMapPtr> pre_maps; // applied in order, outermost first
  std::string display;

  std::vector<AlphabetPtr> residual_domain() const;
  AlphabetPtr codomain() const { return base->codomain; }
};

/// The base operation with one slot pinned to a character. Not an operation
/// itself unless nothing remains to be supplied; its "codomain" at the curried
/// level would be a set of functions, which is not an alphabet.
struct ResidualFunction {
  OperationPtr base;
  int slot = 1;
  Character fixed;

  std::vector<AlphabetPtr> domain() const;
  AlphabetPtr codomain() const { return base->codomain; }
};

CurriedOp curry(OperationPtr op, int slot);

/// The defining equation: evaluating the residual on the remaining arguments
/// equals evaluating the base with the focal value inserted at the slot.
ResidualFunction apply_curried(const CurriedOp& c, const Character& focal);

Character eval_residual(const ResidualFunction& r, std::span<const Character> rest,
                        const StepBudget& budget = {});

/// Same behaviour, smaller focal domain.
CurriedOp restrict_curried(const CurriedOp& c, AlphabetPtr sub);

/// Prepends a focal rewrite: values of `focal` pass through `map` before the
/// existing chain. Used to derive extension witnesses from a projection.
CurriedOp precompose_map(const CurriedOp& c, CharMapPtr map, AlphabetPtr focal);

/// One curried operation per (operation, slot) pair whose slot alphabet equals
/// x; operations with no matching slot contribute nothing.
std::vector<CurriedOp> curry_over(std::span<const OperationPtr> ops, const AlphabetPtr& x);

/// Canonical outcome table over focal domain x residual product. Two curried
/// operations are extensionally equal iff their fingerprints agree.
std::string curried_fingerprint(const CurriedOp& c, const StepBudget& budget = {});

} // namespace datum
