#pragma once

#include "datum/error.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace datum {

/// A distinguishable value with no properties besides identity.
struct Atom {
  std::string symbol;

  auto operator<=>(const Atom&) const = default;
};

/// A character is a non-empty tuple of atoms; most characters are
/// one-dimensional. Equality and ordering are componentwise.
struct Character {
  std::vector<Atom> parts;

  explicit Character(std::vector<Atom> p);
  static Character atom(std::string symbol);
  static Character tuple(std::vector<std::string> symbols);

  std::size_t dimension() const { return parts.size(); }
  auto operator<=>(const Character&) const = default;
};

/// Display form: a bare symbol for dimension 1, "(a,b)" otherwise.
std::string to_string(const Character& c);

/// Joins two characters into one longer tuple.
Character concat(const Character& a, const Character& b);

struct Alphabet;
using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// A named finite set of characters of uniform dimension. Members are kept
/// sorted and unique. Immutable once built; share freely.
struct Alphabet {
  std::string name;
  std::vector<Character> members; // sorted, unique
  std::size_t dimension = 0;

  /// Set when the members are exactly {0, 1, ..., N} as one-dimensional
  /// characters: the bounded stand-in for the naturals. Successor is defined
  /// below the bound and fails loudly at it.
  std::optional<long> nat_bound;

  bool contains(const Character& c) const;
  std::size_t size() const { return members.size(); }
};

AlphabetPtr make_alphabet(std::string name, std::vector<Character> members);
AlphabetPtr make_nat_segment(std::string name, long bound);

/// All concatenations of factor members, in factor order.
AlphabetPtr product_alphabet(std::string name, std::span<const AlphabetPtr> factors);

/// Structural comparison: same dimension and same member set. Names do not
/// participate; derived sub-alphabets must interoperate with their sources.
bool same_value_set(const Alphabet& a, const Alphabet& b);
bool sub_value_set(const Alphabet& sub, const Alphabet& super);

/// The atom's symbol read as an integer, if it is one.
std::optional<long> atom_value(const Atom& a);
/// True when every member is one-dimensional with an integer-valued atom.
bool integer_alphabet(const Alphabet& a);

// ---------------------------------------------------------------------------
// Operations

struct Operation;
using OperationPtr = std::shared_ptr<const Operation>;

/// The fixed builtin catalog. successor/constant/identity/projection are the
/// classic elementary functions; abs_difference feeds the minimisation
/// examples; pack and the complex pair support product types over finite
/// integer grids, where explicit tables would be unmanageable.
enum class BuiltinKind {
  successor,      // n -> n+1 on a nat segment; overflow at the bound
  constant,       // any args -> a fixed codomain character
  identity,       // x -> x
  projection,     // (x1..xk) -> xi (argument slots, 1-based)
  abs_difference, // |a-b| on integer atoms
  pack,           // concatenates the argument characters into one tuple
  complex_add,    // (x1+y1, x2+y2) on 2-dim integer characters
  complex_mul,    // (x1*y1-x2*y2, x1*y2+x2*y1)
};

std::string_view builtin_name(BuiltinKind kind);
std::optional<BuiltinKind> builtin_by_name(std::string_view name);

struct TableRule {
  std::map<std::vector<Character>, Character> rows;
};
struct BuiltinRule {
  BuiltinKind kind;
  int slot = 0;                    // projection only
  std::optional<Character> value;  // constant only
};
struct CompRule {
  OperationPtr outer;
  std::vector<OperationPtr> inner; // inner[i] feeds outer's i-th slot and
                                   // consumes its own consecutive argument slice
};
struct PrimRecRule {
  OperationPtr base; // g : X -> Y
  OperationPtr step; // h : X x N x Y -> Y
};
struct MuRecRule {
  OperationPtr body; // g : X x N -> N
};

/// A computable function between alphabets: a signature plus one of the five
/// semantics forms. Evaluation of Comp/PrimRec/MuRec nodes follows the three
/// computation rules.
struct Operation {
  std::string name;
  std::vector<AlphabetPtr> domain;
  AlphabetPtr codomain;
  std::variant<TableRule, BuiltinRule, CompRule, PrimRecRule, MuRecRule> rule;

  std::size_t arity() const { return domain.size(); }
};

std::string signature_text(const Operation& op);

/// Rows must lie inside the signature and carry no duplicate inputs. Totality
/// over the domain product is not enforced here: it is a verifiable property,
/// and the verification reports name the missing inputs.
OperationPtr make_table_op(std::string name, std::vector<AlphabetPtr> domain,
                           AlphabetPtr codomain,
                           std::vector<std::pair<std::vector<Character>, Character>> rows);

OperationPtr make_builtin_op(std::string name, std::vector<AlphabetPtr> domain,
                             AlphabetPtr codomain, BuiltinKind kind, int slot = 0,
                             std::optional<Character> value = std::nullopt);

/// Rule 1. |gs| must match h's arity and gs[i]'s codomain h's i-th slot.
/// The result consumes the concatenation of the gs' domains.
OperationPtr compose(OperationPtr h, std::vector<OperationPtr> gs, std::string name = "");

/// Rule 2. g : X -> Y, h : X x N x Y -> Y over a shared nat segment N;
/// the result is f : X x N -> Y with f(a,0)=g(a), f(a,b+1)=h(a,b,f(a,b)).
OperationPtr prim_rec(OperationPtr g, OperationPtr h, std::string name = "");

/// Rule 3. g : X x N -> N; the result f : X -> N searches b = 0,1,...,bound
/// in order and returns the first b with g(a,b) = 0.
OperationPtr mu_rec(OperationPtr g, std::string name = "");

/// Decremented once per semantics-node evaluation; exhaustion is an error,
/// never a wrong answer.
struct StepBudget {
  std::uint64_t max_steps = 1'000'000;
};

Character eval(const Operation& op, std::span<const Character> args,
               const StepBudget& budget = {});

/// Value-or-error result of an evaluation, for exhaustive sweeps where boundary
/// failures (overflow, divergence) are data rather than exceptions.
struct Outcome {
  std::optional<Character> value;
  std::optional<Errc> error;

  bool ok() const { return value.has_value(); }
  bool operator==(const Outcome&) const = default;
};

Outcome try_eval(const Operation& op, std::span<const Character> args,
                 const StepBudget& budget = {});

std::string to_string(const Outcome& o);

/// Every tuple of the domain product, in lexicographic member order.
std::vector<std::vector<Character>> domain_product(std::span<const AlphabetPtr> domain);

/// Full evaluation table rendered to a canonical string, signature included.
/// Two operations are extensionally equal iff their fingerprints agree.
std::string op_fingerprint(const Operation& op, const StepBudget& budget = {});
bool extensionally_equal(const Operation& a, const Operation& b);

// ---------------------------------------------------------------------------
// Closure enumeration

struct EnumeratedOp {
  OperationPtr op;
  int cost = 0;           // rule applications in the derivation
  std::string derivation; // e.g. "comp(succ; succ)"
};

struct ClosureResult {
  std::vector<EnumeratedOp> ops;
  bool truncated = false; // stopped at the size cap or the work budget
  std::size_t cap = 0;
};

/// All operations derivable from elems with at most `depth` rule applications,
/// deduplicated by extensional equality. Candidates whose evaluation fails at
/// segment bounds stay in the result; their outcome tables record the errors.
/// Enumeration is bounded twice: `cap` limits the result size, `work_tuples`
/// limits the total number of table entries evaluated for deduplication
/// (candidates whose own table alone exceeds it are not materialized). Either
/// bound marks the result truncated.
ClosureResult closure_enumerate(std::span<const AlphabetPtr> alphabets,
                                std::span<const OperationPtr> elems, int depth,
                                std::size_t cap = 512,
                                std::size_t work_tuples = 4'000'000);

} // namespace datum
