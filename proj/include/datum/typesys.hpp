#pragma once

#include "datum/curry.hpp"

namespace datum {

struct DataType;
using TypePtr = std::shared_ptr<const DataType>;

/// A data type is an alphabet paired with a non-empty witness set of curried
/// operations whose focal domain is exactly that alphabet. The witness set is
/// the finite, declared stand-in for the full curried closure.
struct DataType {
  std::string name;
  AlphabetPtr alphabet;
  std::vector<CurriedOp> witnesses;
};

TypePtr make_type(std::string name, AlphabetPtr alphabet, std::vector<CurriedOp> witnesses);

/// Membership: is c a datum of t?
bool datum_check(const DataType& t, const Character& c);

/// Canonical (alphabet, witness outcome tables) rendering. Two types are
/// extensionally equal iff their fingerprints agree; witness sets compare as
/// sets, so duplicated or reordered witnesses do not matter.
std::string type_fingerprint(const DataType& t, const StepBudget& budget = {});
bool extensionally_equal_types(const DataType& a, const DataType& b);

/// A set of types over a common base (W, E).
struct TypeSystem {
  std::vector<AlphabetPtr> base_alphabets;
  std::vector<OperationPtr> base_ops;
  std::vector<TypePtr> types;
};

/// Inputs to a product type: the factor types and the composition operations
/// the user supplies over the product alphabet.
struct ProductSpec {
  std::vector<TypePtr> factors;
  std::vector<OperationPtr> comp_ops;
  std::vector<OperationPtr> inherited_ops; // base ops carried along, may be empty
};

/// Builds the product alphabet (all concatenations of factor members, dimension
/// the sum of the factor dimensions) and witnesses it with every curried slot
/// of the composition operations over that alphabet.
TypePtr product_type(const std::string& name, const ProductSpec& spec);

} // namespace datum
