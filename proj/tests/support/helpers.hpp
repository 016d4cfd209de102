#pragma once

#include "datum/hierarchy.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace datum::testing {

inline Character ch(const std::string& symbol) { return Character::atom(symbol); }

inline Character chv(std::vector<std::string> symbols) {
  return Character::tuple(std::move(symbols));
}

inline Character nat(long n) { return Character::atom(std::to_string(n)); }

inline std::vector<Character> chars(std::initializer_list<std::string> symbols) {
  std::vector<Character> out;
  for (const auto& s : symbols) out.push_back(ch(s));
  return out;
}

inline AlphabetPtr letters(const std::string& name, std::initializer_list<std::string> symbols) {
  std::vector<Character> members;
  for (const auto& s : symbols) members.push_back(ch(s));
  return make_alphabet(name, std::move(members));
}

inline OperationPtr identity_op(const std::string& name, AlphabetPtr a) {
  return make_builtin_op(name, {a}, a, BuiltinKind::identity);
}

inline OperationPtr succ_op(const std::string& name, AlphabetPtr segment) {
  return make_builtin_op(name, {segment}, segment, BuiltinKind::successor);
}

/// f : segment x segment -> segment, f(a, b) = |a - b|.
inline OperationPtr absdiff_op(const std::string& name, AlphabetPtr segment) {
  return make_builtin_op(name, {segment, segment}, segment, BuiltinKind::abs_difference);
}

/// The primitive-recursive addition used across the tests:
/// add(a, 0) = a, add(a, b+1) = succ(add(a, b)).
inline OperationPtr primrec_add(AlphabetPtr segment) {
  auto succ = succ_op("succ", segment);
  auto base = identity_op("base", segment);
  auto pick3 = make_builtin_op("pick3", {segment, segment, segment}, segment,
                               BuiltinKind::projection, 3);
  auto step = compose(succ, {pick3}, "step");
  return prim_rec(base, step, "add");
}

/// Multiplication from addition: mul(a, 0) = 0, mul(a, b+1) = add(a, mul(a, b)).
inline OperationPtr primrec_mul(AlphabetPtr segment) {
  auto add = primrec_add(segment);
  auto zero = make_builtin_op("zero", {segment}, segment, BuiltinKind::constant, 0, nat(0));
  auto first_of_two = make_builtin_op("first2", {segment, segment}, segment,
                                      BuiltinKind::projection, 1);
  auto keep = identity_op("keep", segment);
  auto step = compose(add, {first_of_two, keep}, "mulstep");
  return prim_rec(zero, step, "mul");
}

inline std::string fixture_path(const std::string& name) {
  return std::string(DATUM_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace datum::testing
