#pragma once

#include "datum/hierarchy.hpp"

namespace datum {
namespace dsl {

struct Diagnostic {
  enum class Severity { error, warning };
  Severity severity = Severity::error;
  std::string file;
  int line = 0;
  int col = 0;
  std::string code; // stable identifier, e.g. "EmptyAlphabet" or "parse.syntax"
  std::string message;

  std::string to_text() const; // "file:line:col: error CODE: message"
};

std::string render_diagnostics(const std::vector<Diagnostic>& ds);

// --- retained declaration forms (what export reproduces) -------------------

struct AlphabetLiteralDecl {
  std::string name;
  std::vector<Character> members;
};
struct AlphabetProductDecl {
  std::string name;
  std::string left, right;
};
struct NatDecl {
  std::string name;
  long bound = 0;
};

struct TableBody {
  std::vector<std::pair<std::vector<Character>, Character>> rows;
};
struct BuiltinBody {
  std::string ident;
  std::optional<long> int_arg;
  std::optional<Character> char_arg;
};
struct CompBody {
  std::string outer;
  std::vector<std::string> inner;
};
struct PrimRecBody {
  std::string base, step;
};
struct MuRecBody {
  std::string body;
};

struct OpDecl {
  std::string name;
  std::vector<std::string> domain;
  std::string codomain;
  std::variant<TableBody, BuiltinBody, CompBody, PrimRecBody, MuRecBody> body;
};

struct TypeDecl {
  std::string name;
  std::string alphabet;
  std::vector<std::pair<std::string, std::optional<int>>> ops; // name, optional @slot
};

/// Either a literal member list or a reference to a declared alphabet.
struct AlphabetRef {
  std::optional<std::string> reference;
  std::vector<Character> literal;
};

struct RestrictDecl {
  std::string name, from;
  AlphabetRef alphabet;
};

struct ProjectionExplicit {
  std::vector<std::pair<Character, Character>> pairs;
};
struct ProjectionDefault {
  Atom fallback;
};
struct ProjectionTruncate {
  long length = 0;
};

struct ExtendDecl {
  std::string name, from;
  AlphabetRef alphabet;
  std::variant<ProjectionExplicit, ProjectionDefault, ProjectionTruncate> projection;
};

struct Declaration {
  std::variant<AlphabetLiteralDecl, AlphabetProductDecl, NatDecl, OpDecl, TypeDecl,
               RestrictDecl, ExtendDecl>
      node;
  int line = 0;
  int col = 0;
};

// --- workspace --------------------------------------------------------------

struct Workspace {
  std::vector<Declaration> decls;
  std::vector<AlphabetPtr> alphabets;
  std::vector<OperationPtr> operations;
  std::vector<TypePtr> types; // declared and derived, in order
  TypeGraph graph;

  const AlphabetPtr* find_alphabet(const std::string& name) const;
  const OperationPtr* find_operation(const std::string& name) const;
  const TypePtr* find_type(const std::string& name) const;

  TypeSystem system() const;
};

struct ParseResult {
  std::optional<Workspace> workspace;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return workspace.has_value(); }
};

ParseResult parse_workspace(std::string_view source, std::string file_name = "<input>");

/// Canonical declaration text; parsing it back yields an extensionally
/// identical workspace, and a second export is byte-identical.
std::string export_workspace(const Workspace& ws);

bool extensionally_equal_workspaces(const Workspace& a, const Workspace& b);

/// Character syntax shared with the CLI: a bare or quoted atom, or a
/// parenthesized tuple of atoms.
Character parse_character_text(const std::string& text);

} // namespace dsl
} // namespace datum
