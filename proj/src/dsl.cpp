#include "datum/dsl.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace datum {
namespace dsl {

std::string Diagnostic::to_text() const {
  std::ostringstream out;
  out << file << ":" << line << ":" << col << ": "
      << (severity == Severity::error ? "error" : "warning") << " " << code << ": " << message;
  return out.str();
}

std::string render_diagnostics(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) out += d.to_text() + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Tokenizer

namespace {

struct Token {
  enum class Kind { ident, integer, quoted, punct, arrow, end };
  Kind kind = Kind::end;
  std::string text;
  int line = 1;
  int col = 1;
};

struct ParseError {
  int line;
  int col;
  std::string message;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

private:
  void advance() {
    skip_blank();
    current_.line = line_;
    current_.col = col_;
    if (pos_ >= src_.size()) {
      current_.kind = Token::Kind::end;
      current_.text.clear();
      return;
    }
    char c = src_[pos_];
    if (c == '\'') {
      take();
      std::string text;
      while (pos_ < src_.size() && src_[pos_] != '\'' && src_[pos_] != '\n') text += take();
      if (pos_ >= src_.size() || src_[pos_] != '\'')
        throw ParseError{current_.line, current_.col, "unterminated character literal"};
      take();
      current_.kind = Token::Kind::quoted;
      current_.text = std::move(text);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string text;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '_'))
        text += take();
      current_.kind = Token::Kind::ident;
      current_.text = std::move(text);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      std::string text;
      text += take();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        text += take();
      current_.kind = Token::Kind::integer;
      current_.text = std::move(text);
      return;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      take();
      take();
      current_.kind = Token::Kind::arrow;
      current_.text = "->";
      return;
    }
    if (std::string("{}(),;:=@").find(c) != std::string::npos) {
      current_.kind = Token::Kind::punct;
      current_.text = std::string(1, take());
      return;
    }
    throw ParseError{line_, col_, std::string("unexpected character '") + c + "'"};
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
  }

  char take() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token current_;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
  explicit Parser(std::string_view src) : lex_(src) {}

  std::vector<std::pair<Declaration, bool>> parse_all(std::vector<ParseError>& errors) {
    std::vector<std::pair<Declaration, bool>> decls;
    while (lex_.peek().kind != Token::Kind::end) {
      const Token at = lex_.peek();
      try {
        decls.emplace_back(parse_declaration(), true);
      } catch (ParseError& e) {
        errors.push_back(e);
        recover();
        (void)at;
      }
    }
    return decls;
  }

private:
  Declaration parse_declaration() {
    const Token head = expect_ident();
    Declaration decl;
    decl.line = head.line;
    decl.col = head.col;
    if (head.text == "alphabet") {
      decl.node = parse_alphabet();
    } else if (head.text == "nat") {
      decl.node = parse_nat();
    } else if (head.text == "op") {
      decl.node = parse_op();
    } else if (head.text == "type") {
      decl.node = parse_type();
    } else if (head.text == "restrict") {
      decl.node = parse_restrict();
    } else if (head.text == "extend") {
      decl.node = parse_extend();
    } else {
      throw ParseError{head.line, head.col, "expected a declaration keyword, got '" +
                                                head.text + "'"};
    }
    return decl;
  }

  std::variant<AlphabetLiteralDecl, AlphabetProductDecl, NatDecl, OpDecl, TypeDecl, RestrictDecl,
               ExtendDecl>
  parse_alphabet() {
    std::string name = expect_ident().text;
    expect_punct("=");
    if (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == "{") {
      AlphabetLiteralDecl d;
      d.name = std::move(name);
      d.members = parse_character_set();
      return d;
    }
    AlphabetProductDecl d;
    d.name = std::move(name);
    d.left = expect_ident().text;
    const Token x = expect_ident();
    if (x.text != "x") throw ParseError{x.line, x.col, "expected 'x' in product alphabet"};
    d.right = expect_ident().text;
    return d;
  }

  std::variant<AlphabetLiteralDecl, AlphabetProductDecl, NatDecl, OpDecl, TypeDecl, RestrictDecl,
               ExtendDecl>
  parse_nat() {
    NatDecl d;
    d.name = expect_ident().text;
    const Token kw = expect_ident();
    if (kw.text != "bound") throw ParseError{kw.line, kw.col, "expected 'bound'"};
    d.bound = expect_integer();
    return d;
  }

  std::variant<AlphabetLiteralDecl, AlphabetProductDecl, NatDecl, OpDecl, TypeDecl, RestrictDecl,
               ExtendDecl>
  parse_op() {
    OpDecl d;
    d.name = expect_ident().text;
    expect_punct(":");
    d.domain.push_back(expect_ident().text);
    while (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == ",") {
      lex_.next();
      d.domain.push_back(expect_ident().text);
    }
    expect_arrow();
    d.codomain = expect_ident().text;
    expect_punct("=");
    const Token body = expect_ident();
    if (body.text == "table") {
      TableBody t;
      expect_punct("{");
      while (!(lex_.peek().kind == Token::Kind::punct && lex_.peek().text == "}")) {
        std::vector<Character> input = parse_table_input(d.domain.size());
        expect_arrow();
        Character output = parse_character();
        t.rows.emplace_back(std::move(input), std::move(output));
        if (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == ",") lex_.next();
      }
      expect_punct("}");
      d.body = std::move(t);
    } else if (body.text == "builtin") {
      BuiltinBody b;
      b.ident = expect_ident().text;
      if (lex_.peek().kind == Token::Kind::integer) {
        b.int_arg = expect_integer();
      } else if (lex_.peek().kind == Token::Kind::quoted ||
                 (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == "(")) {
        b.char_arg = parse_character();
      }
      d.body = std::move(b);
    } else if (body.text == "comp") {
      CompBody c;
      expect_punct("(");
      c.outer = expect_ident().text;
      expect_punct(";");
      c.inner.push_back(expect_ident().text);
      while (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == ",") {
        lex_.next();
        c.inner.push_back(expect_ident().text);
      }
      expect_punct(")");
      d.body = std::move(c);
    } else if (body.text == "primrec") {
      PrimRecBody p;
      expect_punct("(");
      p.base = expect_ident().text;
      expect_punct(",");
      p.step = expect_ident().text;
      expect_punct(")");
      d.body = std::move(p);
    } else if (body.text == "murec") {
      MuRecBody m;
      expect_punct("(");
      m.body = expect_ident().text;
      expect_punct(")");
      d.body = std::move(m);
    } else {
      throw ParseError{body.line, body.col,
                       "expected table, builtin, comp, primrec or murec, got '" + body.text +
                           "'"};
    }
    return d;
  }

  std::variant<AlphabetLiteralDecl, AlphabetProductDecl, NatDecl, OpDecl, TypeDecl, RestrictDecl,
               ExtendDecl>
  parse_type() {
    TypeDecl d;
    d.name = expect_ident().text;
    expect_punct("=");
    expect_punct("(");
    d.alphabet = expect_ident().text;
    expect_punct(";");
    d.ops.push_back(parse_op_ref());
    while (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == ",") {
      lex_.next();
      d.ops.push_back(parse_op_ref());
    }
    expect_punct(")");
    return d;
  }

  std::pair<std::string, std::optional<int>> parse_op_ref() {
    std::string name = expect_ident().text;
    std::optional<int> slot;
    if (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == "@") {
      lex_.next();
      slot = static_cast<int>(expect_integer());
    }
    return {std::move(name), slot};
  }

  std::variant<AlphabetLiteralDecl, AlphabetProductDecl, NatDecl, OpDecl, TypeDecl, RestrictDecl,
               ExtendDecl>
  parse_restrict() {
    RestrictDecl d;
    d.name = expect_ident().text;
    expect_keyword("from");
    d.from = expect_ident().text;
    expect_keyword("alphabet");
    d.alphabet = parse_alphabet_ref();
    return d;
  }

  std::variant<AlphabetLiteralDecl, AlphabetProductDecl, NatDecl, OpDecl, TypeDecl, RestrictDecl,
               ExtendDecl>
  parse_extend() {
    ExtendDecl d;
    d.name = expect_ident().text;
    expect_keyword("from");
    d.from = expect_ident().text;
    expect_keyword("alphabet");
    d.alphabet = parse_alphabet_ref();
    expect_keyword("projection");
    if (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == "{") {
      ProjectionExplicit p;
      expect_punct("{");
      while (!(lex_.peek().kind == Token::Kind::punct && lex_.peek().text == "}")) {
        Character from = parse_character();
        expect_arrow();
        Character to = parse_character();
        p.pairs.emplace_back(std::move(from), std::move(to));
        if (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == ",") lex_.next();
      }
      expect_punct("}");
      d.projection = std::move(p);
    } else {
      const Token kw = expect_ident();
      if (kw.text == "default") {
        Character c = parse_character();
        if (c.dimension() != 1)
          throw ParseError{kw.line, kw.col, "projection default takes a single atom"};
        d.projection = ProjectionDefault{c.parts[0]};
      } else if (kw.text == "truncate") {
        d.projection = ProjectionTruncate{expect_integer()};
      } else {
        throw ParseError{kw.line, kw.col,
                         "expected a projection table, 'default' or 'truncate'"};
      }
    }
    return d;
  }

  AlphabetRef parse_alphabet_ref() {
    AlphabetRef ref;
    if (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == "{") {
      ref.literal = parse_character_set();
    } else {
      ref.reference = expect_ident().text;
    }
    return ref;
  }

  std::vector<Character> parse_character_set() {
    expect_punct("{");
    std::vector<Character> members;
    while (!(lex_.peek().kind == Token::Kind::punct && lex_.peek().text == "}")) {
      members.push_back(parse_character());
      if (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == ",") lex_.next();
    }
    expect_punct("}");
    return members;
  }

  // arity 1: one character; arity >= 2: parenthesized character list.
  std::vector<Character> parse_table_input(std::size_t arity) {
    if (arity == 1) return {parse_character()};
    expect_punct("(");
    std::vector<Character> input;
    input.push_back(parse_character());
    while (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == ",") {
      lex_.next();
      input.push_back(parse_character());
    }
    expect_punct(")");
    if (input.size() != arity) {
      const Token& t = lex_.peek();
      throw ParseError{t.line, t.col, "table row lists " + std::to_string(input.size()) +
                                          " inputs for arity " + std::to_string(arity)};
    }
    return input;
  }

  Character parse_character() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::quoted) return Character::atom(lex_.next().text);
    if (t.kind == Token::Kind::punct && t.text == "(") {
      lex_.next();
      std::vector<std::string> symbols;
      symbols.push_back(expect_quoted().text);
      while (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == ",") {
        lex_.next();
        symbols.push_back(expect_quoted().text);
      }
      expect_punct(")");
      return Character::tuple(std::move(symbols));
    }
    throw ParseError{t.line, t.col, "expected a character"};
  }

  void recover() {
    static const std::set<std::string> heads{"alphabet", "nat", "op", "type", "restrict",
                                             "extend"};
    while (lex_.peek().kind != Token::Kind::end) {
      if (lex_.peek().kind == Token::Kind::ident && heads.count(lex_.peek().text)) return;
      lex_.next();
    }
  }

  Token expect_ident() {
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::ident)
      throw ParseError{t.line, t.col, "expected an identifier, got '" + t.text + "'"};
    return lex_.next();
  }

  Token expect_quoted() {
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::quoted)
      throw ParseError{t.line, t.col, "expected a quoted atom"};
    return lex_.next();
  }

  long expect_integer() {
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::integer)
      throw ParseError{t.line, t.col, "expected an integer"};
    return std::stol(lex_.next().text);
  }

  void expect_punct(const std::string& text) {
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::punct || t.text != text)
      throw ParseError{t.line, t.col, "expected '" + text + "', got '" + t.text + "'"};
    lex_.next();
  }

  void expect_arrow() {
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::arrow)
      throw ParseError{t.line, t.col, "expected '->', got '" + t.text + "'"};
    lex_.next();
  }

  void expect_keyword(const std::string& word) {
    const Token t = expect_ident();
    if (t.text != word) throw ParseError{t.line, t.col, "expected '" + word + "'"};
  }

  Lexer lex_;
};

// ---------------------------------------------------------------------------
// Workspace builder

class Builder {
public:
  Builder(std::string file, std::vector<Diagnostic>& diagnostics)
      : file_(std::move(file)), diagnostics_(diagnostics) {}

  Workspace take() { return std::move(ws_); }

  void build(const Declaration& decl) {
    try {
      std::visit([&](const auto& node) { apply(node, decl); }, decl.node);
      ws_.decls.push_back(decl);
    } catch (const Error& e) {
      error(decl, std::string(errc_name(e.code())), e.what());
    } catch (const ParseError& e) {
      error(decl, "parse.syntax", e.message);
    }
  }

private:
  void error(const Declaration& decl, std::string code, std::string message) {
    diagnostics_.push_back(Diagnostic{Diagnostic::Severity::error, file_, decl.line, decl.col,
                                      std::move(code), std::move(message)});
  }

  void require_fresh(const Declaration& decl, const std::string& space,
                     const std::string& name, bool taken) {
    if (taken) throw Error(Errc::duplicate_node, space + " '" + name + "' is already declared");
    (void)decl;
  }

  AlphabetPtr resolve_alphabet(const std::string& name) {
    auto it = alphabet_by_name_.find(name);
    if (it == alphabet_by_name_.end())
      throw Error(Errc::unknown_node, "no alphabet named '" + name + "'");
    return it->second;
  }

  OperationPtr resolve_op(const std::string& name) {
    auto it = op_by_name_.find(name);
    if (it == op_by_name_.end())
      throw Error(Errc::unknown_node, "no operation named '" + name + "'");
    return it->second;
  }

  TypePtr resolve_type(const std::string& name) {
    auto it = type_by_name_.find(name);
    if (it == type_by_name_.end())
      throw Error(Errc::unknown_node, "no type named '" + name + "'");
    return it->second;
  }

  void register_alphabet(const Declaration& decl, AlphabetPtr a) {
    require_fresh(decl, "alphabet", a->name, alphabet_by_name_.count(a->name) > 0);
    alphabet_by_name_[a->name] = a;
    ws_.alphabets.push_back(std::move(a));
  }

  void register_type(const Declaration& decl, TypePtr t) {
    require_fresh(decl, "type", t->name, type_by_name_.count(t->name) > 0);
    type_by_name_[t->name] = t;
    ws_.types.push_back(t);
    ws_.graph.add_node(std::move(t));
  }

  void apply(const AlphabetLiteralDecl& d, const Declaration& decl) {
    register_alphabet(decl, make_alphabet(d.name, d.members));
  }

  void apply(const AlphabetProductDecl& d, const Declaration& decl) {
    std::vector<AlphabetPtr> factors{resolve_alphabet(d.left), resolve_alphabet(d.right)};
    register_alphabet(decl, product_alphabet(d.name, factors));
  }

  void apply(const NatDecl& d, const Declaration& decl) {
    register_alphabet(decl, make_nat_segment(d.name, d.bound));
  }

  void apply(const OpDecl& d, const Declaration& decl) {
    require_fresh(decl, "operation", d.name, op_by_name_.count(d.name) > 0);
    std::vector<AlphabetPtr> domain;
    domain.reserve(d.domain.size());
    for (const auto& name : d.domain) domain.push_back(resolve_alphabet(name));
    AlphabetPtr codomain = resolve_alphabet(d.codomain);

    OperationPtr op;
    if (const auto* table = std::get_if<TableBody>(&d.body)) {
      op = make_table_op(d.name, domain, codomain, table->rows);
      const std::size_t expected = [&] {
        std::size_t n = 1;
        for (const auto& a : domain) n *= a->size();
        return n;
      }();
      const auto& rows = std::get<TableRule>(op->rule).rows;
      if (rows.size() != expected) {
        for (const auto& args : domain_product(domain)) {
          if (!rows.count(args)) {
            std::string rendered;
            for (std::size_t i = 0; i < args.size(); ++i)
              rendered += (i ? ", " : "") + to_string(args[i]);
            throw Error(Errc::incomplete_table, "table '" + d.name + "' has no row for (" +
                                                    rendered + ")");
          }
        }
      }
    } else if (const auto* builtin = std::get_if<BuiltinBody>(&d.body)) {
      auto kind = builtin_by_name(builtin->ident);
      if (!kind) throw Error(Errc::unknown_builtin, "no builtin named '" + builtin->ident + "'");
      int slot = 0;
      std::optional<Character> value;
      if (*kind == BuiltinKind::projection) {
        if (!builtin->int_arg)
          throw Error(Errc::signature_mismatch, "builtin proj needs a slot number");
        slot = static_cast<int>(*builtin->int_arg);
      } else if (*kind == BuiltinKind::constant) {
        if (!builtin->char_arg)
          throw Error(Errc::signature_mismatch, "builtin const needs a character");
        value = builtin->char_arg;
      }
      op = make_builtin_op(d.name, domain, codomain, *kind, slot, value);
    } else if (const auto* comp = std::get_if<CompBody>(&d.body)) {
      std::vector<OperationPtr> inner;
      inner.reserve(comp->inner.size());
      for (const auto& g : comp->inner) inner.push_back(resolve_op(g));
      op = compose(resolve_op(comp->outer), std::move(inner), d.name);
      check_declared_signature(*op, domain, codomain);
    } else if (const auto* rec = std::get_if<PrimRecBody>(&d.body)) {
      op = prim_rec(resolve_op(rec->base), resolve_op(rec->step), d.name);
      check_declared_signature(*op, domain, codomain);
    } else {
      const auto& mu = std::get<MuRecBody>(d.body);
      op = mu_rec(resolve_op(mu.body), d.name);
      check_declared_signature(*op, domain, codomain);
    }
    op_by_name_[d.name] = op;
    ws_.operations.push_back(std::move(op));
  }

  static void check_declared_signature(const Operation& op,
                                       const std::vector<AlphabetPtr>& domain,
                                       const AlphabetPtr& codomain) {
    bool ok = op.domain.size() == domain.size() && same_value_set(*op.codomain, *codomain);
    for (std::size_t i = 0; ok && i < domain.size(); ++i)
      ok = same_value_set(*op.domain[i], *domain[i]);
    if (!ok)
      throw Error(Errc::signature_mismatch, "operation '" + op.name +
                                                "': declared signature differs from derived " +
                                                signature_text(op));
  }

  void apply(const TypeDecl& d, const Declaration& decl) {
    require_fresh(decl, "type", d.name, type_by_name_.count(d.name) > 0);
    AlphabetPtr alphabet = resolve_alphabet(d.alphabet);
    std::vector<CurriedOp> witnesses;
    for (const auto& [op_name, slot] : d.ops) {
      OperationPtr op = resolve_op(op_name);
      if (slot) {
        CurriedOp c = curry(op, *slot);
        if (!same_value_set(*c.focal_domain, *alphabet))
          throw Error(Errc::focal_domain_mismatch,
                      "type '" + d.name + "': slot " + std::to_string(*slot) + " of '" +
                          op_name + "' is over " + c.focal_domain->name + ", not " +
                          alphabet->name);
        witnesses.push_back(std::move(c));
      } else {
        std::vector<OperationPtr> one{op};
        auto curried = curry_over(one, alphabet);
        if (curried.empty())
          throw Error(Errc::focal_domain_mismatch, "type '" + d.name + "': '" + op_name +
                                                       "' has no slot over " + alphabet->name);
        for (auto& c : curried) witnesses.push_back(std::move(c));
      }
    }
    register_type(decl, make_type(d.name, std::move(alphabet), std::move(witnesses)));
  }

  AlphabetPtr build_alphabet_ref(const AlphabetRef& ref, const std::string& owner) {
    if (ref.reference) return resolve_alphabet(*ref.reference);
    return make_alphabet(owner, ref.literal);
  }

  void apply(const RestrictDecl& d, const Declaration& decl) {
    require_fresh(decl, "type", d.name, type_by_name_.count(d.name) > 0);
    TypePtr from = resolve_type(d.from);
    AlphabetPtr sub = build_alphabet_ref(d.alphabet, d.name);
    Derived derived = derive_restriction(from, d.name, std::move(sub));
    register_type(decl, derived.type);
    ws_.graph.add_edge(std::move(derived.edge));
  }

  void apply(const ExtendDecl& d, const Declaration& decl) {
    require_fresh(decl, "type", d.name, type_by_name_.count(d.name) > 0);
    TypePtr from = resolve_type(d.from);
    AlphabetPtr ext = build_alphabet_ref(d.alphabet, d.name);
    Projection p = [&] {
      if (const auto* ex = std::get_if<ProjectionExplicit>(&d.projection))
        return projection_from_pairs(ext, from->alphabet, ex->pairs);
      if (const auto* def = std::get_if<ProjectionDefault>(&d.projection))
        return projection_with_default(ext, from->alphabet, def->fallback);
      const auto& trunc = std::get<ProjectionTruncate>(d.projection);
      if (trunc.length != static_cast<long>(from->alphabet->dimension))
        throw Error(Errc::signature_mismatch,
                    "projection truncate " + std::to_string(trunc.length) +
                        " does not match the dimension of " + from->alphabet->name);
      return projection_truncating(ext, from->alphabet);
    }();
    Derived derived = derive_extension(from, d.name, std::move(ext), std::move(p));
    register_type(decl, derived.type);
    ws_.graph.add_edge(std::move(derived.edge));
  }

  std::string file_;
  std::vector<Diagnostic>& diagnostics_;
  Workspace ws_;
  std::map<std::string, AlphabetPtr> alphabet_by_name_;
  std::map<std::string, OperationPtr> op_by_name_;
  std::map<std::string, TypePtr> type_by_name_;
};

} // namespace

const AlphabetPtr* Workspace::find_alphabet(const std::string& name) const {
  for (const auto& a : alphabets)
    if (a->name == name) return &a;
  return nullptr;
}

const OperationPtr* Workspace::find_operation(const std::string& name) const {
  for (const auto& o : operations)
    if (o->name == name) return &o;
  return nullptr;
}

const TypePtr* Workspace::find_type(const std::string& name) const {
  for (const auto& t : types)
    if (t->name == name) return &t;
  return nullptr;
}

TypeSystem Workspace::system() const {
  TypeSystem sys;
  sys.base_alphabets = alphabets;
  sys.base_ops = operations;
  sys.types = types;
  return sys;
}

ParseResult parse_workspace(std::string_view source, std::string file_name) {
  ParseResult result;
  std::vector<ParseError> parse_errors;
  Parser parser(source);
  std::vector<std::pair<Declaration, bool>> decls;
  try {
    decls = parser.parse_all(parse_errors);
  } catch (const ParseError& e) {
    parse_errors.push_back(e);
  }
  for (const auto& e : parse_errors) {
    result.diagnostics.push_back(Diagnostic{Diagnostic::Severity::error, file_name, e.line,
                                            e.col, "parse.syntax", e.message});
  }

  Builder builder(file_name, result.diagnostics);
  for (const auto& [decl, ok] : decls) {
    if (ok) builder.build(decl);
  }

  bool has_error = false;
  for (const auto& d : result.diagnostics)
    has_error = has_error || d.severity == Diagnostic::Severity::error;
  if (!has_error) result.workspace = builder.take();
  return result;
}

// ---------------------------------------------------------------------------
// Export

namespace {

std::string quote_character(const Character& c) {
  if (c.dimension() == 1) return "'" + c.parts[0].symbol + "'";
  std::string out = "(";
  for (std::size_t i = 0; i < c.parts.size(); ++i) {
    if (i) out += ",";
    out += "'" + c.parts[i].symbol + "'";
  }
  out += ")";
  return out;
}

std::string quote_members(const std::vector<Character>& members) {
  std::vector<Character> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  std::string out = "{ ";
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i) out += ", ";
    out += quote_character(sorted[i]);
  }
  out += " }";
  return out;
}

std::string quote_table_input(const std::vector<Character>& input) {
  if (input.size() == 1) return quote_character(input[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (i) out += ", ";
    out += quote_character(input[i]);
  }
  out += ")";
  return out;
}

struct ExportVisitor {
  std::ostringstream& out;

  void operator()(const AlphabetLiteralDecl& d) {
    out << "alphabet " << d.name << " = " << quote_members(d.members) << "\n";
  }
  void operator()(const AlphabetProductDecl& d) {
    out << "alphabet " << d.name << " = " << d.left << " x " << d.right << "\n";
  }
  void operator()(const NatDecl& d) { out << "nat " << d.name << " bound " << d.bound << "\n"; }
  void operator()(const OpDecl& d) {
    out << "op " << d.name << " : ";
    for (std::size_t i = 0; i < d.domain.size(); ++i) out << (i ? ", " : "") << d.domain[i];
    out << " -> " << d.codomain << " = ";
    if (const auto* table = std::get_if<TableBody>(&d.body)) {
      auto rows = table->rows;
      std::sort(rows.begin(), rows.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      out << "table {\n";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        out << "  " << quote_table_input(rows[i].first) << " -> "
            << quote_character(rows[i].second) << (i + 1 < rows.size() ? "," : "") << "\n";
      }
      out << "}\n";
    } else if (const auto* builtin = std::get_if<BuiltinBody>(&d.body)) {
      out << "builtin " << builtin->ident;
      if (builtin->int_arg) out << " " << *builtin->int_arg;
      if (builtin->char_arg) out << " " << quote_character(*builtin->char_arg);
      out << "\n";
    } else if (const auto* comp = std::get_if<CompBody>(&d.body)) {
      out << "comp(" << comp->outer << ";";
      for (std::size_t i = 0; i < comp->inner.size(); ++i)
        out << (i ? ", " : " ") << comp->inner[i];
      out << ")\n";
    } else if (const auto* rec = std::get_if<PrimRecBody>(&d.body)) {
      out << "primrec(" << rec->base << ", " << rec->step << ")\n";
    } else {
      out << "murec(" << std::get<MuRecBody>(d.body).body << ")\n";
    }
  }
  void operator()(const TypeDecl& d) {
    out << "type " << d.name << " = ( " << d.alphabet << " ; ";
    for (std::size_t i = 0; i < d.ops.size(); ++i) {
      if (i) out << ", ";
      out << d.ops[i].first;
      if (d.ops[i].second) out << "@" << *d.ops[i].second;
    }
    out << " )\n";
  }
  void operator()(const RestrictDecl& d) {
    out << "restrict " << d.name << " from " << d.from << " alphabet ";
    write_ref(d.alphabet);
    out << "\n";
  }
  void operator()(const ExtendDecl& d) {
    out << "extend " << d.name << " from " << d.from << " alphabet ";
    write_ref(d.alphabet);
    out << " projection ";
    if (const auto* ex = std::get_if<ProjectionExplicit>(&d.projection)) {
      auto pairs = ex->pairs;
      std::sort(pairs.begin(), pairs.end());
      out << "{\n";
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        out << "  " << quote_character(pairs[i].first) << " -> "
            << quote_character(pairs[i].second) << (i + 1 < pairs.size() ? "," : "") << "\n";
      }
      out << "}";
    } else if (const auto* def = std::get_if<ProjectionDefault>(&d.projection)) {
      out << "default '" << def->fallback.symbol << "'";
    } else {
      out << "truncate " << std::get<ProjectionTruncate>(d.projection).length;
    }
    out << "\n";
  }

  void write_ref(const AlphabetRef& ref) {
    if (ref.reference)
      out << *ref.reference;
    else
      out << quote_members(ref.literal);
  }
};

} // namespace

std::string export_workspace(const Workspace& ws) {
  std::ostringstream out;
  ExportVisitor visitor{out};
  for (const auto& decl : ws.decls) {
    std::visit(visitor, decl.node);
  }
  return out.str();
}

bool extensionally_equal_workspaces(const Workspace& a, const Workspace& b) {
  if (a.alphabets.size() != b.alphabets.size() || a.operations.size() != b.operations.size() ||
      a.types.size() != b.types.size())
    return false;
  for (const auto& alpha : a.alphabets) {
    const AlphabetPtr* other = b.find_alphabet(alpha->name);
    if (!other || !same_value_set(*alpha, **other)) return false;
  }
  for (const auto& op : a.operations) {
    const OperationPtr* other = b.find_operation(op->name);
    if (!other || !extensionally_equal(*op, **other)) return false;
  }
  for (const auto& t : a.types) {
    const TypePtr* other = b.find_type(t->name);
    if (!other || !extensionally_equal_types(*t, **other)) return false;
  }
  auto edge_keys = [](const Workspace& ws) {
    std::set<std::string> keys;
    for (const auto& e : ws.graph.edges()) keys.insert(e.name());
    return keys;
  };
  return edge_keys(a) == edge_keys(b);
}

Character parse_character_text(const std::string& text) {
  auto strip = [](std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.size() >= 2 && s.front() == '\'' && s.back() == '\'') s = s.substr(1, s.size() - 2);
    return s;
  };
  std::string t = strip(text);
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')') {
    std::vector<std::string> symbols;
    std::string inner = t.substr(1, t.size() - 2);
    std::string part;
    int depth = 0;
    for (char c : inner) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        symbols.push_back(strip(part));
        part.clear();
      } else {
        part += c;
      }
    }
    symbols.push_back(strip(part));
    return Character::tuple(std::move(symbols));
  }
  if (t.empty()) fail(Errc::invalid_character, "empty character text");
  return Character::atom(std::move(t));
}

} // namespace dsl
} // namespace datum
