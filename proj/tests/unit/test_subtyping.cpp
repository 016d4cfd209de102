#include <doctest.h>

#include "support/helpers.hpp"

#include <algorithm>

using namespace datum;
using namespace datum::testing;

namespace {

struct CharFixture {
  AlphabetPtr charset;
  AlphabetPtr alnum;
  OperationPtr to_upper;
  TypePtr char_type;
};

CharFixture make_chars() {
  CharFixture f;
  f.charset = letters("Char", {"a", "b", "z", "A", "B", "Z", "0", "9", "%", "$"});
  f.alnum = letters("Alphanum", {"a", "b", "z", "A", "B", "Z", "0", "9"});
  std::vector<std::pair<std::vector<Character>, Character>> rows;
  for (const auto& m : f.charset->members) {
    std::string s = m.parts[0].symbol;
    if (s.size() == 1 && s[0] >= 'a' && s[0] <= 'z') s[0] -= 32;
    rows.push_back({{m}, ch(s)});
  }
  f.to_upper = make_table_op("toUpper", {f.charset}, f.charset, rows);
  f.char_type = make_type("Char", f.charset, {curry(f.to_upper, 1)});
  return f;
}

bool has_law(const VerificationReport& r, const std::string& law, bool failed) {
  for (const auto& c : r.checks) {
    if (c.law == law) return failed == !c.counterexamples.empty();
  }
  return false;
}

} // namespace

TEST_CASE("contains-restricted: the alphanumeric restriction of Char verifies") {
  CharFixture f = make_chars();
  VerificationReport report = check_contains_restricted(*f.char_type, f.alnum);
  CHECK(report.passed());
  CHECK(report.checks[0].universe == f.alnum->size());

  // Restriction to the full alphabet is trivially fine.
  CHECK(check_contains_restricted(*f.char_type, f.charset).passed());

  CHECK_THROWS_AS(check_contains_restricted(*f.char_type, letters("Nums", {"7"})), Error);
}

TEST_CASE("contains-restricted names the member a partial table misses") {
  CharFixture f = make_chars();
  std::vector<std::pair<std::vector<Character>, Character>> rows;
  for (const auto& m : f.charset->members) {
    if (m == ch("z")) continue; // delete one row
    rows.push_back({{m}, m});
  }
  auto gappy = make_table_op("gappy", {f.charset}, f.charset, rows);
  TypePtr t = make_type("Gappy", f.charset, {curry(gappy, 1)});

  VerificationReport report = check_contains_restricted(*t, f.alnum);
  CHECK(!report.passed());
  REQUIRE(report.checks[0].counterexamples.size() == 1);
  CHECK(report.checks[0].counterexamples[0].find("z") != std::string::npos);
  CHECK(report.checks[0].counterexamples[0].find("IncompleteTable") != std::string::npos);
}

TEST_CASE("derive_restriction builds the restricted type and a verified R-edge") {
  CharFixture f = make_chars();
  Derived d = derive_restriction(f.char_type, "Alphanum", f.alnum);
  CHECK(d.type->name == "Alphanum");
  CHECK(same_value_set(*d.type->alphabet, *f.alnum));
  CHECK(d.type->witnesses.size() == f.char_type->witnesses.size());
  CHECK(d.edge.kind == EdgeKind::R);
  CHECK(d.edge.verified.passed());

  CHECK_THROWS_AS(derive_restriction(f.char_type, "X", make_alphabet("X", {})), Error);
}

TEST_CASE("projection validation itemizes each law") {
  auto base = letters("V", {"a", "b"});
  auto ext = letters("Vx", {"a", "b", "c"});

  SUBCASE("the identity-with-default projection passes") {
    Projection p = projection_with_default(ext, base, Atom{"a"});
    VerificationReport r = validate_projection(p);
    CHECK(r.passed());
    CHECK(r.checks.size() == 4);
  }

  SUBCASE("identity map on V with V' = V passes") {
    std::vector<std::pair<Character, Character>> pairs{{ch("a"), ch("a")}, {ch("b"), ch("b")}};
    Projection p = projection_from_pairs(base, base, pairs);
    CHECK(validate_projection(p).passed());
  }

  SUBCASE("a map that moves a member of V fails identity-on-target") {
    std::vector<std::pair<Character, Character>> pairs{
        {ch("a"), ch("b")}, {ch("b"), ch("b")}, {ch("c"), ch("b")}};
    Projection p = projection_from_pairs(ext, base, pairs);
    VerificationReport r = validate_projection(p);
    CHECK(!r.passed());
    CHECK(has_law(r, "identity-on-target", true));
    CHECK(has_law(r, "idempotence", false)); // pi still collapses to a fixed point
  }

  SUBCASE("a chain map breaks idempotence") {
    auto wide = letters("W", {"a", "b", "c"});
    std::vector<std::pair<Character, Character>> pairs{
        {ch("a"), ch("b")}, {ch("b"), ch("c")}, {ch("c"), ch("c")}};
    Projection p = projection_from_pairs(wide, wide, pairs);
    VerificationReport r = validate_projection(p);
    CHECK(has_law(r, "idempotence", true));
  }

  SUBCASE("missing and stray entries fail totality") {
    std::vector<std::pair<Character, Character>> pairs{
        {ch("a"), ch("a")}, {ch("b"), ch("b")}, {ch("q"), ch("a")}};
    Projection p = projection_from_pairs(ext, base, pairs);
    VerificationReport r = validate_projection(p);
    CHECK(has_law(r, "totality", true)); // 'c' missing, 'q' stray
  }

  SUBCASE("an image outside V fails image-in-target") {
    std::vector<std::pair<Character, Character>> pairs{
        {ch("a"), ch("a")}, {ch("b"), ch("b")}, {ch("c"), ch("c")}};
    Projection p = projection_from_pairs(ext, base, pairs);
    VerificationReport r = validate_projection(p);
    CHECK(has_law(r, "image-in-target", true));
  }
}

TEST_CASE("derive_extension: scaled fixed-length strings with keep-or-default") {
  // Alphanum2 over {a,u}^2; Char4 over {a,%}^4, projected by keeping
  // alphanumerics, defaulting to u, truncating 4 -> 2.
  auto p1 = letters("P1", {"a", "%"});
  auto a1 = letters("A1", {"a", "u"});
  std::vector<AlphabetPtr> p2f{p1, p1};
  auto p2 = product_alphabet("P2", p2f);
  std::vector<AlphabetPtr> p4f{p2, p2};
  auto p4 = product_alphabet("P4", p4f);
  std::vector<AlphabetPtr> a2f{a1, a1};
  auto a2 = product_alphabet("A2", a2f);

  auto keep = identity_op("keep", a2);
  TypePtr alnum2 = make_type("Alphanum2", a2, {curry(keep, 1)});

  Projection p = projection_with_default(p4, a2, Atom{"u"});
  REQUIRE(validate_projection(p).passed());
  Derived d = derive_extension(alnum2, "Char4", p4, p);
  CHECK(d.edge.kind == EdgeKind::P);
  CHECK(d.edge.verified.passed());
  CHECK(d.type->witnesses.size() == 1);

  // P-cast truncates and defaults, exhaustively checked by hand rule.
  for (const auto& c : p4->members) {
    Character expected = chv({c.parts[0].symbol == "a" ? "a" : "u",
                              c.parts[1].symbol == "a" ? "a" : "u"});
    CHECK(p_cast(c, d.edge) == expected);
  }
}

TEST_CASE("derive_extension rejects mismatched projections") {
  auto base = letters("V", {"a"});
  auto ext = letters("Vx", {"a", "b"});
  auto keep = identity_op("keep", base);
  TypePtr t = make_type("T", base, {curry(keep, 1)});

  // Projection target must be the alphabet of the truncated type.
  auto stranger = letters("S", {"s"});
  Projection wrong_target = projection_with_default(ext, ext, Atom{"a"});
  CHECK_THROWS_AS(derive_extension(t, "Text", ext, wrong_target), Error);
  (void)stranger;

  // A non-idempotent table is refused with the law in the message.
  std::vector<std::pair<Character, Character>> bad{{ch("a"), ch("b")}, {ch("b"), ch("a")}};
  Projection invalid{ext, base, std::make_shared<CharMap>(CharMap(bad.begin(), bad.end()))};
  try {
    derive_extension(t, "Text", ext, invalid);
    FAIL("expected a verification failure");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::verification_failed);
    CHECK(std::string(e.what()).find("image-in-target") != std::string::npos);
  }
}

TEST_CASE("casts: expansion keeps the character, truncation projects it") {
  CharFixture f = make_chars();
  Derived r = derive_restriction(f.char_type, "Alphanum", f.alnum);

  for (const auto& c : f.alnum->members) {
    Character out = r_cast(c, r.edge);
    CHECK(out == c);
    CHECK(r.edge.super->alphabet->contains(out));
  }
  CHECK_THROWS_AS(r_cast(ch("%"), r.edge), Error); // not a datum of the sub type
  CHECK_THROWS_AS(p_cast(ch("a"), r.edge), Error); // wrong edge kind

  auto base = letters("V", {"a"});
  auto ext = letters("Vx", {"a", "b"});
  auto keep = identity_op("keep", base);
  TypePtr t = make_type("T", base, {curry(keep, 1)});
  Derived e = derive_extension(t, "Text", ext, projection_with_default(ext, base, Atom{"a"}));
  CHECK(p_cast(ch("b"), e.edge) == ch("a"));
  CHECK(p_cast(ch("a"), e.edge) == ch("a")); // members of V stay fixed
  CHECK_THROWS_AS(r_cast(ch("a"), e.edge), Error);
}

TEST_CASE("pi fixes the target pointwise and casting through pi is idempotent") {
  auto base = letters("V", {"a", "b"});
  auto ext = letters("Vx", {"a", "b", "c", "d"});
  Projection p = projection_with_default(ext, base, Atom{"b"});
  REQUIRE(validate_projection(p).passed());

  for (const auto& v : base->members) CHECK(project(p, v) == v);
  for (const auto& [from, to] : *p.map) CHECK(project(p, to) == to);
}

TEST_CASE("substitutability sweeps are exhaustive and catch corruption") {
  CharFixture f = make_chars();
  Derived r = derive_restriction(f.char_type, "Alphanum", f.alnum);
  VerificationReport ok = check_substitutability(r.edge);
  CHECK(ok.passed());
  CHECK(ok.checks[0].universe == f.alnum->size() * f.char_type->witnesses.size());

  auto base = letters("V", {"a"});
  auto ext = letters("Vx", {"a", "b"});
  auto keep = identity_op("keep", base);
  TypePtr t = make_type("T", base, {curry(keep, 1)});
  Derived e = derive_extension(t, "Text", ext, projection_with_default(ext, base, Atom{"a"}));
  CHECK(check_substitutability(e.edge).passed());

  // Corrupt the stored projection so one element maps outside V.
  auto broken = std::make_shared<CharMap>(*e.edge.projection->map);
  broken->insert_or_assign(ch("b"), ch("q"));
  SubtypeEdge forged = e.edge;
  forged.projection = Projection{ext, base, broken};
  VerificationReport bad = check_substitutability(forged);
  CHECK(!bad.passed());
  REQUIRE(!bad.checks[0].counterexamples.empty());
  CHECK(bad.checks[0].counterexamples[0].find("b") != std::string::npos);
}

TEST_CASE("closure preservation: composed witnesses still process the sub-alphabet") {
  CharFixture f = make_chars();
  Derived r = derive_restriction(f.char_type, "Alphanum", f.alnum);

  // Compose witness bases pairwise where signatures allow and re-run the sweep.
  auto twice = compose(f.to_upper, {f.to_upper});
  TypePtr composed_type = make_type("CharTwice", f.charset, {curry(twice, 1)});
  VerificationReport report = check_contains_restricted(*composed_type, f.alnum);
  CHECK(report.passed());
  (void)r;
}
