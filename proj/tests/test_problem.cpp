#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "obslab/problem.hpp"

using namespace obslab;

namespace {

std::string example(const std::string& name) { return std::string(OBSLAB_SOURCE_DIR) + "/examples_problems/" + name; }

Error failure(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("problem was accepted");
  return Error(ErrorKind::InvalidInput, "");
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("bundled problems load") {
  for (const char* name : {"p1_two_patch.json", "affine_plane.json", "a1_three_patch.json"}) {
    CAPTURE(name);
    CHECK_NOTHROW(load_problem(example(name)));
  }
  Problem p = load_problem(example("p1_two_patch.json"));
  CHECK(p.require_cover().patches.size() == 2);
  CHECK(p.patch_names == std::vector<std::string>{"U0", "U1"});
  CHECK(p.label({0, 1}) == "U0,U1");
  CHECK(p.algebra("A").dim() == 2);
  CHECK(p.extension("e").principal);
  CHECK(p.deformation("Y2").deformation.algebra.names() == p.algebra("A2").names());
  CHECK_THROWS_AS(p.extension("missing"), Error);
}

TEST_CASE("options and overrides") {
  const std::string text = R"({"options": {"order": "lex", "degree_bound": 4, "truncation": 3}})";
  Problem p = parse_problem(text);
  CHECK(p.order == MonomialOrder::Lex);
  CHECK(p.degree_bound == 4);
  CHECK(p.truncation == 3);
  LoadOptions o;
  o.degree_bound = 9;
  o.order = MonomialOrder::DegRevLex;
  Problem q = parse_problem(text, o);
  CHECK(q.degree_bound == 9);
  CHECK(q.order == MonomialOrder::DegRevLex);
  CHECK(q.truncation == 3);
}

TEST_CASE("syntax errors carry line and column") {
  Error e = failure("{\n  \"rings\": {,}\n}");
  CHECK(e.kind() == ErrorKind::ParseError);
  CHECK(contains(e.what(), "<string>:2:"));
  CHECK(failure("{\"rings\": {}, }").kind() == ErrorKind::ParseError);
  CHECK(failure("[1, 2]").kind() == ErrorKind::ParseError);
}

TEST_CASE("semantic errors name the JSON path") {
  Error unknown_key = failure(R"({"ringz": {}})");
  CHECK(unknown_key.kind() == ErrorKind::ParseError);

  CHECK(failure(R"({"format": "other/2"})").kind() == ErrorKind::ParseError);
  CHECK(failure(R"({"field": "GF7"})").kind() == ErrorKind::ParseError);

  Error ring = failure(R"({"sequences": {"K": {"ring": "S", "elements": ["x"]}}})");
  CHECK(contains(ring.what(), "/sequences/K"));

  Error poly = failure(R"({"rings": {"R": {"vars": ["x"]}}, "ideals": {"I": {"ring": "R", "generators": ["x+z"]}}})");
  CHECK(poly.kind() == ErrorKind::ParseError);
  CHECK(contains(poly.what(), "/ideals/I"));

  Error eta = failure(R"({"algebras": {"B": {"vars": ["a"], "relations": ["a^3"]}},
                          "extensions": {"e": {"source": "B", "eta": "a"}}})");
  CHECK(eta.kind() == ErrorKind::NotAnnihilated);
  CHECK(contains(eta.what(), "/extensions/e"));

  Error artin = failure(R"({"algebras": {"B": {"vars": ["a", "b"], "relations": ["a^2"]}}})");
  CHECK(artin.kind() == ErrorKind::NotArtinian);

  Error morph = failure(R"({"algebras": {"A": {"vars": ["a"], "relations": ["a^2"]},
                                         "C": {"vars": ["c"], "relations": ["c^3"]}},
                            "morphisms": {"m": {"source": "A", "target": "C", "images": ["c"]}}})");
  CHECK(morph.kind() == ErrorKind::NotWellDefined);
  CHECK(contains(morph.what(), "/morphisms/m"));
}

TEST_CASE("cover and deformation validation") {
  const std::string head = R"({"rings": {"R0": {"vars": ["t"]}, "R1": {"vars": ["s"]},
      "R01": {"vars": ["t"], "invert": [{"name": "u", "element": "t"}]}},
    "algebras": {"A": {"vars": ["a"], "relations": ["a^2"]}},)";
  const std::string cover = R"("cover": {"patches": [{"name": "U0", "ring": "R0", "sequence": ["t-1"]},
                                   {"name": "U1", "ring": "R1", "sequence": ["s-1"]}],
      "overlaps": [{"patches": ["U0", "U1"], "ring": "R01", "maps": {"U0": ["t"], "U1": ["u"]}}]})";
  CHECK_NOTHROW(parse_problem(head + cover + "}"));

  std::string mismatch = cover;
  mismatch.replace(mismatch.find("s-1"), 3, "s-2");
  Error e = failure(head + mismatch + "}");
  CHECK(contains(e.what(), "/cover"));

  Error def = failure(head + cover +
                      R"(, "deformations": {"Y": {"algebra": "A", "sequences": {"U0": ["t-1+a"], "U1": ["s-1+a"]}}}})");
  CHECK(contains(def.what(), "/deformations/Y"));
  CHECK_NOTHROW(parse_problem(
      head + cover + R"(, "deformations": {"Y": {"algebra": "A", "sequences": {"U0": ["t-1+a"], "U1": ["s-1-a"]}}}})"));

  Error reduce = failure(head + cover +
                         R"(, "deformations": {"Y": {"algebra": "A", "sequences": {"U0": ["t-2+a"], "U1": ["s-1"]}}}})");
  CHECK(contains(reduce.what(), "/deformations/Y"));
}

TEST_CASE("algebra dimension cap") {
  LoadOptions o;
  o.max_algebra_dim = 3;
  CHECK_NOTHROW(parse_problem(R"({"algebras": {"B": {"vars": ["a"], "relations": ["a^3"]}}})", o));
  try {
    parse_problem(R"({"algebras": {"B": {"vars": ["a"], "relations": ["a^4"]}}})", o);
    FAIL("expected FeasibilityExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FeasibilityExceeded);
  }
}
