#include <doctest.h>

#include "livsic/abelian.hpp"
#include "livsic/error.hpp"
#include "livsic/io.hpp"
#include "support.hpp"

using namespace livsic;
using nlohmann::json;

namespace {

json base_document() {
  return json::parse(R"j({"sft": {"k": 2, "transition": [[1, 1], [1, 1]]},
                         "group": {"type": "cyclic", "order": 2},
                         "psi": ["e", "g"],
                         "cocycle": {"kind": "rational", "range": 1,
                                     "values": {"11": "0", "12": "1", "21": "-1", "22": "0"}}})j");
}

std::string pointer_of(const json& document) {
  try {
    io::parse_system(document);
  } catch (const Error& e) {
    return e.details().value("pointer", std::string("<none>"));
  }
  return "<parsed>";
}

}  // namespace

TEST_CASE("system documents") {
  const auto doc = io::parse_system(base_document());
  CHECK(doc.system.sft() == SftSpec::full_shift(2));
  CHECK(doc.system.group().order() == 2);
  REQUIRE(doc.rational);
  CHECK_FALSE(doc.matrix);
  CHECK(doc.rational->leading(parse_word("12", 2)) == 1);

  auto perm = base_document();
  perm["group"] = json::parse(R"j({"type": "permutation", "points": 3, "generators": ["(1 2)", [2, 3, 1]]})j");
  perm["psi"] = {"(1 2)", "(1 2 3)"};
  CHECK(io::parse_system(perm).system.group().order() == 6);

  auto lattice = base_document();
  lattice["group"] = json::parse(R"j({"type": "free_abelian", "rank": 2})j");
  lattice["psi"] = json::parse("[[1, 0], [0, -1]]");
  CHECK(io::parse_system(lattice).system.psi(1).coords() == std::vector<std::int64_t>{0, -1});

  auto matrix = base_document();
  matrix["cocycle"] = json::parse(R"j({"kind": "matrix", "range": 0,
                                      "values": {"1": [[1, 0], [0, 1]], "2": [["-1", 0], [0, "-1"]]}})j");
  const auto m = io::parse_system(matrix);
  REQUIRE(m.matrix);
  CHECK(m.matrix->dimension() == 2);
  CHECK((*m.matrix).leading(Word{1})(0, 0) == -1.0);
}

TEST_CASE("errors carry JSON pointers") {
  auto doc = base_document();
  doc["sft"]["transition"][1][0] = 2;
  CHECK(pointer_of(doc) == "/sft/transition");

  doc = base_document();
  doc["psi"][1] = "h";
  CHECK(pointer_of(doc) == "/psi/1");

  doc = base_document();
  doc["psi"] = {"e"};
  CHECK(pointer_of(doc) == "/psi");

  doc = base_document();
  doc["group"]["type"] = "dihedral";
  CHECK(pointer_of(doc) == "/group/type");

  doc = base_document();
  doc["cocycle"]["values"]["12"] = "1/0";
  CHECK(pointer_of(doc) == "/cocycle/values/12");

  doc = base_document();
  doc["cocycle"]["values"].erase("21");
  CHECK(pointer_of(doc) == "/cocycle/values");

  doc = base_document();
  doc["cocycle"]["values"]["13"] = "0";
  CHECK(pointer_of(doc) == "/cocycle/values/13");

  doc = base_document();
  doc.erase("group");
  CHECK(pointer_of(doc) == "/group");

  doc = base_document();
  doc["cocycle"]["kind"] = "complex";
  CHECK(pointer_of(doc) == "/cocycle/kind");
}

TEST_CASE("cocycles round-trip through JSON") {
  Rng rng(3);
  for (const auto& system : livsic::testing::finite_corpus()) {
    const auto u = random_potential(system.sft(), 2, rng.uniform(0, 1000));
    const auto f = generate_cocycle(system, 2, u, zero_alpha(system.group()));
    json doc = base_document();
    doc["sft"] = {{"k", system.sft().alphabet_size()}, {"transition", system.sft().transition()}};
    doc["group"] = {{"type", "cyclic"}, {"order", 1}};
    doc["psi"] = std::vector<std::string>(static_cast<std::size_t>(system.sft().alphabet_size()), "e");
    doc["cocycle"] = io::cocycle_to_json(f);
    const auto back = io::parse_system(doc);
    REQUIRE(back.rational);
    CHECK(back.rational->values() == f.values());
    CHECK(io::serialize(io::cocycle_to_json(*back.rational)) == io::serialize(doc["cocycle"]));
  }
}

TEST_CASE("solution documents round-trip byte for byte") {
  const auto doc = io::parse_system(base_document());
  const auto sol = std::get<CohomologySolution>(solve_finite_gamma(doc.system, *doc.rational));
  const auto written = io::make_solution_document(doc.system, sol, {{"tool", "livsic"}});
  const std::string text = io::serialize(io::to_json(written));
  const auto reread = io::solution_from_json(json::parse(text));
  CHECK(io::serialize(io::to_json(reread)) == text);
  const auto back = io::to_cohomology_solution(doc.system, reread);
  CHECK(back.u == sol.u);
  CHECK(verify_solution(doc.system, *doc.rational, back).certified());

  auto broken = json::parse(text);
  broken["alpha_is_zero"] = "yes";
  try {
    io::solution_from_json(broken);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.details()["pointer"] == "/alpha_is_zero");
  }
}

TEST_CASE("serialization is canonical") {
  const json value = json::parse(R"j({"b": 1, "a": {"d": [1, 2], "c": "x"}})j");
  CHECK(io::serialize(value) == "{\n  \"a\": {\n    \"c\": \"x\",\n    \"d\": [\n      1,\n      2\n    ]\n  },\n  \"b\": 1\n}\n");
}

TEST_CASE("matrices from JSON") {
  CHECK(io::matrix_from_json(json::parse(R"j([["1/2", 0], [0, 2]])j"), "/m")(0, 0) == 0.5);
  CHECK_THROWS_AS(io::matrix_from_json(json::parse("[[1, 0], [0]]"), "/m"), Error);
  CHECK_THROWS_AS(io::matrix_from_json(json::parse("[]"), "/m"), Error);
  const Matrix m = io::matrix_from_json(json::parse("[[1.5, -2], [0.25, 3]]"), "/m");
  CHECK(io::matrix_from_json(io::matrix_to_json(m), "/m") == m);
}
