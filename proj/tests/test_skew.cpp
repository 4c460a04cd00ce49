#include <doctest.h>

#include <set>

#include "livsic/error.hpp"
#include "livsic/oracle.hpp"
#include "livsic/skew.hpp"
#include "support.hpp"

using namespace livsic;
using livsic::testing::make_system;

namespace {

SkewSystem full2_c2(const std::string& a, const std::string& b) {
  return make_system(SftSpec::full_shift(2), livsic::testing::cyclic_group(2), {a, b});
}

SkewSystem full2_z1(const std::string& a, const std::string& b) {
  return make_system(SftSpec::full_shift(2), livsic::testing::free_abelian(1), {a, b});
}

}  // namespace

TEST_CASE("psi products multiply later symbols on the left") {
  const auto s = full2_c2("e", "g");
  CHECK(s.group().name(psi_n(s, Word{1, 1})) == "e");
  CHECK(s.group().name(psi_n(s, Word{0, 1})) == "g");
  const auto z = full2_z1("+1", "-1");
  CHECK(z.group().is_identity(psi_n(z, Word{0, 0, 1, 1})));
  const auto gm = make_system(SftSpec::golden_mean(), livsic::testing::cyclic_group(2), {"e", "g"});
  CHECK_THROWS_AS(psi_n(gm, Word{1, 1}), Error);

  const auto s3 = make_system(SftSpec::full_shift(2), livsic::testing::symmetric3(), {"(1 2)", "(1 2 3)"});
  const Group& g = s3.group();
  CHECK(psi_n(s3, Word{0, 1}) == g.multiply(s3.psi(1), s3.psi(0)));
  CHECK(psi_n(s3, Word{0, 1}) != g.multiply(s3.psi(0), s3.psi(1)));
}

TEST_CASE("psi products are cocycles over concatenation") {
  Rng rng(7);
  for (const auto& system : livsic::testing::finite_corpus()) {
    const auto& sft = system.sft();
    for (int trial = 0; trial < 20; ++trial) {
      const auto words = admissible_words(sft, static_cast<int>(rng.uniform(2, 8)), 100000);
      const Word& w = words[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(words.size()) - 1))];
      const auto cut = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(w.size()) - 1));
      const Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(cut)), v(w.begin() + static_cast<std::ptrdiff_t>(cut), w.end());
      CHECK(psi_n(system, w) == system.group().multiply(psi_n(system, v), psi_n(system, u)));
    }
  }
}

TEST_CASE("Frobenius classes") {
  const auto s = full2_c2("e", "g");
  auto tag = frobenius_class(s, make_orbit(s.sft(), Word{0, 1}));
  CHECK_FALSE(tag.trivial);
  REQUIRE(tag.conjugacy_class);
  CHECK(tag.conjugacy_class->members == std::vector<GroupElement>{s.group().parse("g")});
  const auto z = full2_z1("+1", "-1");
  tag = frobenius_class(z, make_orbit(z.sft(), Word{0, 0, 1, 1}));
  CHECK(tag.trivial);
  CHECK_FALSE(tag.conjugacy_class);
}

TEST_CASE("Frobenius classes are rotation invariant") {
  for (const auto& system : livsic::testing::finite_corpus()) {
    for (const auto& o : enumerate_periodic_orbits(system.sft(), 5)) {
      const auto cls = conjugacy_class_of(system.group(), psi_n(system, o.word));
      for (std::size_t r = 1; r < o.period(); ++r)
        CHECK(conjugacy_class_of(system.group(), psi_n(system, rotate(o.word, r))).members == cls.members);
    }
  }
}

TEST_CASE("product graph shape") {
  auto g = build_product_graph(full2_c2("e", "g"), 1);
  CHECK(g.vertex_count() == 4);
  CHECK(g.edges().size() == 8);
  g = build_product_graph(make_system(SftSpec::golden_mean(), livsic::testing::cyclic_group(2), {"e", "g"}), 1);
  CHECK(g.vertex_count() == 4);
  CHECK(g.edges().size() == 6);
  const auto split = full2_c2("e", "e");
  g = build_product_graph(split, 1);
  std::size_t components = 0;
  strongly_connected_components(g.digraph(), &components);
  CHECK(components == 2);
  CHECK(g.label(split, 1) == "(1,g)");
  CHECK_THROWS_AS(build_product_graph(full2_z1("+1", "-1"), 1), Error);
}

TEST_CASE("right action preserves product edges") {
  for (const auto& system : livsic::testing::finite_corpus()) {
    const auto g = build_product_graph(system, 1);
    const Group& group = system.group();
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : g.edges()) edges.emplace(e.tail, e.head);
    for (const auto& h : group.elements())
      for (const auto& e : g.edges()) {
        const auto act = [&](std::size_t v) {
          return g.vertex(g.block_of(v), group.multiply(group.element(g.element_of(v)), h).index());
        };
        CHECK(edges.contains({act(e.tail), act(e.head)}));
      }
  }
}

TEST_CASE("transitivity, finite covers") {
  CHECK(std::holds_alternative<Transitive>(check_transitivity(full2_c2("e", "g"))));
  const auto verdict = check_transitivity(full2_c2("e", "e"));
  REQUIRE(std::holds_alternative<NotTransitive>(verdict));
  const auto& no = std::get<NotTransitive>(verdict);
  REQUIRE(no.unreachable);
  CHECK(no.unreachable->first == "(1,e)");
  CHECK(no.unreachable->second == "(1,g)");
}

TEST_CASE("transitivity agrees with exhaustive reachability") {
  for (const auto& system : livsic::testing::finite_corpus())
    CHECK(std::holds_alternative<Transitive>(check_transitivity(system)) == oracle::brute_transitivity(system));
}

TEST_CASE("transitivity, free abelian covers") {
  auto verdict = check_transitivity(full2_z1("+1", "+1"));
  REQUIRE(std::holds_alternative<NotTransitive>(verdict));
  CHECK(std::get<NotTransitive>(verdict).certificate == "drift");

  verdict = check_transitivity(full2_z1("+2", "-2"));
  REQUIRE(std::holds_alternative<NotTransitive>(verdict));
  CHECK(std::get<NotTransitive>(verdict).certificate == "proper_subgroup");

  verdict = check_transitivity(full2_z1("+1", "-1"));
  REQUIRE(std::holds_alternative<TransitivityUnknown>(verdict));
  const auto& evidence = std::get<TransitivityUnknown>(verdict);
  CHECK(evidence.cycle_lattice.full);
  CHECK(evidence.probed_lattice.full);
  CHECK(evidence.zero_in_interior);
}

TEST_CASE("trivial-class orbits") {
  auto list = enumerate_trivial_class_orbits(full2_c2("e", "g"), 2);
  REQUIRE(list.size() == 1);
  CHECK(list[0].orbit.word == Word{0});
  list = enumerate_trivial_class_orbits(full2_z1("+1", "-1"), 2);
  REQUIRE(list.size() == 1);
  CHECK(list[0].orbit.word == Word{0, 1});
  CHECK(enumerate_trivial_class_orbits(full2_c2("e", "g"), 0).empty());
}

TEST_CASE("closed product walks project onto trivial-class points") {
  for (const auto& system : livsic::testing::finite_corpus()) {
    std::set<Word> expected;
    for (const auto& o : enumerate_periodic_orbits(system.sft(), 6)) {
      const auto m = system.group().element_order(psi_n(system, o.word));
      if (o.period() * m > 6) continue;
      Word w;
      for (std::size_t i = 0; i < m; ++i) w.insert(w.end(), o.word.begin(), o.word.end());
      expected.insert(w);
    }
    CHECK(oracle::brute_product_cycles(system, 6) == expected);
  }
}
