#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"
#include "ordkit/ideal_lattice.hpp"
#include "ordkit/rng.hpp"
#include "ordkit/workspace.hpp"

using namespace ordkit;
using namespace ordkit::tests;

TEST_CASE("parse the shipped fixtures") {
  Workspace w = fixture("nounion.poset");
  CHECK(w.poset.size() == 6);
  CHECK(w.poset.leq(w.poset.index("a"), w.poset.index("f")));
  CHECK(w.find("U1") != nullptr);
  CHECK(w.require("U1").contains(set_of(w.poset, {"a", "b"})));
  CHECK(w.find("nope") == nullptr);
  CHECK_THROWS_AS(w.require("nope"), validation_error);
}

TEST_CASE("single element file") {
  Workspace w = parse_workspace("elements: a\n");
  CHECK(w.poset.size() == 1);
  CHECK(w.specs.empty());
}

TEST_CASE("parser errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_workspace("elements: a\ncover: a a\n"),
                       "line 2: cover 'a < a' relates an element to itself",
                       parse_error);
  try {
    parse_workspace("elements: a b\n\njoinspec U: {a b}\n");
    CHECK(false);
  } catch (const parse_error& e) {
    CHECK(e.line == 3);  // member without a join
  }
  try {
    parse_workspace("elements: a b\njoinspec U: {}\n");
    CHECK(false);
  } catch (const parse_error& e) {
    CHECK(e.line == 2);  // empty set without a bottom
  }
  CHECK_THROWS_AS(parse_workspace("elements: a\nelements: a\n"), parse_error);
  CHECK_THROWS_AS(parse_workspace("cover: a b\n"), parse_error);
  CHECK_THROWS_AS(parse_workspace("elements: a b\ncover: a c\n"), parse_error);
  CHECK_THROWS_AS(parse_workspace("elements: a b\nnonsense\n"), parse_error);
  CHECK_THROWS_AS(parse_workspace("elements: a b\njoinspec U: {a\n"), parse_error);
  CHECK_THROWS_AS(
      parse_workspace("elements: a b\njoinspec U: {a}\njoinspec U: {b}\n"),
      parse_error);
}

TEST_CASE("primed identifiers") {
  Workspace w = fixture("notinj_q.poset");
  CHECK(w.poset.index("a'") >= 0);
  CHECK(w.poset.leq(w.poset.index("a'"), w.poset.index("top")));
}

TEST_CASE("json round trip") {
  for (const char* name :
       {"nounion.poset", "strict.poset", "emnec_q.poset", "notinj_q.poset"}) {
    Workspace w = fixture(name);
    std::string json = export_json(w);
    Workspace back = parse_workspace(json, "roundtrip");
    CHECK(equivalent(w, back));
    // A second trip is byte-identical.
    CHECK(export_json(back) == json);
  }
}

TEST_CASE("dot export") {
  Workspace w = fixture("nounion.poset");
  std::string dot = export_dot(w.poset);
  // Six nodes and six cover edges.
  std::size_t nodes = 0, edges = 0, pos = 0;
  while ((pos = dot.find('\n', pos + 1)) != std::string::npos) {
    std::size_t prev = dot.rfind('\n', pos - 1);
    std::string line = dot.substr(prev + 1, pos - prev - 1);
    if (line.find("->") != std::string::npos) ++edges;
    else if (line.find('"') != std::string::npos) ++nodes;
  }
  CHECK(nodes == 6);
  CHECK(edges == 6);

  Workspace wq = fixture("emnec_q.poset");
  IdealLattice il = ideal_lattice(wq.require("Uinf"));
  std::string ldot = export_dot(il);
  CHECK(ldot.find("\"{c}\"") != std::string::npos);
  CHECK(ldot.find("\"{c,d}\"") != std::string::npos);
  CHECK(ldot.find("\"{c}\" -> \"{c,d}\"") != std::string::npos);
}

TEST_CASE("deterministic random instances") {
  SplitMix64 a(42), b(42);
  Poset pa = random_poset(a, 5, 1, 2);
  Poset pb = random_poset(b, 5, 1, 2);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) CHECK(pa.leq(i, j) == pb.leq(i, j));
  }
  JoinSpec ua = random_joinspec(a, pa, 3);
  JoinSpec ub = random_joinspec(b, pb, 3);
  CHECK(std::vector<Mask>(ua.members().begin(), ua.members().end()) ==
        std::vector<Mask>(ub.members().begin(), ub.members().end()));

  // Degenerate probabilities.
  SplitMix64 c(7);
  Poset anti = random_poset(c, 4, 0, 1);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) CHECK(anti.leq(i, j) == (i == j));
  }
  Poset total = random_poset(c, 4, 1, 1);
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) CHECK(total.leq(i, j));
  }
}

TEST_CASE("splitmix64 reference values") {
  // First outputs for seed 0 of the published algorithm.
  SplitMix64 r(0);
  CHECK(r.next() == 0xE220A8397B1DCDAFull);
  CHECK(r.next() == 0x6E789E6AA1B965F4ull);
  CHECK(r.next() == 0x06C45D188009454Full);
}
