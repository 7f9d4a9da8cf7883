#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ordkit/enumerate.hpp"
#include "ordkit/lattice.hpp"
#include "ordkit/poset.hpp"

using namespace ordkit;

namespace {

Poset nounion() {
  return Poset::from_covers({"a", "b", "c", "d", "e", "f"},
                            {{"a", "d"}, {"b", "d"}, {"b", "e"}, {"c", "e"},
                             {"d", "f"}, {"e", "f"}});
}

Poset strict() {
  return Poset::from_covers(
      {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"},
      {{"a", "e"}, {"b", "e"}, {"b", "f"}, {"c", "f"}, {"c", "g"}, {"d", "g"},
       {"e", "h"}, {"f", "h"}, {"f", "i"}, {"g", "i"}, {"h", "j"}, {"i", "j"}});
}

Mask set_of(const Poset& p, std::initializer_list<const char*> ids) {
  Mask m = 0;
  for (const char* id : ids) m |= bit(p.index(id));
  return m;
}

}  // namespace

TEST_CASE("singleton poset") {
  Poset p = Poset::from_covers({"a"}, {});
  CHECK(p.size() == 1);
  CHECK(p.leq(0, 0));
  CHECK(p.bottom() == 0);
  CHECK(p.top() == 0);
}

TEST_CASE("transitivity from covers") {
  Poset p = nounion();
  CHECK(p.leq(p.index("a"), p.index("f")));  // through d
  CHECK(!p.leq(p.index("a"), p.index("e")));
  CHECK(!p.bottom().has_value());
  CHECK(p.top() == p.index("f"));
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(Poset::from_covers({"a", "a"}, {}), validation_error);
  CHECK_THROWS_AS(Poset::from_covers({"a"}, {{"a", "x"}}), validation_error);
  CHECK_THROWS_AS(Poset::from_covers({"a", "b"}, {{"a", "b"}, {"b", "a"}}),
                  validation_error);
  CHECK_THROWS_AS(Poset::from_covers({"a", "b", "c"},
                                     {{"a", "b"}, {"b", "c"}, {"c", "a"}}),
                  validation_error);
  CHECK_THROWS_AS(Poset::from_covers({"a"}, {{"a", "a"}}), validation_error);
}

TEST_CASE("downclose and upclose") {
  Poset p = nounion();
  CHECK(p.down_close(set_of(p, {"d"})) == set_of(p, {"a", "b", "d"}));
  CHECK(p.down_close(0) == 0);
  CHECK(p.up_close(set_of(p, {"d"})) == set_of(p, {"d", "f"}));

  Poset s = strict();
  CHECK(s.down_close(set_of(s, {"e", "g"})) ==
        set_of(s, {"a", "b", "c", "d", "e", "g"}));

  ElemSet es(p, set_of(p, {"d"}));
  CHECK(downclose(p, es).bits == set_of(p, {"a", "b", "d"}));
  ElemSet other(s, 0);
  CHECK_THROWS_AS(downclose(p, other), validation_error);
  CHECK_THROWS_AS(es | other, validation_error);
}

TEST_CASE("downclose is a closure operator") {
  Poset s = strict();
  for (Mask m = 0; m < (Mask{1} << s.size()); m += 7) {
    Mask d = s.down_close(m);
    CHECK(subset(m, d));
    CHECK(s.down_close(d) == d);
    CHECK(subset(s.down_close(m & (m >> 1)), d));
  }
}

TEST_CASE("partial joins and meets") {
  Poset p = nounion();
  CHECK(p.join_of(set_of(p, {"a", "b"})) == p.index("d"));
  CHECK(!p.join_of(set_of(p, {"d", "e", "a"})).has_value() ==
        false);  // f bounds everything
  CHECK(p.join_of(0) == std::nullopt);  // no bottom

  Poset anti = Poset::from_covers({"a", "b"}, {});
  CHECK(anti.join_of(set_of(anti, {"a", "b"})) == std::nullopt);

  Poset s = strict();
  CHECK(s.join_of(set_of(s, {"b", "g"})) == s.index("i"));
  CHECK(s.join_of(set_of(s, {"a", "b", "c", "d", "e", "g"})) == s.index("j"));

  Poset chain = Poset::from_covers({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
  CHECK(chain.join_of(0) == chain.index("x"));  // empty join is the bottom
  CHECK(chain.meet_of(0) == chain.index("z"));

  // A defined join is an upper bound below every upper bound.
  for (Mask m = 1; m < (Mask{1} << s.size()); m += 5) {
    auto j = s.join_of(m);
    if (!j) continue;
    Mask rest = m;
    while (rest) {
      int i = first_bit(rest);
      rest &= rest - 1;
      CHECK(s.leq(i, *j));
    }
    for (int ub = 0; ub < s.size(); ++ub) {
      if (subset(m, s.down_of(ub))) CHECK(s.leq(*j, ub));
    }
  }
}

TEST_CASE("cover round trip") {
  Poset s = strict();
  auto covers = s.cover_pairs();
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> named;
  for (int i = 0; i < s.size(); ++i) labels.push_back(s.label(i));
  for (auto [lo, hi] : covers) named.emplace_back(s.label(lo), s.label(hi));
  Poset rebuilt = Poset::from_covers(labels, named);
  for (int i = 0; i < s.size(); ++i) {
    for (int j = 0; j < s.size(); ++j) CHECK(s.leq(i, j) == rebuilt.leq(i, j));
  }
  CHECK(covers.size() == 12);
}

TEST_CASE("all downsets") {
  Poset anti = Poset::from_covers({"a", "b"}, {});
  CHECK(all_downsets(anti).size() == 4);

  Poset chain = Poset::from_covers({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
  CHECK(all_downsets(chain).size() == 4);

  // Against the brute-force filter.
  Poset p = nounion();
  auto downs = all_downsets(p);
  std::vector<Mask> brute;
  for (Mask m = 0; m < (Mask{1} << p.size()); ++m) {
    if (p.is_down_closed(m)) brute.push_back(m);
  }
  CHECK(downs.size() == brute.size());
  for (Mask m : brute) CHECK(std::find(downs.begin(), downs.end(), m) != downs.end());

  auto saved = limits().max_closed_sets;
  limits().max_closed_sets = 3;
  CHECK_THROWS_AS(all_downsets(p), cap_exceeded);
  limits().max_closed_sets = saved;
}

TEST_CASE("join irreducibles") {
  Poset chain = Poset::from_covers({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
  Lattice lc = Lattice::from_poset(chain);
  CHECK(join_irreducibles(lc) == std::vector<int>{chain.index("y"), chain.index("z")});

  // Powerset of two atoms.
  Poset square = Poset::from_covers(
      {"bot", "a", "b", "top"},
      {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}});
  Lattice ls = Lattice::from_poset(square);
  CHECK(join_irreducibles(ls) ==
        std::vector<int>{square.index("a"), square.index("b")});

  Poset anti = Poset::from_covers({"a", "b"}, {});
  CHECK_THROWS_AS(Lattice::from_poset(anti), validation_error);
}

TEST_CASE("size cap") {
  auto saved = limits().max_elements;
  limits().max_elements = 3;
  CHECK_THROWS_AS(Poset::from_covers({"a", "b", "c", "d"}, {}), validation_error);
  limits().max_elements = saved;
}
