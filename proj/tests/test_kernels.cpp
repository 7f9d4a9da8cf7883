#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"
#include "ordkit/enumerate.hpp"
#include "ordkit/kernels.hpp"
#include "ordkit/lattice.hpp"
#include "ordkit/rng.hpp"

using namespace ordkit;
using namespace ordkit::tests;

TEST_CASE("parallel filter matches the serial reference") {
  SplitMix64 rng(123);
  for (int round = 0; round < 3; ++round) {
    Poset p = random_poset(rng, 15, 1, 3);
    auto pred = [&p](Mask s) { return s != 0 && p.join_of(s).has_value(); };
    const std::uint64_t count = std::uint64_t{1} << p.size();
    auto serial = kernels::filter_masks_serial(count, pred);
    kernels::set_parallel_enabled(true);
    auto parallel = kernels::filter_masks(count, pred);
    CHECK(serial == parallel);
  }
}

TEST_CASE("parallel scans return the least witness") {
  SplitMix64 rng(7);
  for (int round = 0; round < 4; ++round) {
    Poset p = random_poset(rng, 8, 1, 3);
    Lattice l = Lattice::from_closed_family(p, all_downsets(p));
    auto viol = [&l](int x, int y, int z) {
      return l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z));
    };
    auto serial = kernels::find_min_triple_serial(l.size(), viol);
    auto parallel = kernels::find_min_triple(l.size(), viol);
    CHECK(serial == parallel);

    auto pairp = [&l](int x, int y) { return !l.leq(x, y) && !l.leq(y, x); };
    CHECK(kernels::find_min_pair_serial(l.size(), pairp) ==
          kernels::find_min_pair(l.size(), pairp));
  }
}

TEST_CASE("for_each_index covers every slot once") {
  std::vector<int> hits(1000, 0);
  kernels::for_each_index(1000, [&hits](std::int64_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
}

TEST_CASE("parallel toggle") {
  kernels::set_parallel_enabled(false);
  CHECK(!kernels::parallel_enabled());
  auto out = kernels::filter_masks(std::uint64_t{1} << 15,
                                   [](Mask m) { return (m & 1) == 0; });
  CHECK(out.size() == (std::uint64_t{1} << 14));
  kernels::set_parallel_enabled(true);
  CHECK(kernels::parallel_enabled());
}
