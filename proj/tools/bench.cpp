#include <chrono>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ordkit/enumerate.hpp"
#include "ordkit/kernels.hpp"
#include "ordkit/lattice.hpp"
#include "ordkit/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace ordkit;
using Clock = std::chrono::steady_clock;

template <class Fn>
double time_ms(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = Clock::now();
    fn();
    auto t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const std::string& name, double serial_ms, double parallel_ms) {
  std::cout << name << ": serial " << serial_ms << " ms, parallel " << parallel_ms
            << " ms, speedup " << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0) << "x\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP kernel comparison"};
  int n = 18;
  std::uint64_t seed = 42;
  int reps = 3;
  app.add_option("--n", n, "poset size for the subset-scan benchmark (default 18)");
  app.add_option("--seed", seed, "PRNG seed (default 42)");
  app.add_option("--reps", reps, "repetitions, best-of (default 3)");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  std::cout << "OpenMP enabled, max threads " << omp_get_max_threads() << "\n";
#else
  std::cout << "built without OpenMP; both columns run the serial path\n";
#endif

  limits().max_elements = std::max(limits().max_elements, n);
  SplitMix64 rng(seed);
  Poset p = random_poset(rng, n, 1, 3);

  // Subset filter: which subsets have a defined join.
  const std::uint64_t count = std::uint64_t{1} << p.size();
  auto pred = [&p](Mask s) { return s != 0 && p.join_of(s).has_value(); };
  std::vector<Mask> out_serial, out_parallel;
  double filt_s = time_ms(reps, [&] { out_serial = kernels::filter_masks_serial(count, pred); });
  kernels::set_parallel_enabled(true);
  double filt_p = time_ms(reps, [&] { out_parallel = kernels::filter_masks(count, pred); });
  report("joinable-subset scan (2^" + std::to_string(n) + ")", filt_s, filt_p);
  if (out_serial != out_parallel) {
    std::cerr << "MISMATCH between serial and parallel filter\n";
    return 1;
  }

  // Distributivity triples over the downset lattice of a smaller poset.
  SplitMix64 rng2(seed ^ 0x5DEECE66Dull);
  limits().max_lattice = 4096;
  Poset q = random_poset(rng2, 11, 1, 3);
  Lattice l = Lattice::from_closed_family(q, all_downsets(q));
  auto viol = [&l](int x, int y, int z) {
    return l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z));
  };
  std::optional<std::array<int, 3>> w_serial, w_parallel;
  double tri_s = time_ms(reps, [&] { w_serial = kernels::find_min_triple_serial(l.size(), viol); });
  double tri_p = time_ms(reps, [&] { w_parallel = kernels::find_min_triple(l.size(), viol); });
  report("distributivity triples (m=" + std::to_string(l.size()) + ")", tri_s, tri_p);
  if (w_serial != w_parallel) {
    std::cerr << "MISMATCH between serial and parallel triple scan\n";
    return 1;
  }
  std::cout << "downset lattice " << (w_serial ? "is not" : "is") << " distributive\n";
  return 0;
}
