#pragma once

#include <cstdint>

#include "ordkit/joinspec.hpp"
#include "ordkit/poset.hpp"

namespace ordkit {

/// SplitMix64. Fixed algorithm so that a (seed, config) pair reproduces
/// identical instances across implementations:
///   state += 0x9E3779B97F4A7C15
///   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, bound) via modulo (documented, reproducible).
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

/// Transitive closure of a random DAG on n labelled nodes: each pair
/// (i, j) with i < j, visited in row-major order, gets an edge when
/// rng.next() % edge_den < edge_num. Labels are a, b, c, ... (e<i> past
/// the alphabet).
Poset random_poset(SplitMix64& rng, int n, std::uint32_t edge_num,
                   std::uint32_t edge_den);

/// BP plus k members drawn uniformly without replacement (partial
/// Fisher-Yates over the ascending list of joinable subsets of size >= 2).
/// Takes every candidate when fewer than k exist.
JoinSpec random_joinspec(SplitMix64& rng, const Poset& p, int k);

}  // namespace ordkit
