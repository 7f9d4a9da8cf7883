#include "ordkit/rng.hpp"

#include <utility>
#include <vector>

namespace ordkit {

Poset random_poset(SplitMix64& rng, int n, std::uint32_t edge_num,
                   std::uint32_t edge_den) {
  if (n < 1 || edge_den == 0 || edge_num > edge_den)
    throw validation_error("random_poset: bad configuration");
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    labels[i] = i < 26 ? std::string(1, static_cast<char>('a' + i))
                       : "e" + std::to_string(i);
  }
  std::vector<Mask> strict(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.next() % edge_den < edge_num) strict[i] |= bit(j);
    }
  }
  // Reflexive-transitive closure; the edge direction i -> j with i < j
  // already rules out cycles.
  std::vector<Mask> up(n);
  for (int i = n - 1; i >= 0; --i) {
    Mask row = bit(i);
    Mask rest = strict[i];
    while (rest) {
      int j = first_bit(rest);
      rest &= rest - 1;
      row |= up[j];
    }
    up[i] = row;
  }
  return Poset::from_relation(std::move(labels), std::move(up));
}

JoinSpec random_joinspec(SplitMix64& rng, const Poset& p, int k) {
  const std::uint64_t count = std::uint64_t{1} << p.size();
  if (count > limits().max_subset_scan)
    throw cap_exceeded("random_joinspec candidate scan above cap");
  std::vector<Mask> candidates;
  for (Mask s = 0; s < count; ++s) {
    if (popcount(s) >= 2 && p.join_of(s)) candidates.push_back(s);
  }
  const std::size_t take = std::min<std::size_t>(k < 0 ? 0 : k, candidates.size());
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + rng.below(candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
  }
  candidates.resize(take);
  return JoinSpec::make(p, candidates);
}

}  // namespace ordkit
