#pragma once

#include <functional>
#include <vector>

#include "ordkit/base.hpp"
#include "ordkit/poset.hpp"

namespace ordkit {

/// Enumerates the closed sets of a closure operator over {0..n-1} with the
/// next-closure algorithm (lectic order). `close` must be extensive,
/// monotone and idempotent. Throws cap_exceeded once more than `cap` sets
/// have been produced. The result is re-sorted by (size, mask).
std::vector<Mask> closed_sets(int n, const std::function<Mask(Mask)>& close,
                              std::uint64_t cap);

/// Exactly the down-closed subsets of P, each once, including the empty set
/// and the whole carrier. Guarded by limits().max_closed_sets.
std::vector<Mask> all_downsets(const Poset& p);

}  // namespace ordkit
