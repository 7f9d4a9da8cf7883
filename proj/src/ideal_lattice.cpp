#include "ordkit/ideal_lattice.hpp"

#include <algorithm>

#include "ordkit/enumerate.hpp"

namespace ordkit {

IdealLattice ideal_lattice(const JoinSpec& u) {
  auto ideals = closed_sets(u.owner().size(), [&u](Mask s) { return gamma(u, s); },
                            limits().max_closed_sets);
  return IdealLattice(u, std::move(ideals));
}

int IdealLattice::index_of(Mask s) const {
  auto cmp = [](Mask a, Mask b) {
    return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
  };
  auto it = std::lower_bound(ideals_.begin(), ideals_.end(), s, cmp);
  if (it != ideals_.end() && *it == s) return static_cast<int>(it - ideals_.begin());
  return -1;
}

Lattice IdealLattice::lattice() const {
  return Lattice::from_closed_family(owner(), ideals_);
}

}  // namespace ordkit
