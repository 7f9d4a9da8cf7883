#pragma once

#include <span>
#include <vector>

#include "ordkit/joinspec.hpp"
#include "ordkit/lattice.hpp"

namespace ordkit {

/// The complete lattice of U-ideals, ordered by inclusion. Meet is
/// intersection, join is the closure of the union, the top is the whole
/// carrier and the bottom is {} or {bottom} as the empty-set rules demand.
class IdealLattice {
 public:
  const JoinSpec& spec() const { return spec_; }
  const Poset& owner() const { return spec_.owner(); }
  std::span<const Mask> ideals() const { return ideals_; }
  std::size_t size() const { return ideals_.size(); }
  Mask ideal(std::size_t i) const { return ideals_[i]; }

  /// Index of an ideal, or -1 when the set is not an ideal. Ideals are
  /// sorted by (size, mask).
  int index_of(Mask s) const;

  Mask meet(Mask a, Mask b) const { return a & b; }
  Mask join(Mask a, Mask b) const { return gamma(spec_, a | b); }
  Mask top() const { return ideals_.back(); }
  Mask bottom_ideal() const { return ideals_.front(); }

  /// Image of the canonical embedding p -> p-down.
  Mask eta(int p) const { return owner().down_of(p); }

  /// Materializes meet/join tables for the structural checks.
  Lattice lattice() const;

 private:
  friend IdealLattice ideal_lattice(const JoinSpec&);
  IdealLattice(JoinSpec spec, std::vector<Mask> ideals)
      : spec_(std::move(spec)), ideals_(std::move(ideals)) {}
  JoinSpec spec_;
  std::vector<Mask> ideals_;
};

/// Enumerates every U-ideal (next-closure over gamma, cap-guarded).
IdealLattice ideal_lattice(const JoinSpec& u);

}  // namespace ordkit
