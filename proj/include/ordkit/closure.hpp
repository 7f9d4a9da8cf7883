#pragma once

#include <optional>
#include <vector>

#include "ordkit/joinspec.hpp"
#include "ordkit/lattice.hpp"
#include "ordkit/maps.hpp"

namespace ordkit {

/// A standard closure operator on a poset, either backed by a
/// join-specification (gamma) or by an explicit closed-set family. A
/// family must be intersection-closed, contain the carrier and every
/// principal downset, and consist of downsets; closing a set then means
/// intersecting the members containing it.
class ClosureRepr {
 public:
  static ClosureRepr from_spec(JoinSpec u);
  static ClosureRepr from_family(Poset base, std::vector<Mask> family);

  const Poset& base() const { return base_; }
  bool spec_backed() const { return spec_.has_value(); }
  const JoinSpec* spec() const { return spec_ ? &*spec_ : nullptr; }

  Mask close(Mask s) const;
  bool is_closed(Mask s) const { return close(s) == s; }

  /// All closed sets, sorted by (size, mask); enumerates for spec-backed
  /// operators (cap-guarded).
  std::vector<Mask> closed_family() const;

  Lattice closed_lattice() const;

 private:
  ClosureRepr(Poset base, std::optional<JoinSpec> spec, std::vector<Mask> family)
      : base_(std::move(base)), spec_(std::move(spec)), family_(std::move(family)) {}
  Poset base_;
  std::optional<JoinSpec> spec_;
  std::vector<Mask> family_;  // empty when spec-backed
};

/// Gamma1 <= Gamma2 pointwise, decided through the closed sets: every
/// Gamma2-closed set must be Gamma1-closed. Returns a Gamma2-closed set
/// that is not Gamma1-closed as the counterexample.
std::optional<Mask> closure_leq_counterexample(const ClosureRepr& g1, const ClosureRepr& g2);
inline bool closure_leq(const ClosureRepr& g1, const ClosureRepr& g2) {
  return !closure_leq_counterexample(g1, g2);
}

struct InducedClosureMap {
  LatticeMap phi;  // closed set C of the smaller operator -> Gamma(C)
  bool fixes_base = false;
  bool join_preserving = false;
  bool binary_meet_preserving = false;
};

/// The unique completely join-preserving map between the closed-set
/// lattices of two comparable standard closure operators. Errors when the
/// precondition gp <= g fails (reporting a closed set that separates them).
InducedClosureMap induced_closure_map(const ClosureRepr& gp, const ClosureRepr& g);

/// The closure operator of a join-completion e: closed sets are the
/// preimages of principal downsets. e is given as an element assignment of
/// dom into the lattice and must be an order embedding with join-dense
/// image.
ClosureRepr closure_from_completion(const Poset& dom, const Lattice& l,
                                    std::span<const int> e);
ClosureRepr closure_from_completion(const PosetMap& e);

/// Both directions of the completion/closure correspondence on one
/// instance: rebuilding the closure operator from the canonical completion
/// of Gamma returns the same closed family.
bool roundtrip_check(const ClosureRepr& g);

/// The lattice of Gamma_e-closed sets is isomorphic to l over dom:
/// x -> e^{-1}(x-down) is an order isomorphism matching the etas.
bool completion_roundtrip_check(const Poset& dom, const Lattice& l,
                                std::span<const int> e);

}  // namespace ordkit
