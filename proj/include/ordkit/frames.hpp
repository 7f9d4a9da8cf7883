#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ordkit/ideal_lattice.hpp"
#include "ordkit/joinspec.hpp"
#include "ordkit/lattice.hpp"
#include "ordkit/maps.hpp"

namespace ordkit {

/// The equivalent tests for "the ideal lattice is a frame". Method 5 (the
/// one-step operator stays down-closed on members) is the default; it
/// needs no lattice enumeration. Methods 1 and 7 enumerate and are
/// cap-guarded. Method 10 is the descent property, decided by direct
/// witness search.
enum class FrameGenMethod {
  ideal_lattice = 1,    // enumerate I_U, test distributivity
  gamma_equation = 4,   // p-down ∩ gamma(S) = gamma(p-down ∩ S-down)
  upsilon_downclosed = 5,
  smallest_ideal = 7,   // gamma(S) = upsilon(S) on every downset
  descent = 10,
  all = 0,
};

struct FrameGenReport {
  bool verdict = false;
  FrameGenMethod method = FrameGenMethod::upsilon_downclosed;
  /// On failure: the (|S|, p)-least member S and element p with p <= join S
  /// but p outside upsilon(U, S).
  std::optional<std::pair<Mask, int>> witness;
  /// Filled by method `all`; the harness asserts these agree.
  std::vector<std::pair<FrameGenMethod, bool>> method_verdicts;
  bool methods_agree = true;

  std::string describe(const Poset& p) const;
};

FrameGenReport is_frame_generating(const JoinSpec& u,
                                   FrameGenMethod method = FrameGenMethod::upsilon_downclosed);

/// The descent property: every p below the join of a member S is itself
/// the join of some U+-set inside S-down. Witness search enumerates
/// submasks directly, independent of the upsilon formula.
FrameGenReport descent_check(const JoinSpec& u);

/// The strong variant demands the witness set inside U itself.
bool strong_descent_check(const JoinSpec& u);

/// The canonical embedding p -> p-down into the ideal lattice is an order
/// embedding, completely meet-preserving, U-join-preserving, and its image
/// is join-dense.
bool verify_eta(const JoinSpec& u);

struct UniversalExtension {
  LatticeMap h;           // I_U -> L, ideal C -> join of e[C]
  bool fixes_base = false;        // h(eta(p)) == e(p)
  bool join_preserving = false;   // binary + sampled families + empty join
  bool join_dense = false;        // every ideal is the join of its principal ideals
};

/// The unique completely join-preserving map out of the ideal completion.
/// e (as an element assignment into L) must be a U-embedding.
UniversalExtension universal_extension(const JoinSpec& u, const Lattice& l,
                                       std::span<const int> e);
/// Convenience overload: the codomain poset is viewed as a lattice.
UniversalExtension universal_extension(const JoinSpec& u, const PosetMap& e);

/// Elements that are not the join of any U+-set other than a
/// max-containing one; for distributive I_U over a bottomless poset this
/// is the eta-preimage of the join-irreducibles.
Mask join_free_elements(const JoinSpec& u);

struct ClosureMeetResult {
  bool equal = false;
  Mask lhs = 0;  // gamma of the intersection of the downsets
  Mask rhs = 0;  // intersection of the gammas
};

/// gamma(U, ∩ S_j-down) versus ∩ gamma(U, S_j) for a finite family.
ClosureMeetResult closure_meet_check(const JoinSpec& u, std::span<const Mask> sets);

/// Pointwise meet-distribution hypothesis: whenever p ∧ join(T) is defined
/// for a member T, the join of {p ∧ t} is defined and equal.
bool meet_distribution_hypothesis(const JoinSpec& u);

/// U_alpha ⊆ U+ for alpha = radius(U) (the other inclusion is automatic).
bool radius_family_in_uplus(const JoinSpec& u);

}  // namespace ordkit
