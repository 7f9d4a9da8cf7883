#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ordkit/closure.hpp"
#include "ordkit/frames.hpp"
#include "ordkit/joinspec.hpp"

namespace ordkit {

/// Largest frame-generating specification inside U: each round removes
/// every member whose one-step closure is not down-closed (recomputed
/// against the shrunken specification), until none remain. Singletons are
/// never problematic, so the loop bottoms out at BP at worst.
JoinSpec uminus(const JoinSpec& u);

struct UminusTrace {
  JoinSpec result;
  int rounds = 0;
  std::vector<Mask> removed;  // concatenated round by round
  /// Per removed set: whether it is still problematic when re-added to the
  /// final result on its own. Diagnostic only (simultaneous removal is
  /// what the construction prescribes).
  std::vector<std::pair<Mask, bool>> removed_still_problematic;
};

UminusTrace uminus_traced(const JoinSpec& u);

/// One-at-a-time pruning (always dropping the least problematic member);
/// kept to compare fixpoints with the simultaneous rounds.
JoinSpec uminus_sequential(const JoinSpec& u);

/// Lattice operations of JF (frame-generating specifications) and JF+
/// (maximal frame-generating ones). Inputs are validated against the
/// stated preconditions.
JoinSpec jf_join(std::span<const JoinSpec> specs);
JoinSpec jf_meet(std::span<const JoinSpec> specs);
JoinSpec jfplus_join(std::span<const JoinSpec> specs);
JoinSpec jfplus_meet(std::span<const JoinSpec> specs);

/// Top of both JF and JF+: uminus of the all-joins specification.
JoinSpec jf_top(const Poset& p);
/// Bottoms: (BP, BP+).
std::pair<JoinSpec, JoinSpec> jf_bottoms(const Poset& p);

/// U = U+, tested by scanning subsets through the membership oracle.
bool is_maximal(const JoinSpec& u);
/// A set in U+ but not in U, when one exists.
std::optional<Mask> maximality_witness(const JoinSpec& u);

/// uplus(u1) ⊆ u2 iff u1 ⊆ u2, for u1 frame-generating and u2 maximal
/// frame-generating (preconditions checked).
bool reflection_pair_check(const JoinSpec& u1, const JoinSpec& u2);

struct TerminalCheck {
  JoinSpec w;                   // uminus of the completion's specification
  bool w_maximal = false;
  bool biconditional = true;    // map exists from I_U into L iff U ⊆ W
  bool phi_ok = true;           // the canonical map is join-preserving and fixes P
};

/// For a join-completion e of dom into a finite frame l: W = (U_e)- is
/// maximal and admits a map from I_U exactly for the sampled
/// frame-generating U ⊆ W.
TerminalCheck terminal_object_check(const Poset& dom, const Lattice& l,
                                    std::span<const int> e,
                                    std::span<const JoinSpec> sampled_fg);

/// Triangle identities of the all-joins adjunction on one poset (its
/// all-joins specification must be frame-generating), plus the unit
/// naturality square for a given embedding when supplied.
bool global_adjunction_check(const Poset& p);
bool unit_naturality_check(const PosetMap& f);

}  // namespace ordkit
