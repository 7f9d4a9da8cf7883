#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ordkit/ideal_lattice.hpp"
#include "ordkit/joinspec.hpp"
#include "ordkit/lattice.hpp"
#include "ordkit/poset.hpp"

namespace ordkit {

/// A total function between two posets' carriers. Nothing beyond totality
/// is required at construction; monotonicity, embedding and U-morphism are
/// checked properties.
struct PosetMap {
  PosetMap(Poset dom, Poset cod, std::vector<int> assign);

  static PosetMap identity(const Poset& p);
  /// Assignment given as "domlabel:codlabel" pairs; must cover the domain.
  static PosetMap from_pairs(Poset dom, Poset cod,
                             std::span<const std::pair<std::string, std::string>> pairs);
  /// Matches equal labels (the fixture embeddings).
  static PosetMap by_label(Poset dom, Poset cod);

  int operator()(int i) const { return assign[i]; }
  Mask image(Mask s) const;
  Mask preimage(Mask s) const;

  Poset dom, cod;
  std::vector<int> assign;
};

bool is_monotone(const PosetMap& f);
bool is_embedding(const PosetMap& f);

/// f is monotone and sends the join of every member of up to the join of
/// its image (which must exist in the codomain).
bool is_u_morphism(const PosetMap& f, const JoinSpec& up);

/// A function between two finite lattices, element index to element index.
/// Property flags are recomputed on demand, never cached.
struct LatticeMap {
  Lattice dom, cod;
  std::vector<int> assign;

  int operator()(int i) const { return assign[i]; }
};

bool map_monotone(const LatticeMap& h);
bool map_embedding(const LatticeMap& h);
bool map_injective(const LatticeMap& h);
bool map_surjective(const LatticeMap& h);
/// Binary joins, the empty join, and seeded sample families.
bool map_join_preserving(const LatticeMap& h);
bool map_meet_preserving_binary(const LatticeMap& h);
/// h(eta_dom(p)) == eta_cod(p) for every base element (both lattices must
/// be completions of the same poset).
bool map_fixes_base(const LatticeMap& h);

/// The lift f+ : I(up) -> I(uq), C -> gamma(uq, f[C]). Requires f to be a
/// up-morphism; both ideal lattices must fit the caps.
LatticeMap lift(const PosetMap& f, const JoinSpec& up, const JoinSpec& uq);

/// Preimages of uq-ideals are up-ideals.
bool continuity_check(const PosetMap& f, const JoinSpec& up, const JoinSpec& uq);

/// fwd(x) <= y iff x <= bwd(y) for all pairs, with both maps monotone.
/// When bwd is an embedding fixing the base between tagged lattices, its
/// closed-set form must be the inclusion C -> C.
bool adjoint_check(const LatticeMap& fwd, const LatticeMap& bwd);

/// Views a lattice as a poset (elements keep their indices; labels are
/// the element names).
Poset lattice_as_poset(const Lattice& l);

}  // namespace ordkit
