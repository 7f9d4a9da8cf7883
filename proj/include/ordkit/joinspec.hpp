#pragma once

#include <span>
#include <vector>

#include "ordkit/poset.hpp"

namespace ordkit {

/// A join-specification: a family of subsets of one poset, each with a
/// defined join, containing every singleton. The empty set is a legal
/// member exactly when the poset has a bottom. Members are stored
/// deduplicated in ascending mask order (singletons included, the empty
/// set as mask 0), so equality of specifications is structural.
class JoinSpec {
 public:
  /// Singletons are added automatically. Rejects members without a join
  /// and the empty set when the poset has no bottom.
  static JoinSpec make(Poset p, std::span<const Mask> members);

  /// The minimal specification: singletons only.
  static JoinSpec minimal(Poset p);

  /// All nonempty subsets with fewer than `alpha` elements whose join is
  /// defined (alpha >= 2). The empty set is never included.
  static JoinSpec u_alpha(Poset p, int alpha);

  /// All nonempty subsets whose join is defined.
  static JoinSpec u_infty(Poset p);

  /// Every subset whose join is defined: u_infty plus the empty set when
  /// the poset has a bottom. This is the largest join-specification, and
  /// the one the morphism scheme assigns to each poset.
  static JoinSpec all_joins(Poset p);

  const Poset& owner() const { return p_; }
  std::span<const Mask> members() const { return sets_; }
  std::size_t member_count() const { return sets_.size(); }
  Mask member(std::size_t i) const { return sets_[i]; }
  /// Join of member i (the bottom element for the empty member).
  int member_join(std::size_t i) const { return joins_[i]; }

  bool contains(Mask s) const;
  bool contains_empty() const { return !sets_.empty() && sets_[0] == 0; }

  /// Smallest cardinal exceeding every member's size: max |S| + 1.
  int radius() const;

  /// Members that are not singletons (and not the empty set).
  std::vector<Mask> non_singleton_members() const;

  bool operator==(const JoinSpec& o) const {
    return p_.same(o.p_) && sets_ == o.sets_;
  }

  JoinSpec union_with(const JoinSpec& o) const;
  JoinSpec intersect_with(const JoinSpec& o) const;
  /// Members minus the given sets (singletons are retained regardless).
  JoinSpec without(std::span<const Mask> removed) const;

 private:
  JoinSpec(Poset p, std::vector<Mask> sets, std::vector<int> joins)
      : p_(std::move(p)), sets_(std::move(sets)), joins_(std::move(joins)) {}

  Poset p_;
  std::vector<Mask> sets_;
  std::vector<int> joins_;
};

/// Smallest U-ideal containing the seed: down-close, then repeatedly add
/// joins of members inside the current set and down-close again. On a
/// finite poset this stabilizes within n rounds. gamma(U, {}) is {bottom}
/// when {} is a member and {} otherwise.
Mask gamma(const JoinSpec& u, Mask seed);

/// True iff s is down-closed and contains join(T) for every member T
/// inside it. The empty set is an ideal exactly when {} is not a member.
bool is_ideal(const JoinSpec& u, Mask s);

/// Membership in U+, the largest specification with the same closure
/// operator: join(T) exists and lies in gamma(U, T).
bool in_uplus(const JoinSpec& u, Mask t);

/// One-step join closure: { join(T) : T in U+, T subseteq S-down }.
/// Computed elementwise as x in gamma(U, x-down ∩ S-down); the direct
/// enumeration is kept as a harness oracle (oracles::upsilon_enumerated).
Mask upsilon(const JoinSpec& u, Mask s);

/// Materializes U+ by scanning all subsets (cap-guarded; prefer in_uplus
/// when enumeration is not needed).
JoinSpec uplus(const JoinSpec& u);

/// Membership in BP+: nonempty sets containing their maximum.
bool max_containing(const Poset& p, Mask t);

}  // namespace ordkit
