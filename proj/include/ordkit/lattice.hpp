#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ordkit/poset.hpp"

namespace ordkit {

/// A finite lattice with total binary meet/join tables, shared by handle.
/// Elements may carry a closed-set tag (a subset of a base poset) when the
/// lattice arose as a completion; eta then maps each base element p to the
/// lattice element representing its principal downset.
class Lattice {
 public:
  /// Views a poset as a lattice; fails when some pair lacks a meet or a
  /// join. Elements keep the poset's indices.
  static Lattice from_poset(const Poset& p);

  /// Builds the lattice of a closure system over `base`: `family` must be
  /// closed under pairwise intersection, contain the carrier, and contain
  /// every principal downset. Meet is intersection; the join of two
  /// members is the intersection of their common upper bounds.
  static Lattice from_closed_family(Poset base, std::vector<Mask> family);

  int size() const { return d_->m; }
  bool leq(int a, int b) const { return d_->leq[a * d_->m + b]; }
  int meet(int a, int b) const { return d_->meet[a * d_->m + b]; }
  int join(int a, int b) const { return d_->join[a * d_->m + b]; }
  int bottom() const { return d_->bottom; }
  int top() const { return d_->top; }

  int meet_fold(std::span<const int> xs) const;
  int join_fold(std::span<const int> xs) const;

  bool has_tags() const { return !d_->tags.empty(); }
  Mask tag(int i) const { return d_->tags[i]; }
  /// Index of the element with this tag, or -1.
  int index_of_tag(Mask t) const;

  const Poset* base() const { return d_->base ? &*d_->base : nullptr; }
  /// Lattice element representing p's principal downset (-1 when the
  /// lattice has no base).
  int eta(int p) const { return d_->eta.empty() ? -1 : d_->eta[p]; }

  std::string element_name(int i) const;

  bool same(const Lattice& o) const { return d_ == o.d_; }

 private:
  struct Data {
    int m = 0;
    std::vector<char> leq;
    std::vector<int> meet;
    std::vector<int> join;
    int bottom = 0, top = 0;
    std::vector<Mask> tags;
    std::optional<Poset> base;
    std::vector<int> eta;
  };
  explicit Lattice(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  static Lattice finish(std::shared_ptr<Data> d);
  std::shared_ptr<const Data> d_;
};

/// First (x, y, z) with x∧(y∨z) != (x∧y)∨(x∧z), if any.
std::optional<std::array<int, 3>> distributivity_violation(const Lattice& l);
/// First (x, y, z) with x <= z but x∨(y∧z) != (x∨y)∧z, if any.
std::optional<std::array<int, 3>> modularity_violation(const Lattice& l);

inline bool is_distributive(const Lattice& l) { return !distributivity_violation(l); }
inline bool is_modular(const Lattice& l) { return !modularity_violation(l); }

/// Elements (other than the bottom) that are not the join of the elements
/// strictly below them.
std::vector<int> join_irreducibles(const Lattice& l);

/// Bounded-arity distributivity: every family of fewer than m rows, each a
/// set of fewer than k elements, satisfies meet-of-joins = join over choice
/// functions of meet-of-picks. The scan enumerates families directly up to
/// limits().max_mk_instances; above that the verdict is decided by the
/// (3,3) scan, which is equivalent for lattices (binary distributivity
/// extends to any finite arity by induction).
bool distributivity_mk(const Lattice& l, int m, int k);

/// For a finite distributive lattice, verifies the canonical isomorphism
/// x -> { join-irreducible j : j <= x } onto the downsets of the
/// join-irreducible subposet. Errors when l is not distributive.
bool birkhoff_check(const Lattice& l);

}  // namespace ordkit
