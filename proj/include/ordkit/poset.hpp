#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordkit/base.hpp"

namespace ordkit {

/// A finite poset: distinct element labels plus a reflexive, antisymmetric,
/// transitive relation over indices 0..n-1. Instances are immutable and
/// shared by handle; two handles own the same carrier exactly when they
/// point at the same underlying data, which is what ElemSet ownership
/// checks compare.
class Poset {
 public:
  /// leq is the reflexive-transitive closure of the cover relation.
  /// Fails on duplicate labels, unknown labels, or a cycle (one offending
  /// cycle is reported).
  static Poset from_covers(std::vector<std::string> labels,
                           const std::vector<std::pair<std::string, std::string>>& covers);

  /// Builds from an explicit relation given as up-set rows; validates
  /// reflexivity, antisymmetry and transitivity.
  static Poset from_relation(std::vector<std::string> labels,
                             std::vector<Mask> up_rows);

  int size() const { return d_->n; }
  const std::string& label(int i) const { return d_->labels[i]; }
  /// Index of a label, or -1.
  int index(std::string_view label) const;

  bool leq(int a, int b) const { return has(d_->up[a], b); }
  Mask down_of(int i) const { return d_->down[i]; }  // i's principal downset
  Mask up_of(int i) const { return d_->up[i]; }
  Mask carrier() const { return full_mask(d_->n); }

  std::optional<int> bottom() const;
  std::optional<int> top() const;

  Mask down_close(Mask s) const;
  Mask up_close(Mask s) const;
  bool is_down_closed(Mask s) const { return down_close(s) == s; }

  /// Least upper bound of the set, if it exists. join_of(0) is the bottom
  /// when the poset has one; partiality is a normal result, not an error.
  std::optional<int> join_of(Mask s) const;
  std::optional<int> meet_of(Mask s) const;

  /// Maximum element of s (the member above all others), if any.
  std::optional<int> max_of(Mask s) const;

  /// Cover pairs (lower, upper) of the transitive reduction, sorted.
  std::vector<std::pair<int, int>> cover_pairs() const;

  /// Identity (same underlying carrier), not isomorphism.
  bool same(const Poset& o) const { return d_ == o.d_; }

  std::string set_to_string(Mask s) const;

 private:
  struct Data {
    int n = 0;
    std::vector<std::string> labels;
    std::vector<Mask> up;    // up[i] = {j : i <= j}
    std::vector<Mask> down;  // down[i] = {j : j <= i}
  };
  explicit Poset(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// A subset of one poset's carrier. Set algebra is only defined between
/// sets with the same owner.
struct ElemSet {
  ElemSet(Poset owner, Mask bits) : owner(std::move(owner)), bits(bits) {}

  Poset owner;
  Mask bits;

  ElemSet operator&(const ElemSet& o) const { return {check(o), bits & o.bits}; }
  ElemSet operator|(const ElemSet& o) const { return {check(o), bits | o.bits}; }
  ElemSet operator-(const ElemSet& o) const { return {check(o), bits & ~o.bits}; }
  bool operator==(const ElemSet& o) const { return owner.same(o.owner) && bits == o.bits; }
  bool contains(int i) const { return has(bits, i); }
  int size() const { return popcount(bits); }

  std::string to_string() const { return owner.set_to_string(bits); }

 private:
  const Poset& check(const ElemSet& o) const {
    if (!owner.same(o.owner)) throw validation_error("element sets have different owners");
    return owner;
  }
};

inline ElemSet downclose(const Poset& p, const ElemSet& s) {
  if (!p.same(s.owner)) throw validation_error("element set not owned by this poset");
  return {s.owner, p.down_close(s.bits)};
}

inline ElemSet upclose(const Poset& p, const ElemSet& s) {
  if (!p.same(s.owner)) throw validation_error("element set not owned by this poset");
  return {s.owner, p.up_close(s.bits)};
}

}  // namespace ordkit
