#include "ordkit/joinspec.hpp"

#include <algorithm>
#include <atomic>

#include "ordkit/kernels.hpp"
#include "ordkit/testing.hpp"

namespace ordkit::testing {

namespace {
std::atomic<Mutation> g_mutation{Mutation::none};
}

Mutation mutation() { return g_mutation.load(std::memory_order_relaxed); }

void set_mutation(Mutation m) { g_mutation.store(m, std::memory_order_relaxed); }

}  // namespace ordkit::testing

namespace ordkit {

JoinSpec JoinSpec::make(Poset p, std::span<const Mask> members) {
  const Mask all = full_mask(p.size());
  std::vector<Mask> sets(members.begin(), members.end());
  for (int i = 0; i < p.size(); ++i) sets.push_back(bit(i));
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());

  std::vector<int> joins;
  joins.reserve(sets.size());
  for (Mask s : sets) {
    if (s & ~all) throw validation_error("join-specification member mentions unknown index");
    auto j = p.join_of(s);
    if (!j) {
      if (s == 0) {
        throw validation_error(
            "the empty set cannot be a member: the poset has no bottom");
      }
      throw validation_error("member " + p.set_to_string(s) + " has no join");
    }
    joins.push_back(*j);
  }
  return JoinSpec(std::move(p), std::move(sets), std::move(joins));
}

JoinSpec JoinSpec::minimal(Poset p) { return make(std::move(p), {}); }

JoinSpec JoinSpec::u_alpha(Poset p, int alpha) {
  if (alpha < 2) throw validation_error("u_alpha needs alpha >= 2");
  const std::uint64_t count = std::uint64_t{1} << p.size();
  if (count > limits().max_subset_scan)
    throw cap_exceeded("u_alpha subset scan above cap");
  auto members = kernels::filter_masks(count, [&p, alpha](Mask s) {
    return s != 0 && popcount(s) < alpha && p.join_of(s).has_value();
  });
  return make(std::move(p), members);
}

JoinSpec JoinSpec::u_infty(Poset p) {
  const std::uint64_t count = std::uint64_t{1} << p.size();
  if (count > limits().max_subset_scan)
    throw cap_exceeded("u_infty subset scan above cap");
  auto members = kernels::filter_masks(
      count, [&p](Mask s) { return s != 0 && p.join_of(s).has_value(); });
  return make(std::move(p), members);
}

JoinSpec JoinSpec::all_joins(Poset p) {
  JoinSpec u = u_infty(p);
  if (p.bottom()) {
    std::vector<Mask> members(u.sets_);
    members.push_back(0);
    return make(std::move(p), members);
  }
  return u;
}

bool JoinSpec::contains(Mask s) const {
  return std::binary_search(sets_.begin(), sets_.end(), s);
}

int JoinSpec::radius() const {
  int m = 0;
  for (Mask s : sets_) m = std::max(m, popcount(s));
  return m + 1;
}

std::vector<Mask> JoinSpec::non_singleton_members() const {
  std::vector<Mask> out;
  for (Mask s : sets_) {
    if (popcount(s) >= 2) out.push_back(s);
  }
  return out;
}

JoinSpec JoinSpec::union_with(const JoinSpec& o) const {
  if (!p_.same(o.p_)) throw validation_error("join-specifications have different owners");
  std::vector<Mask> merged(sets_);
  merged.insert(merged.end(), o.sets_.begin(), o.sets_.end());
  return make(p_, merged);
}

JoinSpec JoinSpec::intersect_with(const JoinSpec& o) const {
  if (!p_.same(o.p_)) throw validation_error("join-specifications have different owners");
  std::vector<Mask> common;
  std::set_intersection(sets_.begin(), sets_.end(), o.sets_.begin(), o.sets_.end(),
                        std::back_inserter(common));
  return make(p_, common);
}

JoinSpec JoinSpec::without(std::span<const Mask> removed) const {
  std::vector<Mask> gone(removed.begin(), removed.end());
  std::sort(gone.begin(), gone.end());
  std::vector<Mask> kept;
  for (Mask s : sets_) {
    if (!std::binary_search(gone.begin(), gone.end(), s)) kept.push_back(s);
  }
  return make(p_, kept);
}

Mask gamma(const JoinSpec& u, Mask seed) {
  const Poset& p = u.owner();
  const bool skip_downclose =
      testing::mutation() == testing::Mutation::gamma_skip_downclose;
  Mask x = p.down_close(seed);
  const std::size_t m = u.member_count();
  std::vector<bool> fired(m, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (fired[i] || !subset(u.member(i), x)) continue;
      fired[i] = true;
      const int j = u.member_join(i);
      const Mask add = skip_downclose ? bit(j) : p.down_of(j);
      if (add & ~x) {
        x |= add;
        changed = true;
      }
    }
  }
  return x;
}

bool is_ideal(const JoinSpec& u, Mask s) {
  const Poset& p = u.owner();
  if (!p.is_down_closed(s)) return false;
  for (std::size_t i = 0; i < u.member_count(); ++i) {
    if (subset(u.member(i), s) && !has(s, u.member_join(i))) return false;
  }
  return true;
}

bool in_uplus(const JoinSpec& u, Mask t) {
  auto j = u.owner().join_of(t);
  return j && has(gamma(u, t), *j);
}

Mask upsilon(const JoinSpec& u, Mask s) {
  const Poset& p = u.owner();
  const Mask sd = p.down_close(s);
  if (testing::mutation() == testing::Mutation::upsilon_u_quantifier) {
    Mask out = 0;
    for (std::size_t i = 0; i < u.member_count(); ++i) {
      if (subset(u.member(i), sd)) out |= bit(u.member_join(i));
    }
    return out;
  }
  Mask out = 0;
  for (int x = 0; x < p.size(); ++x) {
    if (has(gamma(u, p.down_of(x) & sd), x)) out |= bit(x);
  }
  return out;
}

JoinSpec uplus(const JoinSpec& u) {
  const Poset& p = u.owner();
  const std::uint64_t count = std::uint64_t{1} << p.size();
  if (count > limits().max_subset_scan)
    throw cap_exceeded("U+ enumeration above cap; use in_uplus instead");
  auto members =
      kernels::filter_masks(count, [&u](Mask t) { return in_uplus(u, t); });
  return JoinSpec::make(p, members);
}

bool max_containing(const Poset& p, Mask t) {
  if (t == 0) return false;
  auto m = p.max_of(t);
  return m.has_value();
}

}  // namespace ordkit
