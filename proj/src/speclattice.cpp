#include "ordkit/speclattice.hpp"

#include <algorithm>

#include "ordkit/enumerate.hpp"
#include "ordkit/ideal_lattice.hpp"

namespace ordkit {

namespace {

bool problematic(const JoinSpec& u, Mask s) {
  return !u.owner().is_down_closed(upsilon(u, s));
}

std::vector<Mask> problematic_members(const JoinSpec& u) {
  std::vector<Mask> out;
  for (Mask s : u.members()) {
    if (popcount(s) < 2) continue;  // the empty set and singletons close to downsets
    if (problematic(u, s)) out.push_back(s);
  }
  return out;
}

void require_frame_generating(const JoinSpec& u, const char* who) {
  if (!is_frame_generating(u).verdict)
    throw validation_error(std::string(who) + ": input is not frame-generating");
}

void require_maximal(const JoinSpec& u, const char* who) {
  if (!is_maximal(u))
    throw validation_error(std::string(who) + ": input is not maximal");
}

}  // namespace

JoinSpec uminus(const JoinSpec& u) {
  JoinSpec cur = u;
  while (true) {
    std::vector<Mask> bad = problematic_members(cur);
    if (bad.empty()) return cur;
    cur = cur.without(bad);
  }
}

UminusTrace uminus_traced(const JoinSpec& u) {
  JoinSpec cur = u;
  UminusTrace trace{cur, 0, {}, {}};
  while (true) {
    std::vector<Mask> bad = problematic_members(cur);
    if (bad.empty()) break;
    ++trace.rounds;
    trace.removed.insert(trace.removed.end(), bad.begin(), bad.end());
    cur = cur.without(bad);
  }
  trace.result = cur;
  for (Mask s : trace.removed) {
    const std::vector<Mask> one{s};
    JoinSpec readded = cur.union_with(JoinSpec::make(cur.owner(), one));
    trace.removed_still_problematic.emplace_back(s, problematic(readded, s));
  }
  return trace;
}

JoinSpec uminus_sequential(const JoinSpec& u) {
  JoinSpec cur = u;
  while (true) {
    std::vector<Mask> bad = problematic_members(cur);
    if (bad.empty()) return cur;
    std::sort(bad.begin(), bad.end(), [](Mask a, Mask b) {
      return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
    });
    const std::vector<Mask> one{bad.front()};
    cur = cur.without(one);
  }
}

JoinSpec jf_join(std::span<const JoinSpec> specs) {
  if (specs.empty()) throw validation_error("jf_join needs at least one input");
  for (const JoinSpec& u : specs) require_frame_generating(u, "jf_join");
  JoinSpec out = specs[0];
  for (std::size_t i = 1; i < specs.size(); ++i) out = out.union_with(specs[i]);
  require_frame_generating(out, "jf_join result");  // Thm. on unions
  return out;
}

JoinSpec jf_meet(std::span<const JoinSpec> specs) {
  if (specs.empty()) throw validation_error("jf_meet needs at least one input");
  for (const JoinSpec& u : specs) require_frame_generating(u, "jf_meet");
  JoinSpec inter = specs[0];
  for (std::size_t i = 1; i < specs.size(); ++i) inter = inter.intersect_with(specs[i]);
  return uminus(inter);
}

JoinSpec jfplus_join(std::span<const JoinSpec> specs) {
  if (specs.empty()) throw validation_error("jfplus_join needs at least one input");
  for (const JoinSpec& u : specs) {
    require_frame_generating(u, "jfplus_join");
    require_maximal(u, "jfplus_join");
  }
  JoinSpec out = specs[0];
  for (std::size_t i = 1; i < specs.size(); ++i) out = out.union_with(specs[i]);
  return uplus(out);
}

JoinSpec jfplus_meet(std::span<const JoinSpec> specs) {
  if (specs.empty()) throw validation_error("jfplus_meet needs at least one input");
  for (const JoinSpec& u : specs) {
    require_frame_generating(u, "jfplus_meet");
    require_maximal(u, "jfplus_meet");
  }
  JoinSpec out = specs[0];
  for (std::size_t i = 1; i < specs.size(); ++i) out = out.intersect_with(specs[i]);
  require_maximal(out, "jfplus_meet result");
  require_frame_generating(out, "jfplus_meet result");
  return out;
}

JoinSpec jf_top(const Poset& p) { return uminus(JoinSpec::all_joins(p)); }

std::pair<JoinSpec, JoinSpec> jf_bottoms(const Poset& p) {
  JoinSpec b = JoinSpec::minimal(p);
  return {b, uplus(b)};
}

std::optional<Mask> maximality_witness(const JoinSpec& u) {
  const std::uint64_t count = std::uint64_t{1} << u.owner().size();
  if (count > limits().max_subset_scan)
    throw cap_exceeded("maximality scan above cap");
  for (Mask t = 0; t < count; ++t) {
    if (!u.contains(t) && in_uplus(u, t)) return t;
  }
  return std::nullopt;
}

bool is_maximal(const JoinSpec& u) { return !maximality_witness(u); }

bool reflection_pair_check(const JoinSpec& u1, const JoinSpec& u2) {
  if (!u1.owner().same(u2.owner()))
    throw validation_error("reflection check: specifications on different posets");
  require_frame_generating(u1, "reflection check");
  require_frame_generating(u2, "reflection check");
  require_maximal(u2, "reflection check");
  const std::uint64_t count = std::uint64_t{1} << u1.owner().size();
  if (count > limits().max_subset_scan)
    throw cap_exceeded("reflection scan above cap");
  bool plus_contained = true;
  for (Mask t = 0; t < count && plus_contained; ++t) {
    if (in_uplus(u1, t) && !u2.contains(t)) plus_contained = false;
  }
  bool contained = true;
  for (Mask t : u1.members()) {
    if (!u2.contains(t)) {
      contained = false;
      break;
    }
  }
  return plus_contained == contained;
}

TerminalCheck terminal_object_check(const Poset& dom, const Lattice& l,
                                    std::span<const int> e,
                                    std::span<const JoinSpec> sampled_fg) {
  if (!is_distributive(l))
    throw validation_error("terminal_object_check: the codomain is not a frame");
  ClosureRepr ge = closure_from_completion(dom, l, e);
  const Poset& p = dom;

  const std::uint64_t count = std::uint64_t{1} << p.size();
  if (count > limits().max_subset_scan)
    throw cap_exceeded("terminal_object_check subset scan above cap");
  std::vector<Mask> ue_members;
  for (Mask s = 0; s < count; ++s) {
    auto j = p.join_of(s);
    if (j && has(ge.close(s), *j)) ue_members.push_back(s);
  }
  JoinSpec ue = JoinSpec::make(p, ue_members);

  TerminalCheck out{uminus(ue), false, true, true};
  out.w_maximal = is_maximal(out.w);

  for (const JoinSpec& u : sampled_fg) {
    if (!u.owner().same(p))
      throw validation_error("terminal_object_check: sample on a different poset");
    require_frame_generating(u, "terminal_object_check sample");
    // A join-preserving map I_U -> L fixing P exists iff Gamma_U <= Gamma_e,
    // i.e. every Gamma_e-closed set is a U-ideal.
    bool exists = true;
    for (Mask c : ge.closed_family()) {
      if (!is_ideal(u, c)) {
        exists = false;
        break;
      }
    }
    bool contained = true;
    for (Mask t : u.members()) {
      if (!out.w.contains(t)) {
        contained = false;
        break;
      }
    }
    if (exists != contained) out.biconditional = false;
    if (exists) {
      InducedClosureMap pr = induced_closure_map(ClosureRepr::from_spec(u), ge);
      if (!pr.fixes_base || !pr.join_preserving) out.phi_ok = false;
    }
  }

  // The canonical map out of I_W itself.
  InducedClosureMap pw = induced_closure_map(ClosureRepr::from_spec(out.w), ge);
  if (!pw.fixes_base || !pw.join_preserving) out.phi_ok = false;
  return out;
}

bool global_adjunction_check(const Poset& p) {
  JoinSpec up = JoinSpec::all_joins(p);
  if (!is_frame_generating(up).verdict)
    throw validation_error(
        "global_adjunction_check: the all-joins specification is not frame-generating");
  IdealLattice ip = ideal_lattice(up);
  Lattice l1 = ip.lattice();
  if (l1.size() > limits().max_elements || l1.size() > kMaxElements ||
      (std::uint64_t{1} << l1.size()) > limits().max_subset_scan)
    throw cap_exceeded("global_adjunction_check: ideal lattice too large to iterate");

  Poset q = lattice_as_poset(l1);
  JoinSpec uq = JoinSpec::all_joins(q);

  // First triangle: counit after the lifted unit is the identity on I_U.
  for (int i = 0; i < l1.size(); ++i) {
    const Mask c = l1.tag(i);  // a U_P-ideal
    Mask image = 0;            // eta_P[c] as a subset of Q
    Mask rest = c;
    while (rest) {
      int x = first_bit(rest);
      rest &= rest - 1;
      image |= bit(l1.eta(x));
    }
    const Mask d = gamma(uq, image);  // the lifted unit's value
    std::vector<int> elems;
    Mask drest = d;
    while (drest) {
      elems.push_back(first_bit(drest));
      drest &= drest - 1;
    }
    if (l1.join_fold(elems) != i) return false;
  }

  // Second triangle: for each lattice element x, the join of the principal
  // downset of x recovers x.
  for (int x = 0; x < l1.size(); ++x) {
    const Mask down = q.down_of(x);
    if (!is_ideal(uq, down)) return false;  // eta lands in ideals
    std::vector<int> elems;
    Mask rest = down;
    while (rest) {
      elems.push_back(first_bit(rest));
      rest &= rest - 1;
    }
    if (l1.join_fold(elems) != x) return false;
  }
  return true;
}

bool unit_naturality_check(const PosetMap& f) {
  JoinSpec up = JoinSpec::all_joins(f.dom);
  JoinSpec uq = JoinSpec::all_joins(f.cod);
  if (!is_u_morphism(f, up))
    throw validation_error("unit_naturality_check: the map is not a U-morphism");
  for (int x = 0; x < f.dom.size(); ++x) {
    if (gamma(uq, f.image(f.dom.down_of(x))) != f.cod.down_of(f(x))) return false;
  }
  return true;
}

}  // namespace ordkit
