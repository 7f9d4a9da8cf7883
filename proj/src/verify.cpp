#include "ordkit/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "ordkit/closure.hpp"
#include "ordkit/enumerate.hpp"
#include "ordkit/frames.hpp"
#include "ordkit/ideal_lattice.hpp"
#include "ordkit/kernels.hpp"
#include "ordkit/maps.hpp"
#include "ordkit/rng.hpp"
#include "ordkit/speclattice.hpp"
#include "ordkit/workspace.hpp"

namespace ordkit {

namespace oracles {

Mask upsilon_enumerated(const JoinSpec& u, Mask s) {
  const Poset& p = u.owner();
  const Mask sd = p.down_close(s);
  if ((std::uint64_t{1} << popcount(sd)) > limits().max_subset_scan)
    throw cap_exceeded("upsilon enumeration above cap");
  Mask out = 0;
  Mask t = sd;
  while (true) {
    if (in_uplus(u, t)) out |= bit(*p.join_of(t));
    if (t == 0) break;
    t = (t - 1) & sd;
  }
  return out;
}

Mask upsilon_iterated(const JoinSpec& u, Mask s) {
  const Poset& p = u.owner();
  Mask x = p.down_close(s);
  while (true) {
    if ((std::uint64_t{1} << popcount(x)) > limits().max_subset_scan)
      throw cap_exceeded("iterated upsilon above cap");
    Mask next = 0;
    Mask t = x;
    while (true) {
      if (in_uplus(u, t)) next |= bit(*p.join_of(t));
      if (t == 0) break;
      t = (t - 1) & x;
    }
    if (next == x) return x;
    x = next;
  }
}

Mask gamma_by_ideal_intersection(const JoinSpec& u, Mask s) {
  Mask out = u.owner().carrier();
  for (Mask d : all_downsets(u.owner())) {
    if (subset(s, d) && is_ideal(u, d)) out &= d;
  }
  return out;
}

}  // namespace oracles

namespace {

// ---------------------------------------------------------------- helpers

std::string render_poset(const Poset& p) {
  std::string out = "poset[";
  for (int i = 0; i < p.size(); ++i) {
    if (i) out += " ";
    out += p.label(i);
  }
  out += ";";
  for (auto [lo, hi] : p.cover_pairs()) {
    out += " " + p.label(lo) + "<" + p.label(hi);
  }
  out += "]";
  return out;
}

std::string render_instance(const Poset& p, const JoinSpec& u) {
  return render_poset(p) + " spec[" + spec_to_text(p, u) + "]";
}

Poset induced_poset(const Poset& p, Mask keep) {
  std::vector<int> old_of;
  for (int i = 0; i < p.size(); ++i) {
    if (has(keep, i)) old_of.push_back(i);
  }
  std::vector<std::string> labels;
  for (int o : old_of) labels.push_back(p.label(o));
  std::vector<Mask> up(old_of.size(), 0);
  for (std::size_t a = 0; a < old_of.size(); ++a) {
    for (std::size_t b = 0; b < old_of.size(); ++b) {
      if (p.leq(old_of[a], old_of[b])) up[a] |= bit(static_cast<int>(b));
    }
  }
  return Poset::from_relation(std::move(labels), std::move(up));
}

Mask compress_mask(Mask m, Mask keep) {
  Mask out = 0;
  int idx = 0;
  for (int i = 0; i < kMaxElements; ++i) {
    if (!has(keep, i)) continue;
    if (has(m, i)) out |= bit(idx);
    ++idx;
  }
  return out;
}

// Restricts an instance to the kept elements; members that lose elements
// or their join are dropped.
std::optional<std::pair<Poset, JoinSpec>> restrict_instance(const Poset& p,
                                                            const JoinSpec& u,
                                                            Mask keep) {
  if (keep == 0) return std::nullopt;
  Poset q = induced_poset(p, keep);
  std::vector<Mask> members;
  for (Mask s : u.members()) {
    if (!subset(s, keep)) continue;
    Mask c = compress_mask(s, keep);
    if (q.join_of(c)) members.push_back(c);
  }
  return std::make_pair(q, JoinSpec::make(q, members));
}

// ------------------------------------------------------------- instances

struct Inst {
  long index = 0;
  Poset p;
  JoinSpec u;
  std::uint64_t stream = 0;  // per-instance derivation seed
};

struct Derived {
  std::optional<JoinSpec> up;        // U+
  std::optional<IdealLattice> idl;   // I_U
  std::optional<Lattice> lat;        // I_U with tables
  std::optional<JoinSpec> partner;   // sampled second specification
  std::string error;
};

Derived make_derived(const Inst& in, int spec_members) {
  Derived d;
  try {
    d.up = uplus(in.u);
    d.idl = ideal_lattice(in.u);
    d.lat = d.idl->lattice();
    SplitMix64 rng(in.stream);
    d.partner = random_joinspec(rng, in.p, spec_members);
  } catch (const std::exception& e) {
    d.error = e.what();
  }
  return d;
}

// Subsets a law quantifies over: everything for small carriers, otherwise
// the members, the downsets (strided), and seeded samples.
std::vector<Mask> subset_pool(const Inst& in, int full_limit) {
  const int n = in.p.size();
  std::vector<Mask> pool;
  if (n <= full_limit) {
    pool.resize(std::size_t{1} << n);
    std::iota(pool.begin(), pool.end(), Mask{0});
    return pool;
  }
  pool.assign(in.u.members().begin(), in.u.members().end());
  std::vector<Mask> downs = all_downsets(in.p);
  const std::size_t stride = std::max<std::size_t>(1, downs.size() / 24);
  for (std::size_t i = 0; i < downs.size(); i += stride) pool.push_back(downs[i]);
  SplitMix64 rng(in.stream ^ 0xA5A5A5A5A5A5A5A5ull);
  for (int i = 0; i < 48; ++i) pool.push_back(rng.next() & in.p.carrier());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  return pool;
}

using Fail = std::optional<std::string>;

std::string mask_str(const Poset& p, Mask m) { return p.set_to_string(m); }

// ------------------------------------------------------------------ laws

Fail law_empty_rules(const Inst& in, const Derived&) {
  const JoinSpec& u = in.u;
  const Poset& p = in.p;
  if (is_ideal(u, 0) != !u.contains_empty())
    return std::string("empty-set ideal rule broken");
  const Mask g = gamma(u, 0);
  const Mask expect = u.contains_empty() ? bit(*p.bottom()) : Mask{0};
  if (g != expect) return "gamma({}) = " + mask_str(p, g);
  if (in_uplus(u, 0) != u.contains_empty())
    return std::string("empty-set U+ membership rule broken");
  return std::nullopt;
}

Fail law_closure_laws(const Inst& in, const Derived&) {
  const JoinSpec& u = in.u;
  const Poset& p = in.p;
  for (int q = 0; q < p.size(); ++q) {
    if (gamma(u, bit(q)) != p.down_of(q))
      return "gamma not standard at " + p.label(q);
  }
  const auto pool = subset_pool(in, 12);
  Mask prev = 0;
  for (Mask s : pool) {
    const Mask g = gamma(u, s);
    if (!subset(s, g)) return "not extensive at " + mask_str(p, s);
    if (gamma(u, g) != g) return "not idempotent at " + mask_str(p, s);
    if (!is_ideal(u, g)) return "gamma(" + mask_str(p, s) + ") is not an ideal";
    if (subset(prev, s) && !subset(gamma(u, prev), g))
      return "not monotone at " + mask_str(p, prev) + " vs " + mask_str(p, s);
    prev = s;
  }
  if (p.size() <= 10) {
    for (Mask s : pool) {
      if (gamma(u, s) != oracles::gamma_by_ideal_intersection(u, s))
        return "gamma differs from the ideal-intersection oracle at " + mask_str(p, s);
    }
  }
  return std::nullopt;
}

Fail law_one_step_formula(const Inst& in, const Derived&) {
  const auto pool = subset_pool(in, 6);
  for (Mask s : pool) {
    const Mask f = upsilon(in.u, s);
    const Mask o = oracles::upsilon_enumerated(in.u, s);
    if (f != o) {
      return "S=" + mask_str(in.p, s) + " formula=" + mask_str(in.p, f) +
             " enumeration=" + mask_str(in.p, o);
    }
  }
  return std::nullopt;
}

Fail law_one_step_below_closure(const Inst& in, const Derived&) {
  for (Mask s : subset_pool(in, 12)) {
    if (!subset(upsilon(in.u, s), gamma(in.u, s)))
      return "upsilon exceeds gamma at " + mask_str(in.p, s);
  }
  return std::nullopt;
}

Fail law_one_step_localized(const Inst& in, const Derived&) {
  auto pool = subset_pool(in, 6);
  if (pool.size() > 32) pool.resize(32);
  for (Mask s : pool) {
    const Mask sd = in.p.down_close(s);
    for (int x = 0; x < in.p.size(); ++x) {
      const bool lhs = has(oracles::upsilon_enumerated(in.u, s), x);
      const bool rhs = has(oracles::upsilon_enumerated(in.u, in.p.down_of(x) & sd), x);
      if (lhs != rhs)
        return "x=" + in.p.label(x) + " S=" + mask_str(in.p, s);
    }
  }
  return std::nullopt;
}

Fail law_one_step_idempotent(const Inst& in, const Derived&) {
  auto pool = subset_pool(in, 6);
  if (pool.size() > 32) pool.resize(32);
  for (Mask s : pool) {
    if (oracles::upsilon_iterated(in.u, s) != oracles::upsilon_enumerated(in.u, s))
      return "iteration adds elements at " + mask_str(in.p, s);
  }
  return std::nullopt;
}

Fail law_join_in_closure(const Inst& in, const Derived& d) {
  const Poset& p = in.p;
  for (Mask s : subset_pool(in, 10)) {
    const Mask g = gamma(in.u, s);
    const auto j = p.join_of(s);
    for (int q = 0; q < p.size(); ++q) {
      if (subset(s, p.down_of(q)) && has(g, q)) {
        if (!j || *j != q)
          return "upper bound " + p.label(q) + " inside gamma(" + mask_str(p, s) +
                 ") is not the join";
      }
    }
    const bool in_plus = j && has(g, *j);
    if (in_plus != in_uplus(in.u, s)) return "U+ membership mismatch at " + mask_str(p, s);
    if (d.up && d.up->contains(s) != in_plus)
      return "explicit U+ disagrees with the membership oracle at " + mask_str(p, s);
  }
  return std::nullopt;
}

Fail law_one_step_smallest_ideal(const Inst& in, const Derived&) {
  for (Mask s : in.u.members()) {
    const Mask t = upsilon(in.u, s);
    const bool dc = in.p.is_down_closed(t);
    const bool smallest = t == gamma(in.u, s);
    if (dc != smallest)
      return "S=" + mask_str(in.p, s) + " down-closed=" + (dc ? "yes" : "no") +
             " smallest-ideal=" + (smallest ? "yes" : "no");
  }
  return std::nullopt;
}

Fail law_frame_methods_agree(const Inst& in, const Derived&) {
  FrameGenReport r = is_frame_generating(in.u, FrameGenMethod::all);
  if (!r.methods_agree) {
    std::string s = "verdicts differ:";
    for (auto [m, v] : r.method_verdicts)
      s += " m" + std::to_string(static_cast<int>(m)) + "=" + (v ? "1" : "0");
    return s;
  }
  if (!r.verdict) {
    if (!r.witness) return std::string("failure without witness");
    auto [s, q] = *r.witness;
    if (!in.u.contains(s)) return std::string("witness set is not a member");
    if (!in.p.leq(q, *in.p.join_of(s))) return std::string("witness is not below the join");
    if (has(upsilon(in.u, s), q)) return std::string("witness lies in upsilon after all");
  }
  return std::nullopt;
}

Fail law_closure_galois(const Inst& in, const Derived& d) {
  if (!d.up || !d.partner) return d.error.empty() ? Fail{} : Fail{d.error};
  const JoinSpec& u = in.u;
  for (Mask s : u.members()) {
    if (!d.up->contains(s)) return "U is not inside U+ at " + mask_str(in.p, s);
  }
  for (Mask s : subset_pool(in, 10)) {
    if (gamma(u, s) != gamma(*d.up, s))
      return "gamma of U+ differs at " + mask_str(in.p, s);
  }
  if (!(uplus(*d.up) == *d.up)) return std::string("U+ is not idempotent");
  // Galois law against the sampled partner.
  const JoinSpec& v = *d.partner;
  bool contained = true;
  for (Mask s : u.members()) {
    if (!in_uplus(v, s)) {
      contained = false;
      break;
    }
  }
  bool pointwise = true;
  for (Mask s : subset_pool(in, 10)) {
    if (!subset(gamma(u, s), gamma(v, s))) {
      pointwise = false;
      break;
    }
  }
  if (contained != pointwise)
    return std::string("U in V+ does not match gamma_U <= gamma_V");
  return std::nullopt;
}

Fail law_maximal_intersection(const Inst& in, const Derived& d) {
  if (!d.up || !d.partner) return d.error.empty() ? Fail{} : Fail{d.error};
  JoinSpec w = d.up->intersect_with(uplus(*d.partner));
  if (auto t = maximality_witness(w))
    return "intersection of maximal specs misses " + mask_str(in.p, *t);
  return std::nullopt;
}

Fail law_union_intersection_stability(const Inst& in, const Derived& d) {
  if (!d.partner) return d.error.empty() ? Fail{} : Fail{d.error};
  JoinSpec a = uminus(in.u);
  JoinSpec b = uminus(*d.partner);
  if (!is_frame_generating(a.union_with(b)).verdict)
    return std::string("union of frame-generating specs is not frame-generating");
  JoinSpec ma = uplus(a), mb = uplus(b);
  JoinSpec inter = ma.intersect_with(mb);
  if (!is_maximal(inter)) return std::string("intersection in JF+ is not maximal");
  if (!is_frame_generating(inter).verdict)
    return std::string("intersection in JF+ is not frame-generating");
  return std::nullopt;
}

Fail law_spec_lattice_ops(const Inst& in, const Derived& d) {
  if (!d.partner) return d.error.empty() ? Fail{} : Fail{d.error};
  const JoinSpec a = uminus(in.u);
  const JoinSpec b = uminus(*d.partner);
  const std::vector<JoinSpec> ab{a, b};
  const JoinSpec join = jf_join(ab);
  const JoinSpec meet = jf_meet(ab);
  auto contains_all = [](const JoinSpec& big, const JoinSpec& small) {
    for (Mask s : small.members()) {
      if (!big.contains(s)) return false;
    }
    return true;
  };
  if (!contains_all(join, a) || !contains_all(join, b))
    return std::string("jf_join does not contain its inputs");
  if (!contains_all(a, meet) || !contains_all(b, meet))
    return std::string("jf_meet is not a lower bound");
  // Absorption in JF.
  const std::vector<JoinSpec> a_meet{a, meet};
  const std::vector<JoinSpec> a_join{a, join};
  if (!(jf_join(a_meet) == a)) return std::string("absorption join(a, meet(a,b)) failed");
  if (!(jf_meet(a_join) == a)) return std::string("absorption meet(a, join(a,b)) failed");
  // Any frame-generating lower bound sits under the meet.
  JoinSpec c = uminus(a.intersect_with(b));
  if (!contains_all(meet, c)) return std::string("jf_meet is not the greatest lower bound");
  // JF+ formulas.
  const JoinSpec ma = uplus(a), mb = uplus(b);
  const std::vector<JoinSpec> mab{ma, mb};
  const JoinSpec pjoin = jfplus_join(mab);
  const JoinSpec pmeet = jfplus_meet(mab);
  if (!contains_all(pjoin, ma) || !contains_all(pjoin, mb))
    return std::string("jfplus_join does not contain its inputs");
  if (!is_maximal(pjoin) || !is_frame_generating(pjoin).verdict)
    return std::string("jfplus_join is not maximal frame-generating");
  if (!contains_all(ma, pmeet) || !contains_all(mb, pmeet))
    return std::string("jfplus_meet is not a lower bound");
  return std::nullopt;
}

Fail law_core_largest(const Inst& in, const Derived&) {
  const JoinSpec um = uminus(in.u);
  if (!is_frame_generating(um).verdict)
    return std::string("uminus result is not frame-generating");
  if (!(uminus_sequential(in.u) == um))
    return std::string("sequential pruning reached a different fixpoint");
  const std::vector<Mask> cands = in.u.non_singleton_members();
  if (cands.size() > 8) return std::nullopt;  // brute force only at small scale
  const std::uint64_t total = std::uint64_t{1} << cands.size();
  for (std::uint64_t pick = 0; pick < total; ++pick) {
    std::vector<Mask> members;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if ((pick >> i) & 1) members.push_back(cands[i]);
    }
    JoinSpec sub = JoinSpec::make(in.p, members);
    if (!is_frame_generating(sub).verdict) continue;
    for (Mask s : sub.members()) {
      if (!um.contains(s))
        return "frame-generating subset escapes uminus at " + mask_str(in.p, s);
    }
  }
  return std::nullopt;
}

Fail law_closure_order_closed_sets(const Inst& in, const Derived& d) {
  if (!d.partner) return d.error.empty() ? Fail{} : Fail{d.error};
  const JoinSpec& u = in.u;
  const JoinSpec& v = *d.partner;
  bool pointwise = true;
  for (Mask s : subset_pool(in, 12)) {
    if (!subset(gamma(u, s), gamma(v, s))) {
      pointwise = false;
      break;
    }
  }
  bool closed_contained = true;
  IdealLattice iv = ideal_lattice(v);
  for (Mask c : iv.ideals()) {
    if (!is_ideal(u, c)) {
      closed_contained = false;
      break;
    }
  }
  if (pointwise != closed_contained)
    return std::string("pointwise order does not match closed-set containment");
  return std::nullopt;
}

Fail law_completion_reflection(const Inst& in, const Derived& d) {
  if (!d.partner) return d.error.empty() ? Fail{} : Fail{d.error};
  const JoinSpec a = uminus(in.u);
  const JoinSpec b = uminus(*d.partner);
  if (!reflection_pair_check(a, uplus(a))) return std::string("reflection failed against U+");
  if (!reflection_pair_check(a, uplus(b))) return std::string("reflection failed across specs");
  return std::nullopt;
}

Fail law_closure_meets(const Inst& in, const Derived&) {
  const JoinSpec w = uminus(in.u);
  std::vector<Mask> downs = all_downsets(in.p);
  const std::size_t stride = std::max<std::size_t>(1, downs.size() / 8);
  std::vector<Mask> sample;
  for (std::size_t i = 0; i < downs.size(); i += stride) sample.push_back(downs[i]);
  for (Mask a : sample) {
    const Mask one[] = {a};
    if (!closure_meet_check(w, one).equal)
      return "singleton family fails at " + mask_str(in.p, a);
    for (Mask b : sample) {
      const Mask two[] = {a, b};
      ClosureMeetResult r = closure_meet_check(w, two);
      if (!r.equal)
        return "pair " + mask_str(in.p, a) + ", " + mask_str(in.p, b) +
               ": gamma(cap)=" + mask_str(in.p, r.lhs) +
               " cap(gamma)=" + mask_str(in.p, r.rhs);
    }
  }
  return std::nullopt;
}

Fail law_eta_completion(const Inst& in, const Derived&) {
  if (in.p.size() > 12) return std::nullopt;
  if (!verify_eta(in.u)) return std::string("eta checks failed");
  return std::nullopt;
}

Fail law_meet_embedding(const Inst& in, const Derived&) {
  const Poset& p = in.p;
  for (Mask s : subset_pool(in, 12)) {
    auto m = p.meet_of(s);
    if (!m) continue;
    Mask inter = p.carrier();
    Mask rest = s;
    while (rest) {
      int i = first_bit(rest);
      rest &= rest - 1;
      inter &= p.down_of(i);
    }
    if (inter != p.down_of(*m))
      return "meet image mismatch at " + mask_str(p, s);
  }
  return std::nullopt;
}

Fail law_universal_extension(const Inst& in, const Derived& d) {
  if (!d.partner) return d.error.empty() ? Fail{} : Fail{d.error};
  const JoinSpec big = in.u.union_with(*d.partner);
  Lattice l = ideal_lattice(big).lattice();
  std::vector<int> e(in.p.size());
  for (int q = 0; q < in.p.size(); ++q) e[q] = l.eta(q);
  UniversalExtension ue = universal_extension(in.u, l, e);
  if (!ue.fixes_base) return std::string("h does not fix the poset");
  if (!ue.join_preserving) return std::string("h is not join-preserving");
  if (!ue.join_dense) return std::string("the ideal lattice is not join-dense over eta");
  return std::nullopt;
}

Fail law_induced_map_frames(const Inst& in, const Derived& d) {
  InducedClosureMap pr =
      induced_closure_map(ClosureRepr::from_spec(JoinSpec::minimal(in.p)), ClosureRepr::from_spec(in.u));
  if (!pr.fixes_base) return std::string("phi does not fix the poset");
  if (!pr.join_preserving) return std::string("phi is not join-preserving");
  const bool frame = is_frame_generating(in.u).verdict;
  if (pr.binary_meet_preserving != frame)
    return std::string("frame verdict differs from meet preservation of phi");
  if (d.partner) {
    const JoinSpec sub = in.u.intersect_with(*d.partner);
    InducedClosureMap ps =
        induced_closure_map(ClosureRepr::from_spec(sub), ClosureRepr::from_spec(in.u));
    if (!ps.fixes_base || !ps.join_preserving)
      return std::string("phi from a sub-specification misbehaves");
    if (frame && !ps.binary_meet_preserving)
      return std::string("frame-generating U lost meet preservation on a sub-spec");
  }
  return std::nullopt;
}

Fail law_completion_roundtrip(const Inst& in, const Derived& d) {
  if (!roundtrip_check(ClosureRepr::from_spec(in.u)))
    return std::string("closure/completion round trip failed");
  if (d.lat) {
    std::vector<int> e(in.p.size());
    for (int q = 0; q < in.p.size(); ++q) e[q] = d.lat->eta(q);
    if (!completion_roundtrip_check(in.p, *d.lat, e))
      return std::string("eta completion does not reproduce I_U");
  }
  return std::nullopt;
}

Fail law_irreducible_joins(const Inst& in, const Derived& d) {
  if (!d.lat) return d.error.empty() ? Fail{} : Fail{d.error};
  if (!is_distributive(*d.lat)) return std::nullopt;
  if (!birkhoff_check(*d.lat)) return std::string("Birkhoff isomorphism failed");
  if (in.p.bottom()) return std::nullopt;
  const Mask cs = join_free_elements(in.u);
  std::vector<int> ji = join_irreducibles(*d.lat);
  Mask pre = 0;
  for (int q = 0; q < in.p.size(); ++q) {
    if (std::find(ji.begin(), ji.end(), d.lat->eta(q)) != ji.end()) pre |= bit(q);
  }
  if (cs != pre)
    return "join-set characterisation " + mask_str(in.p, cs) +
           " differs from irreducibles " + mask_str(in.p, pre);
  return std::nullopt;
}

Fail law_pointwise_distribution(const Inst& in, const Derived&) {
  if (!radius_family_in_uplus(in.u)) return std::nullopt;
  if (!meet_distribution_hypothesis(in.u)) return std::nullopt;
  if (!is_frame_generating(in.u).verdict)
    return std::string("meet-distribution hypothesis did not force a frame");
  return std::nullopt;
}

Fail law_strong_descent(const Inst& in, const Derived&) {
  const JoinSpec v = JoinSpec::u_infty(in.p);
  if (strong_descent_check(v) != is_frame_generating(v).verdict)
    return std::string("strong descent disagrees with the frame verdict on u_infty");
  return std::nullopt;
}

Fail law_inclusion_adjoint(const Inst& in, const Derived& d) {
  if (!d.lat) return d.error.empty() ? Fail{} : Fail{d.error};
  InducedClosureMap pr =
      induced_closure_map(ClosureRepr::from_spec(JoinSpec::minimal(in.p)), ClosureRepr::from_spec(in.u));
  const Lattice& ap = pr.phi.dom;
  LatticeMap incl{*d.lat, ap, {}};
  incl.assign.resize(d.lat->size());
  for (int i = 0; i < d.lat->size(); ++i) {
    incl.assign[i] = ap.index_of_tag(d.lat->tag(i));
    if (incl.assign[i] < 0) return std::string("an ideal is missing from the downsets");
  }
  // phi maps A(P) onto I_U, so realign phi's codomain with d.lat.
  LatticeMap fwd{ap, *d.lat, {}};
  fwd.assign.resize(ap.size());
  for (int i = 0; i < ap.size(); ++i) {
    fwd.assign[i] = d.lat->index_of_tag(gamma(in.u, ap.tag(i)));
    if (fwd.assign[i] < 0) return std::string("gamma left the ideal family");
  }
  if (!adjoint_check(fwd, incl)) return std::string("gamma and inclusion are not adjoint");
  for (int i = 0; i < d.lat->size(); ++i) {
    if (fwd(incl(i)) != i) return std::string("phi after inclusion is not the identity");
  }
  return std::nullopt;
}

Fail law_morphism_containment(const Inst& in, const Derived& d) {
  if (!d.partner) return d.error.empty() ? Fail{} : Fail{d.error};
  const JoinSpec sub = in.u.intersect_with(*d.partner);
  // A join-preserving map I_sub -> I_U fixing P exists (sub is below U), so
  // sub+ must land inside U+.
  for (Mask s : subset_pool(in, 10)) {
    if (in_uplus(sub, s) && !in_uplus(in.u, s))
      return "sub-spec U+ escapes at " + mask_str(in.p, s);
  }
  return std::nullopt;
}

// Meet preservation and order reflection of lifts need the image of the
// embedding to be down-closed. Two inclusions refute the unrestricted
// statements: {c,d} into a<c, a<d, b<c sends {c} meet {d} to the empty
// ideal while the image ideals still intersect in a-down, and {b,c,e} into
// a<c, a<e, b<e maps the ideal {b,c} over everything because the ambient
// poset gains the join of {a,b}. Join preservation only needs continuity.
Fail law_lift_embedding(const Inst& in, const Derived&) {
  if (in.p.size() < 2) return std::nullopt;
  SplitMix64 rng(in.stream ^ 0x517CC1B727220A95ull);
  Mask keep = 0;
  while (popcount(keep) < 2) keep = rng.next() & in.p.carrier();
  JoinSpec up = JoinSpec::all_joins(in.p);

  const auto lift_checks = [&](Mask k) -> Fail {
    Poset q = induced_poset(in.p, k);
    std::vector<int> assign;
    for (int i = 0; i < in.p.size(); ++i) {
      if (has(k, i)) assign.push_back(i);
    }
    PosetMap f(q, in.p, assign);
    JoinSpec uq = JoinSpec::all_joins(q);
    if (!is_u_morphism(f, uq)) return std::nullopt;  // the inclusion may break joins
    LatticeMap lifted = lift(f, uq, up);
    if (continuity_check(f, uq, up) && !map_join_preserving(lifted))
      return std::string("continuous lift is not join-preserving");
    const bool both_frames =
        is_frame_generating(uq).verdict && is_frame_generating(up).verdict;
    if (both_frames && in.p.is_down_closed(k)) {
      if (!map_meet_preserving_binary(lifted))
        return std::string("lift along a down-closed embedding lost binary meets");
      if (!map_embedding(lifted))
        return std::string("lift along a down-closed embedding is not an embedding");
    }
    return std::nullopt;
  };

  if (Fail f = lift_checks(keep)) return f;
  const Mask closed = in.p.down_close(keep);
  if (closed != keep) return lift_checks(closed);
  return std::nullopt;
}

Fail law_lift_functorial(const Inst& in, const Derived&) {
  if (in.p.size() < 3) return std::nullopt;
  SplitMix64 rng(in.stream ^ 0x2545F4914F6CDD1Dull);
  Mask keep2 = 0;
  while (popcount(keep2) < 2) keep2 = rng.next() & in.p.carrier();
  Mask keep1 = 0;
  while (popcount(keep1) < 1) keep1 = rng.next() & keep2;
  Poset p1 = induced_poset(in.p, keep1);
  Poset p2 = induced_poset(in.p, keep2);
  std::vector<int> a2;  // p2 -> p
  for (int i = 0; i < in.p.size(); ++i) {
    if (has(keep2, i)) a2.push_back(i);
  }
  std::vector<int> a1;  // p1 -> p2
  {
    std::vector<int> pos_in_2(in.p.size(), -1);
    int idx = 0;
    for (int i = 0; i < in.p.size(); ++i) {
      if (has(keep2, i)) pos_in_2[i] = idx++;
    }
    for (int i = 0; i < in.p.size(); ++i) {
      if (has(keep1, i)) a1.push_back(pos_in_2[i]);
    }
  }
  PosetMap f(p1, p2, a1), g(p2, in.p, a2);
  JoinSpec u1 = JoinSpec::all_joins(p1);
  JoinSpec u2 = JoinSpec::all_joins(p2);
  JoinSpec u3 = JoinSpec::all_joins(in.p);
  if (!is_u_morphism(f, u1) || !is_u_morphism(g, u2)) return std::nullopt;
  if (!continuity_check(f, u1, u2) || !continuity_check(g, u2, u3)) return std::nullopt;
  std::vector<int> comp(p1.size());
  for (int i = 0; i < p1.size(); ++i) comp[i] = a2[a1[i]];
  PosetMap gf(p1, in.p, comp);
  if (!is_u_morphism(gf, u1)) return std::nullopt;
  LatticeMap lf = lift(f, u1, u2), lg = lift(g, u2, u3), lgf = lift(gf, u1, u3);
  for (int i = 0; i < lf.dom.size(); ++i) {
    // The two codomain lattices index the same enumeration.
    if (lgf(i) != lg(lf(i))) return std::string("lift of a composite differs from the composite of lifts");
  }
  return std::nullopt;
}

Fail law_terminal_completion(const Inst& in, const Derived& d) {
  if (!d.up) return d.error.empty() ? Fail{} : Fail{d.error};
  const JoinSpec w = uminus(*d.up);
  Lattice l = ideal_lattice(w).lattice();
  std::vector<int> e(in.p.size());
  for (int q = 0; q < in.p.size(); ++q) e[q] = l.eta(q);
  const std::vector<JoinSpec> samples{JoinSpec::minimal(in.p), uminus(in.u), w};
  TerminalCheck tc = terminal_object_check(in.p, l, e, samples);
  if (!tc.w_maximal) return std::string("U_e minus is not maximal");
  if (!tc.biconditional) return std::string("map existence does not match containment in W");
  if (!tc.phi_ok) return std::string("the canonical map into L misbehaves");
  return std::nullopt;
}

Fail law_global_adjunction(const Inst& in, const Derived& d) {
  if (!d.lat || d.lat->size() > 12) return std::nullopt;
  JoinSpec ua = JoinSpec::all_joins(in.p);
  if (!is_frame_generating(ua).verdict) return std::nullopt;
  if (!global_adjunction_check(in.p))
    return std::string("triangle identities failed");
  SplitMix64 rng(in.stream ^ 0xD1B54A32D192ED03ull);
  Mask keep = rng.next() & in.p.carrier();
  if (popcount(keep) >= 1) {
    Poset q = induced_poset(in.p, keep);
    std::vector<int> assign;
    for (int i = 0; i < in.p.size(); ++i) {
      if (has(keep, i)) assign.push_back(i);
    }
    PosetMap f(q, in.p, assign);
    try {
      if (!unit_naturality_check(f)) return std::string("unit naturality square failed");
    } catch (const validation_error&) {
      // the inclusion need not be a U-morphism; nothing to check then
    }
  }
  return std::nullopt;
}

Fail law_top_is_union(const Inst& in, const Derived&) {
  // The top of the frame-generating lattice is the union of every
  // frame-generating specification; brute-forced where the candidate
  // count is small.
  std::vector<JoinSpec> all;
  try {
    all = all_joinspecs(in.p, 10);
  } catch (const cap_exceeded&) {
    return std::nullopt;
  }
  JoinSpec top = jf_top(in.p);
  JoinSpec unioned = JoinSpec::minimal(in.p);
  for (const JoinSpec& v : all) {
    if (is_frame_generating(v).verdict) unioned = unioned.union_with(v);
  }
  if (!(unioned == top))
    return "union of all frame-generating specs is " + spec_to_text(in.p, unioned) +
           ", top is " + spec_to_text(in.p, top);
  return std::nullopt;
}

struct Law {
  const char* name;
  Fail (*fn)(const Inst&, const Derived&);
  int stride;  // run on instances with index % stride == 0
};

const Law kLaws[] = {
    {"closure-meets", law_closure_meets, 1},
    {"completion-reflection", law_completion_reflection, 1},
    {"irreducible-joins", law_irreducible_joins, 1},
    {"empty-rules", law_empty_rules, 1},
    {"closure-laws", law_closure_laws, 1},
    {"global-adjunction", law_global_adjunction, 13},
    {"one-step-below-closure", law_one_step_below_closure, 1},
    {"one-step-localized", law_one_step_localized, 1},
    {"maximal-intersection", law_maximal_intersection, 1},
    {"morphism-containment", law_morphism_containment, 1},
    {"one-step-smallest-ideal", law_one_step_smallest_ideal, 1},
    {"lift-embedding", law_lift_embedding, 5},
    {"one-step-idempotent", law_one_step_idempotent, 1},
    {"join-in-closure", law_join_in_closure, 1},
    {"lift-functorial", law_lift_functorial, 5},
    {"inclusion-adjoint", law_inclusion_adjoint, 3},
    {"pointwise-distribution", law_pointwise_distribution, 1},
    {"closure-order-closed-sets", law_closure_order_closed_sets, 1},
    {"closure-galois", law_closure_galois, 1},
    {"induced-map-frames", law_induced_map_frames, 1},
    {"completion-roundtrip", law_completion_roundtrip, 3},
    {"meet-embedding", law_meet_embedding, 1},
    {"eta-completion", law_eta_completion, 1},
    {"universal-extension", law_universal_extension, 3},
    {"strong-descent", law_strong_descent, 3},
    {"spec-lattice-ops", law_spec_lattice_ops, 1},
    {"frame-methods-agree", law_frame_methods_agree, 1},
    {"union-intersection-stability", law_union_intersection_stability, 1},
    {"terminal-completion", law_terminal_completion, 7},
    {"top-is-union", law_top_is_union, 97},
    {"core-largest", law_core_largest, 9},
    {"one-step-formula", law_one_step_formula, 1},
};

// ------------------------------------------------------ instance sweep

std::uint64_t instance_stream(std::uint64_t seed, long index) {
  SplitMix64 rng(seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(index + 1));
  return rng.next();
}

struct Cell {
  signed char status = 0;  // 0 skipped, 1 pass, 2 fail
  std::string detail;
};

std::string shrink_witness(const Law& law, const Inst& in, int spec_members,
                           const std::string& first_detail) {
  auto eval = [&](const Poset& p, const JoinSpec& u) -> Fail {
    Inst probe{in.index, p, u, in.stream};
    Derived d = make_derived(probe, spec_members);
    try {
      return law.fn(probe, d);
    } catch (const std::exception& e) {
      return std::string(e.what());
    }
  };
  Poset p = in.p;
  JoinSpec u = in.u;
  std::string detail = first_detail;
  bool improved = true;
  while (improved) {
    improved = false;
    for (Mask m : u.non_singleton_members()) {
      const std::vector<Mask> one{m};
      JoinSpec cand = u.without(one);
      if (Fail f = eval(p, cand)) {
        u = cand;
        detail = *f;
        improved = true;
        break;
      }
    }
    if (improved) continue;
    for (int i = p.size() - 1; i >= 0 && p.size() > 1; --i) {
      auto cand = restrict_instance(p, u, p.carrier() & ~bit(i));
      if (!cand) continue;
      if (Fail f = eval(cand->first, cand->second)) {
        p = cand->first;
        u = cand->second;
        detail = *f;
        improved = true;
        break;
      }
    }
  }
  return render_instance(p, u) + " :: " + detail;
}

}  // namespace

std::vector<std::string> all_law_names() {
  std::vector<std::string> out;
  for (const Law& l : kLaws) out.emplace_back(l.name);
  return out;
}

std::vector<Poset> all_posets_up_to_iso(int n) {
  if (n < 1 || n > 5) throw validation_error("all_posets_up_to_iso supports 1..5 elements");
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = std::string(1, static_cast<char>('a' + i));

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) pairs.emplace_back(i, j);
    }
  }
  std::set<std::uint64_t> seen;
  std::vector<Poset> out;
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  std::vector<int> perm(n);
  for (std::uint64_t pick = 0; pick < total; ++pick) {
    std::vector<Mask> strict(n, 0);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if ((pick >> k) & 1) strict[pairs[k].first] |= bit(pairs[k].second);
    }
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (has(strict[i], i)) ok = false;
      Mask rest = strict[i];
      while (rest && ok) {
        int j = first_bit(rest);
        rest &= rest - 1;
        if (has(strict[j], i)) ok = false;            // antisymmetry
        else if (!subset(strict[j], strict[i])) ok = false;  // transitivity
      }
    }
    if (!ok) continue;
    // Canonical key: the least relation bit-matrix over all relabellings.
    std::uint64_t best = ~std::uint64_t{0};
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::uint64_t key = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const bool rel = i == j || has(strict[perm[i]], perm[j]);
          key = (key << 1) | (rel ? 1 : 0);
        }
      }
      best = std::min(best, key);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!seen.insert(best).second) continue;
    std::vector<Mask> up(n);
    for (int i = 0; i < n; ++i) up[i] = bit(i) | strict[i];
    out.push_back(Poset::from_relation(labels, std::move(up)));
  }
  return out;
}

std::vector<JoinSpec> all_joinspecs(const Poset& p, int max_candidates) {
  std::vector<Mask> cands;
  const std::uint64_t count = std::uint64_t{1} << p.size();
  for (Mask s = 0; s < count; ++s) {
    if (popcount(s) >= 2 && p.join_of(s)) cands.push_back(s);
  }
  if (p.bottom()) cands.push_back(0);
  if (cands.size() > static_cast<std::size_t>(max_candidates))
    throw cap_exceeded("too many candidate sets for the exhaustive sweep");
  std::vector<JoinSpec> out;
  const std::uint64_t picks = std::uint64_t{1} << cands.size();
  for (std::uint64_t pick = 0; pick < picks; ++pick) {
    std::vector<Mask> members;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if ((pick >> i) & 1) members.push_back(cands[i]);
    }
    out.push_back(JoinSpec::make(p, members));
  }
  return out;
}

VerifyReport verify_theorems(const VerifyConfig& cfg) {
  struct MutationGuard {
    ~MutationGuard() { testing::set_mutation(testing::Mutation::none); }
  } guard;
  testing::set_mutation(cfg.mutation);

  // Selected laws.
  std::vector<const Law*> laws;
  for (const Law& l : kLaws) {
    if (cfg.laws.empty() ||
        std::find(cfg.laws.begin(), cfg.laws.end(), l.name) != cfg.laws.end())
      laws.push_back(&l);
  }
  for (const std::string& name : cfg.laws) {
    if (std::none_of(std::begin(kLaws), std::end(kLaws),
                     [&name](const Law& l) { return name == l.name; }))
      throw validation_error("unknown law '" + name + "'");
  }

  // Instance generation is sequential and seed-determined.
  std::vector<Inst> instances;
  long exhaustive_count = 0;
  if (cfg.exhaustive) {
    for (int n = 1; n <= std::min(4, cfg.max_n); ++n) {
      for (const Poset& p : all_posets_up_to_iso(n)) {
        for (JoinSpec& u : all_joinspecs(p, 12)) {
          const long idx = static_cast<long>(instances.size());
          instances.push_back(Inst{idx, p, std::move(u), instance_stream(cfg.seed, idx)});
        }
      }
    }
    exhaustive_count = static_cast<long>(instances.size());
  }
  {
    SplitMix64 master(cfg.seed);
    const int lo = std::min(5, cfg.max_n);
    const int hi = std::max(lo, cfg.max_n);
    for (int i = 0; i < cfg.samples; ++i) {
      const int n = lo + static_cast<int>(master.below(hi - lo + 1));
      Poset p = random_poset(master, n, cfg.edge_num, cfg.edge_den);
      JoinSpec u = random_joinspec(master, p, cfg.spec_members);
      const long idx = static_cast<long>(instances.size());
      instances.push_back(Inst{idx, std::move(p), std::move(u), instance_stream(cfg.seed, idx)});
    }
  }
  for (const auto& [p, u] : cfg.extra_instances) {
    const long idx = static_cast<long>(instances.size());
    instances.push_back(Inst{idx, p, u, instance_stream(cfg.seed, idx)});
  }

  // Law evaluation, one instance per slot.
  std::vector<std::vector<Cell>> cells(instances.size(),
                                       std::vector<Cell>(laws.size()));
  kernels::for_each_index(static_cast<std::int64_t>(instances.size()), [&](std::int64_t i) {
    const Inst& in = instances[i];
    const Derived d = make_derived(in, cfg.spec_members);
    for (std::size_t j = 0; j < laws.size(); ++j) {
      if (in.index % laws[j]->stride != 0) continue;
      Cell& c = cells[i][j];
      try {
        if (Fail f = laws[j]->fn(in, d)) {
          c.status = 2;
          c.detail = *f;
        } else {
          c.status = 1;
        }
      } catch (const std::exception& e) {
        c.status = 2;
        c.detail = e.what();
      }
    }
  });

  VerifyReport report;
  report.instances = static_cast<long>(instances.size());
  for (std::size_t j = 0; j < laws.size(); ++j) {
    LawResult lr;
    lr.law = laws[j]->name;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const Cell& c = cells[i][j];
      if (c.status == 1) ++lr.passes;
      if (c.status == 2) {
        ++lr.failures;
        if (lr.witnesses.size() < 3) {
          lr.witnesses.push_back(
              shrink_witness(*laws[j], instances[i], cfg.spec_members, c.detail));
        }
      }
    }
    if (lr.failures > 0) report.ok = false;
    report.laws.push_back(std::move(lr));
  }
  std::sort(report.laws.begin(), report.laws.end(),
            [](const LawResult& a, const LawResult& b) { return a.law < b.law; });

  std::ostringstream os;
  os << "ordkit verify\n";
  os << "config: seed=" << cfg.seed << " max-n=" << cfg.max_n
     << " samples=" << cfg.samples << " edge=" << cfg.edge_num << "/" << cfg.edge_den
     << " spec-members=" << cfg.spec_members
     << " exhaustive=" << (cfg.exhaustive ? "yes" : "no");
  os << " mutation=";
  switch (cfg.mutation) {
    case testing::Mutation::none: os << "none"; break;
    case testing::Mutation::gamma_skip_downclose: os << "gamma-skip-downclose"; break;
    case testing::Mutation::upsilon_u_quantifier: os << "upsilon-u-quantifier"; break;
  }
  os << " laws=";
  if (cfg.laws.empty()) {
    os << "(all)";
  } else {
    for (std::size_t i = 0; i < cfg.laws.size(); ++i) os << (i ? "," : "") << cfg.laws[i];
  }
  os << "\n";
  os << "instances: " << report.instances << " (exhaustive " << exhaustive_count
     << ", random " << cfg.samples << ", extra " << cfg.extra_instances.size() << ")\n";
  for (const LawResult& lr : report.laws) {
    os << "law " << lr.law << ": pass=" << lr.passes << " fail=" << lr.failures << "\n";
    for (const std::string& w : lr.witnesses) os << "  witness: " << w << "\n";
  }
  os << "RESULT: " << (report.ok ? "PASS" : "FAIL") << "\n";
  report.text = os.str();
  return report;
}

}  // namespace ordkit
