#include "ordkit/frames.hpp"

#include <algorithm>

#include "ordkit/enumerate.hpp"

namespace ordkit {

namespace {

// Members in witness order: by size, then mask.
std::vector<Mask> witness_ordered_members(const JoinSpec& u) {
  std::vector<Mask> ms(u.members().begin(), u.members().end());
  std::sort(ms.begin(), ms.end(), [](Mask a, Mask b) {
    return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
  });
  return ms;
}

std::optional<std::pair<Mask, int>> upsilon_witness(const JoinSpec& u) {
  const Poset& p = u.owner();
  for (Mask s : witness_ordered_members(u)) {
    const Mask t = upsilon(u, s);
    const Mask dc = p.down_close(t);
    if (dc != t) return std::make_pair(s, first_bit(dc & ~t));
  }
  return std::nullopt;
}

bool method_gamma_equation(const JoinSpec& u,
                           std::optional<std::pair<Mask, int>>* witness) {
  const Poset& p = u.owner();
  for (Mask s : witness_ordered_members(u)) {
    const int js = *p.join_of(s);
    const Mask gs = gamma(u, s);
    const Mask sd = p.down_close(s);
    for (int x = 0; x < p.size(); ++x) {
      if (!p.leq(x, js)) continue;
      if ((p.down_of(x) & gs) != gamma(u, p.down_of(x) & sd)) {
        if (witness) *witness = std::make_pair(s, x);
        return false;
      }
    }
  }
  return true;
}

bool method_ideal_lattice(const JoinSpec& u) {
  return is_distributive(ideal_lattice(u).lattice());
}

bool method_smallest_ideal(const JoinSpec& u) {
  // gamma(S) = gamma(S-down) and likewise for upsilon, so quantifying over
  // the downsets covers every subset.
  for (Mask s : all_downsets(u.owner())) {
    if (gamma(u, s) != upsilon(u, s)) return false;
  }
  return true;
}

bool descent_holds_at(const JoinSpec& u, Mask sdown, int p) {
  const Poset& po = u.owner();
  // Likely witness first: everything below both p and the member.
  const Mask quick = po.down_of(p) & sdown;
  if (po.join_of(quick) == std::optional<int>(p) && in_uplus(u, quick)) return true;
  if ((std::uint64_t{1} << popcount(sdown)) > limits().max_subset_scan)
    throw cap_exceeded("descent witness scan above cap");
  Mask t = sdown;
  while (true) {
    if (po.join_of(t) == std::optional<int>(p) && in_uplus(u, t)) return true;
    if (t == 0) break;
    t = (t - 1) & sdown;
  }
  return false;
}

// Quantifies over every member (with witnesses drawn from the member's
// downset): restricting to down-closed members would hold vacuously for
// specifications without them, while the other frame tests still fail.
bool method_descent(const JoinSpec& u,
                    std::optional<std::pair<Mask, int>>* witness) {
  const Poset& po = u.owner();
  for (Mask s : witness_ordered_members(u)) {
    const int js = *po.join_of(s);
    const Mask sdown = po.down_close(s);
    for (int p = 0; p < po.size(); ++p) {
      if (!po.leq(p, js)) continue;
      if (!descent_holds_at(u, sdown, p)) {
        if (witness) *witness = std::make_pair(s, p);
        return false;
      }
    }
  }
  return true;
}

}  // namespace

std::string FrameGenReport::describe(const Poset& p) const {
  std::string out = verdict ? "frame-generating" : "not frame-generating";
  if (witness) {
    out += " (witness S=" + p.set_to_string(witness->first) +
           ", p=" + p.label(witness->second) + ")";
  }
  for (const auto& [m, v] : method_verdicts) {
    out += "\n  method " + std::to_string(static_cast<int>(m)) + ": " +
           (v ? "frame-generating" : "not frame-generating");
  }
  if (!method_verdicts.empty()) {
    out += methods_agree ? "\n  methods agree" : "\n  METHODS DISAGREE";
  }
  return out;
}

FrameGenReport is_frame_generating(const JoinSpec& u, FrameGenMethod method) {
  FrameGenReport r;
  r.method = method;
  switch (method) {
    case FrameGenMethod::upsilon_downclosed: {
      auto w = upsilon_witness(u);
      r.verdict = !w;
      r.witness = w;
      return r;
    }
    case FrameGenMethod::gamma_equation: {
      std::optional<std::pair<Mask, int>> w;
      r.verdict = method_gamma_equation(u, &w);
      r.witness = w;
      return r;
    }
    case FrameGenMethod::ideal_lattice: {
      r.verdict = method_ideal_lattice(u);
      if (!r.verdict) r.witness = upsilon_witness(u);
      return r;
    }
    case FrameGenMethod::smallest_ideal: {
      r.verdict = method_smallest_ideal(u);
      if (!r.verdict) r.witness = upsilon_witness(u);
      return r;
    }
    case FrameGenMethod::descent: {
      std::optional<std::pair<Mask, int>> w;
      r.verdict = method_descent(u, &w);
      r.witness = w;
      return r;
    }
    case FrameGenMethod::all: {
      const FrameGenMethod ms[] = {
          FrameGenMethod::ideal_lattice, FrameGenMethod::gamma_equation,
          FrameGenMethod::upsilon_downclosed, FrameGenMethod::smallest_ideal,
          FrameGenMethod::descent};
      bool all_true = true, all_false = true;
      for (FrameGenMethod m : ms) {
        FrameGenReport sub = is_frame_generating(u, m);
        r.method_verdicts.emplace_back(m, sub.verdict);
        all_true &= sub.verdict;
        all_false &= !sub.verdict;
        if (!sub.verdict && !r.witness) r.witness = sub.witness;
      }
      r.methods_agree = all_true || all_false;
      r.verdict = all_true;
      if (r.verdict) r.witness.reset();
      return r;
    }
  }
  throw validation_error("unknown frame-generating method");
}

FrameGenReport descent_check(const JoinSpec& u) {
  return is_frame_generating(u, FrameGenMethod::descent);
}

bool strong_descent_check(const JoinSpec& u) {
  const Poset& po = u.owner();
  for (std::size_t si = 0; si < u.member_count(); ++si) {
    const Mask s = u.member(si);
    if (!po.is_down_closed(s)) continue;
    const int js = u.member_join(si);
    for (int p = 0; p < po.size(); ++p) {
      if (!po.leq(p, js)) continue;
      bool found = false;
      for (std::size_t i = 0; i < u.member_count() && !found; ++i) {
        found = subset(u.member(i), s) && u.member_join(i) == p;
      }
      if (!found) return false;
    }
  }
  return true;
}

bool verify_eta(const JoinSpec& u) {
  const Poset& p = u.owner();
  const int n = p.size();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (p.leq(a, b) != subset(p.down_of(a), p.down_of(b))) return false;
    }
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  if (count > limits().max_subset_scan)
    throw cap_exceeded("verify_eta meet scan above cap");
  for (Mask s = 0; s < count; ++s) {
    auto m = p.meet_of(s);
    if (!m) continue;
    Mask inter = p.carrier();
    Mask rest = s;
    while (rest) {
      int i = first_bit(rest);
      rest &= rest - 1;
      inter &= p.down_of(i);
    }
    if (inter != p.down_of(*m)) return false;
  }
  for (std::size_t i = 0; i < u.member_count(); ++i) {
    if (gamma(u, u.member(i)) != p.down_of(u.member_join(i))) return false;
  }
  IdealLattice il = ideal_lattice(u);
  for (int q = 0; q < n; ++q) {
    if (il.index_of(p.down_of(q)) < 0) return false;
  }
  for (Mask c : il.ideals()) {
    if (gamma(u, c) != c) return false;  // closed, hence the join of its principals
  }
  return true;
}

UniversalExtension universal_extension(const JoinSpec& u, const Lattice& l,
                                       std::span<const int> e) {
  const Poset& p = u.owner();
  if (e.size() != static_cast<std::size_t>(p.size()))
    throw validation_error("universal_extension: assignment does not cover the poset");
  for (int v : e) {
    if (v < 0 || v >= l.size())
      throw validation_error("universal_extension: assignment leaves the lattice");
  }
  for (int a = 0; a < p.size(); ++a) {
    for (int b = 0; b < p.size(); ++b) {
      if (p.leq(a, b) != l.leq(e[a], e[b]))
        throw validation_error("universal_extension: e is not an order embedding");
    }
  }
  std::vector<int> img;
  for (std::size_t i = 0; i < u.member_count(); ++i) {
    img.clear();
    Mask rest = u.member(i);
    while (rest) {
      int q = first_bit(rest);
      rest &= rest - 1;
      img.push_back(e[q]);
    }
    if (l.join_fold(img) != e[u.member_join(i)])
      throw validation_error("universal_extension: e is not a U-embedding (member " +
                             p.set_to_string(u.member(i)) + ")");
  }

  Lattice dom = ideal_lattice(u).lattice();
  std::vector<int> assign(dom.size());
  for (int i = 0; i < dom.size(); ++i) {
    img.clear();
    Mask rest = dom.tag(i);
    while (rest) {
      int q = first_bit(rest);
      rest &= rest - 1;
      img.push_back(e[q]);
    }
    assign[i] = l.join_fold(img);
  }

  UniversalExtension out{LatticeMap{dom, l, std::move(assign)}, true, true, true};
  for (int q = 0; q < p.size(); ++q) {
    if (out.h(dom.eta(q)) != e[q]) out.fixes_base = false;
  }
  if (out.h(dom.bottom()) != l.bottom()) out.join_preserving = false;
  for (int a = 0; a < dom.size() && out.join_preserving; ++a) {
    for (int b = 0; b < dom.size(); ++b) {
      if (out.h(dom.join(a, b)) != l.join(out.h(a), out.h(b))) {
        out.join_preserving = false;
        break;
      }
    }
  }
  // Whole-family sample: the join of everything.
  std::vector<int> all(dom.size());
  for (int i = 0; i < dom.size(); ++i) all[i] = i;
  std::vector<int> mapped(out.h.assign);
  if (out.h(dom.join_fold(all)) != l.join_fold(mapped)) out.join_preserving = false;

  for (int i = 0; i < dom.size(); ++i) {
    img.clear();
    Mask rest = dom.tag(i);
    while (rest) {
      int q = first_bit(rest);
      rest &= rest - 1;
      img.push_back(dom.eta(q));
    }
    if (dom.join_fold(img) != i) out.join_dense = false;
  }
  return out;
}

UniversalExtension universal_extension(const JoinSpec& u, const PosetMap& e) {
  if (!u.owner().same(e.dom))
    throw validation_error("universal_extension: specification is not over e's domain");
  Lattice l = Lattice::from_poset(e.cod);
  return universal_extension(u, l, e.assign);
}

Mask join_free_elements(const JoinSpec& u) {
  const Poset& p = u.owner();
  Mask out = 0;
  for (int q = 0; q < p.size(); ++q) {
    const Mask down = p.down_of(q);
    if ((std::uint64_t{1} << popcount(down)) > limits().max_subset_scan)
      throw cap_exceeded("join_free_elements submask scan above cap");
    bool is_such_join = false;
    Mask t = down;
    while (true) {
      if (!max_containing(p, t) && p.join_of(t) == std::optional<int>(q) &&
          in_uplus(u, t)) {
        is_such_join = true;
        break;
      }
      if (t == 0) break;
      t = (t - 1) & down;
    }
    if (!is_such_join) out |= bit(q);
  }
  return out;
}

ClosureMeetResult closure_meet_check(const JoinSpec& u, std::span<const Mask> sets) {
  if (sets.empty()) throw validation_error("closure_meet_check needs a nonempty family");
  const Poset& p = u.owner();
  Mask inter = p.carrier();
  Mask ginter = p.carrier();
  for (Mask s : sets) {
    inter &= p.down_close(s);
    ginter &= gamma(u, s);
  }
  ClosureMeetResult r;
  r.lhs = gamma(u, inter);
  r.rhs = ginter;
  r.equal = r.lhs == r.rhs;
  return r;
}

bool meet_distribution_hypothesis(const JoinSpec& u) {
  const Poset& po = u.owner();
  for (int p = 0; p < po.size(); ++p) {
    for (std::size_t i = 0; i < u.member_count(); ++i) {
      auto m = po.meet_of(bit(p) | bit(u.member_join(i)));
      if (!m) continue;
      Mask meets = 0;
      bool all_defined = true;
      Mask rest = u.member(i);
      while (rest) {
        int t = first_bit(rest);
        rest &= rest - 1;
        auto pt = po.meet_of(bit(p) | bit(t));
        if (!pt) {
          all_defined = false;
          break;
        }
        meets |= bit(*pt);
      }
      if (!all_defined) return false;
      if (po.join_of(meets) != std::optional<int>(*m)) return false;
    }
  }
  return true;
}

bool radius_family_in_uplus(const JoinSpec& u) {
  const Poset& p = u.owner();
  const int alpha = u.radius();
  const std::uint64_t count = std::uint64_t{1} << p.size();
  if (count > limits().max_subset_scan)
    throw cap_exceeded("radius-family scan above cap");
  for (Mask s = 1; s < count; ++s) {
    if (popcount(s) >= alpha || !p.join_of(s)) continue;
    if (!in_uplus(u, s)) return false;
  }
  return true;
}

}  // namespace ordkit
