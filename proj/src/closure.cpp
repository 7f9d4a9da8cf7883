#include "ordkit/closure.hpp"

#include <algorithm>

#include "ordkit/ideal_lattice.hpp"

namespace ordkit {

ClosureRepr ClosureRepr::from_spec(JoinSpec u) {
  Poset base = u.owner();
  return ClosureRepr(std::move(base), std::move(u), {});
}

ClosureRepr ClosureRepr::from_family(Poset base, std::vector<Mask> family) {
  std::sort(family.begin(), family.end(), [](Mask a, Mask b) {
    return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
  });
  family.erase(std::unique(family.begin(), family.end()), family.end());
  if (std::find(family.begin(), family.end(), base.carrier()) == family.end())
    throw validation_error("closure family must contain the carrier");
  for (Mask t : family) {
    if (!base.is_down_closed(t))
      throw validation_error("closure family member " + base.set_to_string(t) +
                             " is not down-closed");
  }
  for (int p = 0; p < base.size(); ++p) {
    if (std::find(family.begin(), family.end(), base.down_of(p)) == family.end())
      throw validation_error("closure family is missing the principal downset of '" +
                             base.label(p) + "' (operator would not be standard)");
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      Mask m = family[i] & family[j];
      if (std::find(family.begin(), family.end(), m) == family.end())
        throw validation_error("closure family is not intersection-closed");
    }
  }
  return ClosureRepr(std::move(base), std::nullopt, std::move(family));
}

Mask ClosureRepr::close(Mask s) const {
  if (spec_) return gamma(*spec_, s);
  Mask out = base_.carrier();
  for (Mask t : family_) {
    if (subset(s, t)) out &= t;
  }
  return out;
}

std::vector<Mask> ClosureRepr::closed_family() const {
  if (!spec_) return family_;
  auto il = ideal_lattice(*spec_);
  return std::vector<Mask>(il.ideals().begin(), il.ideals().end());
}

Lattice ClosureRepr::closed_lattice() const {
  return Lattice::from_closed_family(base_, closed_family());
}

std::optional<Mask> closure_leq_counterexample(const ClosureRepr& g1,
                                               const ClosureRepr& g2) {
  if (!g1.base().same(g2.base()))
    throw validation_error("closure operators live on different posets");
  for (Mask c : g2.closed_family()) {
    if (!g1.is_closed(c)) return c;
  }
  return std::nullopt;
}

InducedClosureMap induced_closure_map(const ClosureRepr& gp, const ClosureRepr& g) {
  if (auto bad = closure_leq_counterexample(gp, g)) {
    throw validation_error("induced_closure_map: operators are not comparable; " +
                           gp.base().set_to_string(*bad) +
                           " is closed above but not below");
  }
  Lattice dom = gp.closed_lattice();
  Lattice cod = g.closed_lattice();
  std::vector<int> assign(dom.size());
  for (int i = 0; i < dom.size(); ++i) {
    assign[i] = cod.index_of_tag(g.close(dom.tag(i)));
  }
  InducedClosureMap r{LatticeMap{dom, cod, std::move(assign)}, false, false, false};
  r.fixes_base = map_fixes_base(r.phi);
  r.join_preserving = map_join_preserving(r.phi);
  r.binary_meet_preserving = map_meet_preserving_binary(r.phi);
  return r;
}

ClosureRepr closure_from_completion(const Poset& dom, const Lattice& l,
                                    std::span<const int> e) {
  const Poset& p = dom;
  if (e.size() != static_cast<std::size_t>(p.size()))
    throw validation_error("assignment does not cover the poset");
  for (int a = 0; a < p.size(); ++a) {
    for (int b = 0; b < p.size(); ++b) {
      if (p.leq(a, b) != l.leq(e[a], e[b]))
        throw validation_error("closure_from_completion: e is not an order embedding");
    }
  }
  // Join-density: every lattice element is the join of the images below it.
  for (int x = 0; x < l.size(); ++x) {
    int acc = l.bottom();
    for (int q = 0; q < p.size(); ++q) {
      if (l.leq(e[q], x)) acc = l.join(acc, e[q]);
    }
    if (acc != x)
      throw validation_error("closure_from_completion: the image is not join-dense");
  }
  std::vector<Mask> family;
  family.reserve(l.size());
  for (int x = 0; x < l.size(); ++x) {
    Mask pre = 0;
    for (int q = 0; q < p.size(); ++q) {
      if (l.leq(e[q], x)) pre |= bit(q);
    }
    family.push_back(pre);
  }
  return ClosureRepr::from_family(p, std::move(family));
}

ClosureRepr closure_from_completion(const PosetMap& e) {
  Lattice l = Lattice::from_poset(e.cod);
  return closure_from_completion(e.dom, l, e.assign);
}

bool roundtrip_check(const ClosureRepr& g) {
  // The canonical completion of Gamma is eta into its closed-set lattice;
  // pulling principal downsets back along eta must reproduce the family.
  std::vector<Mask> family = g.closed_family();
  Lattice l = g.closed_lattice();
  std::vector<int> e(g.base().size());
  for (int q = 0; q < g.base().size(); ++q) e[q] = l.eta(q);
  std::vector<Mask> rebuilt;
  rebuilt.reserve(l.size());
  for (int x = 0; x < l.size(); ++x) {
    Mask pre = 0;
    for (int q = 0; q < g.base().size(); ++q) {
      if (l.leq(e[q], x)) pre |= bit(q);
    }
    rebuilt.push_back(pre);
  }
  std::sort(rebuilt.begin(), rebuilt.end(), [](Mask a, Mask b) {
    return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
  });
  rebuilt.erase(std::unique(rebuilt.begin(), rebuilt.end()), rebuilt.end());
  return rebuilt == family;
}

bool completion_roundtrip_check(const Poset& dom, const Lattice& l,
                                std::span<const int> e) {
  ClosureRepr g = closure_from_completion(dom, l, e);
  Lattice lg = g.closed_lattice();
  if (lg.size() != l.size()) return false;
  // x -> e^{-1}(x-down) must be an order isomorphism carrying e to eta.
  const Poset& p = g.base();
  std::vector<int> iso(l.size());
  for (int x = 0; x < l.size(); ++x) {
    Mask pre = 0;
    for (int q = 0; q < p.size(); ++q) {
      if (l.leq(e[q], x)) pre |= bit(q);
    }
    iso[x] = lg.index_of_tag(pre);
    if (iso[x] < 0) return false;
  }
  for (int x = 0; x < l.size(); ++x) {
    for (int y = 0; y < l.size(); ++y) {
      if (l.leq(x, y) != lg.leq(iso[x], iso[y])) return false;
      if (x != y && iso[x] == iso[y]) return false;
    }
  }
  for (int q = 0; q < p.size(); ++q) {
    if (iso[e[q]] != lg.eta(q)) return false;
  }
  return roundtrip_check(g);
}

}  // namespace ordkit
