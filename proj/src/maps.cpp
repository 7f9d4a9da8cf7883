#include "ordkit/maps.hpp"

#include <algorithm>

namespace ordkit {

PosetMap::PosetMap(Poset dom_, Poset cod_, std::vector<int> assign_)
    : dom(std::move(dom_)), cod(std::move(cod_)), assign(std::move(assign_)) {
  if (assign.size() != static_cast<std::size_t>(dom.size()))
    throw validation_error("map assignment does not cover the domain");
  for (int v : assign) {
    if (v < 0 || v >= cod.size())
      throw validation_error("map assignment leaves the codomain");
  }
}

PosetMap PosetMap::identity(const Poset& p) {
  std::vector<int> a(p.size());
  for (int i = 0; i < p.size(); ++i) a[i] = i;
  return PosetMap(p, p, std::move(a));
}

PosetMap PosetMap::from_pairs(Poset dom, Poset cod,
                              std::span<const std::pair<std::string, std::string>> pairs) {
  std::vector<int> a(dom.size(), -1);
  for (const auto& [dl, cl] : pairs) {
    int di = dom.index(dl);
    int ci = cod.index(cl);
    if (di < 0) throw validation_error("unknown domain element '" + dl + "'");
    if (ci < 0) throw validation_error("unknown codomain element '" + cl + "'");
    if (a[di] >= 0 && a[di] != ci)
      throw validation_error("conflicting assignments for '" + dl + "'");
    a[di] = ci;
  }
  for (int i = 0; i < dom.size(); ++i) {
    if (a[i] < 0)
      throw validation_error("no assignment for '" + dom.label(i) + "'");
  }
  return PosetMap(std::move(dom), std::move(cod), std::move(a));
}

PosetMap PosetMap::by_label(Poset dom, Poset cod) {
  std::vector<int> a(dom.size());
  for (int i = 0; i < dom.size(); ++i) {
    int ci = cod.index(dom.label(i));
    if (ci < 0)
      throw validation_error("codomain has no element labelled '" + dom.label(i) + "'");
    a[i] = ci;
  }
  return PosetMap(std::move(dom), std::move(cod), std::move(a));
}

Mask PosetMap::image(Mask s) const {
  Mask out = 0;
  while (s) {
    int i = first_bit(s);
    s &= s - 1;
    out |= bit(assign[i]);
  }
  return out;
}

Mask PosetMap::preimage(Mask s) const {
  Mask out = 0;
  for (int i = 0; i < dom.size(); ++i) {
    if (has(s, assign[i])) out |= bit(i);
  }
  return out;
}

bool is_monotone(const PosetMap& f) {
  for (int a = 0; a < f.dom.size(); ++a) {
    for (int b = 0; b < f.dom.size(); ++b) {
      if (f.dom.leq(a, b) && !f.cod.leq(f(a), f(b))) return false;
    }
  }
  return true;
}

bool is_embedding(const PosetMap& f) {
  for (int a = 0; a < f.dom.size(); ++a) {
    for (int b = 0; b < f.dom.size(); ++b) {
      if (f.dom.leq(a, b) != f.cod.leq(f(a), f(b))) return false;
    }
  }
  return true;
}

bool is_u_morphism(const PosetMap& f, const JoinSpec& up) {
  if (!up.owner().same(f.dom))
    throw validation_error("join-specification is not over the map's domain");
  if (!is_monotone(f)) return false;
  for (std::size_t i = 0; i < up.member_count(); ++i) {
    auto j = f.cod.join_of(f.image(up.member(i)));
    if (!j || *j != f(up.member_join(i))) return false;
  }
  return true;
}

bool map_monotone(const LatticeMap& h) {
  for (int a = 0; a < h.dom.size(); ++a) {
    for (int b = 0; b < h.dom.size(); ++b) {
      if (h.dom.leq(a, b) && !h.cod.leq(h(a), h(b))) return false;
    }
  }
  return true;
}

bool map_embedding(const LatticeMap& h) {
  for (int a = 0; a < h.dom.size(); ++a) {
    for (int b = 0; b < h.dom.size(); ++b) {
      if (h.dom.leq(a, b) != h.cod.leq(h(a), h(b))) return false;
    }
  }
  return true;
}

bool map_injective(const LatticeMap& h) {
  std::vector<int> seen(h.cod.size(), 0);
  for (int v : h.assign) {
    if (seen[v]++) return false;
  }
  return true;
}

bool map_surjective(const LatticeMap& h) {
  std::vector<int> seen(h.cod.size(), 0);
  for (int v : h.assign) seen[v] = 1;
  return std::all_of(seen.begin(), seen.end(), [](int x) { return x != 0; });
}

bool map_join_preserving(const LatticeMap& h) {
  if (h(h.dom.bottom()) != h.cod.bottom()) return false;
  for (int a = 0; a < h.dom.size(); ++a) {
    for (int b = 0; b < h.dom.size(); ++b) {
      if (h(h.dom.join(a, b)) != h.cod.join(h(a), h(b))) return false;
    }
  }
  // Whole-family joins; with binary preservation these follow by folding,
  // which is exactly why the fold is a sufficient check on finite lattices.
  std::vector<int> all(h.dom.size());
  for (int i = 0; i < h.dom.size(); ++i) all[i] = i;
  std::vector<int> image(h.assign);
  return h(h.dom.join_fold(all)) == h.cod.join_fold(image);
}

bool map_meet_preserving_binary(const LatticeMap& h) {
  for (int a = 0; a < h.dom.size(); ++a) {
    for (int b = 0; b < h.dom.size(); ++b) {
      if (h(h.dom.meet(a, b)) != h.cod.meet(h(a), h(b))) return false;
    }
  }
  return true;
}

bool map_fixes_base(const LatticeMap& h) {
  const Poset* bd = h.dom.base();
  const Poset* bc = h.cod.base();
  if (!bd || !bc || !bd->same(*bc)) return false;
  for (int p = 0; p < bd->size(); ++p) {
    if (h(h.dom.eta(p)) != h.cod.eta(p)) return false;
  }
  return true;
}

LatticeMap lift(const PosetMap& f, const JoinSpec& up, const JoinSpec& uq) {
  if (!up.owner().same(f.dom) || !uq.owner().same(f.cod))
    throw validation_error("lift: specifications do not match the map's posets");
  if (!is_u_morphism(f, up))
    throw validation_error("lift: the map is not a U-morphism");
  IdealLattice ip = ideal_lattice(up);
  IdealLattice iq = ideal_lattice(uq);
  Lattice ld = ip.lattice();
  Lattice lc = iq.lattice();
  std::vector<int> assign(ld.size());
  for (int i = 0; i < ld.size(); ++i) {
    const Mask c = ld.tag(i);
    assign[i] = lc.index_of_tag(gamma(uq, f.image(c)));
  }
  return LatticeMap{std::move(ld), std::move(lc), std::move(assign)};
}

bool continuity_check(const PosetMap& f, const JoinSpec& up, const JoinSpec& uq) {
  if (!up.owner().same(f.dom) || !uq.owner().same(f.cod))
    throw validation_error("continuity_check: specifications do not match the map");
  IdealLattice iq = ideal_lattice(uq);
  for (Mask c : iq.ideals()) {
    if (!is_ideal(up, f.preimage(c))) return false;
  }
  return true;
}

bool adjoint_check(const LatticeMap& fwd, const LatticeMap& bwd) {
  if (!fwd.dom.same(bwd.cod) || !fwd.cod.same(bwd.dom))
    throw validation_error("adjoint_check: the maps do not point at each other");
  if (!map_monotone(fwd) || !map_monotone(bwd)) return false;
  for (int x = 0; x < fwd.dom.size(); ++x) {
    for (int y = 0; y < fwd.cod.size(); ++y) {
      if (fwd.cod.leq(fwd(x), y) != fwd.dom.leq(x, bwd(y))) return false;
    }
  }
  // An embedding fixing the base must, in closed-set form, be inclusion.
  if (bwd.dom.has_tags() && bwd.cod.has_tags() && map_embedding(bwd) &&
      map_fixes_base(bwd)) {
    for (int y = 0; y < bwd.dom.size(); ++y) {
      if (bwd.cod.tag(bwd(y)) != bwd.dom.tag(y)) return false;
    }
  }
  return true;
}

Poset lattice_as_poset(const Lattice& l) {
  std::vector<std::string> labels(l.size());
  for (int i = 0; i < l.size(); ++i) labels[i] = "x" + std::to_string(i);
  std::vector<Mask> up(l.size(), 0);
  for (int a = 0; a < l.size(); ++a) {
    for (int b = 0; b < l.size(); ++b) {
      if (l.leq(a, b)) up[a] |= bit(b);
    }
  }
  return Poset::from_relation(std::move(labels), std::move(up));
}

}  // namespace ordkit
