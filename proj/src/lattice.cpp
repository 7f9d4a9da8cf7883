#include "ordkit/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "ordkit/enumerate.hpp"
#include "ordkit/kernels.hpp"

namespace ordkit {

namespace {

void check_lattice_cap(std::size_t m) {
  if (m > static_cast<std::size_t>(limits().max_lattice)) {
    throw cap_exceeded("lattice with " + std::to_string(m) +
                       " elements is above the materialization cap of " +
                       std::to_string(limits().max_lattice));
  }
}

}  // namespace

Lattice Lattice::finish(std::shared_ptr<Data> d) {
  const int m = d->m;
  int bottom = -1, top = -1;
  for (int i = 0; i < m; ++i) {
    bool is_bot = true, is_top = true;
    for (int j = 0; j < m; ++j) {
      is_bot &= d->leq[i * m + j] != 0;
      is_top &= d->leq[j * m + i] != 0;
    }
    if (is_bot) bottom = i;
    if (is_top) top = i;
  }
  if (bottom < 0 || top < 0) throw validation_error("input is not a lattice");
  d->bottom = bottom;
  d->top = top;
  return Lattice(std::move(d));
}

Lattice Lattice::from_poset(const Poset& p) {
  check_lattice_cap(p.size());
  auto d = std::make_shared<Data>();
  const int m = p.size();
  d->m = m;
  d->leq.assign(std::size_t{1} * m * m, 0);
  d->meet.assign(std::size_t{1} * m * m, 0);
  d->join.assign(std::size_t{1} * m * m, 0);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      d->leq[a * m + b] = p.leq(a, b);
      auto mt = p.meet_of(bit(a) | bit(b));
      auto jn = p.join_of(bit(a) | bit(b));
      if (!mt || !jn) throw validation_error("input is not a lattice");
      d->meet[a * m + b] = *mt;
      d->join[a * m + b] = *jn;
    }
  }
  d->base = p;
  d->eta.resize(m);
  for (int i = 0; i < m; ++i) d->eta[i] = i;
  return finish(std::move(d));
}

Lattice Lattice::from_closed_family(Poset base, std::vector<Mask> family) {
  std::sort(family.begin(), family.end(), [](Mask a, Mask b) {
    return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
  });
  family.erase(std::unique(family.begin(), family.end()), family.end());
  check_lattice_cap(family.size());
  const int m = static_cast<int>(family.size());

  auto index_of = [&family](Mask t) {
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (family[i] == t) return static_cast<int>(i);
    }
    return -1;
  };

  if (index_of(base.carrier()) < 0)
    throw validation_error("closed family is missing the whole carrier");
  for (int p = 0; p < base.size(); ++p) {
    if (index_of(base.down_of(p)) < 0)
      throw validation_error("closed family is missing the principal downset of '" +
                             base.label(p) + "'");
  }
  for (Mask t : family) {
    if (!base.is_down_closed(t))
      throw validation_error("closed family member " + base.set_to_string(t) +
                             " is not down-closed");
  }

  auto d = std::make_shared<Data>();
  d->m = m;
  d->leq.assign(std::size_t{1} * m * m, 0);
  d->meet.assign(std::size_t{1} * m * m, 0);
  d->join.assign(std::size_t{1} * m * m, 0);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) d->leq[a * m + b] = subset(family[a], family[b]);
  }
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      const int mt = index_of(family[a] & family[b]);
      if (mt < 0)
        throw validation_error("closed family is not intersection-closed at " +
                               base.set_to_string(family[a] & family[b]));
      // Join: intersection of all common upper bounds (the family contains
      // the carrier, so the intersection is over a nonempty collection).
      Mask up = base.carrier();
      const Mask un = family[a] | family[b];
      for (int c = 0; c < m; ++c) {
        if (subset(un, family[c])) up &= family[c];
      }
      const int jn = index_of(up);
      if (jn < 0)
        throw validation_error("closed family has no join for a pair of members");
      d->meet[a * m + b] = d->meet[b * m + a] = mt;
      d->join[a * m + b] = d->join[b * m + a] = jn;
    }
  }
  d->tags = family;
  d->eta.resize(base.size());
  for (int p = 0; p < base.size(); ++p) d->eta[p] = index_of(base.down_of(p));
  d->base = std::move(base);
  return finish(std::move(d));
}

int Lattice::meet_fold(std::span<const int> xs) const {
  int acc = top();
  for (int x : xs) acc = meet(acc, x);
  return acc;
}

int Lattice::join_fold(std::span<const int> xs) const {
  int acc = bottom();
  for (int x : xs) acc = join(acc, x);
  return acc;
}

int Lattice::index_of_tag(Mask t) const {
  for (int i = 0; i < d_->m; ++i) {
    if (d_->tags[i] == t) return i;
  }
  return -1;
}

std::string Lattice::element_name(int i) const {
  if (has_tags() && base()) return base()->set_to_string(tag(i));
  if (base()) return base()->label(i);
  return "x" + std::to_string(i);
}

std::optional<std::array<int, 3>> distributivity_violation(const Lattice& l) {
  return kernels::find_min_triple(l.size(), [&l](int x, int y, int z) {
    return l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z));
  });
}

std::optional<std::array<int, 3>> modularity_violation(const Lattice& l) {
  return kernels::find_min_triple(l.size(), [&l](int x, int y, int z) {
    return l.leq(x, z) && l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), z);
  });
}

std::vector<int> join_irreducibles(const Lattice& l) {
  std::vector<int> out;
  for (int x = 0; x < l.size(); ++x) {
    if (x == l.bottom()) continue;
    int acc = l.bottom();
    for (int y = 0; y < l.size(); ++y) {
      if (y != x && l.leq(y, x)) acc = l.join(acc, y);
    }
    if (acc != x) out.push_back(x);
  }
  return out;
}

namespace {

// Direct scan of the bounded distributive law. Rows are enumerated as
// subsets (duplicates inside a row never change either side) and families
// as sets of distinct rows (a repeated row is idempotent under the outer
// meet). Single-row families hold trivially and are skipped.
bool mk_direct_scan(const Lattice& l, int m, int k, std::uint64_t budget) {
  const int msize = l.size();

  // All candidate rows: nonempty subsets of at most k-1 elements, as
  // (join, element list).
  std::vector<std::vector<int>> rows;
  std::vector<int> row_join;
  std::vector<int> stack;
  auto emit = [&]() {
    rows.push_back(stack);
    row_join.push_back(l.join_fold(stack));
  };
  auto rec = [&](auto&& self, int start) -> void {
    if (!stack.empty()) emit();
    if (static_cast<int>(stack.size()) >= k - 1) return;
    for (int e = start; e < msize; ++e) {
      stack.push_back(e);
      self(self, e + 1);
      stack.pop_back();
    }
  };
  rec(rec, 0);

  const std::size_t nrows = rows.size();
  std::uint64_t used = 0;

  // Families: combinations of 2..m-1 distinct rows.
  std::vector<std::size_t> fam;
  std::vector<std::size_t> pick_pos;
  auto eval_family = [&]() -> bool {
    std::vector<int> joins;
    joins.reserve(fam.size());
    for (std::size_t r : fam) joins.push_back(row_join[r]);
    const int lhs = l.meet_fold(joins);
    // Join over all choice functions; stop early once the accumulated
    // right side reaches the left (it never exceeds it).
    pick_pos.assign(fam.size(), 0);
    int rhs = l.bottom();
    while (true) {
      int acc = l.top();
      for (std::size_t i = 0; i < fam.size(); ++i)
        acc = l.meet(acc, rows[fam[i]][pick_pos[i]]);
      rhs = l.join(rhs, acc);
      if (rhs == lhs) return true;
      std::size_t i = 0;
      while (i < fam.size()) {
        if (++pick_pos[i] < rows[fam[i]].size()) break;
        pick_pos[i] = 0;
        ++i;
      }
      if (i == fam.size()) break;
    }
    return rhs == lhs;
  };
  auto fam_rec = [&](auto&& self, std::size_t start) -> bool {
    if (fam.size() >= 2) {
      if (++used > budget) throw cap_exceeded("bounded distributivity scan above cap");
      if (!eval_family()) return false;
    }
    if (static_cast<int>(fam.size()) >= m - 1) return true;
    for (std::size_t r = start; r < nrows; ++r) {
      fam.push_back(r);
      if (!self(self, r + 1)) return false;
      fam.pop_back();
    }
    return true;
  };
  return fam_rec(fam_rec, 0);
}

// Number of families the direct scan would evaluate, saturating.
std::uint64_t mk_family_estimate(int msize, int m, int k) {
  long double nrows = 0, choose = 1;
  for (int s = 1; s <= k - 1 && s <= msize; ++s) {
    choose = choose * (msize - s + 1) / s;
    nrows += choose;
  }
  long double fams = 0, c = 1;
  for (int r = 1; r <= m - 1; ++r) {
    c = c * std::max<long double>(nrows - r + 1, 0) / r;
    if (r >= 2) fams += c;
    if (fams > 1e18L) return ~std::uint64_t{0};
  }
  return static_cast<std::uint64_t>(fams);
}

}  // namespace

bool distributivity_mk(const Lattice& l, int m, int k) {
  if (m < 2 || k < 2) throw validation_error("distributivity_mk needs m, k >= 2");
  // Families of one row, and rows of one element, satisfy the law by
  // idempotence, so these bounds make the whole law vacuous.
  if (m <= 2 || k <= 2) return true;

  const std::uint64_t budget = limits().max_mk_instances;
  if (mk_family_estimate(l.size(), m, k) <= budget) {
    return mk_direct_scan(l, m, k, budget);
  }
  // The requested arity is too large to scan in full. For lattices the
  // bounded laws at any m, k >= 3 are equivalent to the (3,3) law (binary
  // distributivity extends to arbitrary finite arity by induction), so the
  // verdict comes from the (3,3) scan.
  if (mk_family_estimate(l.size(), 3, 3) > budget) {
    throw cap_exceeded("bounded distributivity scan above cap even at (3,3)");
  }
  return mk_direct_scan(l, 3, 3, budget);
}

bool birkhoff_check(const Lattice& l) {
  if (!is_distributive(l)) throw validation_error("birkhoff_check needs a distributive lattice");
  const std::vector<int> ji = join_irreducibles(l);
  const int nj = static_cast<int>(ji.size());
  if (nj > kMaxElements) throw cap_exceeded("too many join-irreducibles");

  // Downsets of the induced subposet on the join-irreducibles.
  auto down_close_ji = [&](Mask s) {
    Mask out = s;
    for (int i = 0; i < nj; ++i) {
      for (int j = 0; j < nj; ++j) {
        if (has(s, j) && l.leq(ji[i], ji[j])) out |= bit(i);
      }
    }
    return out;
  };
  std::vector<Mask> downs =
      closed_sets(nj, down_close_ji, limits().max_closed_sets);

  auto phi = [&](int x) {
    Mask s = 0;
    for (int i = 0; i < nj; ++i) {
      if (l.leq(ji[i], x)) s |= bit(i);
    }
    return s;
  };

  // phi must be a bijection onto the downsets that reflects order.
  if (downs.size() != static_cast<std::size_t>(l.size())) return false;
  std::vector<Mask> image;
  image.reserve(l.size());
  for (int x = 0; x < l.size(); ++x) image.push_back(phi(x));
  for (int x = 0; x < l.size(); ++x) {
    if (!std::binary_search(downs.begin(), downs.end(), image[x],
                            [](Mask a, Mask b) {
                              return popcount(a) != popcount(b) ? popcount(a) < popcount(b)
                                                                : a < b;
                            }))
      return false;
    for (int y = 0; y < l.size(); ++y) {
      if (l.leq(x, y) != subset(image[x], image[y])) return false;
      if (x != y && image[x] == image[y]) return false;
    }
  }
  return true;
}

}  // namespace ordkit
