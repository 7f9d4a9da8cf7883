#include "ordkit/poset.hpp"

#include <algorithm>
#include <map>

namespace ordkit {

Limits& limits() {
  static Limits instance;
  return instance;
}

namespace {

void check_size(std::size_t n) {
  if (n == 0) throw validation_error("poset needs at least one element");
  if (n > static_cast<std::size_t>(limits().max_elements) ||
      n > static_cast<std::size_t>(kMaxElements)) {
    throw validation_error("poset has " + std::to_string(n) +
                           " elements, above the size cap of " +
                           std::to_string(std::min(limits().max_elements, kMaxElements)));
  }
}

void check_labels(const std::vector<std::string>& labels) {
  std::map<std::string_view, int> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty()) throw validation_error("empty element label");
    if (!seen.emplace(labels[i], i).second)
      throw validation_error("duplicate element label '" + labels[i] + "'");
  }
}

}  // namespace

Poset Poset::from_covers(std::vector<std::string> labels,
                         const std::vector<std::pair<std::string, std::string>>& covers) {
  check_size(labels.size());
  check_labels(labels);
  const int n = static_cast<int>(labels.size());

  std::map<std::string_view, int> index;
  for (int i = 0; i < n; ++i) index.emplace(labels[i], i);

  std::vector<Mask> succ(n, 0);  // direct cover successors
  for (const auto& [lo, hi] : covers) {
    auto l = index.find(lo);
    auto h = index.find(hi);
    if (l == index.end()) throw validation_error("unknown element '" + lo + "' in cover");
    if (h == index.end()) throw validation_error("unknown element '" + hi + "' in cover");
    if (l->second == h->second)
      throw validation_error("cover '" + lo + " < " + hi + "' relates an element to itself");
    succ[l->second] |= bit(h->second);
  }

  // Reflexive-transitive closure by iterating row substitution to fixpoint.
  std::vector<Mask> up(n);
  for (int i = 0; i < n; ++i) up[i] = bit(i) | succ[i];
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      Mask row = up[i];
      Mask rest = row & ~bit(i);
      while (rest) {
        int j = first_bit(rest);
        rest &= rest - 1;
        row |= up[j];
      }
      if (row != up[i]) {
        up[i] = row;
        changed = true;
      }
    }
  }

  // A cycle shows up as mutual reachability; report one offending cycle.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (has(up[i], j) && has(up[j], i)) {
        throw validation_error("cycle detected through '" + labels[i] + "' and '" +
                               labels[j] + "'");
      }
    }
  }

  return from_relation(std::move(labels), std::move(up));
}

Poset Poset::from_relation(std::vector<std::string> labels, std::vector<Mask> up_rows) {
  check_size(labels.size());
  check_labels(labels);
  const int n = static_cast<int>(labels.size());
  if (up_rows.size() != labels.size())
    throw validation_error("relation row count does not match element count");

  const Mask all = full_mask(n);
  for (int i = 0; i < n; ++i) {
    if (up_rows[i] & ~all) throw validation_error("relation row mentions unknown index");
    if (!has(up_rows[i], i)) throw validation_error("relation is not reflexive");
  }
  for (int i = 0; i < n; ++i) {
    Mask rest = up_rows[i];
    while (rest) {
      int j = first_bit(rest);
      rest &= rest - 1;
      if (j != i && has(up_rows[j], i))
        throw validation_error("relation is not antisymmetric ('" + labels[i] +
                               "' and '" + labels[j] + "')");
      if (!subset(up_rows[j], up_rows[i]))
        throw validation_error("relation is not transitive at '" + labels[i] +
                               "' <= '" + labels[j] + "'");
    }
  }

  auto d = std::make_shared<Data>();
  d->n = n;
  d->labels = std::move(labels);
  d->up = std::move(up_rows);
  d->down.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (has(d->up[j], i)) d->down[i] |= bit(j);
    }
  }
  return Poset(std::move(d));
}

int Poset::index(std::string_view label) const {
  for (int i = 0; i < d_->n; ++i) {
    if (d_->labels[i] == label) return i;
  }
  return -1;
}

std::optional<int> Poset::bottom() const {
  for (int i = 0; i < d_->n; ++i) {
    if (d_->up[i] == carrier()) return i;
  }
  return std::nullopt;
}

std::optional<int> Poset::top() const {
  for (int i = 0; i < d_->n; ++i) {
    if (d_->down[i] == carrier()) return i;
  }
  return std::nullopt;
}

Mask Poset::down_close(Mask s) const {
  Mask out = 0;
  while (s) {
    int i = first_bit(s);
    s &= s - 1;
    out |= d_->down[i];
  }
  return out;
}

Mask Poset::up_close(Mask s) const {
  Mask out = 0;
  while (s) {
    int i = first_bit(s);
    s &= s - 1;
    out |= d_->up[i];
  }
  return out;
}

std::optional<int> Poset::join_of(Mask s) const {
  Mask ub = carrier();
  Mask rest = s;
  while (rest) {
    int i = first_bit(rest);
    rest &= rest - 1;
    ub &= d_->up[i];
  }
  // Least element of the upper-bound set, if the set has one.
  Mask cand = ub;
  while (cand) {
    int u = first_bit(cand);
    cand &= cand - 1;
    if (subset(ub, d_->up[u])) return u;
  }
  return std::nullopt;
}

std::optional<int> Poset::meet_of(Mask s) const {
  Mask lb = carrier();
  Mask rest = s;
  while (rest) {
    int i = first_bit(rest);
    rest &= rest - 1;
    lb &= d_->down[i];
  }
  Mask cand = lb;
  while (cand) {
    int u = first_bit(cand);
    cand &= cand - 1;
    if (subset(lb, d_->down[u])) return u;
  }
  return std::nullopt;
}

std::optional<int> Poset::max_of(Mask s) const {
  Mask rest = s;
  while (rest) {
    int i = first_bit(rest);
    rest &= rest - 1;
    if (subset(s, d_->down[i])) return i;
  }
  return std::nullopt;
}

std::vector<std::pair<int, int>> Poset::cover_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < d_->n; ++a) {
    Mask above = d_->up[a] & ~bit(a);
    Mask rest = above;
    while (rest) {
      int b = first_bit(rest);
      rest &= rest - 1;
      // b covers a iff nothing sits strictly between them.
      if ((d_->down[b] & above & ~bit(b)) == 0) out.emplace_back(a, b);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Poset::set_to_string(Mask s) const {
  std::string out = "{";
  bool first = true;
  while (s) {
    int i = first_bit(s);
    s &= s - 1;
    if (!first) out += ",";
    out += d_->labels[i];
    first = false;
  }
  out += "}";
  return out;
}

}  // namespace ordkit
