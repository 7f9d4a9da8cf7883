#include "ordkit/enumerate.hpp"

#include <algorithm>

namespace ordkit {

namespace {

bool size_mask_less(Mask a, Mask b) {
  int pa = popcount(a), pb = popcount(b);
  if (pa != pb) return pa < pb;
  return a < b;
}

}  // namespace

std::vector<Mask> closed_sets(int n, const std::function<Mask(Mask)>& close,
                              std::uint64_t cap) {
  std::vector<Mask> out;
  const Mask all = full_mask(n);
  Mask a = close(0);
  out.push_back(a);
  while (a != all) {
    bool advanced = false;
    for (int i = n - 1; i >= 0; --i) {
      if (has(a, i)) continue;
      Mask b = close((a & below_mask(i)) | bit(i));
      if (subset(b & below_mask(i), a)) {
        a = b;
        out.push_back(a);
        if (out.size() > cap) {
          throw cap_exceeded("closed-set enumeration exceeded cap of " +
                             std::to_string(cap));
        }
        advanced = true;
        break;
      }
    }
    if (!advanced) break;  // close(carrier) != carrier cannot happen for a closure operator
  }
  std::sort(out.begin(), out.end(), size_mask_less);
  return out;
}

std::vector<Mask> all_downsets(const Poset& p) {
  return closed_sets(p.size(), [&p](Mask s) { return p.down_close(s); },
                     limits().max_closed_sets);
}

}  // namespace ordkit
