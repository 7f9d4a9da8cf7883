#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ordkit/base.hpp"

namespace ordkit::kernels {

/// Runtime switch for the OpenMP paths; the serial references below are
/// what the parallel kernels are tested against. Predicates passed in must
/// be pure. Every kernel returns the same result for any thread count: the
/// filters concatenate fixed chunks in index order and the scans return
/// the lexicographically least witness.
bool parallel_enabled();
void set_parallel_enabled(bool on);

// --- serial references --------------------------------------------------

template <class Pred>
std::vector<Mask> filter_masks_serial(std::uint64_t count, const Pred& pred) {
  std::vector<Mask> out;
  for (std::uint64_t m = 0; m < count; ++m) {
    if (pred(static_cast<Mask>(m))) out.push_back(static_cast<Mask>(m));
  }
  return out;
}

template <class Pred>
std::optional<std::array<int, 3>> find_min_triple_serial(int m, const Pred& pred) {
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      for (int z = 0; z < m; ++z) {
        if (pred(x, y, z)) return std::array<int, 3>{x, y, z};
      }
    }
  }
  return std::nullopt;
}

template <class Pred>
std::optional<std::pair<int, int>> find_min_pair_serial(int m, const Pred& pred) {
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      if (pred(x, y)) return std::pair<int, int>{x, y};
    }
  }
  return std::nullopt;
}

// --- OpenMP kernels ------------------------------------------------------

template <class Pred>
std::vector<Mask> filter_masks(std::uint64_t count, const Pred& pred) {
#ifdef _OPENMP
  if (parallel_enabled() && count >= (std::uint64_t{1} << 14)) {
    const std::uint64_t chunk = std::uint64_t{1} << 12;
    const std::int64_t nchunks = static_cast<std::int64_t>((count + chunk - 1) / chunk);
    std::vector<std::vector<Mask>> parts(nchunks);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < nchunks; ++c) {
      const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk;
      const std::uint64_t hi = std::min(count, lo + chunk);
      auto& part = parts[c];
      for (std::uint64_t m = lo; m < hi; ++m) {
        if (pred(static_cast<Mask>(m))) part.push_back(static_cast<Mask>(m));
      }
    }
    std::vector<Mask> out;
    for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
    return out;
  }
#endif
  return filter_masks_serial(count, pred);
}

template <class Pred>
std::optional<std::array<int, 3>> find_min_triple(int m, const Pred& pred) {
#ifdef _OPENMP
  if (parallel_enabled() && m >= 24) {
    std::vector<std::pair<int, int>> hit(m, {-1, -1});
    int best_x = m;
#pragma omp parallel for schedule(dynamic)
    for (int x = 0; x < m; ++x) {
      int seen;
#pragma omp atomic read
      seen = best_x;
      if (x > seen) continue;  // a smaller witness already exists
      for (int y = 0; y < m; ++y) {
        for (int z = 0; z < m; ++z) {
          if (pred(x, y, z)) {
            hit[x] = {y, z};
#pragma omp critical
            if (x < best_x) best_x = x;
            y = m;
            break;
          }
        }
      }
    }
    for (int x = 0; x < m; ++x) {
      if (hit[x].first >= 0) return std::array<int, 3>{x, hit[x].first, hit[x].second};
    }
    return std::nullopt;
  }
#endif
  return find_min_triple_serial(m, pred);
}

template <class Pred>
std::optional<std::pair<int, int>> find_min_pair(int m, const Pred& pred) {
#ifdef _OPENMP
  if (parallel_enabled() && m >= 64) {
    std::vector<int> hit(m, -1);
    int best_x = m;
#pragma omp parallel for schedule(dynamic)
    for (int x = 0; x < m; ++x) {
      int seen;
#pragma omp atomic read
      seen = best_x;
      if (x > seen) continue;
      for (int y = 0; y < m; ++y) {
        if (pred(x, y)) {
          hit[x] = y;
#pragma omp critical
          if (x < best_x) best_x = x;
          break;
        }
      }
    }
    for (int x = 0; x < m; ++x) {
      if (hit[x] >= 0) return std::pair<int, int>{x, hit[x]};
    }
    return std::nullopt;
  }
#endif
  return find_min_pair_serial(m, pred);
}

/// Runs fn(i) for i in [0, count); each call must only touch its own slot.
template <class Fn>
void for_each_index(std::int64_t count, const Fn& fn) {
#ifdef _OPENMP
  if (parallel_enabled() && count > 1) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
#endif
  for (std::int64_t i = 0; i < count; ++i) fn(i);
}

}  // namespace ordkit::kernels
