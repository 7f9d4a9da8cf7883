#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ordkit {

/// Element subsets are bitmasks over indices 0..n-1, so carriers are
/// limited to 64 elements. The configurable caps below keep the
/// exponential operations at desk scale long before that limit bites.
using Mask = std::uint64_t;

inline constexpr int kMaxElements = 64;

inline constexpr Mask bit(int i) { return Mask{1} << i; }
inline constexpr bool has(Mask m, int i) { return (m >> i) & 1; }
inline constexpr bool subset(Mask a, Mask b) { return (a & ~b) == 0; }
inline constexpr int popcount(Mask m) { return std::popcount(m); }

/// All-ones mask over n elements.
inline constexpr Mask full_mask(int n) {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

/// Bits strictly below index i.
inline constexpr Mask below_mask(int i) { return (Mask{1} << i) - 1; }

/// Lowest set bit index; m must be nonzero.
inline constexpr int first_bit(Mask m) { return std::countr_zero(m); }

struct cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
  parse_error(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line(line) {}
  int line;
};

/// Process-wide resource caps. Set once at startup (CLI flags) before any
/// concurrent work starts; every exponential operation checks the relevant
/// cap before running.
struct Limits {
  int max_elements = 24;               // poset size cap
  std::uint64_t max_closed_sets = 1u << 20;  // downset / ideal enumeration
  std::uint64_t max_subset_scan = 1u << 20;  // 2^n membership scans
  int max_lattice = 2048;              // explicit lattice materialization
  std::uint64_t max_mk_instances = 2'000'000;  // bounded distributivity scan
};

Limits& limits();

}  // namespace ordkit
