#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordkit/joinspec.hpp"
#include "ordkit/poset.hpp"
#include "ordkit/testing.hpp"

namespace ordkit {

/// Configuration of the seeded law-verification run. The default is the
/// acceptance configuration: the exhaustive sweep over every poset with at
/// most four elements (up to isomorphism, with every join-specification
/// when at most twelve candidate sets exist) plus 200 seeded random
/// instances at five or six elements.
struct VerifyConfig {
  int max_n = 6;
  int samples = 200;
  std::uint64_t seed = 42;
  std::uint32_t edge_num = 1, edge_den = 2;  // cover probability of random posets
  int spec_members = 3;                      // sampled members per random spec
  bool exhaustive = true;
  std::vector<std::string> laws;             // empty = every suite
  testing::Mutation mutation = testing::Mutation::none;
  /// Extra (poset, spec) instances appended after the generated ones.
  std::vector<std::pair<Poset, JoinSpec>> extra_instances;
};

struct LawResult {
  std::string law;
  long passes = 0;
  long failures = 0;
  std::vector<std::string> witnesses;  // shrunken, at most three per law
};

struct VerifyReport {
  std::vector<LawResult> laws;  // sorted by name
  long instances = 0;
  bool ok = true;
  std::string text;  // byte-stable rendering of the whole report
};

VerifyReport verify_theorems(const VerifyConfig& cfg);

std::vector<std::string> all_law_names();

/// Every poset on n labelled elements, deduplicated by canonical labelling.
std::vector<Poset> all_posets_up_to_iso(int n);

/// Every join-specification of p: all subsets of the candidate sets (the
/// joinable subsets of size >= 2, plus the empty set when p has a bottom),
/// each united with the singletons. Throws when more than max_candidates
/// candidates exist.
std::vector<JoinSpec> all_joinspecs(const Poset& p, int max_candidates);

namespace oracles {

/// Direct enumeration of the one-step operator: joins of U+-sets inside
/// the downset of s. Independent of the membership formula used by
/// upsilon().
Mask upsilon_enumerated(const JoinSpec& u, Mask s);

/// The iterated pre-revision operator: stages keep collecting joins of
/// U+-sets drawn from the previous stage (no down-closing in between).
Mask upsilon_iterated(const JoinSpec& u, Mask s);

/// Smallest ideal containing s, computed by intersecting every enumerated
/// ideal that contains it.
Mask gamma_by_ideal_intersection(const JoinSpec& u, Mask s);

}  // namespace oracles

}  // namespace ordkit
