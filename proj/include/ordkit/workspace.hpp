#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ordkit/ideal_lattice.hpp"
#include "ordkit/joinspec.hpp"
#include "ordkit/poset.hpp"

namespace ordkit {

/// One parsed file: a poset plus its named join-specifications, in
/// declaration order. Names are unique per file.
struct Workspace {
  Poset poset;
  std::vector<std::pair<std::string, JoinSpec>> specs;
  std::string source;

  const JoinSpec* find(const std::string& name) const;
  const JoinSpec& require(const std::string& name) const;
};

/// Line grammar ('#' starts a comment, identifiers match
/// [A-Za-z_][A-Za-z0-9_']*):
///
///   elements: <id>+                exactly once
///   cover: <id> <id>               lower upper, repeatable
///   joinspec <name>: <setlist>     sets as {id id ...}, {} is the empty set
///
/// Singletons are implicit in every joinspec. A leading '{' switches to
/// the JSON form produced by export_json. Errors carry line numbers.
Workspace parse_workspace(const std::string& text, std::string source = "<input>");

/// Same structures: equal labels, equal order, equal named specifications.
bool equivalent(const Workspace& a, const Workspace& b);

/// Lossless JSON mirror of the grammar (sorted keys, members in canonical
/// order, singletons omitted).
std::string export_json(const Workspace& w);

/// Hasse diagram of the poset (nodes are element labels, edges the covers).
std::string export_dot(const Poset& p);

/// Covering graph of an ideal lattice, nodes labelled by element sets.
std::string export_dot(const IdealLattice& il);

/// Members of a join-specification in canonical order, as text lines.
std::string spec_to_text(const Poset& p, const JoinSpec& u);

}  // namespace ordkit
