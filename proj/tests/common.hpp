#pragma once

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "ordkit/joinspec.hpp"
#include "ordkit/poset.hpp"
#include "ordkit/workspace.hpp"

namespace ordkit::tests {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Workspace fixture(const std::string& name) {
  const std::string path = std::string(ORDKIT_FIXTURES) + "/" + name;
  return parse_workspace(read_file(path), path);
}

inline Mask set_of(const Poset& p, std::initializer_list<const char*> ids) {
  Mask m = 0;
  for (const char* id : ids) m |= bit(p.index(id));
  return m;
}

inline JoinSpec spec_of(const Poset& p,
                        std::initializer_list<std::initializer_list<const char*>> sets) {
  std::vector<Mask> ms;
  for (auto s : sets) ms.push_back(set_of(p, s));
  return JoinSpec::make(p, ms);
}

inline Poset chain(int n) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  for (int i = 0; i + 1 < n; ++i) covers.emplace_back(labels[i], labels[i + 1]);
  return Poset::from_covers(labels, covers);
}

inline Poset antichain(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  return Poset::from_covers(labels, {});
}

}  // namespace ordkit::tests
