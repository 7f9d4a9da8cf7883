#include "ordkit/workspace.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

namespace ordkit {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<std::string> split_idents(const std::string& s, int line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    if (!ident_start(s[i])) throw parse_error(line, "expected identifier at '" + s.substr(i) + "'");
    std::size_t j = i + 1;
    while (j < s.size() && ident_char(s[j])) ++j;
    out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<Mask> sorted_members(const JoinSpec& u) {
  std::vector<Mask> ms;
  for (Mask s : u.members()) {
    if (popcount(s) == 1) continue;  // singletons are implicit
    ms.push_back(s);
  }
  std::sort(ms.begin(), ms.end(), [](Mask a, Mask b) {
    return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
  });
  return ms;
}

Workspace from_json(const std::string& text, std::string source) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(1, std::string("bad JSON: ") + e.what());
  }
  try {
    std::vector<std::string> labels = j.at("elements").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> covers;
    for (const auto& c : j.at("covers")) {
      covers.emplace_back(c.at(0).get<std::string>(), c.at(1).get<std::string>());
    }
    Workspace w{Poset::from_covers(std::move(labels), covers), {}, std::move(source)};
    if (j.contains("joinspecs")) {
      for (const auto& [name, sets] : j.at("joinspecs").items()) {
        std::vector<Mask> members;
        for (const auto& set : sets) {
          Mask m = 0;
          for (const auto& el : set) {
            int idx = w.poset.index(el.get<std::string>());
            if (idx < 0)
              throw parse_error(1, "joinspec '" + name + "' uses unknown element '" +
                                       el.get<std::string>() + "'");
            m |= bit(idx);
          }
          members.push_back(m);
        }
        w.specs.emplace_back(name, JoinSpec::make(w.poset, members));
      }
    }
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(1, std::string("bad workspace JSON: ") + e.what());
  }
}

}  // namespace

const JoinSpec* Workspace::find(const std::string& name) const {
  for (const auto& [n, u] : specs) {
    if (n == name) return &u;
  }
  return nullptr;
}

const JoinSpec& Workspace::require(const std::string& name) const {
  const JoinSpec* u = find(name);
  if (!u) throw validation_error("no joinspec named '" + name + "' in " + source);
  return *u;
}

Workspace parse_workspace(const std::string& text, std::string source) {
  // JSON form.
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return from_json(text, std::move(source));
    break;
  }

  std::vector<std::string> labels;
  bool have_elements = false;
  int elements_line = 0;
  std::vector<std::tuple<std::string, std::string, int>> covers;      // lower, upper, line
  std::vector<std::tuple<std::string, std::string, int>> spec_lines;  // name, setlist, line

  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);

    if (line.rfind("elements:", 0) == 0) {
      if (have_elements) throw parse_error(lineno, "duplicate 'elements:' line");
      have_elements = true;
      elements_line = lineno;
      labels = split_idents(line.substr(9), lineno);
      if (labels.empty()) throw parse_error(lineno, "'elements:' needs at least one identifier");
    } else if (line.rfind("cover:", 0) == 0) {
      auto ids = split_idents(line.substr(6), lineno);
      if (ids.size() != 2) throw parse_error(lineno, "'cover:' needs exactly two identifiers");
      covers.emplace_back(ids[0], ids[1], lineno);
    } else if (line.rfind("joinspec", 0) == 0 &&
               (line.size() == 8 || !ident_char(line[8]))) {
      std::size_t colon = line.find(':');
      if (colon == std::string::npos) throw parse_error(lineno, "'joinspec' needs 'name:'");
      auto names = split_idents(line.substr(8, colon - 8), lineno);
      if (names.size() != 1) throw parse_error(lineno, "'joinspec' needs exactly one name");
      spec_lines.emplace_back(names[0], line.substr(colon + 1), lineno);
    } else {
      throw parse_error(lineno, "unrecognized line '" + line + "'");
    }
  }
  if (!have_elements) throw parse_error(lineno, "missing 'elements:' line");

  std::vector<std::pair<std::string, std::string>> cover_pairs;
  for (const auto& [lo, hi, line] : covers) {
    auto known = [&labels](const std::string& id) {
      return std::find(labels.begin(), labels.end(), id) != labels.end();
    };
    if (!known(lo)) throw parse_error(line, "unknown element '" + lo + "' in cover");
    if (!known(hi)) throw parse_error(line, "unknown element '" + hi + "' in cover");
    if (lo == hi)
      throw parse_error(line, "cover '" + lo + " < " + hi + "' relates an element to itself");
    cover_pairs.emplace_back(lo, hi);
  }

  Workspace w{[&] {
                try {
                  return Poset::from_covers(labels, cover_pairs);
                } catch (const validation_error& e) {
                  throw parse_error(elements_line, e.what());
                }
              }(),
              {},
              std::move(source)};

  for (const auto& [name, setlist, line] : spec_lines) {
    if (w.find(name)) throw parse_error(line, "duplicate joinspec name '" + name + "'");
    std::vector<Mask> members;
    std::size_t i = 0;
    while (i < setlist.size()) {
      if (std::isspace(static_cast<unsigned char>(setlist[i]))) {
        ++i;
        continue;
      }
      if (setlist[i] != '{') throw parse_error(line, "expected '{' in setlist");
      std::size_t close = setlist.find('}', i);
      if (close == std::string::npos) throw parse_error(line, "unterminated set");
      Mask m = 0;
      for (const std::string& id : split_idents(setlist.substr(i + 1, close - i - 1), line)) {
        int idx = w.poset.index(id);
        if (idx < 0) throw parse_error(line, "unknown element '" + id + "'");
        m |= bit(idx);
      }
      members.push_back(m);
      i = close + 1;
    }
    try {
      w.specs.emplace_back(name, JoinSpec::make(w.poset, members));
    } catch (const validation_error& e) {
      throw parse_error(line, e.what());
    }
  }
  return w;
}

bool equivalent(const Workspace& a, const Workspace& b) {
  if (a.poset.size() != b.poset.size()) return false;
  for (int i = 0; i < a.poset.size(); ++i) {
    if (a.poset.label(i) != b.poset.label(i)) return false;
    for (int j = 0; j < a.poset.size(); ++j) {
      if (a.poset.leq(i, j) != b.poset.leq(i, j)) return false;
    }
  }
  if (a.specs.size() != b.specs.size()) return false;
  for (const auto& [name, u] : a.specs) {
    const JoinSpec* v = b.find(name);
    if (!v) return false;
    if (std::vector<Mask>(u.members().begin(), u.members().end()) !=
        std::vector<Mask>(v->members().begin(), v->members().end()))
      return false;
  }
  return true;
}

std::string export_json(const Workspace& w) {
  nlohmann::json j;
  j["elements"] = nlohmann::json::array();
  for (int i = 0; i < w.poset.size(); ++i) j["elements"].push_back(w.poset.label(i));
  j["covers"] = nlohmann::json::array();
  for (auto [lo, hi] : w.poset.cover_pairs()) {
    j["covers"].push_back({w.poset.label(lo), w.poset.label(hi)});
  }
  j["joinspecs"] = nlohmann::json::object();
  for (const auto& [name, u] : w.specs) {
    nlohmann::json sets = nlohmann::json::array();
    for (Mask m : sorted_members(u)) {
      nlohmann::json set = nlohmann::json::array();
      Mask rest = m;
      while (rest) {
        int i = first_bit(rest);
        rest &= rest - 1;
        set.push_back(w.poset.label(i));
      }
      sets.push_back(set);
    }
    j["joinspecs"][name] = sets;
  }
  return j.dump(2) + "\n";
}

std::string export_dot(const Poset& p) {
  std::string out = "digraph poset {\n  rankdir=BT;\n";
  for (int i = 0; i < p.size(); ++i) out += "  \"" + p.label(i) + "\";\n";
  for (auto [lo, hi] : p.cover_pairs()) {
    out += "  \"" + p.label(lo) + "\" -> \"" + p.label(hi) + "\";\n";
  }
  out += "}\n";
  return out;
}

std::string export_dot(const IdealLattice& il) {
  const Poset& p = il.owner();
  std::string out = "digraph ideals {\n  rankdir=BT;\n";
  for (Mask c : il.ideals()) out += "  \"" + p.set_to_string(c) + "\";\n";
  for (Mask a : il.ideals()) {
    for (Mask b : il.ideals()) {
      if (a == b || !subset(a, b)) continue;
      bool covers = true;
      for (Mask c : il.ideals()) {
        if (c != a && c != b && subset(a, c) && subset(c, b)) {
          covers = false;
          break;
        }
      }
      if (covers) out += "  \"" + p.set_to_string(a) + "\" -> \"" + p.set_to_string(b) + "\";\n";
    }
  }
  out += "}\n";
  return out;
}

std::string spec_to_text(const Poset& p, const JoinSpec& u) {
  std::string out;
  for (Mask m : sorted_members(u)) {
    if (!out.empty()) out += " ";
    out += p.set_to_string(m);
  }
  return out.empty() ? "(singletons only)" : out;
}

}  // namespace ordkit
