#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ordkit/enumerate.hpp"
#include "ordkit/frames.hpp"
#include "ordkit/ideal_lattice.hpp"
#include "ordkit/maps.hpp"
#include "ordkit/speclattice.hpp"
#include "ordkit/verify.hpp"
#include "ordkit/workspace.hpp"

namespace {

using namespace ordkit;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFails = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;

Workspace load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_workspace(ss.str(), path);
}

Mask parse_set(const Poset& p, const std::string& text) {
  Mask m = 0;
  std::istringstream ss(text);
  std::string id;
  while (ss >> id) {
    int i = p.index(id);
    if (i < 0) throw validation_error("unknown element '" + id + "'");
    m |= bit(i);
  }
  return m;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

FrameGenMethod parse_method(const std::string& s) {
  if (s == "1") return FrameGenMethod::ideal_lattice;
  if (s == "4") return FrameGenMethod::gamma_equation;
  if (s == "5") return FrameGenMethod::upsilon_downclosed;
  if (s == "7") return FrameGenMethod::smallest_ideal;
  if (s == "10") return FrameGenMethod::descent;
  if (s == "all") return FrameGenMethod::all;
  throw validation_error("method must be one of 1, 4, 5, 7, 10, all");
}

nlohmann::json ideals_json(const IdealLattice& il) {
  nlohmann::json out;
  out["count"] = il.size();
  out["ideals"] = nlohmann::json::array();
  for (Mask c : il.ideals()) {
    nlohmann::json set = nlohmann::json::array();
    Mask rest = c;
    while (rest) {
      int i = first_bit(rest);
      rest &= rest - 1;
      set.push_back(il.owner().label(i));
    }
    out["ideals"].push_back(set);
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"finite posets, join-specifications and their frame-generating structure"};
  app.require_subcommand(1);

  int max_n = 0;
  std::uint64_t max_ideals = 0;
  app.add_option("--max-n", max_n, "poset size cap (default 24)");
  app.add_option("--max-ideals", max_ideals, "ideal/downset enumeration cap (default 2^20)");

  std::string file, file2, spec_name, set_text, specs_text, method_text = "5";
  std::string in_lattice = "jf", format = "table", map_text;

  auto* validate = app.add_subcommand("validate", "parse a workspace file and report");
  validate->add_option("file", file)->required();

  auto* closure = app.add_subcommand("closure", "smallest U-ideal containing a set");
  closure->add_option("file", file)->required();
  closure->add_option("--spec", spec_name)->required();
  closure->add_option("--set", set_text)->required();

  auto* ups = app.add_subcommand("upsilon", "one-step join closure of a set");
  ups->add_option("file", file)->required();
  ups->add_option("--spec", spec_name)->required();
  ups->add_option("--set", set_text)->required();

  auto* ideals = app.add_subcommand("ideals", "enumerate the ideal lattice");
  ideals->add_option("file", file)->required();
  ideals->add_option("--spec", spec_name)->required();
  ideals->add_option("--format", format, "table|json|dot");

  auto* fg = app.add_subcommand("frame-generating", "decide whether I_U is a frame");
  fg->add_option("file", file)->required();
  fg->add_option("--spec", spec_name)->required();
  fg->add_option("--method", method_text, "1|4|5|7|10|all (default 5)");

  auto* uplus_cmd = app.add_subcommand("uplus", "largest specification with the same closure");
  uplus_cmd->add_option("file", file)->required();
  uplus_cmd->add_option("--spec", spec_name)->required();

  auto* uminus_cmd = app.add_subcommand("uminus", "largest frame-generating subset");
  uminus_cmd->add_option("file", file)->required();
  uminus_cmd->add_option("--spec", spec_name)->required();

  auto* meet = app.add_subcommand("meet", "meet in JF or JF+");
  meet->add_option("file", file)->required();
  meet->add_option("--specs", specs_text)->required();
  meet->add_option("--in", in_lattice, "jf|jf+ (default jf)");

  auto* join = app.add_subcommand("join", "join in JF or JF+");
  join->add_option("file", file)->required();
  join->add_option("--specs", specs_text)->required();
  join->add_option("--in", in_lattice, "jf|jf+ (default jf)");

  auto* top = app.add_subcommand("top", "top and bottoms of JF / JF+");
  top->add_option("file", file)->required();

  auto* maximal = app.add_subcommand("maximal", "is U equal to U+?");
  maximal->add_option("file", file)->required();
  maximal->add_option("--spec", spec_name)->required();

  auto* lift_cmd = app.add_subcommand("lift", "ideal-lattice lift of a U-morphism");
  lift_cmd->add_option("file", file, "domain workspace")->required();
  lift_cmd->add_option("file2", file2, "codomain workspace")->required();
  lift_cmd->add_option("--specs", specs_text, "domain spec,codomain spec")->required();
  lift_cmd->add_option("--map", map_text, "assignment a:x,b:y,...")->required();

  VerifyConfig vcfg;
  std::string laws_text, edge_text = "1/2";
  auto* verify = app.add_subcommand("verify", "run the seeded law-verification harness");
  verify->add_option("--max-n", vcfg.max_n, "instance size ceiling (default 6)");
  verify->add_option("--samples", vcfg.samples, "random instances (default 200)");
  verify->add_option("--seed", vcfg.seed, "PRNG seed (default 42)");
  verify->add_option("--laws", laws_text, "comma-separated law names (default all)");
  verify->add_option("--edge-prob", edge_text, "cover probability as n/d (default 1/2)");
  verify->add_flag("--list-laws", "print the law names and exit");

  auto* exp = app.add_subcommand("export", "dot or json serialization");
  exp->add_option("file", file)->required();
  exp->add_option("--spec", spec_name, "export this spec's ideal lattice instead of the poset");
  exp->add_option("--format", format, "json|dot")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (max_n > 0) limits().max_elements = max_n;
  if (max_ideals > 0) {
    limits().max_closed_sets = max_ideals;
    limits().max_subset_scan = max_ideals;
  }

  if (validate->parsed()) {
    Workspace w = load(file);
    std::cout << "ok: " << w.poset.size() << " elements";
    for (const auto& [name, u] : w.specs) {
      std::cout << " " << name << "(" << u.member_count() << " members)";
    }
    std::cout << "\n";
    return kExitOk;
  }

  if (closure->parsed()) {
    Workspace w = load(file);
    const JoinSpec& u = w.require(spec_name);
    std::cout << w.poset.set_to_string(gamma(u, parse_set(w.poset, set_text))) << "\n";
    return kExitOk;
  }

  if (ups->parsed()) {
    Workspace w = load(file);
    const JoinSpec& u = w.require(spec_name);
    std::cout << w.poset.set_to_string(upsilon(u, parse_set(w.poset, set_text))) << "\n";
    return kExitOk;
  }

  if (ideals->parsed()) {
    Workspace w = load(file);
    IdealLattice il = ideal_lattice(w.require(spec_name));
    if (format == "table") {
      for (Mask c : il.ideals()) std::cout << w.poset.set_to_string(c) << "\n";
      std::cout << il.size() << " ideals\n";
    } else if (format == "json") {
      std::cout << ideals_json(il).dump(2) << "\n";
    } else if (format == "dot") {
      std::cout << export_dot(il);
    } else {
      throw validation_error("unsupported format '" + format + "'");
    }
    return kExitOk;
  }

  if (fg->parsed()) {
    Workspace w = load(file);
    FrameGenReport r = is_frame_generating(w.require(spec_name), parse_method(method_text));
    std::cout << r.describe(w.poset) << "\n";
    return r.verdict ? kExitOk : kExitPropertyFails;
  }

  if (uplus_cmd->parsed()) {
    Workspace w = load(file);
    JoinSpec up = uplus(w.require(spec_name));
    std::cout << spec_to_text(w.poset, up) << "\n";
    return kExitOk;
  }

  if (uminus_cmd->parsed()) {
    Workspace w = load(file);
    JoinSpec um = uminus(w.require(spec_name));
    std::cout << spec_to_text(w.poset, um) << "\n";
    return kExitOk;
  }

  if (meet->parsed() || join->parsed()) {
    Workspace w = load(file);
    std::vector<JoinSpec> specs;
    for (const std::string& name : split_commas(specs_text)) specs.push_back(w.require(name));
    if (specs.empty()) throw validation_error("--specs needs at least one name");
    JoinSpec out = meet->parsed()
                       ? (in_lattice == "jf+" ? jfplus_meet(specs) : jf_meet(specs))
                       : (in_lattice == "jf+" ? jfplus_join(specs) : jf_join(specs));
    std::cout << spec_to_text(w.poset, out) << "\n";
    return kExitOk;
  }

  if (top->parsed()) {
    Workspace w = load(file);
    std::cout << "top: " << spec_to_text(w.poset, jf_top(w.poset)) << "\n";
    auto [b, bp] = jf_bottoms(w.poset);
    std::cout << "bottom of JF: " << spec_to_text(w.poset, b) << "\n";
    std::cout << "bottom of JF+: " << spec_to_text(w.poset, bp) << "\n";
    return kExitOk;
  }

  if (maximal->parsed()) {
    Workspace w = load(file);
    if (auto t = maximality_witness(w.require(spec_name))) {
      std::cout << "not maximal: " << w.poset.set_to_string(*t) << " is in U+ but not in U\n";
      return kExitPropertyFails;
    }
    std::cout << "maximal\n";
    return kExitOk;
  }

  if (lift_cmd->parsed()) {
    Workspace wp = load(file);
    Workspace wq = load(file2);
    auto names = split_commas(specs_text);
    if (names.size() != 2) throw validation_error("--specs needs exactly two names");
    const JoinSpec& up = wp.require(names[0]);
    const JoinSpec& uq = wq.require(names[1]);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const std::string& part : split_commas(map_text)) {
      auto colon = part.find(':');
      if (colon == std::string::npos) throw validation_error("--map entries look like a:x");
      pairs.emplace_back(part.substr(0, colon), part.substr(colon + 1));
    }
    PosetMap f = PosetMap::from_pairs(wp.poset, wq.poset, pairs);
    LatticeMap h = lift(f, up, uq);
    for (int i = 0; i < h.dom.size(); ++i) {
      std::cout << wp.poset.set_to_string(h.dom.tag(i)) << " -> "
                << wq.poset.set_to_string(h.cod.tag(h(i))) << "\n";
    }
    std::cout << "monotone: " << (is_monotone(f) ? "yes" : "no")
              << "; embedding: " << (is_embedding(f) ? "yes" : "no")
              << "; continuous: " << (continuity_check(f, up, uq) ? "yes" : "no") << "\n";
    std::cout << "lift join-preserving: " << (map_join_preserving(h) ? "yes" : "no")
              << "; meet-preserving: " << (map_meet_preserving_binary(h) ? "yes" : "no")
              << "; embedding: " << (map_embedding(h) ? "yes" : "no")
              << "; onto: " << (map_surjective(h) ? "yes" : "no") << "\n";
    return kExitOk;
  }

  if (verify->parsed()) {
    if (verify->count("--list-laws") > 0) {
      for (const std::string& n : all_law_names()) std::cout << n << "\n";
      return kExitOk;
    }
    vcfg.laws = split_commas(laws_text);
    auto slash = edge_text.find('/');
    if (slash == std::string::npos) throw validation_error("--edge-prob looks like n/d");
    vcfg.edge_num = static_cast<std::uint32_t>(std::stoul(edge_text.substr(0, slash)));
    vcfg.edge_den = static_cast<std::uint32_t>(std::stoul(edge_text.substr(slash + 1)));
    VerifyReport report = verify_theorems(vcfg);
    std::cout << report.text;
    return report.ok ? kExitOk : kExitPropertyFails;
  }

  if (exp->parsed()) {
    Workspace w = load(file);
    if (!spec_name.empty()) {
      IdealLattice il = ideal_lattice(w.require(spec_name));
      if (format == "dot") {
        std::cout << export_dot(il);
      } else if (format == "json") {
        std::cout << ideals_json(il).dump(2) << "\n";
      } else {
        throw validation_error("unsupported object/format pair");
      }
    } else if (format == "dot") {
      std::cout << export_dot(w.poset);
    } else if (format == "json") {
      std::cout << export_json(w);
    } else {
      throw validation_error("unsupported object/format pair");
    }
    return kExitOk;
  }

  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cap_exceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
