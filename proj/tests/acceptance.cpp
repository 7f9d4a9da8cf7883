// Acceptance suite: reproduces the worked examples exactly and runs the
// seeded law harness, printing one pass/fail line per criterion.
//
// Usage: acceptance <ordkit-cli> <fixtures-dir>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ordkit/enumerate.hpp"
#include "ordkit/frames.hpp"
#include "ordkit/ideal_lattice.hpp"
#include "ordkit/maps.hpp"
#include "ordkit/speclattice.hpp"
#include "ordkit/verify.hpp"
#include "ordkit/workspace.hpp"

using namespace ordkit;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_cli;
std::string g_fixtures;
int g_failed_criteria = 0;
std::vector<std::string> g_errors;

#define REQUIRE(cond)                                                         \
  do {                                                                        \
    if (!(cond)) {                                                            \
      g_errors.push_back(std::string(__FILE__) + ":" + std::to_string(__LINE__) + \
                         ": " #cond);                                         \
    }                                                                         \
  } while (0)

Workspace fixture(const std::string& name) {
  std::ifstream in(g_fixtures + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_workspace(ss.str(), name);
}

Mask set_of(const Poset& p, std::initializer_list<const char*> ids) {
  Mask m = 0;
  for (const char* id : ids) m |= bit(p.index(id));
  return m;
}

void criterion(int number, const std::string& what, double limit_seconds,
               void (*body)()) {
  g_errors.clear();
  const auto t0 = Clock::now();
  try {
    body();
  } catch (const std::exception& e) {
    g_errors.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs >= limit_seconds)
    g_errors.push_back("runtime " + std::to_string(secs) + "s exceeds " +
                       std::to_string(limit_seconds) + "s");
  const bool ok = g_errors.empty();
  if (!ok) ++g_failed_criteria;
  std::printf("criterion %d: %s (%.2fs, limit %.0fs) %s\n", number,
              ok ? "PASS" : "FAIL", secs, limit_seconds, what.c_str());
  for (const std::string& e : g_errors) std::printf("  %s\n", e.c_str());
  std::fflush(stdout);
}

// --- criterion bodies ----------------------------------------------------

void criterion1() {
  Workspace w = fixture("nounion.poset");
  const Poset& p = w.poset;
  const JoinSpec& u1 = w.require("U1");
  const JoinSpec& u2 = w.require("U2");
  REQUIRE(is_frame_generating(u1, FrameGenMethod::all).verdict);
  REQUIRE(is_frame_generating(u1, FrameGenMethod::all).methods_agree);
  REQUIRE(is_frame_generating(u2, FrameGenMethod::all).verdict);
  REQUIRE(is_frame_generating(u2, FrameGenMethod::all).methods_agree);

  const Mask abc = set_of(p, {"a", "b", "c"});
  REQUIRE(!in_uplus(u1, abc));
  REQUIRE(!in_uplus(u2, abc));
  REQUIRE(in_uplus(u1.union_with(u2), abc));

  JoinSpec p1 = uplus(u1), p2 = uplus(u2);
  REQUIRE(!p1.contains(abc));
  REQUIRE(!p2.contains(abc));
  const std::vector<JoinSpec> pluses{p1, p2};
  JoinSpec pj = jfplus_join(pluses);
  REQUIRE(pj.contains(abc));  // strictly beyond the union
  for (Mask s : p1.members()) REQUIRE(pj.contains(s));
  for (Mask s : p2.members()) REQUIRE(pj.contains(s));
}

void criterion2() {
  Workspace w = fixture("strict.poset");
  const Poset& s = w.poset;
  const JoinSpec& u1 = w.require("U1");
  const JoinSpec& u2 = w.require("U2");
  REQUIRE(is_frame_generating(u1, FrameGenMethod::all).verdict);
  REQUIRE(is_frame_generating(u2, FrameGenMethod::all).verdict);

  JoinSpec meet12 = u1.intersect_with(u2);
  REQUIRE(meet12 == w.require("U1meetU2"));
  FrameGenReport r = is_frame_generating(meet12, FrameGenMethod::all);
  REQUIRE(!r.verdict);
  REQUIRE(r.methods_agree);
  REQUIRE(r.witness.has_value());
  if (r.witness) {
    REQUIRE(r.witness->first == set_of(s, {"a", "b", "c", "d", "e", "g"}));
    REQUIRE(r.witness->second == s.index("h") || r.witness->second == s.index("i"));
  }

  std::vector<Mask> expect{set_of(s, {"a", "b"}), set_of(s, {"b", "c"}),
                           set_of(s, {"c", "d"})};
  REQUIRE(uminus(meet12) == JoinSpec::make(s, expect));

  const Mask abc = set_of(s, {"a", "b", "c"});
  REQUIRE(in_uplus(u1, abc));
  REQUIRE(in_uplus(u2, abc));
  REQUIRE(!in_uplus(meet12, abc));
}

void criterion3() {
  Workspace w = fixture("notmod.poset");
  const Poset& p = w.poset;
  JoinSpec uinf = JoinSpec::u_infty(p);
  IdealLattice il = ideal_lattice(uinf);

  const Mask c_d = p.down_close(set_of(p, {"c"}));
  const Mask d_d = p.down_close(set_of(p, {"d"}));
  const Mask bc_d = p.down_close(set_of(p, {"b", "c"}));
  const Mask abc_d = p.down_close(set_of(p, {"a", "b", "c"}));
  const Mask e_d = p.down_close(set_of(p, {"e"}));
  for (Mask m : {c_d, d_d, bc_d, abc_d, e_d}) {
    REQUIRE(is_ideal(uinf, m));
    REQUIRE(il.index_of(m) >= 0);
  }

  // The five ideals form the pentagon: a three-element chain on one side,
  // a single element on the other.
  REQUIRE(subset(c_d, bc_d));
  REQUIRE(subset(bc_d, abc_d));
  REQUIRE(subset(abc_d, e_d));
  REQUIRE(subset(c_d, d_d));
  REQUIRE(subset(d_d, e_d));
  REQUIRE(!subset(d_d, abc_d));
  REQUIRE(!subset(abc_d, d_d));
  REQUIRE(!subset(d_d, bc_d));
  REQUIRE(!subset(bc_d, d_d));
  REQUIRE(il.meet(d_d, bc_d) == c_d);
  REQUIRE(il.meet(d_d, abc_d) == c_d);
  REQUIRE(il.join(d_d, bc_d) == e_d);
  REQUIRE(il.join(d_d, abc_d) == e_d);

  REQUIRE(!is_modular(il.lattice()));

  JoinSpec top = jf_top(p);
  bool proper = top.member_count() < uinf.member_count();
  REQUIRE(proper);
  for (Mask s : top.members()) REQUIRE(uinf.contains(s));
}

void criterion4() {
  // E:emNec.
  Workspace wp = fixture("emnec_p.poset");
  Workspace wq = fixture("emnec_q.poset");
  const Poset& p = wp.poset;
  const Poset& q = wq.poset;
  JoinSpec up = JoinSpec::all_joins(p);
  JoinSpec uq = wq.require("Uinf");
  REQUIRE(uq == JoinSpec::all_joins(q));

  IdealLattice ip = ideal_lattice(up);
  REQUIRE(ip.size() == 4);
  for (Mask m : {Mask{0}, set_of(p, {"a"}), set_of(p, {"b"}), p.carrier()}) {
    REQUIRE(ip.index_of(m) >= 0);
  }
  IdealLattice iq = ideal_lattice(uq);
  REQUIRE(iq.size() == 2);
  REQUIRE(iq.index_of(set_of(q, {"c"})) >= 0);
  REQUIRE(iq.index_of(q.carrier()) >= 0);

  PosetMap f = PosetMap::from_pairs(
      p, q, std::vector<std::pair<std::string, std::string>>{{"a", "d"}, {"b", "d"}});
  REQUIRE(is_monotone(f));
  REQUIRE(!is_embedding(f));
  REQUIRE(is_u_morphism(f, up));
  LatticeMap h = lift(f, up, uq);
  REQUIRE(!map_meet_preserving_binary(h));

  // E:notInj.
  Workspace wi = fixture("notinj_p.poset");
  Workspace wj = fixture("notinj_q.poset");
  JoinSpec ui = JoinSpec::all_joins(wi.poset);
  JoinSpec uj = JoinSpec::all_joins(wj.poset);
  IdealLattice ij = ideal_lattice(uj);
  REQUIRE(ij.size() == 5);
  for (Mask m : {Mask{0}, set_of(wj.poset, {"a'"}), set_of(wj.poset, {"b'"}),
                 set_of(wj.poset, {"c'"}), wj.poset.carrier()}) {
    REQUIRE(ij.index_of(m) >= 0);
  }
  PosetMap g = PosetMap::from_pairs(wi.poset, wj.poset,
                                    std::vector<std::pair<std::string, std::string>>{
                                        {"a", "a'"}, {"b", "b'"}, {"c", "c'"}});
  REQUIRE(is_embedding(g));
  LatticeMap hg = lift(g, ui, uj);
  REQUIRE(!map_injective(hg));

  // L:embed control: both sides frame-generating, the lift embeds.
  Workspace wc = fixture("embed_q.poset");
  JoinSpec uc = JoinSpec::all_joins(wc.poset);
  REQUIRE(is_frame_generating(up).verdict);
  REQUIRE(is_frame_generating(uc).verdict);
  PosetMap e = PosetMap::from_pairs(
      p, wc.poset,
      std::vector<std::pair<std::string, std::string>>{{"a", "a"}, {"b", "b"}});
  REQUIRE(is_embedding(e));
  LatticeMap he = lift(e, up, uc);
  REQUIRE(map_embedding(he));
}

const char* kCriterion5Laws[] = {
    "frame-methods-agree",    "one-step-formula",       "join-in-closure",
    "one-step-localized",     "one-step-idempotent",    "one-step-below-closure",
    "one-step-smallest-ideal"};
const char* kCriterion6Laws[] = {
    "closure-galois",         "maximal-intersection",   "union-intersection-stability",
    "spec-lattice-ops",       "completion-reflection",  "closure-meets",
    "eta-completion",         "meet-embedding",         "universal-extension",
    "induced-map-frames"};

void run_laws(const std::vector<std::string>& laws) {
  VerifyConfig cfg;  // defaults: exhaustive n<=4, 200 random at n=5..6, seed 42
  cfg.laws = laws;
  VerifyReport r = verify_theorems(cfg);
  REQUIRE(r.ok);
  if (!r.ok) {
    for (const LawResult& lr : r.laws) {
      for (const std::string& w : lr.witnesses)
        g_errors.push_back(lr.law + ": " + w);
    }
  }
}

void criterion5() {
  run_laws(std::vector<std::string>(std::begin(kCriterion5Laws),
                                    std::end(kCriterion5Laws)));
}

void criterion6() {
  run_laws(std::vector<std::string>(std::begin(kCriterion6Laws),
                                    std::end(kCriterion6Laws)));
}

void criterion7() {
  Workspace wn = fixture("nounion.poset");
  Workspace ws = fixture("strict.poset");
  for (auto mutation : {testing::Mutation::gamma_skip_downclose,
                        testing::Mutation::upsilon_u_quantifier}) {
    VerifyConfig cfg;
    cfg.max_n = 4;
    cfg.samples = 0;
    cfg.mutation = mutation;
    cfg.laws.assign(std::begin(kCriterion5Laws), std::end(kCriterion5Laws));
    cfg.extra_instances.emplace_back(wn.poset, wn.require("U1uU2"));
    cfg.extra_instances.emplace_back(ws.poset, ws.require("U1meetU2"));
    VerifyReport r = verify_theorems(cfg);
    REQUIRE(!r.ok);
    long failures = 0;
    bool witness_printed = false;
    for (const LawResult& lr : r.laws) {
      failures += lr.failures;
      witness_printed |= !lr.witnesses.empty();
    }
    REQUIRE(failures > 0);
    REQUIRE(witness_printed);
    REQUIRE(r.text.find("witness:") != std::string::npos);

    // Control: the same configuration is green without the mutation.
    cfg.mutation = testing::Mutation::none;
    REQUIRE(verify_theorems(cfg).ok);
  }
}

void criterion8() {
  const std::string out1 = "acceptance_verify_run1.txt";
  const std::string out2 = "acceptance_verify_run2.txt";
  const std::string cmd1 = g_cli + " verify --seed 42 > " + out1;
  const std::string cmd2 = g_cli + " verify --seed 42 > " + out2;
  REQUIRE(std::system(cmd1.c_str()) == 0);
  REQUIRE(std::system(cmd2.c_str()) == 0);
  std::ifstream f1(out1), f2(out2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  REQUIRE(s1.str() == s2.str());
  REQUIRE(!s1.str().empty());
  REQUIRE(s1.str().find("RESULT: PASS") != std::string::npos);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <ordkit-cli> <fixtures-dir>\n");
    return 2;
  }
  g_cli = argv[1];
  g_fixtures = argv[2];

  criterion(1, "union example: maximality fails under unions", 1.0, criterion1);
  criterion(2, "intersection example: frame generation fails under intersections",
            1.0, criterion2);
  criterion(3, "pentagon inside the ideal lattice; proper top", 5.0, criterion3);
  criterion(4, "collapse and embedding lifts behave as computed", 1.0, criterion4);
  criterion(5, "one-step closure cross-validation sweep", 300.0, criterion5);
  criterion(6, "Galois and lattice law sweep", 300.0, criterion6);
  criterion(7, "mutation sensitivity of the harness", 60.0, criterion7);
  criterion(8, "byte-identical verify reports", 300.0, criterion8);

  if (g_failed_criteria) {
    std::printf("%d criterion(s) failed\n", g_failed_criteria);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
