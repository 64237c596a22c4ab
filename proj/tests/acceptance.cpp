// Acceptance run: one PASS/FAIL line per criterion, with the measured values
// indented below it. Soft criteria report mismatches as deviations and do
// not affect the exit status; the hard ones do.
//
// Usage: acceptance [--atlir-budget SECONDS] [--cell-budget SECONDS]

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "amc/aemc_checker.hpp"
#include "amc/atlir_checker.hpp"
#include "amc/benchmarks.hpp"
#include "amc/error.hpp"
#include "amc/harness.hpp"
#include "amc/translate.hpp"
#include "support.hpp"

using namespace amc;
using amc::testing::Rng;

namespace {

struct Config {
  unsigned a, b, c;
  std::string name() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
  }
};

const std::vector<Config> kCastles = {{1, 1, 1}, {1, 1, 2}, {2, 1, 2}, {2, 2, 2}, {3, 1, 1}, {3, 2, 2}};

struct Criterion {
  int number;
  std::string title;
  bool hard;
  bool pass = true;
  std::vector<std::string> notes;

  void note(const std::string& s) { notes.push_back(s); }
  void fail(const std::string& s) {
    pass = false;
    notes.push_back(s);
  }
  void print() const {
    const char* verdict = pass ? "PASS" : hard ? "FAIL" : "FAIL (soft)";
    std::printf("%s criterion %d: %s\n", verdict, number, title.c_str());
    for (const auto& n : notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
  }
};

struct AemcRun {
  bool truth;
  FixpointStats stats;
};

// Every fixpoint evaluation made by the run, for the fixpoint-property criterion.
std::vector<std::pair<std::string, FixpointStats>> g_fixpoint_log;

AemcRun run_aemc(const BenchmarkInstance& inst, const std::string& formula, NextVariant v) {
  AemcOptions o;
  o.variant = v;
  o.jobs = std::max(1u, std::thread::hardware_concurrency());
  AemcChecker c(inst.model, o, inst.aliases);
  for (const auto& [name, f] : inst.aemc)
    if (name == formula) {
      auto [t, st] = c.check(inst.initial, f);
      g_fixpoint_log.emplace_back(inst.label + " " + formula + " " + to_string(v), st);
      return {t, st};
    }
  throw UnknownNameError(formula);
}

std::string stats_text(const FixpointStats& s) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu/%zu (%.3f s)", s.sat_count, s.iterations, s.wall_time);
  return buf;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

struct AtlirRun {
  std::optional<bool> truth;  // empty on timeout
  double wall_time = 0;
};

AtlirRun run_atlir(const BenchmarkInstance& inst, const std::string& formula, double budget) {
  for (const auto& [name, f] : inst.atl)
    if (name == formula) {
      CheckRequest req;
      req.engine = Engine::Atlir;
      req.timeout = budget;
      CheckReport r = run_check(inst.model, inst.initial, to_string(f), req, inst.aliases);
      return {r.truth, r.wall_time};
    }
  throw UnknownNameError(formula);
}

double time_aemc(const BenchmarkInstance& inst, const std::string& formula) {
  CheckRequest req;
  req.engine = Engine::Aemc;
  for (const auto& [name, f] : inst.atl)
    if (name == formula) return run_check(inst.model, inst.initial, to_string(f), req, inst.aliases).wall_time;
  throw UnknownNameError(formula);
}

}  // namespace

int main(int argc, char** argv) {
  double atlir_budget = 10;   // per cell when only timing is wanted
  double cell_budget = 1800;  // per cell of the ATL_ir truth table
  for (int i = 1; i + 1 < argc; i += 2) {
    if (!std::strcmp(argv[i], "--atlir-budget")) atlir_budget = std::atof(argv[i + 1]);
    else if (!std::strcmp(argv[i], "--cell-budget")) cell_budget = std::atof(argv[i + 1]);
  }

  std::map<std::string, BenchmarkInstance> castles;
  for (const auto& c : kCastles) castles.emplace(c.name(), gen_castles(c.a, c.b, c.c));
  std::map<unsigned, BenchmarkInstance> tianji, modtianji;
  for (unsigned n = 3; n <= 8; ++n) {
    tianji.emplace(n, gen_tianji(n, false));
    modtianji.emplace(n, gen_tianji(n, true));
  }

  // 1. Truth tables of the translated formulas.
  Criterion c1{1, "AEMC truth tables for Castles and TianJi (subjective next)", true};
  std::map<std::string, AemcRun> sub, obj;  // keyed by "instance formula"
  {
    const std::map<std::string, bool> psi1 = {{"(1,1,1)", false}, {"(1,1,2)", false}, {"(2,1,2)", false},
                                              {"(2,2,2)", false}, {"(3,1,1)", true},  {"(3,2,2)", true}};
    for (const auto& c : kCastles) {
      const auto& inst = castles.at(c.name());
      for (const char* f : {"psi1p", "psi2p"}) {
        bool want = std::string(f) == "psi1p" ? psi1.at(c.name()) : false;
        AemcRun r = run_aemc(inst, f, NextVariant::SubjectiveUniform);
        sub[inst.label + " " + f] = r;
        std::string line = inst.label + " " + f + ": " + yes_no(r.truth) + ", expected " + yes_no(want) + ", " +
                           stats_text(r.stats);
        if (r.truth == want) c1.note(line);
        else c1.fail(line);
      }
    }
    for (auto* family : {&tianji, &modtianji})
      for (const auto& [n, inst] : *family)
        for (const char* f : {"phi1p", "phi2p"}) {
          AemcRun r = run_aemc(inst, f, NextVariant::SubjectiveUniform);
          sub[inst.label + " " + f] = r;
          std::string line = inst.label + " " + f + ": " + yes_no(r.truth) + ", expected false, " + stats_text(r.stats);
          if (!r.truth) c1.note(line);
          else c1.fail(line);
        }
  }
  c1.print();

  // 2. ATL_ir at desk scale.
  Criterion c2{2, "ATL_ir truth values at desk scale", true};
  {
    struct Cell {
      const BenchmarkInstance* inst;
      std::string formula;
      bool want;
    };
    static const BenchmarkInstance inter = gen_intersection();
    std::vector<Cell> cells = {{&inter, "safe", true}, {&inter, "crash", false}};
    for (const char* c : {"(1,1,1)", "(1,1,2)"}) cells.push_back({&castles.at(c), "psi2", false});
    for (unsigned n : {3u, 4u})
      for (const char* f : {"phi1", "phi2"}) {
        cells.push_back({&tianji.at(n), f, false});
        cells.push_back({&modtianji.at(n), f, true});
      }
    for (const auto& cell : cells) {
      AtlirRun r = run_atlir(*cell.inst, cell.formula, cell_budget);
      char t[32];
      std::snprintf(t, sizeof t, " (%.3f s)", r.wall_time);
      std::string line = cell.inst->label + " " + cell.formula + ": " +
                         (r.truth ? yes_no(*r.truth) : std::string("timeout")) + ", expected " + yes_no(cell.want) + t;
      if (r.truth == cell.want) c2.note(line);
      else c2.fail(line);
    }
  }
  c2.print();

  // 3. Statistics against the published tables, under either variant.
  Criterion c3{3, "#sat/#iter statistics match the published tables under some next variant", false};
  {
    struct Expected {
      std::string key;
      std::size_t sat, iter;
    };
    std::vector<Expected> table = {
        {"4 (1,1,1) psi1p", 128, 1}, {"5 (1,1,2) psi1p", 256, 1}, {"6 (2,1,2) psi1p", 512, 1},
        {"7 (2,2,2) psi1p", 1024, 1}, {"8 (3,2,2) psi1p", 5504, 2}, {"4 (1,1,1) psi2p", 8, 1},
        {"5 (1,1,2) psi2p", 16, 1},  {"6 (2,1,2) psi2p", 32, 1},   {"7 (2,2,2) psi2p", 64, 1},
        {"8 (3,2,2) psi2p", 128, 1}};
    const std::size_t phi1[] = {11, 18, 153, 300, 2258, 4900};
    const std::size_t phi1_iter[] = {2, 2, 3, 3, 4, 4};
    for (unsigned n = 3; n <= 8; ++n) {
      table.push_back({"horses=" + std::to_string(n) + " phi1p", phi1[n - 3], phi1_iter[n - 3]});
      table.push_back({"horses=" + std::to_string(n) + " phi2p", 0, 2});
    }
    for (const auto& [label, inst] : castles)
      for (const char* f : {"psi1p", "psi2p"}) obj[inst.label + " " + f] = run_aemc(inst, f, NextVariant::Objective);
    for (const auto& [n, inst] : tianji)
      for (const char* f : {"phi1p", "phi2p"}) obj[inst.label + " " + f] = run_aemc(inst, f, NextVariant::Objective);

    std::size_t match_sub = 0, match_obj = 0;
    for (const auto& e : table) {
      const FixpointStats& s = sub.at(e.key).stats;
      const FixpointStats& o = obj.at(e.key).stats;
      bool ms = s.sat_count == e.sat && s.iterations == e.iter;
      bool mo = o.sat_count == e.sat && o.iterations == e.iter;
      match_sub += ms;
      match_obj += mo;
      char buf[256];
      std::snprintf(buf, sizeof buf, "%s: published %zu/%zu, subjective %zu/%zu%s, objective %zu/%zu%s", e.key.c_str(),
                    e.sat, e.iter, s.sat_count, s.iterations, ms ? " (match)" : "", o.sat_count, o.iterations,
                    mo ? " (match)" : "");
      if (ms || mo) c3.note(buf);
      else c3.fail(std::string("deviation: ") + buf);
    }
    c3.note("cells matched: subjective " + std::to_string(match_sub) + "/" + std::to_string(table.size()) +
            ", objective " + std::to_string(match_obj) + "/" + std::to_string(table.size()));
  }
  c3.print();

  // 4. ATL_ir against the fixpoint translation under perfect information.
  Criterion c4{4, "ATL_ir equals AEMC of the translation on random perfect-information models", true};
  {
    Rng rng(2024);
    std::size_t models = 0, formulas = 0, states = 0, mismatches = 0;
    for (; models < 250; ++models) {
      Icgs m = amc::testing::random_model(rng, {8, 3, 3, true});
      for (int i = 0; i < 4; ++i) {
        AtlFormula f = amc::testing::random_atl(rng, m.num_agents(), 3);
        ++formulas;
        AtlirChecker atl(m);
        StateSet a = atl.satisfying(f);
        StateSet b = denotation(m, translate_aemc(f)).first;
        for (StateId q = 0; q < m.num_states(); ++q) {
          ++states;
          if (a.contains(q) != b.contains(q)) {
            ++mismatches;
            if (mismatches <= 5) c4.fail("mismatch on " + to_string(f) + " at s" + std::to_string(q));
          }
        }
      }
    }
    c4.note(std::to_string(models) + " models, " + std::to_string(formulas) + " formulas, " +
            std::to_string(states) + " state checks, " + std::to_string(mismatches) + " mismatches");
    if (mismatches) c4.pass = false;
  }
  c4.print();

  // 5. Next-step cross-check under imperfect information.
  Criterion c5{5, "ATL_ir <<A>>X equals the subjective-uniform one-step operator on random models", true};
  {
    Rng rng(2025);
    std::size_t models = 0, states = 0, mismatches = 0;
    for (; models < 250; ++models) {
      Icgs m = amc::testing::random_model(rng, {8, 3, 3, false});
      for (int i = 0; i < 4; ++i) {
        AtlFormula inner = amc::testing::random_atl(rng, m.num_agents(), 2);
        std::vector<std::string> coal;
        for (AgentId a = 0; a < m.num_agents(); ++a)
          if (rng() % 2) coal.push_back(m.agent_name(a));
        AtlFormula f = AtlFormula::next(coal, inner);
        AtlirChecker atl(m);
        StateSet target = atl.satisfying(inner);
        StateSet pre = pre_coalition(m, m.coalition(coal), target, NextVariant::SubjectiveUniform);
        for (StateId q = 0; q < m.num_states(); ++q) {
          ++states;
          if (check_atlir(m, q, f) != pre.contains(q)) {
            ++mismatches;
            if (mismatches <= 5) c5.fail("mismatch on " + to_string(f) + " at s" + std::to_string(q));
          }
        }
      }
    }
    c5.note(std::to_string(models) + " models, " + std::to_string(states) + " state checks, " +
            std::to_string(mismatches) + " mismatches");
    if (mismatches) c5.pass = false;
  }
  c5.print();

  // 6. Fixpoint self-checks and monotonicity of the one-step operator.
  Criterion c6{6, "fixpoint chains are monotone and bounded; the one-step operator is monotone", true};
  {
    std::size_t bad = 0;
    for (const auto& [what, st] : g_fixpoint_log)
      if (!st.monotone_chains || !st.within_state_bound) {
        ++bad;
        c6.fail("fixpoint self-check failed: " + what);
      }
    c6.note(std::to_string(g_fixpoint_log.size()) + " benchmark evaluations checked, " + std::to_string(bad) +
            " failures");
    Rng rng(2026);
    std::size_t violations = 0;
    for (int i = 0; i < 1000; ++i) {
      Icgs m = amc::testing::random_model(rng, {8, 3, 3, i % 2 == 0});
      std::vector<AgentId> members;
      for (AgentId a = 0; a < m.num_agents(); ++a)
        if (rng() % 2) members.push_back(a);
      Coalition c(members);
      StateSet t1(m.num_states()), t2(m.num_states());
      for (StateId q = 0; q < m.num_states(); ++q) {
        bool in1 = rng() % 2, in2 = rng() % 2;
        if (in1) t1.insert(q);
        if (in1 || in2) t2.insert(q);
      }
      for (auto v : {NextVariant::SubjectiveUniform, NextVariant::Objective})
        if (!pre_coalition(m, c, t1, v).subset_of(pre_coalition(m, c, t2, v))) ++violations;
    }
    c6.note("1000 random (model, coalition, T1 within T2) triples, " + std::to_string(violations) +
            " monotonicity violations");
    if (violations) c6.pass = false;
  }
  c6.print();

  // 7. Where both engines finish, the fixpoint engine is faster.
  char title7[128];
  std::snprintf(title7, sizeof title7, "AEMC is faster than ATL_ir wherever both finish (ATL_ir budget %.0f s)",
                atlir_budget);
  Criterion c7{7, title7, false};
  {
    std::vector<std::pair<const BenchmarkInstance*, std::string>> cells;
    static const BenchmarkInstance inter = gen_intersection();
    cells.push_back({&inter, "safe"});
    cells.push_back({&inter, "crash"});
    for (const auto& c : kCastles)
      for (const char* f : {"psi1", "psi2"}) cells.push_back({&castles.at(c.name()), f});
    for (auto* family : {&tianji, &modtianji})
      for (const auto& [n, inst] : *family)
        for (const char* f : {"phi1", "phi2"}) cells.push_back({&inst, f});
    std::size_t both = 0, faster = 0;
    for (const auto& [inst, f] : cells) {
      AtlirRun a = run_atlir(*inst, f, atlir_budget);
      char buf[192];
      if (!a.truth) {
        std::snprintf(buf, sizeof buf, "%s %s: ATL_ir timeout, excluded", inst->label.c_str(), f.c_str());
        c7.note(buf);
        continue;
      }
      double t = time_aemc(*inst, f);
      ++both;
      std::snprintf(buf, sizeof buf, "%s %s: AEMC %.6f s, ATL_ir %.6f s", inst->label.c_str(), f.c_str(), t,
                    a.wall_time);
      if (t < a.wall_time) {
        ++faster;
        c7.note(buf);
      } else {
        c7.fail(std::string("deviation: ") + buf);
      }
    }
    c7.note("AEMC faster on " + std::to_string(faster) + " of " + std::to_string(both) + " cells where both finished");
  }
  c7.print();

  bool hard_ok = true;
  for (const Criterion* c : {&c1, &c2, &c3, &c4, &c5, &c6, &c7})
    if (c->hard && !c->pass) hard_ok = false;
  std::printf("%s\n", hard_ok ? "hard criteria: all passed" : "hard criteria: FAILED");
  return hard_ok ? 0 : 1;
}
