#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "amc/benchmarks.hpp"
#include "amc/error.hpp"
#include "amc/icgs.hpp"
#include "amc/model_io.hpp"
#include "amc/strategy.hpp"
#include "support.hpp"

using namespace amc;
using amc::testing::Rng;

namespace {

const Icgs& intersection() {
  static const Icgs m = gen_intersection().model;
  return m;
}

std::uint64_t closed_form_count(const Icgs& m, const Coalition& c) {
  std::uint64_t n = 1;
  for (AgentId a : c.members())
    for (ClassId k = 0; k < m.num_classes(a); ++k) n *= m.available(a, m.class_members(a, k)[0]).size();
  return n;
}

Coalition all_agents(const Icgs& m) {
  std::vector<AgentId> v;
  for (AgentId a = 0; a < m.num_agents(); ++a) v.push_back(a);
  return Coalition(v);
}

}  // namespace

TEST_CASE("intersection: step and neighborhoods") {
  const Icgs& m = intersection();
  auto in = *m.find_action("in"), out = *m.find_action("out");
  StateId q_oo = m.state("q_oo");
  std::vector<ActionId> both_in{in, in}, first_in{in, out};
  CHECK(m.step(q_oo, both_in) == m.state("q_ii"));
  CHECK(m.step(q_oo, first_in) == m.state("q_io"));
  CHECK(m.step(q_oo, first_in) == m.step(q_oo, first_in));

  auto n1 = m.coalition_neighborhood(Coalition({0}), q_oo);
  CHECK(n1.count() == 2);
  CHECK(n1.contains(m.state("q_oi")));
  auto n12 = m.coalition_neighborhood(Coalition({0, 1}), q_oo);
  CHECK(n12.count() == 3);
  CHECK(m.epistemic_class(0, m.state("q_c")).count() == 1);
  CHECK_FALSE(m.perfect_information());
}

TEST_CASE("step rejects unavailable actions") {
  IcgsBuilder b;
  b.add_agent("a");
  b.add_agent("b");
  StateId s = b.add_state("s");
  ActionId x = b.action("x"), y = b.action("y");
  b.set_available(0, s, {x});
  b.set_available(1, s, {x, y});
  Icgs m = b.build([&](StateId, std::span<const ActionId>) { return s; });
  std::vector<ActionId> bad{y, x};
  try {
    m.step(s, bad);
    FAIL("expected UnavailableActionError");
  } catch (const UnavailableActionError& e) {
    CHECK(e.agent() == 0);
  }
}

TEST_CASE("strategy counts on the intersection") {
  const Icgs& m = intersection();
  CHECK(StrategyEnumerator(m, Coalition({0})).count() == 8);
  CHECK(StrategyEnumerator(m, Coalition({0, 1})).count() == 64);
}

TEST_CASE("an agent with a single action everywhere has one strategy") {
  IcgsBuilder b;
  b.add_agent("solo");
  b.add_agent("other");
  ActionId x = b.action("x"), y = b.action("y");
  for (int i = 0; i < 4; ++i) {
    StateId q = b.add_state("s" + std::to_string(i));
    b.set_available(0, q, {x});
    b.set_available(1, q, {x, y});
  }
  Icgs m = b.build([](StateId q, std::span<const ActionId> j) { return (q + j[1]) % 4; });
  CHECK(StrategyEnumerator(m, Coalition({0})).count() == 1);
  CHECK(validate(m).empty());
}

TEST_CASE("property: enumeration matches the closed-form count and yields distinct valid strategies") {
  Rng rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    Icgs m = amc::testing::random_model(rng, {6, 3, 3, trial % 2 == 0});
    Coalition c = all_agents(m);
    StrategyEnumerator e(m, c);
    REQUIRE(e.count());
    CHECK(*e.count() == closed_form_count(m, c));
    std::set<std::vector<std::size_t>> seen;
    std::uint64_t visited = 0;
    e.for_each([&](const UniformStrategy& s) {
      CHECK(validate_strategy(m, s).empty());
      std::vector<std::size_t> key;
      for (std::size_t i = 0; i < c.size(); ++i)
        for (ClassId k = 0; k < m.num_classes(c.members()[i]); ++k) key.push_back(s.choice(i, k));
      seen.insert(key);
      CHECK(s == e.at(visited));
      ++visited;
      return visited < 2000;
    });
    CHECK(seen.size() == visited);
  }
}

TEST_CASE("property: epistemic classes partition the states") {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    Icgs m = amc::testing::random_model(rng, {8, 3, 3, false});
    for (AgentId a = 0; a < m.num_agents(); ++a) {
      StateSet covered(m.num_states());
      for (ClassId c = 0; c < m.num_classes(a); ++c)
        for (StateId q : m.class_members(a, c)) {
          CHECK_FALSE(covered.contains(q));
          covered.insert(q);
          CHECK(m.class_of(a, q) == c);
          CHECK(m.epistemic_class(a, q).contains(q));
        }
      CHECK(covered.count() == m.num_states());
    }
  }
}

TEST_CASE("property: induced successors are base successors and out is within out_ir") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    Icgs m = amc::testing::random_model(rng, {8, 3, 3, false});
    Coalition c({0});
    UniformStrategy s = StrategyEnumerator(m, c).at(0);
    InducedModel im = induce(m, s);
    for (StateId q = 0; q < m.num_states(); ++q) {
      auto row = m.successor_row(q);
      std::set<StateId> base(row.begin(), row.end());
      for (StateId r : im.successors(q)) CHECK(base.count(r) == 1);
      CHECK(m.coalition_neighborhood(c, q).contains(q));
    }
  }
}

TEST_CASE("validate reports each kind of violation") {
  IcgsBuilder b;
  b.add_agent("a");
  StateId s0 = b.add_state("s0"), s1 = b.add_state("s1"), s2 = b.add_state("s2");
  ActionId x = b.action("x"), y = b.action("y");
  b.set_available(0, s0, {x});
  b.set_available(0, s1, {x, y});
  // s2 has no actions
  std::vector<StateId> g{s0, s1};
  b.add_observation_group(0, g);
  b.add_transition(s0, {x}, s1);
  b.add_transition(s1, {x}, s0);
  b.set_initial(s0);
  Icgs m = b.build();
  std::set<Violation::Kind> kinds;
  for (const auto& v : validate(m)) kinds.insert(v.kind);
  CHECK(kinds.count(Violation::Kind::EmptyActions));
  CHECK(kinds.count(Violation::Kind::NonUniformActions));
  CHECK(kinds.count(Violation::Kind::MissingTransition));
  CHECK(validate(intersection()).empty());
}

TEST_CASE("model text round-trips") {
  std::string text = export_model(intersection());
  CHECK(export_model(parse_model(text)) == text);

  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    Icgs m = amc::testing::random_model(rng, {8, 3, 3, trial % 2 == 1});
    std::string t = export_model(m);
    Icgs back = parse_model(t);
    CHECK(export_model(back) == t);
    CHECK(back.num_states() == m.num_states());
    for (StateId q = 0; q < m.num_states(); ++q)
      for (std::uint64_t j = 0; j < m.joint_action_count(q); ++j) CHECK(back.successor(q, j) == m.successor(q, j));
  }
}

TEST_CASE("pair-declared indistinguishability is closed with a warning") {
  const char* text = R"([agents]
a
[states]
s t u
[actions]
a s = x
a t = x
a u = x
[transitions]
s x = t
t x = u
u x = s
[observation]
a ~ s t
a ~ t u
)";
  Icgs m = parse_model(text);
  CHECK(m.class_of(0, 0) == m.class_of(0, 2));
  CHECK_FALSE(m.warnings().empty());
  CHECK(validate(m).empty());
}

TEST_CASE("model parse errors carry positions") {
  try {
    parse_model("[agents]\na\n[states]\ns\n[transitions]\ns x = nowhere\n");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
  } catch (const Error&) {
  }
  CHECK_THROWS_AS(parse_model("[bogus]\n"), ParseError);
}
