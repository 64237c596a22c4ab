#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "amc/benchmarks.hpp"
#include "amc/error.hpp"
#include "amc/formula.hpp"
#include "amc/parser.hpp"
#include "amc/translate.hpp"
#include "support.hpp"

using namespace amc;
using amc::testing::Rng;

namespace {

using Atl = AtlFormula;
using Aemc = AemcFormula;

Atl p(const char* n) { return Atl::prop(n); }
Aemc ap(const char* n) { return Aemc::prop(n); }

}  // namespace

TEST_CASE("parse the intersection formulas") {
  CHECK(parse_atl("<<1>> G !collision") == Atl::always({"1"}, Atl::negation(p("collision"))));
  CHECK(parse_atl("<<1,2>> F collision") == Atl::until({"1", "2"}, Atl::truth(), p("collision")));
}

TEST_CASE("parse a fixpoint formula") {
  Aemc f = parse_aemc("mu Z . (tianjiwins | <<tianji>> X Z)");
  CHECK(f == Aemc::mu("Z", Aemc::disjunction(ap("tianjiwins"), Aemc::next({"tianji"}, Aemc::var("Z")))));
  CHECK(is_closed(f));
}

TEST_CASE("syntax errors point at the offending column") {
  try {
    parse_atl("<<1,2 p U q");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 7);
  }
  CHECK_THROWS_AS(parse_atl("p U q"), ParseError);
  CHECK_THROWS_AS(parse_atl("<<A>> Y p"), ParseError);
  CHECK_THROWS_AS(parse_aemc("mu Z . (p | <<A>> X Y)"), ParseError);
  CHECK_THROWS_AS(parse_aemc("<<A>> G p"), ParseError);
  CHECK_THROWS_AS(parse_atl("nu Z . p"), ParseError);
  CHECK_THROWS_AS(parse_atl("(p & q"), ParseError);
  try {
    parse_atl("p &\n  & q");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
}

TEST_CASE("precedence: not, and, or, until") {
  CHECK(parse_atl("!p & q | r") == Atl::disjunction(Atl::conjunction(Atl::negation(p("p")), p("q")), p("r")));
  CHECK(parse_atl("p | q & r") == Atl::disjunction(p("p"), Atl::conjunction(p("q"), p("r"))));
  CHECK(parse_atl("<<A>> p | q U r") == Atl::until({"A"}, Atl::disjunction(p("p"), p("q")), p("r")));
  CHECK(parse_atl("<<A>> X p & q") == Atl::next({"A"}, Atl::conjunction(p("p"), p("q"))));
  CHECK(parse_atl("(<<A>> X p) & q") == Atl::conjunction(Atl::next({"A"}, p("p")), p("q")));
  CHECK(parse_atl("true") == Atl::truth());
  CHECK(parse_atl("false") == Atl::negation(Atl::truth()));
  CHECK(parse_atl("<<>> G p") == Atl::always({}, p("p")));
}

TEST_CASE("property: printing and parsing round-trip") {
  Rng rng(21);
  for (int i = 0; i < 500; ++i) {
    Atl f = amc::testing::random_atl(rng, 3, 4);
    std::string text = to_string(f);
    CAPTURE(text);
    CHECK(parse_atl(text) == f);
    CHECK(to_string(parse_atl(text)) == text);

    Aemc g = amc::testing::random_aemc(rng, 3, 4);
    std::string gt = to_string(g);
    CAPTURE(gt);
    CHECK(parse_aemc(gt) == g);
  }
}

TEST_CASE("translation clauses") {
  CHECK(to_string(translate_aemc(parse_atl("<<A>> G p"))) == "nu Z . (p & <<A>> X Z)");
  CHECK(translate_aemc(parse_atl("<<c12>> F castle3defeated")) ==
        parse_aemc("mu Z . (castle3defeated | <<c12>> X Z)"));
  CHECK(translate_aemc(parse_atl("<<tianji>> G <<tianji>> X tianjiwonraces")) ==
        parse_aemc("nu Z . ((<<tianji>> X tianjiwonraces) & <<tianji>> X Z)"));
  CHECK(translate_aemc(parse_atl("<<A,B>> p U q")) == parse_aemc("mu Z . (q | p & <<A,B>> X Z)"));
  CHECK(translate_aemc(p("p")) == ap("p"));
  CHECK(translate_aemc(parse_atl("!(p & <<A>> X q)")) == parse_aemc("!(p & <<A>> X q)"));
  // Fresh variables in pre-order.
  CHECK(to_string(translate_aemc(parse_atl("<<A>> G <<B>> F p"))) ==
        "nu Z . ((mu Z1 . (p | <<B>> X Z1)) & <<A>> X Z)");
}

TEST_CASE("alternation freeness") {
  CHECK(check_alternation_free(parse_aemc("mu Z . (p | <<A>> X Z)")));
  CHECK_FALSE(check_alternation_free(parse_aemc("nu Z . mu Y . (<<A>> X Z | <<A>> X Y)")));
  CHECK(check_alternation_free(parse_aemc("nu Z . ((mu Y . (p | <<A>> X Y)) & <<A>> X Z)")));
  // The binder reaches as far right as possible, so Z ends up inside the mu.
  CHECK_FALSE(check_alternation_free(parse_aemc("nu Z . (mu Y . (p | <<A>> X Y) & <<A>> X Z)")));
  CHECK(check_alternation_free(parse_aemc("mu Z . mu Y . (<<A>> X Z | <<A>> X Y)")));
}

TEST_CASE("monotonicity") {
  CHECK(is_monotone(parse_aemc("mu Z . (p | <<A>> X Z)")));
  CHECK_FALSE(is_monotone(parse_aemc("mu Z . (p | !<<A>> X Z)")));
  CHECK(is_monotone(parse_aemc("mu Z . (p | !!<<A>> X Z)")));
}

TEST_CASE("property: translations are closed, monotone, alternation free and keep coalitions") {
  Rng rng(22);
  auto sorted = [](std::vector<std::vector<std::string>> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  for (int i = 0; i < 500; ++i) {
    Atl f = amc::testing::random_atl(rng, 3, 4);
    Aemc t = translate_aemc(f);
    CAPTURE(to_string(f));
    CHECK(is_closed(t));
    CHECK(is_monotone(t));
    CHECK(check_alternation_free(t));
    CHECK(sorted(coalitions_of(f)) == sorted(coalitions_of(t)));
  }
}

TEST_CASE("benchmark translations are well formed") {
  std::vector<BenchmarkInstance> all;
  all.push_back(gen_intersection());
  all.push_back(gen_castles(1, 1, 1));
  all.push_back(gen_tianji(3, false));
  for (const auto& inst : all)
    for (const auto& [name, f] : inst.aemc) {
      CAPTURE(name);
      CHECK(is_closed(f));
      CHECK(is_monotone(f));
      CHECK(check_alternation_free(f));
    }
}

TEST_CASE("free variables") {
  Aemc f = Aemc::conjunction(Aemc::var("Z"), Aemc::mu("Y", Aemc::disjunction(Aemc::var("Y"), Aemc::var("X"))));
  CHECK(free_variables(f) == std::set<std::string>{"X", "Z"});
  CHECK_FALSE(is_closed(f));
  CHECK(depth(parse_atl("<<A>> G (p & <<B>> X q)")) == 4);
}
