#pragma once

// ATL_ir model checking: bottom-up labeling, with a search over memoryless
// uniform strategies for every strategic operator.

#include <cstdint>
#include <optional>
#include <utility>

#include "amc/cancel.hpp"
#include "amc/formula.hpp"
#include "amc/icgs.hpp"
#include "amc/strategy.hpp"

namespace amc {

struct Goal {
  enum class Kind { Next, Always, Until };
  Kind kind;
  StateSet hold;  // phi in X phi, G phi, phi U psi
  StateSet reach; // psi in phi U psi; unused otherwise
};

// Whether every path of out^ir(q, s) satisfies the goal.
bool strategy_holds(const Icgs& model, StateId q, const UniformStrategy& s, const Goal& goal);

struct AtlirOptions {
  Deadline deadline;
};

struct AtlirReport {
  bool truth = false;
  // Partial or complete strategies evaluated by the search, over all
  // strategic subformulas.
  std::uint64_t strategies_examined = 0;
  // For a true formula whose top operator is strategic.
  std::optional<UniformStrategy> witness;
  double wall_time = 0.0;
};

class AtlirChecker {
 public:
  explicit AtlirChecker(const Icgs& model, AtlirOptions options = {}, AliasMap aliases = {});

  const Icgs& model() const { return *model_; }

  AtlirReport check(StateId q, const AtlFormula& f);
  // Satisfying states of f. Adds to the strategies_examined counter.
  StateSet satisfying(const AtlFormula& f);
  // Searches for a strategy of the coalition achieving the goal from q.
  std::optional<UniformStrategy> find_strategy(const Coalition& coalition, StateId q, const Goal& goal);

  std::uint64_t strategies_examined() const { return examined_; }

 private:
  // States from which the coalition could enforce the goal with perfect
  // information. Uniform strategies can do no better, so the search treats
  // every other state as lost.
  StateSet viable_region(const Coalition& coalition, const Goal& goal) const;
  std::optional<UniformStrategy> find_strategy(const Coalition& coalition, StateId q, const Goal& goal,
                                               const StateSet& viable);
  bool holds(StateId q, const AtlFormula& f, std::optional<UniformStrategy>* witness);
  Goal goal_of(const AtlFormula& f);

  const Icgs* model_;
  AtlirOptions options_;
  AliasMap aliases_;
  std::uint64_t examined_ = 0;
};

bool check_atlir(const Icgs& model, StateId q, const AtlFormula& f);

}  // namespace amc
