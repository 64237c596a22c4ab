#pragma once

// Explicit-state evaluation of alternation-free AEMC formulas by fixpoint
// iteration over state bitsets.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "amc/cancel.hpp"
#include "amc/formula.hpp"
#include "amc/icgs.hpp"

namespace amc {

// Reading of the one-step operator <<A>> X.
//  Objective: some joint coalition action at q forces the target, whatever
//    the other agents do; indistinguishability is ignored.
//  SubjectiveUniform: one action per (member, epistemic class) forces the
//    target from every state of the coalition's neighborhood of q.
enum class NextVariant { Objective, SubjectiveUniform };

const char* to_string(NextVariant v);
// Accepts "objective", "subjective" and "subjective-uniform".
std::optional<NextVariant> parse_next_variant(std::string_view text);

using Valuation = std::map<std::string, StateSet>;

struct FixpointStats {
  std::size_t sat_count = 0;
  // Applications of the outermost fixpoint functionals that changed the
  // iterate, summed over the outermost fixpoints of the query.
  std::size_t iterations = 0;
  // Every functional application, nested ones included.
  std::size_t applications = 0;
  double wall_time = 0.0;
  // Self-checks over every fixpoint loop: mu chains grew and nu chains
  // shrank weakly, and each loop changed its iterate at most |states| times.
  bool monotone_chains = true;
  bool within_state_bound = true;
};

struct AemcOptions {
  NextVariant variant = NextVariant::SubjectiveUniform;
  // Worker threads for the subjective-uniform one-step operator.
  unsigned jobs = 1;
  Deadline deadline;
};

class AemcChecker {
 public:
  explicit AemcChecker(const Icgs& model, AemcOptions options = {}, AliasMap aliases = {});

  const Icgs& model() const { return *model_; }
  const AemcOptions& options() const { return options_; }

  // States from which the coalition can force the next state into target.
  StateSet pre_coalition(const Coalition& coalition, const StateSet& target) const;

  // [[f]]_V. Rejects formulas that are not monotone or not alternation-free,
  // or whose free variables are not covered by the valuation
  // (InvalidArgumentError).
  std::pair<StateSet, FixpointStats> denotation(const AemcFormula& f, const Valuation& v = {}) const;

  // q in [[f]] for a closed formula.
  std::pair<bool, FixpointStats> check(StateId q, const AemcFormula& f) const;

 private:
  StateSet pre_objective(const Coalition& coalition, const StateSet& target) const;
  StateSet pre_subjective(const Coalition& coalition, const StateSet& target) const;

  const Icgs* model_;
  AemcOptions options_;
  AliasMap aliases_;
};

StateSet pre_coalition(const Icgs& model, const Coalition& coalition, const StateSet& target,
                       NextVariant variant = NextVariant::SubjectiveUniform);
std::pair<StateSet, FixpointStats> denotation(const Icgs& model, const AemcFormula& f, const Valuation& v = {},
                                              NextVariant variant = NextVariant::SubjectiveUniform);
std::pair<bool, FixpointStats> check_aemc(const Icgs& model, StateId q, const AemcFormula& f,
                                          NextVariant variant = NextVariant::SubjectiveUniform);

}  // namespace amc
