#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amc/icgs.hpp"

namespace amc {

// Memoryless uniform collective strategy. A choice is stored per
// (member, epistemic class), so uniformity holds by construction; the
// remaining invariant (choice available in the class) is checked by
// validate_strategy.
class UniformStrategy {
 public:
  UniformStrategy() = default;
  // All choices start at the first available action of each class.
  UniformStrategy(const Icgs& model, Coalition coalition);

  const Coalition& coalition() const { return coalition_; }

  // Position of the member's action in d_a(q) for any q of the class.
  std::size_t choice(std::size_t member, ClassId c) const { return choice_[member][c]; }
  void set_choice(std::size_t member, ClassId c, std::size_t position) { choice_[member][c] = position; }

  ActionId action(const Icgs& model, std::size_t member, StateId q) const;

  // Per-class action table, e.g. "1: {q_oo,q_oi}->out {q_io,q_ii}->out {q_c}->in".
  std::string describe(const Icgs& model) const;

  friend bool operator==(const UniformStrategy&, const UniformStrategy&) = default;

 private:
  Coalition coalition_;
  std::vector<std::vector<std::size_t>> choice_;  // [member][class] -> position
};

// Empty when the strategy is usable on the model; otherwise one message per problem.
std::vector<std::string> validate_strategy(const Icgs& model, const UniformStrategy& s);

// The successor relation of the model when the coalition follows a strategy and
// every other agent acts freely.
class InducedModel {
 public:
  InducedModel(const Icgs& model, const UniformStrategy& strategy);

  const Icgs& base() const { return *base_; }
  const UniformStrategy& strategy() const { return strategy_; }

  // Sorted, duplicate-free successors.
  std::span<const StateId> successors(StateId q) const {
    return {succ_.data() + offsets_[q], offsets_[q + 1] - offsets_[q]};
  }
  // Every state reachable (in zero or more steps) from the sources.
  StateSet reachable_from(const StateSet& sources) const;

 private:
  const Icgs* base_;
  UniformStrategy strategy_;
  std::vector<std::size_t> offsets_;
  std::vector<StateId> succ_;
};

// Throws InvalidArgumentError when the strategy is not valid for the model.
InducedModel induce(const Icgs& model, const UniformStrategy& strategy);

// Calls f(q') for every successor o(q, alpha) where the members of the
// coalition play the given positions (indexed by member) and all other agents
// range over their available actions. Successors may repeat.
template <class F>
void for_each_constrained_successor(const Icgs& model, StateId q, const Coalition& coalition,
                                    std::span<const std::size_t> member_positions, F&& f) {
  const std::size_t k = model.num_agents();
  std::size_t pos[64];
  std::size_t radix[64];
  bool fixed[64];
  for (AgentId a = 0; a < k; ++a) {
    radix[a] = model.available(a, q).size();
    int m = coalition.index_of(a);
    fixed[a] = m >= 0;
    pos[a] = fixed[a] ? member_positions[static_cast<std::size_t>(m)] : 0;
  }
  auto row = model.successor_row(q);
  if (row.empty()) return;
  while (true) {
    std::uint64_t idx = 0;
    for (AgentId a = 0; a < k; ++a) idx = idx * radix[a] + pos[a];
    f(row[idx]);
    std::size_t i = k;
    while (i-- > 0) {
      if (fixed[i]) continue;
      if (++pos[i] < radix[i]) break;
      pos[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) return;
  }
}

// Every uniform memoryless strategy of a coalition, in canonical order: the
// strategy with index i assigns choices in mixed radix over (member, class)
// pairs, the last class of the last member varying fastest.
class StrategyEnumerator {
 public:
  StrategyEnumerator(const Icgs& model, Coalition coalition);

  // Exact number of strategies, or nullopt when it exceeds 2^64 - 1.
  std::optional<std::uint64_t> count() const { return count_; }
  UniformStrategy at(std::uint64_t index) const;

  // Visits strategies with index in [begin, end) until f returns false.
  // Returns false if stopped early.
  bool for_each(const std::function<bool(const UniformStrategy&)>& f, std::uint64_t begin = 0,
                std::optional<std::uint64_t> end = std::nullopt) const;

 private:
  const Icgs* model_;
  Coalition coalition_;
  std::vector<std::pair<std::size_t, ClassId>> slots_;  // (member, class)
  std::vector<std::size_t> radix_;
  std::optional<std::uint64_t> count_;
};

}  // namespace amc
