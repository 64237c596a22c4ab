#include "amc/strategy.hpp"

#include <algorithm>

#include "amc/error.hpp"

namespace amc {

UniformStrategy::UniformStrategy(const Icgs& model, Coalition coalition)
    : coalition_(std::move(coalition)) {
  for (AgentId a : coalition_.members()) choice_.emplace_back(model.num_classes(a), 0);
}

ActionId UniformStrategy::action(const Icgs& model, std::size_t member, StateId q) const {
  AgentId a = coalition_.members()[member];
  return model.available(a, q)[choice_[member][model.class_of(a, q)]];
}

std::string UniformStrategy::describe(const Icgs& model) const {
  std::string out;
  for (std::size_t m = 0; m < coalition_.size(); ++m) {
    AgentId a = coalition_.members()[m];
    if (m) out += "; ";
    out += model.agent_name(a) + ":";
    for (ClassId c = 0; c < model.num_classes(a); ++c) {
      auto members = model.class_members(a, c);
      out += " {";
      for (std::size_t i = 0; i < members.size(); ++i) out += (i ? "," : "") + model.state_name(members[i]);
      out += "}->" + model.action_name(model.available(a, members[0])[choice_[m][c]]);
    }
  }
  return out;
}

std::vector<std::string> validate_strategy(const Icgs& model, const UniformStrategy& s) {
  std::vector<std::string> problems;
  for (std::size_t m = 0; m < s.coalition().size(); ++m) {
    AgentId a = s.coalition().members()[m];
    if (a >= model.num_agents()) {
      problems.push_back("strategy member is not an agent of the model");
      continue;
    }
    for (ClassId c = 0; c < model.num_classes(a); ++c)
      for (StateId q : model.class_members(a, c))
        if (s.choice(m, c) >= model.available(a, q).size())
          problems.push_back("choice of agent '" + model.agent_name(a) + "' is not available at '" +
                             model.state_name(q) + "'");
  }
  return problems;
}

InducedModel::InducedModel(const Icgs& model, const UniformStrategy& strategy)
    : base_(&model), strategy_(strategy) {
  const auto& coal = strategy.coalition();
  std::vector<std::size_t> fixed(coal.size());
  offsets_.reserve(model.num_states() + 1);
  offsets_.push_back(0);
  std::vector<StateId> buf;
  for (StateId q = 0; q < model.num_states(); ++q) {
    for (std::size_t m = 0; m < coal.size(); ++m)
      fixed[m] = strategy.choice(m, model.class_of(coal.members()[m], q));
    buf.clear();
    for_each_constrained_successor(model, q, coal, fixed, [&](StateId t) { buf.push_back(t); });
    std::sort(buf.begin(), buf.end());
    buf.erase(std::unique(buf.begin(), buf.end()), buf.end());
    succ_.insert(succ_.end(), buf.begin(), buf.end());
    offsets_.push_back(succ_.size());
  }
}

StateSet InducedModel::reachable_from(const StateSet& sources) const {
  StateSet seen = sources;
  std::vector<StateId> stack = sources.to_vector();
  while (!stack.empty()) {
    StateId q = stack.back();
    stack.pop_back();
    for (StateId t : successors(q))
      if (t != kNoState && !seen.contains(t)) {
        seen.insert(t);
        stack.push_back(t);
      }
  }
  return seen;
}

InducedModel induce(const Icgs& model, const UniformStrategy& strategy) {
  auto problems = validate_strategy(model, strategy);
  if (!problems.empty()) throw InvalidArgumentError("invalid strategy: " + problems.front());
  return InducedModel(model, strategy);
}

StrategyEnumerator::StrategyEnumerator(const Icgs& model, Coalition coalition)
    : model_(&model), coalition_(std::move(coalition)) {
  std::uint64_t total = 1;
  bool overflow = false;
  for (std::size_t m = 0; m < coalition_.size(); ++m) {
    AgentId a = coalition_.members()[m];
    for (ClassId c = 0; c < model.num_classes(a); ++c) {
      std::size_t r = model.available(a, model.class_members(a, c)[0]).size();
      slots_.emplace_back(m, c);
      radix_.push_back(r);
      if (r == 0) {
        total = 0;
      } else if (!overflow && total > UINT64_MAX / r) {
        overflow = true;
      } else if (!overflow) {
        total *= r;
      }
    }
  }
  if (total == 0) overflow = false;
  if (!overflow) count_ = total;
}

UniformStrategy StrategyEnumerator::at(std::uint64_t index) const {
  UniformStrategy s(*model_, coalition_);
  for (std::size_t i = slots_.size(); i-- > 0;) {
    s.set_choice(slots_[i].first, slots_[i].second, static_cast<std::size_t>(index % radix_[i]));
    index /= radix_[i];
  }
  return s;
}

bool StrategyEnumerator::for_each(const std::function<bool(const UniformStrategy&)>& f,
                                  std::uint64_t begin, std::optional<std::uint64_t> end) const {
  if (count_ && *count_ == 0) return true;
  std::uint64_t stop = end ? *end : (count_ ? *count_ : UINT64_MAX);
  if (count_) stop = std::min(stop, *count_);
  if (begin >= stop) return true;
  UniformStrategy s = at(begin);
  std::vector<std::size_t> digits(slots_.size());
  for (std::size_t i = 0; i < slots_.size(); ++i) digits[i] = s.choice(slots_[i].first, slots_[i].second);
  for (std::uint64_t idx = begin; idx < stop; ++idx) {
    if (!f(s)) return false;
    std::size_t i = slots_.size();
    while (i-- > 0) {
      if (++digits[i] < radix_[i]) {
        s.set_choice(slots_[i].first, slots_[i].second, digits[i]);
        break;
      }
      digits[i] = 0;
      s.set_choice(slots_[i].first, slots_[i].second, 0);
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return true;
}

}  // namespace amc
