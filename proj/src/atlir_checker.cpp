#include "amc/atlir_checker.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "amc/aemc_checker.hpp"
#include "amc/error.hpp"

namespace amc {

bool strategy_holds(const Icgs& model, StateId q, const UniformStrategy& s, const Goal& goal) {
  InducedModel induced = induce(model, s);
  StateSet start = s.coalition().empty() ? StateSet(model.num_states())
                                         : model.coalition_neighborhood(s.coalition(), q);
  if (s.coalition().empty()) start.insert(q);

  switch (goal.kind) {
    case Goal::Kind::Next: {
      bool ok = true;
      start.for_each([&](StateId p) {
        for (StateId t : induced.successors(p))
          if (!goal.hold.contains(t)) ok = false;
      });
      return ok;
    }
    case Goal::Kind::Always: return induced.reachable_from(start).subset_of(goal.hold);
    case Goal::Kind::Until: {
      StateSet z = goal.reach;
      bool changed = true;
      while (changed) {
        changed = false;
        for (StateId p = 0; p < model.num_states(); ++p) {
          if (z.contains(p) || !goal.hold.contains(p)) continue;
          auto succ = induced.successors(p);
          if (std::all_of(succ.begin(), succ.end(), [&](StateId t) { return z.contains(t); })) {
            z.insert(p);
            changed = true;
          }
        }
      }
      return start.subset_of(z);
    }
  }
  return false;
}

namespace {

// Depth-first search over partial uniform strategies. Choices are fixed only
// for classes met while exploring the outcome from the start states, so a
// branch is cut as soon as the fixed part already forces a violation.
class StrategySearch {
 public:
  // `viable`: states from which the coalition could enforce the goal even
  // with perfect information; reaching any other state is a violation.
  StrategySearch(const Icgs& m, const Coalition& coalition, const Goal& goal, const StateSet& viable,
                 const Deadline& deadline, std::uint64_t& examined)
      : m_(m), coalition_(coalition), goal_(goal), viable_(viable), deadline_(deadline), examined_(examined) {
    choice_.resize(coalition.size());
    for (std::size_t i = 0; i < coalition.size(); ++i) choice_[i].assign(m.num_classes(coalition.members()[i]), -1);
    visited_.assign(m.num_states(), 0);
    local_.assign(m.num_states(), 0);
  }

  std::optional<UniformStrategy> run(const StateSet& start) {
    start_ = start.to_vector();
    if (!dfs()) return std::nullopt;
    UniformStrategy s(m_, coalition_);
    for (std::size_t i = 0; i < choice_.size(); ++i)
      for (ClassId c = 0; c < choice_[i].size(); ++c)
        if (choice_[i][c] >= 0) s.set_choice(i, c, static_cast<std::size_t>(choice_[i][c]));
    return s;
  }

 private:
  enum class Verdict { Violated, Open, Holds };

  bool dfs() {
    deadline_.poll();
    ++examined_;
    std::size_t member = 0;
    ClassId cls = 0;
    StateId at = 0;
    switch (evaluate(member, cls, at)) {
      case Verdict::Holds: return true;
      case Verdict::Violated: return false;
      case Verdict::Open: break;
    }
    std::size_t radix = m_.available(coalition_.members()[member], at).size();
    for (std::size_t p = 0; p < radix; ++p) {
      choice_[member][cls] = static_cast<int>(p);
      if (dfs()) return true;
    }
    choice_[member][cls] = -1;
    return false;
  }

  // True when every member's choice at q is fixed; otherwise reports the
  // first member with an open class.
  bool determined(StateId q, std::size_t& member, ClassId& cls) const {
    for (std::size_t i = 0; i < coalition_.size(); ++i) {
      ClassId c = m_.class_of(coalition_.members()[i], q);
      if (choice_[i][c] < 0) {
        member = i;
        cls = c;
        return false;
      }
    }
    return true;
  }

  void successors(StateId q, std::vector<StateId>& out) {
    positions_.resize(coalition_.size());
    for (std::size_t i = 0; i < coalition_.size(); ++i)
      positions_[i] = static_cast<std::size_t>(choice_[i][m_.class_of(coalition_.members()[i], q)]);
    out.clear();
    for_each_constrained_successor(m_, q, coalition_, positions_, [&](StateId t) { out.push_back(t); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }

  Verdict evaluate(std::size_t& member, ClassId& cls, StateId& at) {
    bool open = false;
    // branch on the open state met last, so that plays get completed early
    auto note_open = [&](StateId q, std::size_t i, ClassId c) {
      open = true;
      member = i;
      cls = c;
      at = q;
    };
    std::size_t i = 0;
    ClassId c = 0;

    if (goal_.kind == Goal::Kind::Next) {
      for (StateId q : start_) {
        if (!determined(q, i, c)) {
          note_open(q, i, c);
          continue;
        }
        successors(q, succ_);
        for (StateId t : succ_)
          if (!goal_.hold.contains(t)) return Verdict::Violated;
      }
      return open ? Verdict::Open : Verdict::Holds;
    }

    const bool until = goal_.kind == Goal::Kind::Until;
    order_.clear();
    for (StateId q : start_) {
      if (!visited_[q]) {
        visited_[q] = 1;
        order_.push_back(q);
      }
    }
    // expanded states and their successor lists, for the cycle test
    expanded_.clear();
    edges_.clear();
    edge_offsets_.assign(1, 0);
    Verdict verdict = Verdict::Holds;
    for (std::size_t head = 0; head < order_.size(); ++head) {
      StateId q = order_[head];
      if (until && goal_.reach.contains(q)) continue;
      if (!goal_.hold.contains(q) || !viable_.contains(q)) {
        verdict = Verdict::Violated;
        break;
      }
      if (!determined(q, i, c)) {
        note_open(q, i, c);
        continue;
      }
      successors(q, succ_);
      expanded_.push_back(q);
      for (StateId t : succ_) {
        edges_.push_back(t);
        if (!visited_[t]) {
          visited_[t] = 1;
          order_.push_back(t);
        }
      }
      edge_offsets_.push_back(edges_.size());
    }
    if (verdict == Verdict::Holds && until && has_closed_cycle()) verdict = Verdict::Violated;
    for (StateId q : order_) visited_[q] = 0;
    if (verdict == Verdict::Violated) return verdict;
    return open ? Verdict::Open : Verdict::Holds;
  }

  // A cycle through expanded states avoiding the goal is followed forever by
  // some path whatever the open choices become.
  bool has_closed_cycle() {
    const std::size_t n = expanded_.size();
    if (n == 0) return false;
    for (std::size_t j = 0; j < n; ++j) local_[expanded_[j]] = static_cast<std::uint32_t>(j + 1);
    std::vector<std::size_t> outdeg(n, 0);
    std::vector<std::vector<std::uint32_t>> preds(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t e = edge_offsets_[j]; e < edge_offsets_[j + 1]; ++e) {
        std::uint32_t t = local_[edges_[e]];
        if (t == 0) continue;
        ++outdeg[j];
        preds[t - 1].push_back(static_cast<std::uint32_t>(j));
      }
    std::vector<std::uint32_t> queue;
    for (std::size_t j = 0; j < n; ++j)
      if (outdeg[j] == 0) queue.push_back(static_cast<std::uint32_t>(j));
    std::size_t removed = 0;
    while (!queue.empty()) {
      std::uint32_t j = queue.back();
      queue.pop_back();
      ++removed;
      for (std::uint32_t p : preds[j])
        if (--outdeg[p] == 0) queue.push_back(p);
    }
    for (StateId q : expanded_) local_[q] = 0;
    return removed < n;
  }

  const Icgs& m_;
  const Coalition& coalition_;
  const Goal& goal_;
  const StateSet& viable_;
  const Deadline& deadline_;
  std::uint64_t& examined_;
  std::vector<std::vector<int>> choice_;  // [member][class], -1 when open
  std::vector<StateId> start_;
  std::vector<char> visited_;
  std::vector<std::uint32_t> local_;
  std::vector<StateId> order_, succ_, expanded_, edges_;
  std::vector<std::size_t> edge_offsets_, positions_;
};

}  // namespace

AtlirChecker::AtlirChecker(const Icgs& model, AtlirOptions options, AliasMap aliases)
    : model_(&model), options_(options), aliases_(std::move(aliases)) {}

StateSet AtlirChecker::viable_region(const Coalition& coalition, const Goal& goal) const {
  AemcOptions o;
  o.variant = NextVariant::Objective;
  o.deadline = options_.deadline;
  AemcChecker pre(*model_, o);
  const std::size_t n = model_->num_states();
  switch (goal.kind) {
    case Goal::Kind::Next: return StateSet::full(n);
    case Goal::Kind::Always: {
      StateSet z = StateSet::full(n);
      while (true) {
        StateSet next = goal.hold & pre.pre_coalition(coalition, z);
        if (next == z) return z;
        z = std::move(next);
      }
    }
    case Goal::Kind::Until: {
      StateSet z = goal.reach;
      while (true) {
        StateSet next = goal.reach | (goal.hold & pre.pre_coalition(coalition, z));
        if (next == z) return z;
        z = std::move(next);
      }
    }
  }
  return StateSet::full(n);
}

std::optional<UniformStrategy> AtlirChecker::find_strategy(const Coalition& coalition, StateId q,
                                                           const Goal& goal) {
  return find_strategy(coalition, q, goal, viable_region(coalition, goal));
}

std::optional<UniformStrategy> AtlirChecker::find_strategy(const Coalition& coalition, StateId q, const Goal& goal,
                                                           const StateSet& viable) {
  if (!viable.contains(q)) return std::nullopt;
  StateSet start(model_->num_states());
  if (coalition.empty())
    start.insert(q);
  else
    start = model_->coalition_neighborhood(coalition, q);
  StrategySearch search(*model_, coalition, goal, viable, options_.deadline, examined_);
  return search.run(start);
}

Goal AtlirChecker::goal_of(const AtlFormula& f) {
  const std::size_t n = model_->num_states();
  switch (f.kind()) {
    case AtlFormula::Kind::Next: return {Goal::Kind::Next, satisfying(f.operand(0)), StateSet(n)};
    case AtlFormula::Kind::Always: return {Goal::Kind::Always, satisfying(f.operand(0)), StateSet(n)};
    case AtlFormula::Kind::Until: {
      StateSet hold = satisfying(f.operand(0));
      return {Goal::Kind::Until, std::move(hold), satisfying(f.operand(1))};
    }
    default: throw InvalidArgumentError("not a strategic formula");
  }
}

StateSet AtlirChecker::satisfying(const AtlFormula& f) {
  const Icgs& m = *model_;
  const std::size_t n = m.num_states();
  switch (f.kind()) {
    case AtlFormula::Kind::True: return StateSet::full(n);
    case AtlFormula::Kind::Prop: {
      auto p = m.find_proposition(f.name());
      if (!p) throw UnknownNameError("unknown proposition '" + f.name() + "'");
      return m.labeling(*p);
    }
    case AtlFormula::Kind::Not: return satisfying(f.operand(0)).complement();
    case AtlFormula::Kind::And: {
      StateSet a = satisfying(f.operand(0));
      return a &= satisfying(f.operand(1));
    }
    default: break;
  }
  Coalition coalition = resolve_coalition(m, f.coalition(), aliases_);
  Goal goal = goal_of(f);
  StateSet viable = viable_region(coalition, goal);
  // States with the same classes for every member share the neighborhood,
  // hence the answer.
  std::map<std::vector<ClassId>, bool> cache;
  StateSet out(n);
  std::vector<ClassId> key;
  for (StateId q = 0; q < n; ++q) {
    key.clear();
    if (coalition.empty())
      key.push_back(q);
    else
      for (AgentId a : coalition.members()) key.push_back(m.class_of(a, q));
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, find_strategy(coalition, q, goal, viable).has_value()).first;
    if (it->second) out.insert(q);
  }
  return out;
}

bool AtlirChecker::holds(StateId q, const AtlFormula& f, std::optional<UniformStrategy>* witness) {
  switch (f.kind()) {
    case AtlFormula::Kind::True: return true;
    case AtlFormula::Kind::Prop: {
      auto p = model_->find_proposition(f.name());
      if (!p) throw UnknownNameError("unknown proposition '" + f.name() + "'");
      return model_->labeling(*p).contains(q);
    }
    case AtlFormula::Kind::Not: return !holds(q, f.operand(0), nullptr);
    case AtlFormula::Kind::And: return holds(q, f.operand(0), nullptr) && holds(q, f.operand(1), nullptr);
    default: break;
  }
  Coalition coalition = resolve_coalition(*model_, f.coalition(), aliases_);
  Goal goal = goal_of(f);
  auto s = find_strategy(coalition, q, goal);
  if (witness) *witness = s;
  return s.has_value();
}

AtlirReport AtlirChecker::check(StateId q, const AtlFormula& f) {
  if (q >= model_->num_states()) throw UnknownNameError("unknown state index " + std::to_string(q));
  AtlirReport r;
  auto start = std::chrono::steady_clock::now();
  std::uint64_t before = examined_;
  r.truth = holds(q, f, &r.witness);
  if (!r.truth) r.witness.reset();
  r.strategies_examined = examined_ - before;
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

bool check_atlir(const Icgs& model, StateId q, const AtlFormula& f) {
  return AtlirChecker(model).check(q, f).truth;
}

}  // namespace amc
