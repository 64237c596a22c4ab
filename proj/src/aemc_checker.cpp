#include "amc/aemc_checker.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <thread>

#include "amc/error.hpp"

namespace amc {

const char* to_string(NextVariant v) {
  return v == NextVariant::Objective ? "objective" : "subjective";
}

std::optional<NextVariant> parse_next_variant(std::string_view text) {
  if (text == "objective") return NextVariant::Objective;
  if (text == "subjective" || text == "subjective-uniform") return NextVariant::SubjectiveUniform;
  return std::nullopt;
}

namespace {

// Marks in `bad` every joint coalition action at q (mixed radix over the
// members' positions, first member most significant) for which some
// completion by the other agents leaves the target.
void mark_bad_actions(const Icgs& m, StateId q, const Coalition& coalition, const StateSet& target,
                      std::vector<char>& bad) {
  const std::size_t k = m.num_agents();
  std::size_t radix[kMaxAgents], pos[kMaxAgents], stride[kMaxAgents];
  std::size_t cjoint = 1;
  for (std::size_t i = coalition.size(); i-- > 0;) {
    stride[i] = cjoint;
    cjoint *= m.available(coalition.members()[i], q).size();
  }
  bad.assign(cjoint, 0);
  std::size_t member_stride[kMaxAgents];
  for (AgentId a = 0; a < k; ++a) {
    radix[a] = m.available(a, q).size();
    pos[a] = 0;
    int idx = coalition.index_of(a);
    member_stride[a] = idx >= 0 ? stride[idx] : 0;
  }
  auto row = m.successor_row(q);
  std::size_t cidx = 0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    StateId t = row[j];
    if (t == kNoState || !target.contains(t)) bad[cidx] = 1;
    // odometer over all agents, last agent fastest; keep cidx in sync
    std::size_t i = k;
    while (i-- > 0) {
      cidx += member_stride[i];
      if (++pos[i] < radix[i]) break;
      cidx -= member_stride[i] * radix[i];
      pos[i] = 0;
    }
  }
}

// One group of states sharing the tuple of coalition members' classes.
// All of them have the same coalition neighborhood and the same joint
// coalition action alphabet.
struct ClassKey {
  std::vector<ClassId> classes;     // per member
  std::vector<std::size_t> radix;   // per member: number of actions
  std::vector<char> allowed;        // per joint coalition action
  StateId representative;
};

// Finite-domain search for one action per (member, class) such that the
// joint action at every key of the neighborhood is allowed.
class UniformChoiceSearch {
 public:
  UniformChoiceSearch(const std::vector<ClassKey>& keys,
                      const std::vector<std::map<ClassId, std::vector<std::uint32_t>>>& keys_of_class,
                      const Deadline& deadline)
      : keys_(keys), keys_of_class_(keys_of_class), deadline_(deadline) {}

  bool solvable(std::uint32_t key_id) {
    vars_.clear();
    var_index_.clear();
    domain_.clear();
    constraints_.clear();
    const ClassKey& key = keys_[key_id];
    const std::size_t members = key.classes.size();
    for (std::size_t m = 0; m < members; ++m) var_for(m, key.classes[m], key.radix[m]);

    std::vector<std::uint32_t> related;
    for (std::size_t m = 0; m < members; ++m) {
      const auto& ks = keys_of_class_[m].at(key.classes[m]);
      related.insert(related.end(), ks.begin(), ks.end());
    }
    std::sort(related.begin(), related.end());
    related.erase(std::unique(related.begin(), related.end()), related.end());

    for (std::uint32_t kid : related) {
      const ClassKey& other = keys_[kid];
      Constraint c{std::vector<std::size_t>(members), std::vector<std::size_t>(members), &other.allowed, 0};
      std::size_t stride = 1;
      for (std::size_t m = members; m-- > 0;) {
        c.vars[m] = var_for(m, other.classes[m], other.radix[m]);
        c.stride[m] = stride;
        stride *= other.radix[m];
      }
      if (std::find(other.allowed.begin(), other.allowed.end(), 1) == other.allowed.end()) return false;
      c.depth = *std::max_element(c.vars.begin(), c.vars.end());
      constraints_.push_back(std::move(c));
    }
    buckets_.assign(vars_.size(), {});
    for (std::size_t i = 0; i < constraints_.size(); ++i) buckets_[constraints_[i].depth].push_back(i);
    value_.assign(vars_.size(), 0);
    return assign(0);
  }

 private:
  struct Constraint {
    std::vector<std::size_t> vars;    // per member
    std::vector<std::size_t> stride;  // per member
    const std::vector<char>* allowed;
    std::size_t depth;
  };

  std::size_t var_for(std::size_t member, ClassId c, std::size_t radix) {
    auto [it, inserted] = var_index_.emplace(std::make_pair(member, c), vars_.size());
    if (inserted) {
      vars_.emplace_back(member, c);
      domain_.push_back(radix);
    }
    return it->second;
  }

  bool assign(std::size_t depth) {
    if (depth == vars_.size()) return true;
    deadline_.poll();
    for (std::size_t v = 0; v < domain_[depth]; ++v) {
      value_[depth] = v;
      bool ok = true;
      for (std::size_t ci : buckets_[depth]) {
        const Constraint& c = constraints_[ci];
        std::size_t idx = 0;
        for (std::size_t m = 0; m < c.vars.size(); ++m) idx += value_[c.vars[m]] * c.stride[m];
        if (!(*c.allowed)[idx]) {
          ok = false;
          break;
        }
      }
      if (ok && assign(depth + 1)) return true;
    }
    return false;
  }

  const std::vector<ClassKey>& keys_;
  const std::vector<std::map<ClassId, std::vector<std::uint32_t>>>& keys_of_class_;
  Deadline deadline_;
  std::vector<std::pair<std::size_t, ClassId>> vars_;
  std::map<std::pair<std::size_t, ClassId>, std::size_t> var_index_;
  std::vector<std::size_t> domain_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<std::size_t>> buckets_;
  std::vector<std::size_t> value_;
};

}  // namespace

AemcChecker::AemcChecker(const Icgs& model, AemcOptions options, AliasMap aliases)
    : model_(&model), options_(options), aliases_(std::move(aliases)) {
  if (options_.jobs == 0) options_.jobs = 1;
}

StateSet AemcChecker::pre_coalition(const Coalition& coalition, const StateSet& target) const {
  if (target.universe() != model_->num_states())
    throw InvalidArgumentError("target set does not match the model's state space");
  if (options_.variant == NextVariant::Objective || coalition.empty())
    return pre_objective(coalition, target);
  return pre_subjective(coalition, target);
}

StateSet AemcChecker::pre_objective(const Coalition& coalition, const StateSet& target) const {
  const Icgs& m = *model_;
  StateSet out(m.num_states());
  std::vector<char> bad;
  for (StateId q = 0; q < m.num_states(); ++q) {
    options_.deadline.poll();
    if (m.joint_action_count(q) == 0) continue;
    mark_bad_actions(m, q, coalition, target, bad);
    if (std::find(bad.begin(), bad.end(), 0) != bad.end()) out.insert(q);
  }
  return out;
}

StateSet AemcChecker::pre_subjective(const Coalition& coalition, const StateSet& target) const {
  const Icgs& m = *model_;
  const std::size_t members = coalition.size();
  std::vector<ClassKey> keys;
  std::map<std::vector<ClassId>, std::uint32_t> key_index;
  std::vector<std::uint32_t> key_of(m.num_states());
  std::vector<char> bad;
  std::vector<ClassId> cls(members);

  for (StateId q = 0; q < m.num_states(); ++q) {
    options_.deadline.poll();
    for (std::size_t i = 0; i < members; ++i) cls[i] = m.class_of(coalition.members()[i], q);
    auto [it, inserted] = key_index.emplace(cls, static_cast<std::uint32_t>(keys.size()));
    if (inserted) {
      ClassKey k{cls, {}, {}, q};
      std::size_t total = 1;
      for (AgentId a : coalition.members()) {
        k.radix.push_back(m.available(a, q).size());
        total *= k.radix.back();
      }
      k.allowed.assign(total, 1);
      keys.push_back(std::move(k));
    }
    key_of[q] = it->second;
    ClassKey& k = keys[it->second];
    if (m.joint_action_count(q) == 0) {
      std::fill(k.allowed.begin(), k.allowed.end(), 0);
      continue;
    }
    mark_bad_actions(m, q, coalition, target, bad);
    for (std::size_t c = 0; c < bad.size() && c < k.allowed.size(); ++c)
      if (bad[c]) k.allowed[c] = 0;
  }

  std::vector<std::map<ClassId, std::vector<std::uint32_t>>> keys_of_class(members);
  for (std::uint32_t kid = 0; kid < keys.size(); ++kid)
    for (std::size_t i = 0; i < members; ++i) keys_of_class[i][keys[kid].classes[i]].push_back(kid);

  std::vector<char> solvable(keys.size(), 0);
  auto solve_range = [&](std::size_t begin, std::size_t end) {
    UniformChoiceSearch search(keys, keys_of_class, options_.deadline);
    for (std::size_t kid = begin; kid < end; ++kid)
      solvable[kid] = search.solvable(static_cast<std::uint32_t>(kid)) ? 1 : 0;
  };
  unsigned jobs = std::min<std::size_t>(options_.jobs, std::max<std::size_t>(1, keys.size()));
  if (jobs <= 1) {
    solve_range(0, keys.size());
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    std::size_t chunk = (keys.size() + jobs - 1) / jobs;
    for (unsigned t = 0; t < jobs; ++t)
      pool.emplace_back([&, t] {
        try {
          solve_range(std::min(keys.size(), t * chunk), std::min(keys.size(), (t + 1) * chunk));
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  StateSet out(m.num_states());
  for (StateId q = 0; q < m.num_states(); ++q)
    if (solvable[key_of[q]]) out.insert(q);
  return out;
}

namespace {

class Evaluator {
 public:
  Evaluator(const AemcChecker& checker, const AliasMap& aliases, Valuation env, FixpointStats& stats,
            const Deadline& deadline)
      : checker_(checker), aliases_(aliases), env_(std::move(env)), stats_(stats), deadline_(deadline) {}

  StateSet eval(const AemcFormula& f) {
    using K = AemcFormula::Kind;
    const Icgs& m = checker_.model();
    switch (f.kind()) {
      case K::True: return StateSet::full(m.num_states());
      case K::Prop: {
        auto p = m.find_proposition(f.name());
        if (!p) throw UnknownNameError("unknown proposition '" + f.name() + "'");
        return m.labeling(*p);
      }
      case K::Var: {
        auto it = env_.find(f.name());
        if (it == env_.end()) throw InvalidArgumentError("variable '" + f.name() + "' has no value");
        return it->second;
      }
      case K::Not: return eval(f.operand(0)).complement();
      case K::And: {
        StateSet a = eval(f.operand(0));
        return a &= eval(f.operand(1));
      }
      case K::Next: return checker_.pre_coalition(coalition(f), eval(f.operand(0)));
      case K::Mu:
      case K::Nu: return fixpoint(f);
    }
    return StateSet(m.num_states());
  }

 private:
  const Coalition& coalition(const AemcFormula& f) {
    auto it = coalitions_.find(f.id());
    if (it == coalitions_.end())
      it = coalitions_.emplace(f.id(), resolve_coalition(checker_.model(), f.coalition(), aliases_)).first;
    return it->second;
  }

  StateSet fixpoint(const AemcFormula& f) {
    const bool least = f.kind() == AemcFormula::Kind::Mu;
    const std::size_t n = checker_.model().num_states();
    std::optional<StateSet> shadowed;
    if (auto it = env_.find(f.name()); it != env_.end()) shadowed = it->second;

    StateSet current = least ? StateSet(n) : StateSet::full(n);
    std::size_t changes = 0;
    ++depth_;
    while (true) {
      deadline_.poll();
      env_[f.name()] = current;
      StateSet next = eval(f.operand(0));
      ++stats_.applications;
      if (next == current) break;
      if (least ? !current.subset_of(next) : !next.subset_of(current)) stats_.monotone_chains = false;
      ++changes;
      current = std::move(next);
      if (changes > n) {
        stats_.within_state_bound = false;
        break;
      }
    }
    --depth_;
    if (depth_ == 0) stats_.iterations += changes;
    if (shadowed)
      env_[f.name()] = *shadowed;
    else
      env_.erase(f.name());
    return current;
  }

  const AemcChecker& checker_;
  const AliasMap& aliases_;
  Valuation env_;
  FixpointStats& stats_;
  const Deadline& deadline_;
  std::map<const void*, Coalition> coalitions_;
  int depth_ = 0;
};

}  // namespace

std::pair<StateSet, FixpointStats> AemcChecker::denotation(const AemcFormula& f, const Valuation& v) const {
  if (!is_monotone(f)) throw InvalidArgumentError("formula is not monotone: " + to_string(f));
  if (!check_alternation_free(f)) throw InvalidArgumentError("formula is not alternation-free: " + to_string(f));
  for (const auto& z : free_variables(f))
    if (!v.count(z)) throw InvalidArgumentError("free variable '" + z + "' is not covered by the valuation");
  for (const auto& [z, set] : v)
    if (set.universe() != model_->num_states())
      throw InvalidArgumentError("valuation of '" + z + "' does not match the model's state space");

  FixpointStats stats;
  auto start = std::chrono::steady_clock::now();
  Evaluator ev(*this, aliases_, v, stats, options_.deadline);
  StateSet result = ev.eval(f);
  stats.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  stats.sat_count = result.count();
  return {std::move(result), stats};
}

std::pair<bool, FixpointStats> AemcChecker::check(StateId q, const AemcFormula& f) const {
  if (q >= model_->num_states()) throw UnknownNameError("unknown state index " + std::to_string(q));
  if (!is_closed(f)) throw InvalidArgumentError("formula is not closed: " + to_string(f));
  auto [set, stats] = denotation(f);
  return {set.contains(q), stats};
}

StateSet pre_coalition(const Icgs& model, const Coalition& coalition, const StateSet& target, NextVariant variant) {
  AemcOptions o;
  o.variant = variant;
  return AemcChecker(model, o).pre_coalition(coalition, target);
}

std::pair<StateSet, FixpointStats> denotation(const Icgs& model, const AemcFormula& f, const Valuation& v,
                                              NextVariant variant) {
  AemcOptions o;
  o.variant = variant;
  return AemcChecker(model, o).denotation(f, v);
}

std::pair<bool, FixpointStats> check_aemc(const Icgs& model, StateId q, const AemcFormula& f, NextVariant variant) {
  AemcOptions o;
  o.variant = variant;
  return AemcChecker(model, o).check(q, f);
}

}  // namespace amc
