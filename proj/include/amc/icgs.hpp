#pragma once

// Imperfect-information concurrent game structures (ICGS).
//
// States, agents, propositions and actions are identified by dense indices
// assigned in declaration order; names are kept only for the interface. The
// transition function is stored as one flat table: for every state, one entry
// per joint action, where a joint action is the mixed-radix number formed by
// the agents' positions in their own available-action lists (agent 0 is the
// most significant digit). Indistinguishability is stored as a partition with
// one class id per (agent, state).

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "amc/state_set.hpp"

namespace amc {

using AgentId = std::uint32_t;
using ActionId = std::uint32_t;
using PropId = std::uint32_t;
using ClassId = std::uint32_t;

inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();
inline constexpr std::size_t kMaxAgents = 64;

// Sorted, duplicate-free set of agents.
class Coalition {
 public:
  Coalition() = default;
  explicit Coalition(std::vector<AgentId> members);

  std::span<const AgentId> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(AgentId a) const;
  // Position of `a` among the members, or -1.
  int index_of(AgentId a) const;

  friend bool operator==(const Coalition&, const Coalition&) = default;

 private:
  std::vector<AgentId> members_;
};

class Icgs {
 public:
  std::size_t num_agents() const { return agent_names_.size(); }
  std::size_t num_states() const { return state_names_.size(); }
  std::size_t num_propositions() const { return prop_names_.size(); }
  std::size_t num_actions() const { return action_names_.size(); }

  const std::string& agent_name(AgentId a) const { return agent_names_.at(a); }
  const std::string& state_name(StateId q) const { return state_names_.at(q); }
  const std::string& proposition_name(PropId p) const { return prop_names_.at(p); }
  const std::string& action_name(ActionId x) const { return action_names_.at(x); }

  std::optional<AgentId> find_agent(std::string_view name) const;
  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<PropId> find_proposition(std::string_view name) const;
  std::optional<ActionId> find_action(std::string_view name) const;

  // Throwing lookups (UnknownNameError).
  AgentId agent(std::string_view name) const;
  StateId state(std::string_view name) const;
  PropId proposition(std::string_view name) const;

  std::optional<StateId> initial_state() const { return initial_; }

  std::span<const ActionId> available(AgentId a, StateId q) const {
    return available_[static_cast<std::size_t>(q) * num_agents() + a];
  }
  const StateSet& labeling(PropId p) const { return labeling_.at(p); }

  // Number of joint actions at q (product of the available-set sizes).
  std::uint64_t joint_action_count(StateId q) const { return offsets_[q + 1] - offsets_[q]; }
  // Successor for the joint action with the given mixed-radix index, or
  // kNoState when the model leaves it undefined.
  StateId successor(StateId q, std::uint64_t joint_index) const {
    return table_[offsets_[q] + joint_index];
  }
  std::span<const StateId> successor_row(StateId q) const {
    return {table_.data() + offsets_[q], static_cast<std::size_t>(joint_action_count(q))};
  }
  // Mixed-radix index of a joint action given as one position per agent.
  std::uint64_t joint_index(StateId q, std::span<const std::size_t> positions) const;
  // Inverse of joint_index.
  std::vector<std::size_t> joint_positions(StateId q, std::uint64_t joint_index) const;

  // o(q, alpha); throws UnavailableActionError naming the first agent whose
  // action is not in d_a(q).
  StateId step(StateId q, std::span<const ActionId> joint_action) const;

  ClassId class_of(AgentId a, StateId q) const {
    return class_of_[static_cast<std::size_t>(a) * num_states() + q];
  }
  std::size_t num_classes(AgentId a) const { return class_members_.at(a).size(); }
  std::span<const StateId> class_members(AgentId a, ClassId c) const {
    return class_members_.at(a).at(c);
  }
  StateSet epistemic_class(AgentId a, StateId q) const;
  // Union of the members' epistemic classes at q. Throws on an empty coalition.
  StateSet coalition_neighborhood(const Coalition& coalition, StateId q) const;
  bool perfect_information() const;

  // Resolve agent names; throws UnknownNameError.
  Coalition coalition(std::span<const std::string> names) const;

  // Messages produced while importing, e.g. when closing a declared
  // indistinguishability relation added pairs.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  friend class IcgsBuilder;

  std::vector<std::string> agent_names_, state_names_, prop_names_, action_names_;
  std::unordered_map<std::string, AgentId> agent_index_;
  std::unordered_map<std::string, StateId> state_index_;
  std::unordered_map<std::string, PropId> prop_index_;
  std::unordered_map<std::string, ActionId> action_index_;
  std::vector<std::vector<ActionId>> available_;  // [q * k + a]
  std::vector<StateSet> labeling_;
  std::vector<std::uint64_t> offsets_;  // size num_states + 1
  std::vector<StateId> table_;
  std::vector<ClassId> class_of_;  // [a * n + q]
  std::vector<std::vector<std::vector<StateId>>> class_members_;
  std::optional<StateId> initial_;
  std::vector<std::string> warnings_;
};

// Incremental construction of an Icgs. The result is not required to be
// valid; run validate() on it.
class IcgsBuilder {
 public:
  using TransitionFn = std::function<StateId(StateId, std::span<const ActionId>)>;

  AgentId add_agent(const std::string& name);
  StateId add_state(const std::string& name);
  PropId add_proposition(const std::string& name);
  // Interns an action name in the global alphabet.
  ActionId action(const std::string& name);

  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<AgentId> find_agent(std::string_view name) const;
  std::optional<PropId> find_proposition(std::string_view name) const;
  std::size_t num_agents() const { return m_.agent_names_.size(); }
  std::size_t num_states() const { return m_.state_names_.size(); }

  void label(PropId p, StateId q);
  void set_available(AgentId a, StateId q, std::vector<ActionId> actions);
  void set_initial(StateId q) { m_.initial_ = q; }

  // Indistinguishability, declared either as groups of a partition or as
  // individual pairs. Both are closed under the equivalence laws at build().
  void add_observation_group(AgentId a, std::span<const StateId> group);
  void add_indistinguishable(AgentId a, StateId q1, StateId q2);

  // Explicit transition entry; joint lists one action per agent in agent order.
  void add_transition(StateId from, std::vector<ActionId> joint, StateId to);

  // Materialize the transition table from the add_transition entries.
  Icgs build();
  // Materialize it by calling fn for every state and every joint action drawn
  // from the available sets; fn may return kNoState to leave an entry undefined.
  Icgs build(const TransitionFn& fn);

 private:
  void finish_observations();

  Icgs m_;
  std::vector<std::vector<std::vector<StateId>>> groups_;       // per agent
  std::vector<std::set<std::pair<StateId, StateId>>> pairs_;    // per agent
  std::map<std::pair<StateId, std::vector<ActionId>>, StateId> explicit_;
  std::vector<std::vector<std::vector<ActionId>>> avail_;  // [q][a]
  std::vector<std::vector<StateId>> labels_;
};

// Named coalitions, e.g. "c12" -> the Workers of castles 1 and 2.
using AliasMap = std::map<std::string, std::vector<std::string>>;

// Resolve coalition names written in a formula: agent names first, then
// aliases. Throws UnknownNameError.
Coalition resolve_coalition(const Icgs& model, std::span<const std::string> names,
                            const AliasMap& aliases = {});

struct Violation {
  enum class Kind { NoAgents, NoStates, EmptyActions, MissingTransition, NonUniformActions, BadInitial };
  Kind kind;
  std::optional<AgentId> agent;
  std::vector<StateId> states;
  std::string message;
};

const char* to_string(Violation::Kind k);

// Every violated ICGS invariant with its witnesses; empty iff the model is valid.
std::vector<Violation> validate(const Icgs& model);

}  // namespace amc
