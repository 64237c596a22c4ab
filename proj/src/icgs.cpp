#include "amc/icgs.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "amc/error.hpp"

namespace amc {

Coalition::Coalition(std::vector<AgentId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool Coalition::contains(AgentId a) const {
  return std::binary_search(members_.begin(), members_.end(), a);
}

int Coalition::index_of(AgentId a) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), a);
  if (it == members_.end() || *it != a) return -1;
  return static_cast<int>(it - members_.begin());
}

namespace {

template <class Map>
auto lookup(const Map& m, std::string_view name) -> std::optional<typename Map::mapped_type> {
  auto it = m.find(std::string(name));
  if (it == m.end()) return std::nullopt;
  return it->second;
}

}  // namespace

std::optional<AgentId> Icgs::find_agent(std::string_view name) const { return lookup(agent_index_, name); }
std::optional<StateId> Icgs::find_state(std::string_view name) const { return lookup(state_index_, name); }
std::optional<PropId> Icgs::find_proposition(std::string_view name) const {
  return lookup(prop_index_, name);
}
std::optional<ActionId> Icgs::find_action(std::string_view name) const {
  return lookup(action_index_, name);
}

AgentId Icgs::agent(std::string_view name) const {
  if (auto a = find_agent(name)) return *a;
  throw UnknownNameError("unknown agent '" + std::string(name) + "'");
}
StateId Icgs::state(std::string_view name) const {
  if (auto q = find_state(name)) return *q;
  throw UnknownNameError("unknown state '" + std::string(name) + "'");
}
PropId Icgs::proposition(std::string_view name) const {
  if (auto p = find_proposition(name)) return *p;
  throw UnknownNameError("unknown proposition '" + std::string(name) + "'");
}

std::uint64_t Icgs::joint_index(StateId q, std::span<const std::size_t> positions) const {
  std::uint64_t idx = 0;
  for (AgentId a = 0; a < num_agents(); ++a) idx = idx * available(a, q).size() + positions[a];
  return idx;
}

std::vector<std::size_t> Icgs::joint_positions(StateId q, std::uint64_t joint_index) const {
  std::vector<std::size_t> pos(num_agents());
  for (std::size_t i = num_agents(); i-- > 0;) {
    auto n = available(static_cast<AgentId>(i), q).size();
    pos[i] = static_cast<std::size_t>(joint_index % n);
    joint_index /= n;
  }
  return pos;
}

StateId Icgs::step(StateId q, std::span<const ActionId> joint_action) const {
  if (q >= num_states()) throw UnknownNameError("unknown state index " + std::to_string(q));
  if (joint_action.size() != num_agents())
    throw InvalidArgumentError("joint action must list one action per agent");
  std::vector<std::size_t> pos(num_agents());
  for (AgentId a = 0; a < num_agents(); ++a) {
    auto avail = available(a, q);
    auto it = std::find(avail.begin(), avail.end(), joint_action[a]);
    if (it == avail.end()) {
      std::string act = joint_action[a] < num_actions() ? action_name(joint_action[a]) : "?";
      throw UnavailableActionError("action '" + act + "' is not available to agent '" +
                                       agent_name(a) + "' at state '" + state_name(q) + "'",
                                   a);
    }
    pos[a] = static_cast<std::size_t>(it - avail.begin());
  }
  StateId next = successor(q, joint_index(q, pos));
  if (next == kNoState) throw Error("transition undefined at state '" + state_name(q) + "'");
  return next;
}

StateSet Icgs::epistemic_class(AgentId a, StateId q) const {
  if (a >= num_agents()) throw UnknownNameError("unknown agent index " + std::to_string(a));
  if (q >= num_states()) throw UnknownNameError("unknown state index " + std::to_string(q));
  StateSet s(num_states());
  for (StateId m : class_members(a, class_of(a, q))) s.insert(m);
  return s;
}

StateSet Icgs::coalition_neighborhood(const Coalition& coalition, StateId q) const {
  if (coalition.empty()) throw InvalidArgumentError("coalition neighborhood of the empty coalition");
  StateSet s(num_states());
  for (AgentId a : coalition.members()) s |= epistemic_class(a, q);
  return s;
}

bool Icgs::perfect_information() const {
  for (AgentId a = 0; a < num_agents(); ++a)
    if (num_classes(a) != num_states()) return false;
  return true;
}

Coalition Icgs::coalition(std::span<const std::string> names) const {
  std::vector<AgentId> ids;
  for (const auto& n : names) ids.push_back(agent(n));
  return Coalition(std::move(ids));
}

Coalition resolve_coalition(const Icgs& model, std::span<const std::string> names, const AliasMap& aliases) {
  std::vector<AgentId> ids;
  for (const auto& n : names) {
    if (auto a = model.find_agent(n)) {
      ids.push_back(*a);
      continue;
    }
    auto it = aliases.find(n);
    if (it == aliases.end()) throw UnknownNameError("unknown agent or coalition alias '" + n + "'");
    for (const auto& member : it->second) ids.push_back(model.agent(member));
  }
  return Coalition(std::move(ids));
}

// ---------------------------------------------------------------------------

AgentId IcgsBuilder::add_agent(const std::string& name) {
  if (m_.agent_index_.count(name)) throw InvalidArgumentError("duplicate agent '" + name + "'");
  if (m_.agent_names_.size() == kMaxAgents) throw InvalidArgumentError("too many agents");
  auto id = static_cast<AgentId>(m_.agent_names_.size());
  m_.agent_names_.push_back(name);
  m_.agent_index_.emplace(name, id);
  groups_.emplace_back();
  pairs_.emplace_back();
  return id;
}

StateId IcgsBuilder::add_state(const std::string& name) {
  if (m_.state_index_.count(name)) throw InvalidArgumentError("duplicate state '" + name + "'");
  auto id = static_cast<StateId>(m_.state_names_.size());
  m_.state_names_.push_back(name);
  m_.state_index_.emplace(name, id);
  return id;
}

PropId IcgsBuilder::add_proposition(const std::string& name) {
  if (m_.prop_index_.count(name)) throw InvalidArgumentError("duplicate proposition '" + name + "'");
  auto id = static_cast<PropId>(m_.prop_names_.size());
  m_.prop_names_.push_back(name);
  m_.prop_index_.emplace(name, id);
  m_.labeling_.emplace_back();
  labels_.emplace_back();
  return id;
}

ActionId IcgsBuilder::action(const std::string& name) {
  auto it = m_.action_index_.find(name);
  if (it != m_.action_index_.end()) return it->second;
  auto id = static_cast<ActionId>(m_.action_names_.size());
  m_.action_names_.push_back(name);
  m_.action_index_.emplace(name, id);
  return id;
}

std::optional<StateId> IcgsBuilder::find_state(std::string_view name) const { return m_.find_state(name); }
std::optional<AgentId> IcgsBuilder::find_agent(std::string_view name) const { return m_.find_agent(name); }
std::optional<PropId> IcgsBuilder::find_proposition(std::string_view name) const {
  return m_.find_proposition(name);
}

void IcgsBuilder::label(PropId p, StateId q) {
  if (q >= num_states()) throw UnknownNameError("unknown state index " + std::to_string(q));
  labels_.at(p).push_back(q);
}

void IcgsBuilder::set_available(AgentId a, StateId q, std::vector<ActionId> actions) {
  if (a >= num_agents()) throw UnknownNameError("unknown agent index " + std::to_string(a));
  if (q >= num_states()) throw UnknownNameError("unknown state index " + std::to_string(q));
  if (avail_.size() <= q) avail_.resize(num_states());
  if (avail_[q].size() <= a) avail_[q].resize(num_agents());
  avail_[q][a] = std::move(actions);
}

void IcgsBuilder::add_observation_group(AgentId a, std::span<const StateId> group) {
  groups_.at(a).emplace_back(group.begin(), group.end());
}

void IcgsBuilder::add_indistinguishable(AgentId a, StateId q1, StateId q2) {
  if (q1 == q2) return;
  pairs_.at(a).insert({std::min(q1, q2), std::max(q1, q2)});
}

void IcgsBuilder::add_transition(StateId from, std::vector<ActionId> joint, StateId to) {
  if (from >= num_states() || to >= num_states())
    throw UnknownNameError("transition references an unknown state");
  if (joint.size() != num_agents())
    throw InvalidArgumentError("transition at '" + m_.state_names_[from] +
                               "' must list one action per agent");
  auto [it, inserted] = explicit_.emplace(std::make_pair(from, std::move(joint)), to);
  if (!inserted && it->second != to)
    throw InvalidArgumentError("conflicting transitions at state '" + m_.state_names_[from] + "'");
}

namespace {

struct UnionFind {
  std::vector<StateId> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  StateId find(StateId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(StateId a, StateId b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::uint64_t pairs_in(std::uint64_t n) { return n * (n - 1) / 2; }

}  // namespace

void IcgsBuilder::finish_observations() {
  std::size_t n = num_states();
  m_.class_of_.assign(num_agents() * n, 0);
  m_.class_members_.assign(num_agents(), {});
  for (AgentId a = 0; a < num_agents(); ++a) {
    UnionFind uf(n);
    std::vector<int> group_of(n, -1);
    bool overlap = false;
    std::uint64_t covered = 0;
    for (std::size_t g = 0; g < groups_[a].size(); ++g) {
      const auto& grp = groups_[a][g];
      std::vector<StateId> uniq(grp);
      std::sort(uniq.begin(), uniq.end());
      uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
      for (StateId q : uniq) {
        if (q >= n) throw UnknownNameError("observation group references an unknown state");
        if (group_of[q] != -1) overlap = true;
        group_of[q] = static_cast<int>(g);
        uf.unite(uniq.front(), q);
      }
      covered += pairs_in(uniq.size());
    }
    for (auto [q1, q2] : pairs_[a]) {
      if (q2 >= n) throw UnknownNameError("indistinguishability pair references an unknown state");
      if (group_of[q1] == -1 || group_of[q1] != group_of[q2]) ++covered;
      uf.unite(q1, q2);
    }
    // canonical class ids: order of the smallest member
    std::vector<ClassId> id_of_root(n, std::numeric_limits<ClassId>::max());
    auto& members = m_.class_members_[a];
    for (StateId q = 0; q < n; ++q) {
      StateId r = uf.find(q);
      if (id_of_root[r] == std::numeric_limits<ClassId>::max()) {
        id_of_root[r] = static_cast<ClassId>(members.size());
        members.emplace_back();
      }
      m_.class_of_[a * n + q] = id_of_root[r];
      members[id_of_root[r]].push_back(q);
    }
    std::uint64_t implied = 0;
    for (const auto& c : members) implied += pairs_in(c.size());
    if (overlap || implied > covered)
      m_.warnings_.push_back("indistinguishability of agent '" + m_.agent_names_[a] +
                             "' was closed under reflexivity, symmetry and transitivity; "
                             "the closure added pairs");
  }
}

Icgs IcgsBuilder::build() {
  auto explicit_entries = std::move(explicit_);
  explicit_.clear();
  return build([&](StateId q, std::span<const ActionId> joint) -> StateId {
    auto it = explicit_entries.find({q, std::vector<ActionId>(joint.begin(), joint.end())});
    return it == explicit_entries.end() ? kNoState : it->second;
  });
}

Icgs IcgsBuilder::build(const TransitionFn& fn) {
  const std::size_t n = num_states(), k = num_agents();
  m_.available_.assign(n * k, {});
  for (std::size_t q = 0; q < avail_.size(); ++q)
    for (std::size_t a = 0; a < avail_[q].size(); ++a) m_.available_[q * k + a] = std::move(avail_[q][a]);
  for (std::size_t p = 0; p < labels_.size(); ++p) {
    m_.labeling_[p] = StateSet(n);
    for (StateId q : labels_[p]) m_.labeling_[p].insert(q);
  }
  m_.offsets_.assign(n + 1, 0);
  for (StateId q = 0; q < n; ++q) {
    std::uint64_t c = k ? 1 : 0;
    for (AgentId a = 0; a < k; ++a) c *= m_.available(a, q).size();
    m_.offsets_[q + 1] = m_.offsets_[q] + c;
  }
  m_.table_.assign(m_.offsets_[n], kNoState);
  std::vector<std::size_t> pos(k);
  std::vector<ActionId> joint(k);
  for (StateId q = 0; q < n; ++q) {
    std::uint64_t count = m_.joint_action_count(q);
    if (count == 0) continue;
    std::fill(pos.begin(), pos.end(), 0);
    for (std::uint64_t j = 0; j < count; ++j) {
      for (AgentId a = 0; a < k; ++a) joint[a] = m_.available(a, q)[pos[a]];
      StateId to = fn(q, joint);
      if (to != kNoState && to >= n)
        throw InvalidArgumentError("transition from '" + m_.state_names_[q] + "' targets an unknown state");
      m_.table_[m_.offsets_[q] + j] = to;
      // odometer, last agent fastest
      for (std::size_t i = k; i-- > 0;) {
        if (++pos[i] < m_.available(static_cast<AgentId>(i), q).size()) break;
        pos[i] = 0;
      }
    }
  }
  finish_observations();
  Icgs out = std::move(m_);
  m_ = Icgs{};
  groups_.clear();
  pairs_.clear();
  avail_.clear();
  labels_.clear();
  return out;
}

// ---------------------------------------------------------------------------

const char* to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::NoAgents: return "no-agents";
    case Violation::Kind::NoStates: return "no-states";
    case Violation::Kind::EmptyActions: return "empty-actions";
    case Violation::Kind::MissingTransition: return "missing-transition";
    case Violation::Kind::NonUniformActions: return "non-uniform-actions";
    case Violation::Kind::BadInitial: return "bad-initial";
  }
  return "?";
}

namespace {

std::string action_list(const Icgs& m, std::span<const ActionId> acts) {
  std::string s = "{";
  for (std::size_t i = 0; i < acts.size(); ++i) s += (i ? "," : "") + m.action_name(acts[i]);
  return s + "}";
}

}  // namespace

std::vector<Violation> validate(const Icgs& m) {
  std::vector<Violation> out;
  using K = Violation::Kind;
  if (m.num_agents() == 0) out.push_back({K::NoAgents, std::nullopt, {}, "model has no agents"});
  if (m.num_states() == 0) out.push_back({K::NoStates, std::nullopt, {}, "model has no states"});
  if (auto init = m.initial_state(); init && *init >= m.num_states())
    out.push_back({K::BadInitial, std::nullopt, {}, "initial state is not a state of the model"});

  for (StateId q = 0; q < m.num_states(); ++q)
    for (AgentId a = 0; a < m.num_agents(); ++a)
      if (m.available(a, q).empty())
        out.push_back({K::EmptyActions, a, {q},
                       "agent '" + m.agent_name(a) + "' has no action at state '" + m.state_name(q) + "'"});

  for (StateId q = 0; q < m.num_states(); ++q) {
    auto row = m.successor_row(q);
    for (std::uint64_t j = 0; j < row.size(); ++j) {
      if (row[j] != kNoState) continue;
      auto pos = m.joint_positions(q, j);
      std::string joint;
      for (AgentId a = 0; a < m.num_agents(); ++a)
        joint += (a ? "," : "") + m.action_name(m.available(a, q)[pos[a]]);
      out.push_back({K::MissingTransition, std::nullopt, {q},
                     "no transition from '" + m.state_name(q) + "' under (" + joint + ")"});
    }
  }

  for (AgentId a = 0; a < m.num_agents(); ++a)
    for (ClassId c = 0; c < m.num_classes(a); ++c) {
      auto members = m.class_members(a, c);
      std::vector<ActionId> ref(m.available(a, members[0]).begin(), m.available(a, members[0]).end());
      std::sort(ref.begin(), ref.end());
      for (std::size_t i = 1; i < members.size(); ++i) {
        std::vector<ActionId> other(m.available(a, members[i]).begin(), m.available(a, members[i]).end());
        std::sort(other.begin(), other.end());
        if (other != ref)
          out.push_back({K::NonUniformActions, a, {members[0], members[i]},
                         "agent '" + m.agent_name(a) + "' cannot distinguish '" + m.state_name(members[0]) +
                             "' from '" + m.state_name(members[i]) + "' but has actions " +
                             action_list(m, m.available(a, members[0])) + " vs " +
                             action_list(m, m.available(a, members[i]))});
      }
    }
  return out;
}

}  // namespace amc
