#pragma once

// Random models and formulas, plus brute-force reference checkers that share
// no code with the engines beyond the model accessors.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "amc/formula.hpp"
#include "amc/icgs.hpp"

namespace amc::testing {

using Rng = std::mt19937_64;

struct RandomModelSpec {
  std::size_t max_states = 8;
  std::size_t max_agents = 3;
  std::size_t max_actions = 3;
  bool perfect_information = true;
};

// Agents "1".."k", states s0.., propositions p and q, actions a0..a2.
// Availability is uniform on each epistemic class; every joint action has a
// random successor.
inline Icgs random_model(Rng& rng, const RandomModelSpec& spec) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t n = pick(1, spec.max_states);
  const std::size_t k = pick(1, spec.max_agents);
  IcgsBuilder b;
  for (std::size_t a = 0; a < k; ++a) b.add_agent(std::to_string(a + 1));
  for (std::size_t q = 0; q < n; ++q) b.add_state("s" + std::to_string(q));
  std::vector<ActionId> acts;
  for (std::size_t i = 0; i < spec.max_actions; ++i) acts.push_back(b.action("a" + std::to_string(i)));
  for (const char* p : {"p", "q"}) {
    PropId id = b.add_proposition(p);
    for (StateId s = 0; s < n; ++s)
      if (pick(0, 1)) b.label(id, s);
  }
  for (AgentId a = 0; a < k; ++a) {
    // Partition the states into random blocks.
    std::vector<std::size_t> block(n);
    std::size_t blocks = spec.perfect_information ? n : pick(1, n);
    for (std::size_t q = 0; q < n; ++q) block[q] = spec.perfect_information ? q : pick(0, blocks - 1);
    std::vector<std::size_t> count(blocks);
    for (auto& c : count) c = pick(1, spec.max_actions);
    std::vector<std::vector<StateId>> groups(blocks);
    for (StateId q = 0; q < n; ++q) {
      groups[block[q]].push_back(q);
      b.set_available(a, q, std::vector<ActionId>(acts.begin(), acts.begin() + count[block[q]]));
    }
    if (!spec.perfect_information)
      for (auto& g : groups)
        if (g.size() > 1) b.add_observation_group(a, g);
  }
  b.set_initial(0);
  return b.build([&](StateId, std::span<const ActionId>) { return static_cast<StateId>(pick(0, n - 1)); });
}

// Random ATL formula over p and q with agents drawn from 1..agents.
inline AtlFormula random_atl(Rng& rng, std::size_t agents, std::size_t depth) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  if (depth == 0 || pick(0, 5) == 0) {
    switch (pick(0, 4)) {
      case 0: return AtlFormula::truth();
      case 1: case 2: return AtlFormula::prop("p");
      default: return AtlFormula::prop("q");
    }
  }
  auto sub = [&] { return random_atl(rng, agents, depth - 1); };
  auto coalition = [&] {
    std::vector<std::string> c;
    for (std::size_t a = 1; a <= agents; ++a)
      if (pick(0, 2) == 0) c.push_back(std::to_string(a));
    return c;
  };
  switch (pick(0, 7)) {
    case 0: return AtlFormula::negation(sub());
    case 1: return AtlFormula::conjunction(sub(), sub());
    case 2: return AtlFormula::disjunction(sub(), sub());
    case 3: return AtlFormula::next(coalition(), sub());
    case 4: return AtlFormula::always(coalition(), sub());
    case 5: return AtlFormula::eventually(coalition(), sub());
    default: return AtlFormula::until(coalition(), sub(), sub());
  }
}

// Random closed-or-open AEMC formula; bound variables occur only positively,
// and a binder of the other kind starts a fresh scope, so the result is
// monotone and alternation free.
inline AemcFormula random_aemc(Rng& rng, std::size_t agents, std::size_t depth,
                               std::vector<std::string> scope = {}, char binder = 0) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  if (depth == 0 || pick(0, 5) == 0) {
    if (!scope.empty() && pick(0, 1)) return AemcFormula::var(scope[pick(0, scope.size() - 1)]);
    return pick(0, 1) ? AemcFormula::prop("p") : AemcFormula::prop("q");
  }
  auto sub = [&] { return random_aemc(rng, agents, depth - 1, scope, binder); };
  std::vector<std::string> c;
  for (std::size_t a = 1; a <= agents; ++a)
    if (pick(0, 2) == 0) c.push_back(std::to_string(a));
  switch (pick(0, 5)) {
    case 0:
      // Negation only over closed material.
      return AemcFormula::negation(random_aemc(rng, agents, depth - 1, {}, 0));
    case 1: return AemcFormula::conjunction(sub(), sub());
    case 2: return AemcFormula::disjunction(sub(), sub());
    case 3: return AemcFormula::next(c, sub());
    default: {
      char kind = pick(0, 1) ? 'm' : 'n';
      std::string v = "V" + std::to_string(depth);
      if (kind != binder) scope.clear();
      scope.push_back(v);
      AemcFormula body = random_aemc(rng, agents, depth - 1, scope, kind);
      return kind == 'm' ? AemcFormula::mu(v, body) : AemcFormula::nu(v, body);
    }
  }
}

// Successor states when the coalition members play the given positions and
// everybody else ranges freely. Walks the whole joint-action row.
inline std::vector<StateId> constrained_successors(const Icgs& m, StateId q, const std::vector<AgentId>& members,
                                                   const std::vector<std::size_t>& positions) {
  std::vector<StateId> out;
  for (std::uint64_t j = 0; j < m.joint_action_count(q); ++j) {
    auto pos = m.joint_positions(q, j);
    bool match = true;
    for (std::size_t i = 0; i < members.size(); ++i) match = match && pos[members[i]] == positions[i];
    if (match) out.push_back(m.successor(q, j));
  }
  return out;
}

// Every uniform memoryless strategy as a table [member][state] -> position,
// constant on each class. Calls f until it returns true; reports whether it did.
inline bool any_uniform_strategy(const Icgs& m, const std::vector<AgentId>& members,
                                 const std::function<bool(const std::vector<std::vector<std::size_t>>&)>& f) {
  struct Slot {
    std::size_t member;
    ClassId cls;
    std::size_t radix;
  };
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (ClassId c = 0; c < m.num_classes(members[i]); ++c)
      slots.push_back({i, c, m.available(members[i], m.class_members(members[i], c)[0]).size()});
  std::vector<std::size_t> digit(slots.size(), 0);
  std::vector<std::vector<std::size_t>> table(members.size(), std::vector<std::size_t>(m.num_states()));
  while (true) {
    for (std::size_t s = 0; s < slots.size(); ++s)
      for (StateId q : m.class_members(members[slots[s].member], slots[s].cls))
        table[slots[s].member][q] = digit[s];
    if (f(table)) return true;
    std::size_t s = slots.size();
    while (s-- > 0) {
      if (++digit[s] < slots[s].radix) break;
      digit[s] = 0;
    }
    if (s == static_cast<std::size_t>(-1)) return false;
  }
}

// Reference ATL_ir semantics by explicit path expansion: strategies are
// enumerated exhaustively and every path of out^ir is followed for |states|
// steps, which decides G and U for memoryless play. Meant for tiny models.
class PathOracle {
 public:
  explicit PathOracle(const Icgs& m) : m_(m) {}

  std::vector<bool> sat(const AtlFormula& f) {
    const std::size_t n = m_.num_states();
    std::vector<bool> out(n);
    using K = AtlFormula::Kind;
    switch (f.kind()) {
      case K::True: out.assign(n, true); break;
      case K::Prop: {
        auto p = m_.proposition(f.name());
        for (StateId q = 0; q < n; ++q) out[q] = m_.labeling(p).contains(q);
        break;
      }
      case K::Not: {
        auto a = sat(f.operand(0));
        for (StateId q = 0; q < n; ++q) out[q] = !a[q];
        break;
      }
      case K::And: {
        auto a = sat(f.operand(0)), b = sat(f.operand(1));
        for (StateId q = 0; q < n; ++q) out[q] = a[q] && b[q];
        break;
      }
      default: {
        auto hold = sat(f.operand(0));
        std::vector<bool> reach = f.kind() == K::Until ? sat(f.operand(1)) : std::vector<bool>(n);
        std::vector<AgentId> members;
        for (const auto& name : f.coalition()) members.push_back(m_.agent(name));
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        for (StateId q = 0; q < n; ++q) {
          std::vector<StateId> start;
          for (StateId r = 0; r < n; ++r) {
            bool near = members.empty() ? r == q : false;
            for (AgentId a : members) near = near || m_.class_of(a, r) == m_.class_of(a, q);
            if (near) start.push_back(r);
          }
          out[q] = any_uniform_strategy(m_, members, [&](const auto& table) {
            for (StateId r : start)
              if (!follow(f.kind(), members, table, r, hold, reach, 0)) return false;
            return true;
          });
        }
      }
    }
    return out;
  }

 private:
  std::vector<StateId> step(const std::vector<AgentId>& members, const std::vector<std::vector<std::size_t>>& table,
                            StateId q) const {
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < members.size(); ++i) pos.push_back(table[i][q]);
    return constrained_successors(m_, q, members, pos);
  }

  // Whether every path continuing from q (at the given depth) satisfies the goal.
  bool follow(AtlFormula::Kind kind, const std::vector<AgentId>& members,
              const std::vector<std::vector<std::size_t>>& table, StateId q, const std::vector<bool>& hold,
              const std::vector<bool>& reach, std::size_t depth) const {
    using K = AtlFormula::Kind;
    if (kind == K::Next) {
      for (StateId r : step(members, table, q))
        if (!hold[r]) return false;
      return true;
    }
    if (kind == K::Always) {
      if (!hold[q]) return false;
      if (depth >= m_.num_states()) return true;
    } else {
      if (reach[q]) return true;
      if (!hold[q] || depth >= m_.num_states()) return false;
    }
    for (StateId r : step(members, table, q))
      if (!follow(kind, members, table, r, hold, reach, depth + 1)) return false;
    return true;
  }

  const Icgs& m_;
};

}  // namespace amc::testing
