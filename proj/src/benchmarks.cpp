#include "amc/benchmarks.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "amc/error.hpp"
#include "amc/parser.hpp"
#include "amc/translate.hpp"

namespace amc {

FormulaBundle BenchmarkInstance::bundle() const {
  FormulaBundle b;
  b.label = label;
  b.aliases = aliases;
  for (const auto& [name, f] : atl) b.atl.emplace_back(name, to_string(f));
  for (const auto& [name, f] : aemc) b.aemc.emplace_back(name, to_string(f));
  return b;
}

namespace {

void add_formulas(BenchmarkInstance& inst, std::vector<std::pair<std::string, std::string>> atl) {
  for (auto& [name, text] : atl) {
    AtlFormula f = parse_atl(text);
    inst.aemc.emplace_back(name + "p", translate_aemc(f));
    inst.atl.emplace_back(std::move(name), std::move(f));
  }
}

// Transition lookup for tables generated as one successor row per state, in
// joint-index order.
StateId row_lookup(const std::vector<std::vector<ActionId>>& avail, const std::vector<StateId>& row,
                   std::size_t k, StateId q, std::span<const ActionId> joint) {
  std::uint64_t idx = 0;
  for (std::size_t a = 0; a < k; ++a) {
    const auto& av = avail[q * k + a];
    idx = idx * av.size() + static_cast<std::uint64_t>(std::find(av.begin(), av.end(), joint[a]) - av.begin());
  }
  return row[idx];
}

}  // namespace

BenchmarkInstance gen_intersection() {
  IcgsBuilder b;
  AgentId one = b.add_agent("1");
  AgentId two = b.add_agent("2");
  const char* names[] = {"q_oo", "q_oi", "q_io", "q_ii", "q_c"};
  for (const char* n : names) b.add_state(n);
  ActionId in = b.action("in"), out = b.action("out");
  PropId out1 = b.add_proposition("out_1"), in1 = b.add_proposition("in_1");
  PropId out2 = b.add_proposition("out_2"), in2 = b.add_proposition("in_2");
  PropId collision = b.add_proposition("collision");
  const StateId qc = 4;
  for (StateId q = 0; q < 5; ++q) {
    b.set_available(one, q, {in, out});
    b.set_available(two, q, {in, out});
    bool inside1 = q == 2 || q == 3 || q == qc;
    bool inside2 = q == 1 || q == 3 || q == qc;
    b.label(inside1 ? in1 : out1, q);
    b.label(inside2 ? in2 : out2, q);
  }
  b.label(collision, qc);
  b.set_initial(0);
  StateId g1[] = {0, 1}, g2[] = {2, 3}, g3[] = {0, 2}, g4[] = {1, 3};
  b.add_observation_group(one, g1);
  b.add_observation_group(one, g2);
  b.add_observation_group(two, g3);
  b.add_observation_group(two, g4);

  BenchmarkInstance inst;
  inst.model = b.build([&](StateId q, std::span<const ActionId> joint) -> StateId {
    if (q == qc) return qc;
    bool in1_next = joint[0] == in, in2_next = joint[1] == in;
    if (q == 3 && !in1_next && !in2_next) return qc;
    return static_cast<StateId>((in1_next ? 2 : 0) + (in2_next ? 1 : 0));
  });
  inst.initial = 0;
  inst.label = "intersection";
  add_formulas(inst, {{"safe", "<<1>> G !collision"}, {"crash", "<<1,2>> F collision"}});
  return inst;
}

BenchmarkInstance gen_castles(unsigned w1, unsigned w2, unsigned w3) {
  if (w1 < 1 || w2 < 1 || w3 < 1) throw InvalidArgumentError("every castle needs at least one Worker");
  const unsigned workers = w1 + w2 + w3;
  if (workers + 1 > kMaxAgents || workers > 20) throw InvalidArgumentError("too many Workers");
  std::vector<unsigned> castle_of;
  for (unsigned c = 0; c < 3; ++c)
    for (unsigned i = 0; i < (c == 0 ? w1 : c == 1 ? w2 : w3); ++i) castle_of.push_back(c);

  IcgsBuilder b;
  AgentId env = b.add_agent("Environment");
  for (unsigned i = 0; i < workers; ++i) b.add_agent("w" + std::to_string(i + 1));
  ActionId idle = b.action("idle");
  ActionId attack[3] = {b.action("attack1"), b.action("attack2"), b.action("attack3")};
  ActionId defend = b.action("defend");

  // state index = hp-part * 2^workers + cooldown bits; hp-part = HP1*16 + HP2*4 + HP3
  const std::uint32_t cool_states = 1u << workers;
  const std::uint32_t n = 64 * cool_states;
  auto hp_of = [&](StateId q, unsigned c) { return (q / cool_states >> (2 * (2 - c))) & 3u; };
  auto cooling = [&](StateId q, unsigned i) { return (q % cool_states >> (workers - 1 - i)) & 1u; };
  for (StateId q = 0; q < n; ++q) {
    std::string name = "h";
    for (unsigned c = 0; c < 3; ++c) name += static_cast<char>('0' + hp_of(q, c));
    name += '_';
    for (unsigned i = 0; i < workers; ++i) name += cooling(q, i) ? '1' : '0';
    b.add_state(name);
  }
  PropId c3 = b.add_proposition("castle3defeated");
  PropId all = b.add_proposition("alldefeated");
  for (StateId q = 0; q < n; ++q) {
    if (hp_of(q, 2) == 0) b.label(c3, q);
    if (hp_of(q, 0) == 0 && hp_of(q, 1) == 0 && hp_of(q, 2) == 0) b.label(all, q);
    b.set_available(env, q, {idle});
    for (unsigned i = 0; i < workers; ++i) {
      unsigned own = castle_of[i];
      std::vector<ActionId> acts;
      if (hp_of(q, own) > 0) {
        for (unsigned t = 0; t < 3; ++t)
          if (t != own) acts.push_back(attack[t]);
        if (!cooling(q, i)) acts.push_back(defend);
      }
      acts.push_back(idle);
      b.set_available(static_cast<AgentId>(i + 1), q, std::move(acts));
    }
  }
  b.set_initial(63u * cool_states);  // HP 3,3,3, no cooldown
  // Workers see their own cooldown and which castles still stand.
  for (unsigned i = 0; i < workers; ++i) {
    std::map<unsigned, std::vector<StateId>> groups;
    for (StateId q = 0; q < n; ++q) {
      unsigned key = cooling(q, i);
      for (unsigned c = 0; c < 3; ++c) key = key * 2 + (hp_of(q, c) > 0 ? 1 : 0);
      groups[key].push_back(q);
    }
    for (const auto& [key, g] : groups) b.add_observation_group(static_cast<AgentId>(i + 1), g);
  }

  BenchmarkInstance inst;
  inst.model = b.build([&](StateId q, std::span<const ActionId> joint) -> StateId {
    int attackers[3] = {0, 0, 0}, defenders[3] = {0, 0, 0};
    std::uint32_t cool = 0;
    for (unsigned i = 0; i < workers; ++i) {
      ActionId x = joint[i + 1];
      for (unsigned t = 0; t < 3; ++t)
        if (x == attack[t]) ++attackers[t];
      if (x == defend) ++defenders[castle_of[i]];
      cool = cool * 2 + (x == defend ? 1 : 0);
    }
    std::uint32_t hp_part = 0;
    for (unsigned c = 0; c < 3; ++c) {
      int hp = static_cast<int>(hp_of(q, c)) - std::max(0, attackers[c] - defenders[c]);
      hp_part = hp_part * 4 + static_cast<std::uint32_t>(std::max(0, hp));
    }
    return hp_part * cool_states + cool;
  });
  inst.initial = 63u * cool_states;
  inst.label = std::to_string(workers + 1) + " (" + std::to_string(w1) + "," + std::to_string(w2) + "," +
               std::to_string(w3) + ")";
  std::vector<std::string> c12, w12;
  for (unsigned i = 0; i < workers; ++i)
    if (castle_of[i] < 2) c12.push_back("w" + std::to_string(i + 1));
  w12 = {"w1", "w2"};
  inst.aliases["c12"] = c12;
  inst.aliases["w12"] = w12;
  add_formulas(inst, {{"psi1", "<<c12>> F castle3defeated"}, {"psi2", "<<w12>> F alldefeated"}});
  return inst;
}

BenchmarkInstance gen_tianji(unsigned n, bool modified) {
  if (n < 2) throw InvalidArgumentError("TianJi needs at least two horses");
  if (n > 9) throw InvalidArgumentError("at most 9 horses are supported");

  struct S {
    std::uint32_t t, k, wt, wk, phase, commit;
    std::uint64_t code() const {
      return (std::uint64_t{t} << 32) | (k << 16) | (wt << 12) | (wk << 8) | (phase << 4) | commit;
    }
  };
  auto name_of = [&](const S& s) {
    std::string out = "T";
    for (unsigned h = 1; h <= n; ++h)
      if (s.t >> (h - 1) & 1) out += static_cast<char>('0' + h);
    out += "_K";
    for (unsigned h = 1; h <= n; ++h)
      if (s.k >> (h - 1) & 1) out += static_cast<char>('0' + h);
    out += "_" + std::to_string(s.wt) + "_" + std::to_string(s.wk);
    if (s.phase) out += "_c" + std::to_string(s.commit);
    return out;
  };

  IcgsBuilder b;
  AgentId tj = b.add_agent("tianji");
  AgentId king = b.add_agent("king");
  ActionId idle = b.action("idle");
  std::vector<ActionId> horse(n + 1);
  for (unsigned h = 1; h <= n; ++h) horse[h] = b.action("h" + std::to_string(h));
  auto horses_of = [&](std::uint32_t set) {
    std::vector<ActionId> out;
    for (unsigned h = 1; h <= n; ++h)
      if (set >> (h - 1) & 1) out.push_back(horse[h]);
    return out;
  };

  std::vector<S> states;
  std::unordered_map<std::uint64_t, StateId> index;
  std::deque<StateId> queue;
  auto intern = [&](const S& s) {
    auto [it, inserted] = index.emplace(s.code(), static_cast<StateId>(states.size()));
    if (inserted) {
      states.push_back(s);
      b.add_state(name_of(s));
      queue.push_back(it->second);
    }
    return it->second;
  };
  const std::uint32_t full = (1u << n) - 1;
  intern({full, full, 0, 0, 0, 0});
  // every combination of the state components, not only the reachable ones
  for (std::uint32_t t = full + 1; t-- > 0;)
    for (std::uint32_t k = full + 1; k-- > 0;) {
      if (__builtin_popcount(t) != __builtin_popcount(k)) continue;
      unsigned played = n - static_cast<unsigned>(__builtin_popcount(t));
      for (unsigned wt = 0; wt <= played; ++wt)
        for (unsigned wk = 0; wt + wk <= played; ++wk) {
          intern({t, k, wt, wk, 0, 0});
          if (modified && k)
            for (unsigned j = 1; j <= n; ++j)
              if (k >> (j - 1) & 1) intern({t, k, wt, wk, 1, j});
        }
    }

  std::vector<std::vector<ActionId>> avail;
  std::vector<std::vector<StateId>> rows;
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    S s = states[q];
    std::vector<ActionId> a_tj, a_k;
    std::vector<S> next;
    auto race = [&](S r, unsigned i, unsigned j) {
      r.t &= ~(1u << (i - 1));
      r.k &= ~(1u << (j - 1));
      if (i > j) ++r.wt;
      if (j > i) ++r.wk;
      r.phase = r.commit = 0;
      return r;
    };
    if (s.t == 0) {
      a_tj = a_k = {idle};
      next = {s};
    } else if (!modified) {
      a_tj = horses_of(s.t);
      a_k = horses_of(s.k);
      for (unsigned i = 1; i <= n; ++i)
        if (s.t >> (i - 1) & 1)
          for (unsigned j = 1; j <= n; ++j)
            if (s.k >> (j - 1) & 1) next.push_back(race(s, i, j));
    } else if (s.phase == 0) {
      a_tj = {idle};
      a_k = horses_of(s.k);
      for (unsigned j = 1; j <= n; ++j)
        if (s.k >> (j - 1) & 1) {
          S c = s;
          c.phase = 1;
          c.commit = j;
          next.push_back(c);
        }
    } else {
      a_tj = horses_of(s.t);
      a_k = {idle};
      for (unsigned i = 1; i <= n; ++i)
        if (s.t >> (i - 1) & 1) next.push_back(race(s, i, s.commit));
    }
    avail.resize(2 * (q + 1));
    rows.resize(q + 1);
    avail[2 * q] = a_tj;
    avail[2 * q + 1] = a_k;
    std::vector<StateId> row;
    for (const S& t : next) row.push_back(intern(t));
    rows[q] = std::move(row);
  }

  const std::size_t count = states.size();
  PropId wins = b.add_proposition("tianjiwins");
  PropId won = b.add_proposition("tianjiwonraces");
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t>,
           std::vector<StateId>>
      tj_view, k_view;
  for (StateId q = 0; q < count; ++q) {
    const S& s = states[q];
    if (s.t == 0 && s.phase == 0 && s.wt > s.wk) b.label(wins, q);
    if (s.wt <= 1) b.label(won, q);
    b.set_available(tj, q, avail[2 * q]);
    b.set_available(king, q, avail[2 * q + 1]);
    tj_view[{s.t, s.wt, s.wk, s.phase, s.commit}].push_back(q);
    k_view[{s.k, s.wt, s.wk, s.phase, s.commit}].push_back(q);
  }
  for (const auto& [key, g] : tj_view) b.add_observation_group(tj, g);
  for (const auto& [key, g] : k_view) b.add_observation_group(king, g);
  b.set_initial(0);

  BenchmarkInstance inst;
  inst.model = b.build([&](StateId q, std::span<const ActionId> joint) {
    return row_lookup(avail, rows[q], 2, q, joint);
  });
  inst.initial = 0;
  inst.label = std::string(modified ? "modified " : "") + "horses=" + std::to_string(n);
  add_formulas(inst, {{"phi1", "<<tianji>> F tianjiwins"}, {"phi2", "<<tianji>> G <<tianji>> X tianjiwonraces"}});
  return inst;
}

BenchmarkInstance generate_benchmark(std::string_view name, std::string_view config) {
  std::vector<unsigned> nums;
  std::string digits;
  auto flush = [&] {
    if (!digits.empty()) {
      if (digits.size() > 6) throw InvalidArgumentError("configuration value out of range");
      nums.push_back(static_cast<unsigned>(std::stoul(digits)));
      digits.clear();
    }
  };
  for (char c : config) {
    if (c >= '0' && c <= '9') {
      digits += c;
    } else if (c == ',' || c == ' ' || c == '(' || c == ')') {
      flush();
    } else {
      throw InvalidArgumentError("malformed configuration '" + std::string(config) + "'");
    }
  }
  flush();
  if (name == "intersection") {
    if (!nums.empty()) throw InvalidArgumentError("intersection takes no configuration");
    return gen_intersection();
  }
  if (name == "castles") {
    if (nums.size() != 3) throw InvalidArgumentError("castles needs three Worker counts, e.g. 1,1,2");
    return gen_castles(nums[0], nums[1], nums[2]);
  }
  if (name == "tianji" || name == "modtianji") {
    if (nums.size() != 1) throw InvalidArgumentError("TianJi needs the number of horses");
    return gen_tianji(nums[0], name == "modtianji");
  }
  throw UnknownNameError("unknown benchmark '" + std::string(name) + "'");
}

}  // namespace amc
