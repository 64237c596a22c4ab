#include "amc/model_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "amc/error.hpp"
#include "ini.hpp"

namespace amc {

namespace {

struct Token {
  std::string_view text;
  int column;
};

bool is_symbol(char c) { return c == '=' || c == '|' || c == '~' || c == ':'; }

std::vector<Token> tokenize(const ini::Line& l) {
  std::vector<Token> out;
  std::string_view s = l.text;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    std::size_t b = i;
    if (is_symbol(c)) {
      ++i;
    } else {
      while (i < s.size() && s[i] != ' ' && s[i] != '\t' && !is_symbol(s[i])) ++i;
    }
    out.push_back({s.substr(b, i - b), l.column + static_cast<int>(b)});
  }
  return out;
}

[[noreturn]] void fail(const std::string& msg, const ini::Line& l, const Token& t) {
  throw ParseError(msg, l.number, t.column);
}

[[noreturn]] void fail(const std::string& msg, const ini::Line& l) { throw ParseError(msg, l.number, l.column); }

class ModelReader {
 public:
  explicit ModelReader(std::string_view text) : sections_(ini::split_sections(text)) {
    static const std::set<std::string> known = {"agents",  "states",      "initial",    "propositions",
                                                "labeling", "actions",    "transitions", "observation"};
    for (const auto& s : sections_) {
      if (!known.count(s.name)) throw ParseError("unknown section [" + s.name + "]", s.line, 1);
      if (by_name_.count(s.name)) throw ParseError("duplicate section [" + s.name + "]", s.line, 1);
      by_name_[s.name] = &s;
    }
  }

  Icgs read() {
    names("agents", [&](std::string_view n, const ini::Line& l, const Token& t) {
      if (b_.find_agent(n)) fail("duplicate agent '" + std::string(n) + "'", l, t);
      b_.add_agent(std::string(n));
    });
    names("states", [&](std::string_view n, const ini::Line& l, const Token& t) {
      if (b_.find_state(n)) fail("duplicate state '" + std::string(n) + "'", l, t);
      state_index_.emplace(std::string(n), static_cast<StateId>(b_.add_state(std::string(n))));
    });
    names("propositions", [&](std::string_view n, const ini::Line& l, const Token& t) {
      if (b_.find_proposition(n)) fail("duplicate proposition '" + std::string(n) + "'", l, t);
      b_.add_proposition(std::string(n));
    });
    k_ = b_.num_agents();
    n_ = b_.num_states();
    initial();
    labeling();
    actions();
    transitions();
    observation();
    return b_.build([&](StateId q, std::span<const ActionId> joint) -> StateId {
      if (rows_[q].empty()) return kNoState;
      std::uint64_t idx = 0;
      for (AgentId a = 0; a < k_; ++a) {
        const auto& av = avail_[q * k_ + a];
        idx = idx * av.size() + static_cast<std::uint64_t>(std::find(av.begin(), av.end(), joint[a]) - av.begin());
      }
      return rows_[q][idx];
    });
  }

 private:
  template <class F>
  void names(const char* section, F&& f) {
    auto it = by_name_.find(section);
    if (it == by_name_.end()) return;
    for (const auto& l : it->second->lines)
      for (const auto& t : tokenize(l)) {
        if (t.text.size() == 1 && is_symbol(t.text[0])) fail("unexpected '" + std::string(t.text) + "'", l, t);
        f(t.text, l, t);
      }
  }

  StateId state(const ini::Line& l, const Token& t) const {
    auto it = state_index_.find(std::string(t.text));
    if (it == state_index_.end()) fail("unknown state '" + std::string(t.text) + "'", l, t);
    return it->second;
  }

  AgentId agent(const ini::Line& l, const Token& t) const {
    auto a = b_.find_agent(t.text);
    if (!a) fail("unknown agent '" + std::string(t.text) + "'", l, t);
    return *a;
  }

  void initial() {
    auto it = by_name_.find("initial");
    if (it == by_name_.end()) return;
    bool seen = false;
    for (const auto& l : it->second->lines)
      for (const auto& t : tokenize(l)) {
        if (seen) fail("more than one initial state", l, t);
        b_.set_initial(state(l, t));
        seen = true;
      }
  }

  void labeling() {
    auto it = by_name_.find("labeling");
    if (it == by_name_.end()) return;
    std::set<PropId> done;
    for (const auto& l : it->second->lines) {
      auto toks = tokenize(l);
      if (toks.size() < 2 || toks[1].text != "=") fail("expected 'proposition = states'", l);
      auto p = b_.find_proposition(toks[0].text);
      if (!p) fail("unknown proposition '" + std::string(toks[0].text) + "'", l, toks[0]);
      if (!done.insert(*p).second) fail("proposition labeled twice", l, toks[0]);
      for (std::size_t i = 2; i < toks.size(); ++i) b_.label(*p, state(l, toks[i]));
    }
  }

  void actions() {
    avail_.assign(n_ * k_, {});
    auto it = by_name_.find("actions");
    if (it == by_name_.end()) return;
    std::vector<char> seen(n_ * k_, 0);
    for (const auto& l : it->second->lines) {
      auto toks = tokenize(l);
      if (toks.size() < 3 || toks[2].text != "=") fail("expected 'agent state = actions'", l);
      AgentId a = agent(l, toks[0]);
      StateId q = state(l, toks[1]);
      if (seen[q * k_ + a]) fail("actions declared twice for this agent and state", l, toks[1]);
      seen[q * k_ + a] = 1;
      std::vector<ActionId> acts;
      for (std::size_t i = 3; i < toks.size(); ++i) {
        ActionId x = b_.action(std::string(toks[i].text));
        if (action_names_.size() <= x) action_names_.resize(x + 1);
        action_names_[x] = std::string(toks[i].text);
        if (std::find(acts.begin(), acts.end(), x) != acts.end()) fail("repeated action", l, toks[i]);
        acts.push_back(x);
      }
      avail_[q * k_ + a] = acts;
      b_.set_available(a, q, std::move(acts));
    }
  }

  std::vector<StateId>& row(StateId q) {
    if (rows_[q].empty()) {
      std::uint64_t c = k_ ? 1 : 0;
      for (AgentId a = 0; a < k_; ++a) c *= avail_[q * k_ + a].size();
      rows_[q].assign(c, kNoState);
    }
    return rows_[q];
  }

  void transitions() {
    rows_.assign(n_, {});
    auto it = by_name_.find("transitions");
    if (it == by_name_.end()) return;
    for (const auto& l : it->second->lines) {
      auto toks = tokenize(l);
      if (toks.size() >= 2 && toks[1].text == ":") {
        StateId q = state(l, toks[0]);
        auto& r = row(q);
        if (toks.size() - 2 != r.size())
          fail("row for '" + std::string(toks[0].text) + "' has " + std::to_string(toks.size() - 2) +
                   " targets, expected " + std::to_string(r.size()),
               l, toks[0]);
        for (std::size_t i = 2; i < toks.size(); ++i) {
          if (r[i - 2] != kNoState) fail("transition defined twice", l, toks[i]);
          r[i - 2] = state(l, toks[i]);
        }
        continue;
      }
      if (toks.size() != k_ + 3 || toks[k_ + 1].text != "=")
        fail("expected 'state " + std::string(k_ == 1 ? "action" : "a1 .. a" + std::to_string(k_)) + " = state'", l);
      StateId q = state(l, toks[0]);
      std::uint64_t idx = 0;
      for (AgentId a = 0; a < k_; ++a) {
        const auto& av = avail_[q * k_ + a];
        const Token& t = toks[a + 1];
        std::size_t p = 0;
        while (p < av.size() && action_names_[av[p]] != t.text) ++p;
        if (p == av.size())
          fail("action '" + std::string(t.text) + "' is not available to agent " + std::to_string(a + 1) +
                   " at this state",
               l, t);
        idx = idx * av.size() + p;
      }
      auto& r = row(q);
      if (r[idx] != kNoState) fail("transition defined twice", l, toks[0]);
      r[idx] = state(l, toks[k_ + 2]);
    }
  }

  void observation() {
    auto it = by_name_.find("observation");
    if (it == by_name_.end()) return;
    for (const auto& l : it->second->lines) {
      auto toks = tokenize(l);
      if (toks.size() < 2 || (toks[1].text != "=" && toks[1].text != "~"))
        fail("expected 'agent = states | states ...' or 'agent ~ state state'", l);
      AgentId a = agent(l, toks[0]);
      if (toks[1].text == "~") {
        if (toks.size() != 4) fail("a pair needs exactly two states", l, toks[1]);
        b_.add_indistinguishable(a, state(l, toks[2]), state(l, toks[3]));
        continue;
      }
      std::vector<StateId> group;
      for (std::size_t i = 2; i <= toks.size(); ++i) {
        if (i == toks.size() || toks[i].text == "|") {
          if (group.empty()) fail("empty observation group", l, toks[i - 1]);
          b_.add_observation_group(a, group);
          group.clear();
        } else {
          group.push_back(state(l, toks[i]));
        }
      }
    }
  }

 private:
  std::vector<ini::Section> sections_;
  std::map<std::string, const ini::Section*> by_name_;
  IcgsBuilder b_;
  std::unordered_map<std::string, StateId> state_index_;
  std::size_t k_ = 0, n_ = 0;
  std::vector<std::vector<ActionId>> avail_;
  std::vector<std::vector<StateId>> rows_;
  std::vector<std::string> action_names_;  // by id, as interned by the builder
};

void append_join(std::string& out, const std::vector<std::string>& names, std::string_view sep = " ") {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += sep;
    out += names[i];
  }
}

}  // namespace

Icgs parse_model(std::string_view text) {
  ModelReader r(text);
  return r.read();
}

std::string export_model(const Icgs& m) {
  const std::size_t k = m.num_agents(), n = m.num_states();
  std::string out;
  auto line = [&](std::string_view s) {
    out += s;
    out += '\n';
  };
  line("[agents]");
  {
    std::string s;
    for (AgentId a = 0; a < k; ++a) s += (a ? " " : "") + m.agent_name(a);
    line(s);
  }
  line("[states]");
  for (StateId q = 0; q < n; ++q) line(m.state_name(q));
  if (m.initial_state()) {
    line("[initial]");
    line(m.state_name(*m.initial_state()));
  }
  line("[propositions]");
  {
    std::string s;
    for (PropId p = 0; p < m.num_propositions(); ++p) s += (p ? " " : "") + m.proposition_name(p);
    line(s);
  }
  line("[labeling]");
  for (PropId p = 0; p < m.num_propositions(); ++p) {
    std::string s = m.proposition_name(p) + " =";
    m.labeling(p).for_each([&](StateId q) { s += " " + m.state_name(q); });
    line(s);
  }
  line("[actions]");
  for (StateId q = 0; q < n; ++q)
    for (AgentId a = 0; a < k; ++a) {
      std::string s = m.agent_name(a) + " " + m.state_name(q) + " =";
      for (ActionId x : m.available(a, q)) s += " " + m.action_name(x);
      line(s);
    }
  line("[transitions]");
  std::uint64_t total = 0;
  for (StateId q = 0; q < n; ++q) total += m.joint_action_count(q);
  const bool rows = total > kRowFormThreshold;
  for (StateId q = 0; q < n; ++q) {
    auto r = m.successor_row(q);
    if (r.empty()) continue;
    bool complete = std::find(r.begin(), r.end(), kNoState) == r.end();
    if (rows && complete) {
      std::string s = m.state_name(q) + " :";
      for (StateId t : r) s += " " + m.state_name(t);
      line(s);
      continue;
    }
    for (std::uint64_t j = 0; j < r.size(); ++j) {
      if (r[j] == kNoState) continue;
      auto pos = m.joint_positions(q, j);
      std::string s = m.state_name(q);
      for (AgentId a = 0; a < k; ++a) s += " " + m.action_name(m.available(a, q)[pos[a]]);
      s += " = " + m.state_name(r[j]);
      line(s);
    }
  }
  std::vector<std::string> obs;
  for (AgentId a = 0; a < k; ++a) {
    if (m.num_classes(a) == n) continue;
    std::vector<std::string> groups;
    for (ClassId c = 0; c < m.num_classes(a); ++c) {
      auto members = m.class_members(a, c);
      if (members.size() < 2) continue;
      std::vector<std::string> names;
      for (StateId q : members) names.push_back(m.state_name(q));
      std::string g;
      append_join(g, names);
      groups.push_back(std::move(g));
    }
    std::string s = m.agent_name(a) + " = ";
    append_join(s, groups, " | ");
    obs.push_back(std::move(s));
  }
  if (!obs.empty()) {
    line("[observation]");
    for (const auto& s : obs) line(s);
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("cannot write '" + path + "'");
}

Icgs load_model(const std::string& path) { return parse_model(read_text_file(path)); }
void save_model(const Icgs& model, const std::string& path) { write_text_file(path, export_model(model)); }

const std::string* FormulaBundle::find(std::string_view name, bool* is_aemc) const {
  for (const auto& [n, text] : atl)
    if (n == name) {
      if (is_aemc) *is_aemc = false;
      return &text;
    }
  for (const auto& [n, text] : aemc)
    if (n == name) {
      if (is_aemc) *is_aemc = true;
      return &text;
    }
  return nullptr;
}

FormulaBundle parse_bundle(std::string_view text) {
  FormulaBundle b;
  std::set<std::string> names;
  for (const auto& s : ini::split_sections(text)) {
    for (const auto& l : s.lines) {
      std::string_view key, value;
      if (!ini::split_assignment(l, key, value)) fail("expected 'name = value'", l);
      if (key.empty()) fail("missing name before '='", l);
      if (s.name == "instance") {
        if (key != "label") fail("unknown key '" + std::string(key) + "'", l);
        b.label = std::string(value);
      } else if (s.name == "aliases") {
        std::vector<std::string> members;
        std::istringstream ss{std::string(value)};
        for (std::string w; ss >> w;) members.push_back(w);
        b.aliases[std::string(key)] = std::move(members);
      } else if (s.name == "atl" || s.name == "aemc") {
        if (!names.insert(std::string(key)).second) fail("formula '" + std::string(key) + "' defined twice", l);
        (s.name == "atl" ? b.atl : b.aemc).emplace_back(std::string(key), std::string(value));
      } else {
        throw ParseError("unknown section [" + s.name + "]", s.line, 1);
      }
    }
  }
  return b;
}

std::string export_bundle(const FormulaBundle& b) {
  std::string out = "[instance]\nlabel = " + b.label + "\n";
  if (!b.aliases.empty()) {
    out += "[aliases]\n";
    for (const auto& [name, members] : b.aliases) {
      out += name + " =";
      for (const auto& m : members) out += " " + m;
      out += "\n";
    }
  }
  if (!b.atl.empty()) {
    out += "[atl]\n";
    for (const auto& [name, text] : b.atl) out += name + " = " + text + "\n";
  }
  if (!b.aemc.empty()) {
    out += "[aemc]\n";
    for (const auto& [name, text] : b.aemc) out += name + " = " + text + "\n";
  }
  return out;
}

FormulaBundle load_bundle(const std::string& path) { return parse_bundle(read_text_file(path)); }
void save_bundle(const FormulaBundle& bundle, const std::string& path) {
  write_text_file(path, export_bundle(bundle));
}

}  // namespace amc
