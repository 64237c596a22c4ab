#include "amc/formula.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace amc {

AtlFormula AtlFormula::make(Kind k, std::string name, Coalition c, std::vector<AtlFormula> ops, SourcePos pos) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->name = std::move(name);
  n->coalition = std::move(c);
  for (auto& o : ops) n->operands.push_back(std::move(o.node_));
  n->pos = pos;
  return AtlFormula(std::move(n));
}

AtlFormula AtlFormula::truth(SourcePos pos) { return make(Kind::True, {}, {}, {}, pos); }
AtlFormula AtlFormula::prop(std::string name, SourcePos pos) { return make(Kind::Prop, std::move(name), {}, {}, pos); }
AtlFormula AtlFormula::negation(AtlFormula f, SourcePos pos) { return make(Kind::Not, {}, {}, {std::move(f)}, pos); }
AtlFormula AtlFormula::conjunction(AtlFormula a, AtlFormula b, SourcePos pos) {
  return make(Kind::And, {}, {}, {std::move(a), std::move(b)}, pos);
}
AtlFormula AtlFormula::next(Coalition c, AtlFormula f, SourcePos pos) {
  return make(Kind::Next, {}, std::move(c), {std::move(f)}, pos);
}
AtlFormula AtlFormula::always(Coalition c, AtlFormula f, SourcePos pos) {
  return make(Kind::Always, {}, std::move(c), {std::move(f)}, pos);
}
AtlFormula AtlFormula::until(Coalition c, AtlFormula a, AtlFormula b, SourcePos pos) {
  return make(Kind::Until, {}, std::move(c), {std::move(a), std::move(b)}, pos);
}
AtlFormula AtlFormula::falsity(SourcePos pos) { return negation(truth(pos), pos); }
AtlFormula AtlFormula::disjunction(AtlFormula a, AtlFormula b, SourcePos pos) {
  return negation(conjunction(negation(std::move(a), pos), negation(std::move(b), pos), pos), pos);
}
AtlFormula AtlFormula::eventually(Coalition c, AtlFormula f, SourcePos pos) {
  return until(std::move(c), truth(pos), std::move(f), pos);
}

AemcFormula AemcFormula::make(Kind k, std::string name, Coalition c, std::vector<AemcFormula> ops, SourcePos pos) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->name = std::move(name);
  n->coalition = std::move(c);
  for (auto& o : ops) n->operands.push_back(std::move(o.node_));
  n->pos = pos;
  return AemcFormula(std::move(n));
}

AemcFormula AemcFormula::truth(SourcePos pos) { return make(Kind::True, {}, {}, {}, pos); }
AemcFormula AemcFormula::prop(std::string name, SourcePos pos) { return make(Kind::Prop, std::move(name), {}, {}, pos); }
AemcFormula AemcFormula::var(std::string name, SourcePos pos) { return make(Kind::Var, std::move(name), {}, {}, pos); }
AemcFormula AemcFormula::negation(AemcFormula f, SourcePos pos) { return make(Kind::Not, {}, {}, {std::move(f)}, pos); }
AemcFormula AemcFormula::conjunction(AemcFormula a, AemcFormula b, SourcePos pos) {
  return make(Kind::And, {}, {}, {std::move(a), std::move(b)}, pos);
}
AemcFormula AemcFormula::next(Coalition c, AemcFormula f, SourcePos pos) {
  return make(Kind::Next, {}, std::move(c), {std::move(f)}, pos);
}
AemcFormula AemcFormula::mu(std::string var, AemcFormula body, SourcePos pos) {
  return make(Kind::Mu, std::move(var), {}, {std::move(body)}, pos);
}
AemcFormula AemcFormula::nu(std::string var, AemcFormula body, SourcePos pos) {
  return make(Kind::Nu, std::move(var), {}, {std::move(body)}, pos);
}
AemcFormula AemcFormula::falsity(SourcePos pos) { return negation(truth(pos), pos); }
AemcFormula AemcFormula::disjunction(AemcFormula a, AemcFormula b, SourcePos pos) {
  return negation(conjunction(negation(std::move(a), pos), negation(std::move(b), pos), pos), pos);
}

// ---------------------------------------------------------------------------
// Printing.
//
// Prefix forms (strategic operators and fixpoints) extend as far right as
// possible when parsed, so they are parenthesized whenever something follows
// them. Binary bodies of prefix forms are parenthesized for readability.

namespace {

enum Prec { kPrefix = 0, kOr = 1, kAnd = 2, kNot = 3, kAtom = 4 };

std::string coalition_text(const std::vector<std::string>& c) {
  std::string s = "<<";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + c[i];
  return s + ">>";
}

// Sugar-level view of a node, shared by both printers.
template <class F>
struct View {
  enum Shape { True, False, Atom, Not, And, Or, Prefix, Until } shape;
  std::string head;        // atom text or prefix text
  std::vector<F> kids;     // operands after re-sugaring
};

template <class F>
bool is_negation(const F& f) {
  return f.kind() == F::Kind::Not;
}

template <class F>
View<F> sugar_common(const F& f) {
  using K = typename F::Kind;
  View<F> v;
  switch (f.kind()) {
    case K::True:
      v.shape = View<F>::True;
      break;
    case K::Prop:
      v.shape = View<F>::Atom;
      v.head = f.name();
      break;
    case K::Not: {
      F c = f.operand(0);
      if (c.kind() == K::True) {
        v.shape = View<F>::False;
      } else if (c.kind() == K::And && is_negation(c.operand(0)) && is_negation(c.operand(1))) {
        v.shape = View<F>::Or;
        v.kids = {c.operand(0).operand(0), c.operand(1).operand(0)};
      } else {
        v.shape = View<F>::Not;
        v.kids = {c};
      }
      break;
    }
    case K::And:
      v.shape = View<F>::And;
      v.kids = {f.operand(0), f.operand(1)};
      break;
    default:
      v.shape = View<F>::Prefix;
      break;
  }
  return v;
}

View<AtlFormula> sugar(const AtlFormula& f) {
  using K = AtlFormula::Kind;
  View<AtlFormula> v = sugar_common(f);
  if (v.shape != View<AtlFormula>::Prefix) return v;
  auto c = coalition_text(f.coalition());
  switch (f.kind()) {
    case K::Next: v.head = c + " X "; v.kids = {f.operand(0)}; break;
    case K::Always: v.head = c + " G "; v.kids = {f.operand(0)}; break;
    case K::Until:
      if (f.is_eventually()) {
        v.head = c + " F ";
        v.kids = {f.operand(1)};
      } else {
        v.shape = View<AtlFormula>::Until;
        v.head = c + " ";
        v.kids = {f.operand(0), f.operand(1)};
      }
      break;
    default: break;
  }
  return v;
}

View<AemcFormula> sugar(const AemcFormula& f) {
  using K = AemcFormula::Kind;
  View<AemcFormula> v = sugar_common(f);
  if (f.kind() == K::Var) {
    v.shape = View<AemcFormula>::Atom;
    v.head = f.name();
    return v;
  }
  if (v.shape != View<AemcFormula>::Prefix) return v;
  switch (f.kind()) {
    case K::Next: v.head = coalition_text(f.coalition()) + " X "; break;
    case K::Mu: v.head = "mu " + f.name() + " . "; break;
    case K::Nu: v.head = "nu " + f.name() + " . "; break;
    default: break;
  }
  v.kids = {f.operand(0)};
  return v;
}

template <class F>
class Printer {
 public:
  std::string print(const F& f, int min_prec, bool tail) {
    View<F> v = sugar(f);
    int prec = precedence(v.shape);
    bool parens = prec == kPrefix ? !tail : prec < min_prec;
    if (parens) return "(" + render(v, true) + ")";
    return render(v, tail);
  }

 private:
  static int precedence(typename View<F>::Shape s) {
    switch (s) {
      case View<F>::Or: return kOr;
      case View<F>::And: return kAnd;
      case View<F>::Not: return kNot;
      case View<F>::Prefix:
      case View<F>::Until: return kPrefix;
      default: return kAtom;
    }
  }

  static bool binary(const F& f) {
    auto s = sugar(f).shape;
    return s == View<F>::And || s == View<F>::Or;
  }

  std::string body(const F& f, bool tail) {
    if (binary(f)) return "(" + print(f, kPrefix, true) + ")";
    return print(f, kPrefix, tail);
  }

  std::string render(const View<F>& v, bool tail) {
    switch (v.shape) {
      case View<F>::True: return "true";
      case View<F>::False: return "false";
      case View<F>::Atom: return v.head;
      case View<F>::Not: return "!" + print(v.kids[0], kNot, tail);
      case View<F>::And: return print(v.kids[0], kAnd, false) + " & " + print(v.kids[1], kNot, tail);
      case View<F>::Or: return print(v.kids[0], kOr, false) + " | " + print(v.kids[1], kAnd, tail);
      case View<F>::Prefix: return v.head + body(v.kids[0], tail);
      case View<F>::Until: return v.head + body(v.kids[0], false) + " U " + body(v.kids[1], tail);
    }
    return {};
  }
};

}  // namespace

std::string to_string(const AtlFormula& f) { return Printer<AtlFormula>{}.print(f, kPrefix, true); }
std::string to_string(const AemcFormula& f) { return Printer<AemcFormula>{}.print(f, kPrefix, true); }

// ---------------------------------------------------------------------------

namespace {

void collect_free(const AemcFormula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  using K = AemcFormula::Kind;
  if (f.kind() == K::Var) {
    if (std::find(bound.begin(), bound.end(), f.name()) == bound.end()) out.insert(f.name());
    return;
  }
  if (f.is_fixpoint()) {
    bound.push_back(f.name());
    collect_free(f.operand(0), bound, out);
    bound.pop_back();
    return;
  }
  for (std::size_t i = 0; i < f.arity(); ++i) collect_free(f.operand(i), bound, out);
}

bool monotone_rec(const AemcFormula& f, int negations, std::vector<std::pair<std::string, int>>& binders) {
  using K = AemcFormula::Kind;
  switch (f.kind()) {
    case K::Var:
      for (auto it = binders.rbegin(); it != binders.rend(); ++it)
        if (it->first == f.name()) return (negations - it->second) % 2 == 0;
      return true;
    case K::Not: return monotone_rec(f.operand(0), negations + 1, binders);
    case K::Mu:
    case K::Nu: {
      binders.emplace_back(f.name(), negations);
      bool ok = monotone_rec(f.operand(0), negations, binders);
      binders.pop_back();
      return ok;
    }
    default:
      for (std::size_t i = 0; i < f.arity(); ++i)
        if (!monotone_rec(f.operand(i), negations, binders)) return false;
      return true;
  }
}

// True if some fixpoint of kind `opposite` inside f has `var` free.
bool opposite_uses(const AemcFormula& f, AemcFormula::Kind opposite, const std::string& var) {
  if (f.is_fixpoint() && f.name() == var) return false;  // shadowed
  if (f.kind() == opposite && free_variables(f).count(var)) return true;
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (opposite_uses(f.operand(i), opposite, var)) return true;
  return false;
}

}  // namespace

std::set<std::string> free_variables(const AemcFormula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

bool is_closed(const AemcFormula& f) { return free_variables(f).empty(); }

bool is_monotone(const AemcFormula& f) {
  std::vector<std::pair<std::string, int>> binders;
  return monotone_rec(f, 0, binders);
}

bool check_alternation_free(const AemcFormula& f) {
  using K = AemcFormula::Kind;
  if (f.is_fixpoint()) {
    K opposite = f.kind() == K::Mu ? K::Nu : K::Mu;
    if (opposite_uses(f.operand(0), opposite, f.name())) return false;
  }
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (!check_alternation_free(f.operand(i))) return false;
  return true;
}

std::vector<std::vector<std::string>> coalitions_of(const AtlFormula& f) {
  std::vector<std::vector<std::string>> out;
  std::function<void(const AtlFormula&)> walk = [&](const AtlFormula& g) {
    if (g.is_strategic()) out.push_back(g.coalition());
    for (std::size_t i = 0; i < g.arity(); ++i) walk(g.operand(i));
  };
  walk(f);
  return out;
}

std::vector<std::vector<std::string>> coalitions_of(const AemcFormula& f) {
  std::vector<std::vector<std::string>> out;
  std::function<void(const AemcFormula&)> walk = [&](const AemcFormula& g) {
    if (g.kind() == AemcFormula::Kind::Next) out.push_back(g.coalition());
    for (std::size_t i = 0; i < g.arity(); ++i) walk(g.operand(i));
  };
  walk(f);
  return out;
}

std::size_t depth(const AtlFormula& f) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < f.arity(); ++i) d = std::max(d, depth(f.operand(i)));
  return d + 1;
}

}  // namespace amc
