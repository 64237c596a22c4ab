#pragma once

// ASTs for ATL and for the alternating epistemic mu-calculus (AEMC).
//
// Nodes are immutable and shared. Coalitions are kept as the agent (or alias)
// names written in the formula and are resolved against a model only at check
// time. Derived operators are stored desugared:
//   false      = !true
//   a | b      = !(!a & !b)
//   <<A>> F a  = <<A>> (true U a)
// The printers re-sugar these shapes, so printing and parsing round-trip.

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace amc {

struct SourcePos {
  int line = 0;
  int column = 0;
};

namespace detail {

template <class KindT>
struct FormulaNode {
  KindT kind;
  std::string name;                     // proposition or variable
  std::vector<std::string> coalition;   // strategic operators
  std::vector<std::shared_ptr<const FormulaNode>> operands;
  SourcePos pos;
};

template <class KindT>
bool structurally_equal(const FormulaNode<KindT>& a, const FormulaNode<KindT>& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.name != b.name || a.coalition != b.coalition ||
      a.operands.size() != b.operands.size())
    return false;
  for (std::size_t i = 0; i < a.operands.size(); ++i)
    if (!structurally_equal(*a.operands[i], *b.operands[i])) return false;
  return true;
}

}  // namespace detail

class AtlFormula {
 public:
  enum class Kind { True, Prop, Not, And, Next, Always, Until };
  using Coalition = std::vector<std::string>;

  static AtlFormula truth(SourcePos pos = {});
  static AtlFormula prop(std::string name, SourcePos pos = {});
  static AtlFormula negation(AtlFormula f, SourcePos pos = {});
  static AtlFormula conjunction(AtlFormula a, AtlFormula b, SourcePos pos = {});
  static AtlFormula next(Coalition c, AtlFormula f, SourcePos pos = {});
  static AtlFormula always(Coalition c, AtlFormula f, SourcePos pos = {});
  static AtlFormula until(Coalition c, AtlFormula a, AtlFormula b, SourcePos pos = {});
  // Derived forms, returned desugared.
  static AtlFormula falsity(SourcePos pos = {});
  static AtlFormula disjunction(AtlFormula a, AtlFormula b, SourcePos pos = {});
  static AtlFormula eventually(Coalition c, AtlFormula f, SourcePos pos = {});

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const Coalition& coalition() const { return node_->coalition; }
  std::size_t arity() const { return node_->operands.size(); }
  AtlFormula operand(std::size_t i) const { return AtlFormula(node_->operands.at(i)); }
  SourcePos pos() const { return node_->pos; }

  bool is_strategic() const { return kind() == Kind::Next || kind() == Kind::Always || kind() == Kind::Until; }
  // <<A>> (true U f)
  bool is_eventually() const { return kind() == Kind::Until && operand(0).kind() == Kind::True; }
  // Identity of the shared node; equal formulas may still have distinct ids.
  const void* id() const { return node_.get(); }

  friend bool operator==(const AtlFormula& a, const AtlFormula& b) {
    return detail::structurally_equal(*a.node_, *b.node_);
  }

 private:
  using Node = detail::FormulaNode<Kind>;
  explicit AtlFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static AtlFormula make(Kind k, std::string name, Coalition c, std::vector<AtlFormula> ops, SourcePos pos);

  std::shared_ptr<const Node> node_;
};

class AemcFormula {
 public:
  enum class Kind { True, Prop, Var, Not, And, Next, Mu, Nu };
  using Coalition = std::vector<std::string>;

  static AemcFormula truth(SourcePos pos = {});
  static AemcFormula prop(std::string name, SourcePos pos = {});
  static AemcFormula var(std::string name, SourcePos pos = {});
  static AemcFormula negation(AemcFormula f, SourcePos pos = {});
  static AemcFormula conjunction(AemcFormula a, AemcFormula b, SourcePos pos = {});
  static AemcFormula next(Coalition c, AemcFormula f, SourcePos pos = {});
  static AemcFormula mu(std::string var, AemcFormula body, SourcePos pos = {});
  static AemcFormula nu(std::string var, AemcFormula body, SourcePos pos = {});
  static AemcFormula falsity(SourcePos pos = {});
  static AemcFormula disjunction(AemcFormula a, AemcFormula b, SourcePos pos = {});

  Kind kind() const { return node_->kind; }
  // Proposition name, variable name, or the variable bound by mu/nu.
  const std::string& name() const { return node_->name; }
  const Coalition& coalition() const { return node_->coalition; }
  std::size_t arity() const { return node_->operands.size(); }
  AemcFormula operand(std::size_t i) const { return AemcFormula(node_->operands.at(i)); }
  SourcePos pos() const { return node_->pos; }
  bool is_fixpoint() const { return kind() == Kind::Mu || kind() == Kind::Nu; }
  const void* id() const { return node_.get(); }

  friend bool operator==(const AemcFormula& a, const AemcFormula& b) {
    return detail::structurally_equal(*a.node_, *b.node_);
  }

 private:
  using Node = detail::FormulaNode<Kind>;
  explicit AemcFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static AemcFormula make(Kind k, std::string name, Coalition c, std::vector<AemcFormula> ops, SourcePos pos);

  std::shared_ptr<const Node> node_;
};

std::string to_string(const AtlFormula& f);
std::string to_string(const AemcFormula& f);

// Free second-order variables.
std::set<std::string> free_variables(const AemcFormula& f);
bool is_closed(const AemcFormula& f);
// Every bound variable occurs under an even number of negations inside its binder.
bool is_monotone(const AemcFormula& f);
// No mu-subformula of a nu-body mentions the nu-variable free, and vice versa.
bool check_alternation_free(const AemcFormula& f);

// Coalitions of all strategic operators, in pre-order.
std::vector<std::vector<std::string>> coalitions_of(const AtlFormula& f);
std::vector<std::vector<std::string>> coalitions_of(const AemcFormula& f);

std::size_t depth(const AtlFormula& f);

}  // namespace amc
