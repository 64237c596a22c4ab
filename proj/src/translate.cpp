#include "amc/translate.hpp"

namespace amc {

namespace {

class Translator {
 public:
  AemcFormula run(const AtlFormula& f) {
    using K = AtlFormula::Kind;
    using A = AemcFormula;
    switch (f.kind()) {
      case K::True: return A::truth(f.pos());
      case K::Prop: return A::prop(f.name(), f.pos());
      case K::Not: return A::negation(run(f.operand(0)), f.pos());
      case K::And: return A::conjunction(run(f.operand(0)), run(f.operand(1)), f.pos());
      case K::Next: return A::next(f.coalition(), run(f.operand(0)), f.pos());
      case K::Always: {
        std::string z = fresh();
        auto step = A::next(f.coalition(), A::var(z), f.pos());
        return A::nu(z, A::conjunction(run(f.operand(0)), step), f.pos());
      }
      case K::Until: {
        std::string z = fresh();
        auto step = A::next(f.coalition(), A::var(z), f.pos());
        if (f.is_eventually()) return A::mu(z, A::disjunction(run(f.operand(1)), step), f.pos());
        auto goal = run(f.operand(1));
        auto hold = run(f.operand(0));
        return A::mu(z, A::disjunction(goal, A::conjunction(hold, step)), f.pos());
      }
    }
    return A::truth();
  }

 private:
  std::string fresh() { return counter_++ == 0 ? "Z" : "Z" + std::to_string(counter_ - 1); }
  int counter_ = 0;
};

}  // namespace

AemcFormula translate_aemc(const AtlFormula& f) { return Translator{}.run(f); }

}  // namespace amc
