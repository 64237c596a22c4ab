#pragma once

// Generators for the benchmark families: the two-vehicle intersection,
// Castles and TianJi (plain and with the King committing first).

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amc/formula.hpp"
#include "amc/icgs.hpp"
#include "amc/model_io.hpp"

namespace amc {

struct BenchmarkInstance {
  Icgs model;
  StateId initial = 0;
  std::string label;  // e.g. "4 (1,1,1)" or "horses=5"
  AliasMap aliases;
  std::vector<std::pair<std::string, AtlFormula>> atl;
  // Naive translations, named after their source with a trailing 'p'.
  std::vector<std::pair<std::string, AemcFormula>> aemc;

  FormulaBundle bundle() const;
};

// Agents "1" and "2"; states q_oo, q_oi, q_io, q_ii, q_c.
// Formulas: safe = <<1>> G !collision, crash = <<1,2>> F collision.
BenchmarkInstance gen_intersection();

// Agents Environment, then Workers w1..wN grouped by castle. States are named
// h<HP1><HP2><HP3>_<cooldown bits>, e.g. h333_000.
// Formulas: psi1 = <<c12>> F castle3defeated, psi2 = <<w12>> F alldefeated.
BenchmarkInstance gen_castles(unsigned w1, unsigned w2, unsigned w3);

// Agents tianji and king with n horses each. States are all tuples (TianJi's
// horses, King's horses, TianJi's wins, King's wins) with equally many horses
// left and at most as many wins as races run; the initial state comes first.
// With `modified`, each race takes two steps: the King commits a horse, then
// TianJi answers seeing the commitment, which is part of the state.
// Formulas: phi1 = <<tianji>> F tianjiwins,
//           phi2 = <<tianji>> G <<tianji>> X tianjiwonraces.
BenchmarkInstance gen_tianji(unsigned n, bool modified);

// name: intersection | castles | tianji | modtianji. config: "w1,w2,w3" for
// castles (parentheses optional), the number of horses for the TianJi
// variants, empty for intersection. Throws UnknownNameError or
// InvalidArgumentError.
BenchmarkInstance generate_benchmark(std::string_view name, std::string_view config);

}  // namespace amc
