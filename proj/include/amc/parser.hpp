#pragma once

#include <string_view>

#include "amc/formula.hpp"

namespace amc {

// Parse formulas in the ASCII grammar documented in docs/grammar.ebnf.
// Throws ParseError carrying line and column of the offending token.
AtlFormula parse_atl(std::string_view text);
AemcFormula parse_aemc(std::string_view text);

}  // namespace amc
