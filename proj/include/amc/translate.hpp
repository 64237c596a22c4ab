#pragma once

#include "amc/formula.hpp"

namespace amc {

// Naive fixpoint translation of ATL into AEMC:
//   p -> p, !f -> !t(f), f & g -> t(f) & t(g), <<A>>X f -> <<A>>X t(f)
//   <<A>>G f   -> nu Z . (t(f) & <<A>> X Z)
//   <<A>>F f   -> mu Z . (t(f) | <<A>> X Z)
//   <<A>>f U g -> mu Z . (t(g) | t(f) & <<A>> X Z)
// Each fixpoint gets a fresh variable: Z, Z1, Z2, ... in pre-order.
AemcFormula translate_aemc(const AtlFormula& f);

}  // namespace amc
