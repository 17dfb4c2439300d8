#pragma once

#include "slz/reduction.hpp"
#include "slz/unipotent.hpp"

namespace slz {

// Certificate reducing a null triangle boundary to the empty word. Letters must lie in P:
// shortcuts and plain letters over chi(N_P), plain letters over chi(M_P), and diagonal letters.
// The processed prefix is kept as gamma . nu_P(n) with gamma a search word for the M_P part.
// Throws std::invalid_argument for letters outside P or a non-null boundary.
Certificate fill_triangle(const Word& boundary, const ParabolicShape& P, const CostModel& cm = {},
                          const MWordOptions& mopt = {32, 6, true});

}  // namespace slz
