#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ortholab/lattice.hpp"

namespace ortholab {

// Builds an ortholattice from its Hasse diagram. Edges are (lower, upper)
// label pairs and `orthopairs` lists each p with its orthocomplement once.
Ortholattice lattice_from_covers(const std::vector<std::string>& names,
                                 const std::vector<std::pair<std::string, std::string>>& edges,
                                 const std::vector<std::pair<std::string, std::string>>& orthopairs);

Ortholattice fig_h1();          // ten-element non-orthomodular example with [p]_p != [p]
Ortholattice orthodouble_b8();  // two copies of B8 glued at 0 and 1, perp swapping copies
Ortholattice hexagon_o6();      // 0 < a < b < 1, 0 < b' < a' < 1
Ortholattice mo2();             // 0, x, x', y, y', 1

// Hasse edges of fig_h1 as drawn, for regression tests of the DOT emitter.
std::vector<std::pair<std::string, std::string>> fig_h1_edges();

}  // namespace ortholab
