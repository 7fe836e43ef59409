#pragma once

#include "ortholab/lattice.hpp"
#include "ortholab/random.hpp"

namespace ortholab {

// Random symmetric annihilating relation on m points.
PreorthogonalitySpec random_preorthogonality(Rng& rng, int m);

// Mix of Boolean blocks, MO_k, the named fixtures, horizontal sums,
// products and cut completions, with at most max_n elements.
Ortholattice random_ortholattice(Rng& rng, int max_n);

// Draws until classify reports separative.
Ortholattice random_separative_lattice(Rng& rng, int max_n);

// Random subset of the centre, and a random orthogonal central family
// (central elements below distinct parts of a random partition of 1).
ElemSet random_central_subset(Rng& rng, const Ortholattice& L, ElemSet centre_set);
ElemSet random_central_orthogonal_family(Rng& rng, const Ortholattice& L, ElemSet centre_set);

}  // namespace ortholab
