#pragma once

#include "ssv/lattice.hpp"

namespace ssv {

// Finite generating set, with rational coordinates, of a full or partial
// overlattice inside a fixed ambient quadratic space with diagonal form.
struct RationalGeneratorSet {
    std::vector<std::vector<BigRat>> generators;  // rows, length = ambient dim
    std::vector<Int> ambient_diag;                // diagonal of the ambient form
};

struct Overlattice {
    IntLattice lattice;                     // Gram of the row-span basis
    std::vector<std::vector<BigRat>> basis; // basis rows in ambient coordinates
};

// Row-style Hermite normal form (pivots positive, entries above a pivot reduced
// mod the pivot).  Returns the reduced matrix; rank = number of nonzero rows.
std::vector<std::vector<BigInt>> hnf_rows(std::vector<std::vector<BigInt>> m);

// Z-span of the generators as a lattice.  Throws domain_error if some pairing
// between span basis vectors is non-integral (the generators do not define an
// integral lattice).
Overlattice overlattice_from_generators(const RationalGeneratorSet& gs);

}  // namespace ssv
