#pragma once

#include "igmd/complex_matrix.hpp"
#include "igmd/igmd.hpp"

namespace igmd {

// Exact equal-diagonal decomposition: h = q * r * s^H with every diagonal
// entry of r equal to the geometric mean of the singular values. Starts from
// the SVD and, stage by stage, pairs one value above the mean with one below
// it (moved next to each other by symmetric permutations folded into q and s),
// then applies the stage rotation with the mean as the pivot. Computes the
// mean explicitly, which the iterative path deliberately avoids; this is the
// reference baseline.
DecompositionTriple exact_gmd(const ComplexMatrix& h);

}  // namespace igmd
