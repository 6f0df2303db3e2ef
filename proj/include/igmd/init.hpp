#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "igmd/complex_matrix.hpp"
#include "igmd/igmd.hpp"

namespace igmd {

enum class InitKind : int {
  PlainSvd,        // diag(r) = singular values, descending
  InterleavedSvd,  // diag(r) = singular values in interleaved order
  PlainQr,         // QR of h, s = identity
  VblastQr,        // QR of h with VBLAST column ordering, s = permutation
};

// CLI spellings "svd", "intrlv-svd", "qr", "vbqr" (case-insensitive).
InitKind parse_init_kind(const std::string& s);
std::string to_string(InitKind kind);

// Starting decomposition h = q * r * s^H for a square full-rank h.
DecompositionTriple init_decompose(const ComplexMatrix& h, InitKind kind);

// The order 1, k, 2, k-1, 3, k-2, ... as 1-based indices into the descending
// singular values; position i of the result names the value placed at
// diagonal position i+1. k=7 gives [1, 7, 2, 6, 3, 5, 4].
std::vector<std::size_t> interleave_permutation(std::size_t k);

// VBLAST detection ordering as a 1-based column permutation pi: column j of
// h * Pi is column pi[j] of h. Filled from the last position backwards; each
// step keeps the column whose nulling row of the pseudo-inverse of the
// remaining submatrix has the smallest squared norm (ties break to the
// smallest column index).
std::vector<std::size_t> vblast_order(const ComplexMatrix& h);

}  // namespace igmd
