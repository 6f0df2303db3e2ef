#pragma once

#include <vector>

#include "igmd/complex_matrix.hpp"

namespace igmd {

struct QrResult {
  ComplexMatrix q;  // semi-unitary, rows(a) x cols(a)
  ComplexMatrix r;  // upper triangular with real, strictly positive diagonal
};

// Householder QR with the diagonal phase rotated into q so that diag(r) is
// real positive. Requires rows >= cols and numerical full column rank
// (every |r_kk| >= 1e-12 * ||a||_F).
QrResult qr_decompose(const ComplexMatrix& a);

struct SvdResult {
  ComplexMatrix u;
  std::vector<double> sigma;  // descending, nonnegative
  ComplexMatrix v;
};

// One-sided Jacobi SVD: a = u * diag(sigma) * v^H with u, v semi-unitary.
SvdResult svd_full(const ComplexMatrix& a);

struct Svd2x2 {
  ComplexMatrix u;  // 2x2 unitary
  double sigma1;    // >= sigma2
  double sigma2;    // >= 0
  ComplexMatrix v;  // 2x2 unitary
};

// Closed-form SVD of a 2x2 upper-triangular block with real positive diagonal.
// The complex off-diagonal phase is split off first so the core problem is a
// real 2x2 rotation pair; u and v are exactly unitary by construction.
Svd2x2 svd_2x2_upper(const ComplexMatrix& r);

namespace detail {

// Raw factors of svd_2x2_upper for the hot path: u = diag(1, e^{-i phi}) * Ur
// and v = diag(1, e^{-i phi}) * Vr with Ur, Vr real rotations given row major.
struct Svd2x2Raw {
  double ur[4];
  double vr[4];
  double phi;
  double s1, s2;
};

Svd2x2Raw svd_2x2_upper_raw(double r00, cplx r01, double r11);

}  // namespace detail

}  // namespace igmd
