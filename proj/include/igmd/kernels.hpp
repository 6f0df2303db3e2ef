#pragma once

#include <complex>
#include <cstddef>

namespace igmd::kernels {

using cplx = std::complex<double>;

// 2x2 complex coefficient block, row major.
struct Block2x2 {
  cplx m00, m01, m10, m11;
};

// A set of elementwise vector kernels. Every backend must produce bit-identical
// results for identical inputs: each output element is computed from the
// same-index input elements with a fixed operation order (multiply, multiply,
// add/sub; no fused multiply-add), so scalar and SIMD variants agree exactly.
struct Backend {
  const char* name;
  // In place: [a; b] <- m * [a; b] applied per element over n entries.
  void (*rot_rows)(cplx* a, cplx* b, std::size_t n, const Block2x2& m);
  // In place on an adjacent column pair: for each of nrows rows starting at p
  // (advancing by stride), [p[0], p[1]] <- [p[0], p[1]] * m.
  void (*rot_cols)(cplx* p, std::size_t nrows, std::size_t stride,
                   const Block2x2& m);
  // dst[i] += s * src[i] for i in [0, n).
  void (*caxpy)(cplx* dst, const cplx* src, cplx s, std::size_t n);
};

const Backend& scalar_backend();
// Valid to call only when avx2_available() is true.
const Backend& avx2_backend();
bool avx2_available();

// The backend used by the library: AVX2 when compiled in and supported by the
// CPU, scalar otherwise. The environment variable IGMD_KERNELS=scalar|avx2
// forces a choice (requesting an unavailable one throws).
const Backend& active_backend();

}  // namespace igmd::kernels
