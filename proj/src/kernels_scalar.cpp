// Reference kernels. Compiled with -ffp-contract=off so every complex product
// is a plain multiply-multiply-add/sub sequence; the SIMD backends follow the
// same per-element operation order and must match these results bit for bit.

#include "igmd/kernels.hpp"

namespace igmd::kernels {

namespace {

void rot_rows_scalar(cplx* a, cplx* b, std::size_t n, const Block2x2& m) {
  const double w00r = m.m00.real(), w00i = m.m00.imag();
  const double w01r = m.m01.real(), w01i = m.m01.imag();
  const double w10r = m.m10.real(), w10i = m.m10.imag();
  const double w11r = m.m11.real(), w11i = m.m11.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    const double p1r = ar * w00r - ai * w00i, p1i = ai * w00r + ar * w00i;
    const double p2r = br * w01r - bi * w01i, p2i = bi * w01r + br * w01i;
    const double p3r = ar * w10r - ai * w10i, p3i = ai * w10r + ar * w10i;
    const double p4r = br * w11r - bi * w11i, p4i = bi * w11r + br * w11i;
    a[i] = cplx(p1r + p2r, p1i + p2i);
    b[i] = cplx(p3r + p4r, p3i + p4i);
  }
}

void rot_cols_scalar(cplx* p, std::size_t nrows, std::size_t stride,
                     const Block2x2& m) {
  const double w00r = m.m00.real(), w00i = m.m00.imag();
  const double w01r = m.m01.real(), w01i = m.m01.imag();
  const double w10r = m.m10.real(), w10i = m.m10.imag();
  const double w11r = m.m11.real(), w11i = m.m11.imag();
  for (std::size_t r = 0; r < nrows; ++r, p += stride) {
    const double xr = p[0].real(), xi = p[0].imag();
    const double yr = p[1].real(), yi = p[1].imag();
    const double p1r = xr * w00r - xi * w00i, p1i = xi * w00r + xr * w00i;
    const double p2r = yr * w10r - yi * w10i, p2i = yi * w10r + yr * w10i;
    const double p3r = xr * w01r - xi * w01i, p3i = xi * w01r + xr * w01i;
    const double p4r = yr * w11r - yi * w11i, p4i = yi * w11r + yr * w11i;
    p[0] = cplx(p1r + p2r, p1i + p2i);
    p[1] = cplx(p3r + p4r, p3i + p4i);
  }
}

void caxpy_scalar(cplx* dst, const cplx* src, cplx s, std::size_t n) {
  const double sr = s.real(), si = s.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = src[i].real(), xi = src[i].imag();
    const double pr = xr * sr - xi * si, pi = xi * sr + xr * si;
    dst[i] = cplx(dst[i].real() + pr, dst[i].imag() + pi);
  }
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend backend{"scalar", rot_rows_scalar, rot_cols_scalar,
                               caxpy_scalar};
  return backend;
}

}  // namespace igmd::kernels
