// AVX2 kernels. Two complex doubles per 256-bit vector; each complex product
// is multiply, multiply, addsub, exactly mirroring the scalar backend (which
// is why both translation units are built with -ffp-contract=off). Odd-length
// tails fall back to the same scalar expressions.

#include "igmd/kernels.hpp"

#include <stdexcept>

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace igmd::kernels {

bool avx2_compiled_in() {
#if defined(__AVX2__)
  return true;
#else
  return false;
#endif
}

#if defined(__AVX2__)

namespace {

// [z0, z1] * w for complex z pairs: re = zr*wr - zi*wi, im = zi*wr + zr*wi.
inline __m256d cmul_by_scalar(__m256d z, __m256d wr, __m256d wi) {
  __m256d zs = _mm256_shuffle_pd(z, z, 0x5);  // swap re/im in each half
  return _mm256_addsub_pd(_mm256_mul_pd(z, wr), _mm256_mul_pd(zs, wi));
}

void rot_rows_avx2(cplx* a, cplx* b, std::size_t n, const Block2x2& m) {
  const __m256d w00r = _mm256_set1_pd(m.m00.real());
  const __m256d w00i = _mm256_set1_pd(m.m00.imag());
  const __m256d w01r = _mm256_set1_pd(m.m01.real());
  const __m256d w01i = _mm256_set1_pd(m.m01.imag());
  const __m256d w10r = _mm256_set1_pd(m.m10.real());
  const __m256d w10i = _mm256_set1_pd(m.m10.imag());
  const __m256d w11r = _mm256_set1_pd(m.m11.real());
  const __m256d w11i = _mm256_set1_pd(m.m11.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i));
    __m256d vb = _mm256_loadu_pd(reinterpret_cast<const double*>(b + i));
    __m256d na = _mm256_add_pd(cmul_by_scalar(va, w00r, w00i),
                               cmul_by_scalar(vb, w01r, w01i));
    __m256d nb = _mm256_add_pd(cmul_by_scalar(va, w10r, w10i),
                               cmul_by_scalar(vb, w11r, w11i));
    _mm256_storeu_pd(reinterpret_cast<double*>(a + i), na);
    _mm256_storeu_pd(reinterpret_cast<double*>(b + i), nb);
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    const double p1r = ar * m.m00.real() - ai * m.m00.imag();
    const double p1i = ai * m.m00.real() + ar * m.m00.imag();
    const double p2r = br * m.m01.real() - bi * m.m01.imag();
    const double p2i = bi * m.m01.real() + br * m.m01.imag();
    const double p3r = ar * m.m10.real() - ai * m.m10.imag();
    const double p3i = ai * m.m10.real() + ar * m.m10.imag();
    const double p4r = br * m.m11.real() - bi * m.m11.imag();
    const double p4i = bi * m.m11.real() + br * m.m11.imag();
    a[i] = cplx(p1r + p2r, p1i + p2i);
    b[i] = cplx(p3r + p4r, p3i + p4i);
  }
}

void rot_cols_avx2(cplx* p, std::size_t nrows, std::size_t stride,
                   const Block2x2& m) {
  // One 256-bit vector holds the adjacent pair [x, y] of a row.
  const __m256d wa = _mm256_setr_pd(m.m00.real(), m.m00.imag(), m.m01.real(),
                                    m.m01.imag());
  const __m256d wb = _mm256_setr_pd(m.m10.real(), m.m10.imag(), m.m11.real(),
                                    m.m11.imag());
  const __m256d war = _mm256_movedup_pd(wa);
  const __m256d wai = _mm256_permute_pd(wa, 0xF);
  const __m256d wbr = _mm256_movedup_pd(wb);
  const __m256d wbi = _mm256_permute_pd(wb, 0xF);
  for (std::size_t r = 0; r < nrows; ++r, p += stride) {
    __m256d v = _mm256_loadu_pd(reinterpret_cast<const double*>(p));
    __m256d x2 = _mm256_permute2f128_pd(v, v, 0x00);  // [x, x]
    __m256d y2 = _mm256_permute2f128_pd(v, v, 0x11);  // [y, y]
    __m256d xs = _mm256_shuffle_pd(x2, x2, 0x5);
    __m256d ys = _mm256_shuffle_pd(y2, y2, 0x5);
    // [x*m00 + y*m10, x*m01 + y*m11]
    __m256d p1 = _mm256_addsub_pd(_mm256_mul_pd(x2, war),
                                  _mm256_mul_pd(xs, wai));
    __m256d p2 = _mm256_addsub_pd(_mm256_mul_pd(y2, wbr),
                                  _mm256_mul_pd(ys, wbi));
    _mm256_storeu_pd(reinterpret_cast<double*>(p), _mm256_add_pd(p1, p2));
  }
}

void caxpy_avx2(cplx* dst, const cplx* src, cplx s, std::size_t n) {
  const __m256d sr = _mm256_set1_pd(s.real());
  const __m256d si = _mm256_set1_pd(s.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vs = _mm256_loadu_pd(reinterpret_cast<const double*>(src + i));
    __m256d vd = _mm256_loadu_pd(reinterpret_cast<const double*>(dst + i));
    __m256d sum = _mm256_add_pd(vd, cmul_by_scalar(vs, sr, si));
    _mm256_storeu_pd(reinterpret_cast<double*>(dst + i), sum);
  }
  for (; i < n; ++i) {
    const double xr = src[i].real(), xi = src[i].imag();
    const double pr = xr * s.real() - xi * s.imag();
    const double pi = xi * s.real() + xr * s.imag();
    dst[i] = cplx(dst[i].real() + pr, dst[i].imag() + pi);
  }
}

}  // namespace

const Backend& avx2_backend() {
  static const Backend backend{"avx2", rot_rows_avx2, rot_cols_avx2,
                               caxpy_avx2};
  return backend;
}

#else

const Backend& avx2_backend() {
  throw std::runtime_error("avx2 backend not compiled in");
}

#endif

}  // namespace igmd::kernels
