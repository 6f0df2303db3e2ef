#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#include "igmd/kernels.hpp"

namespace ik = igmd::kernels;
using ik::cplx;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(dist(eng), dist(eng));
  return v;
}

ik::Block2x2 random_block(std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  auto c = [&] { return cplx(dist(eng), dist(eng)); };
  return {c(), c(), c(), c()};
}

bool bit_equal(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

}  // namespace

TEST_CASE("scalar rot_rows matches complex arithmetic") {
  const std::size_t n = 9;
  std::vector<cplx> a = random_vec(n, 1), b = random_vec(n, 2);
  const std::vector<cplx> a0 = a, b0 = b;
  const ik::Block2x2 m = random_block(3);
  ik::scalar_backend().rot_rows(a.data(), b.data(), n, m);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx ea = m.m00 * a0[i] + m.m01 * b0[i];
    const cplx eb = m.m10 * a0[i] + m.m11 * b0[i];
    CHECK(std::abs(a[i] - ea) < 1e-14);
    CHECK(std::abs(b[i] - eb) < 1e-14);
  }
}

TEST_CASE("scalar rot_cols matches complex arithmetic") {
  const std::size_t nrows = 7, stride = 5, off = 2;
  std::vector<cplx> buf = random_vec(nrows * stride, 4);
  const std::vector<cplx> buf0 = buf;
  const ik::Block2x2 m = random_block(5);
  ik::scalar_backend().rot_cols(buf.data() + off, nrows, stride, m);
  for (std::size_t r = 0; r < nrows; ++r) {
    const cplx x = buf0[r * stride + off], y = buf0[r * stride + off + 1];
    CHECK(std::abs(buf[r * stride + off] - (x * m.m00 + y * m.m10)) < 1e-14);
    CHECK(std::abs(buf[r * stride + off + 1] - (x * m.m01 + y * m.m11)) <
          1e-14);
    for (std::size_t c = 0; c < stride; ++c)
      if (c != off && c != off + 1) CHECK(buf[r * stride + c] == buf0[r * stride + c]);
  }
}

TEST_CASE("scalar caxpy matches complex arithmetic") {
  const std::size_t n = 11;
  std::vector<cplx> dst = random_vec(n, 6);
  const std::vector<cplx> dst0 = dst, src = random_vec(n, 7);
  const cplx s{0.3, -1.7};
  ik::scalar_backend().caxpy(dst.data(), src.data(), s, n);
  for (std::size_t i = 0; i < n; ++i)
    CHECK(std::abs(dst[i] - (dst0[i] + s * src[i])) < 1e-14);
}

TEST_CASE("avx2 backend is bit-identical to scalar") {
  if (!ik::avx2_available()) return;
  const ik::Backend& sc = ik::scalar_backend();
  const ik::Backend& av = ik::avx2_backend();
  CHECK(std::string(av.name) == "avx2");

  for (std::size_t n = 1; n <= 67; ++n) {
    const ik::Block2x2 m = random_block(100 + n);

    std::vector<cplx> a1 = random_vec(n, 200 + n), b1 = random_vec(n, 300 + n);
    std::vector<cplx> a2 = a1, b2 = b1;
    sc.rot_rows(a1.data(), b1.data(), n, m);
    av.rot_rows(a2.data(), b2.data(), n, m);
    CAPTURE(n);
    CHECK(bit_equal(a1, a2));
    CHECK(bit_equal(b1, b2));

    std::vector<cplx> d1 = random_vec(n, 400 + n);
    std::vector<cplx> d2 = d1;
    const std::vector<cplx> src = random_vec(n, 500 + n);
    const cplx s{-0.8, 0.6};
    sc.caxpy(d1.data(), src.data(), s, n);
    av.caxpy(d2.data(), src.data(), s, n);
    CHECK(bit_equal(d1, d2));
  }

  for (std::size_t stride = 2; stride <= 9; ++stride) {
    for (std::size_t off = 0; off + 1 < stride; ++off) {
      const std::size_t nrows = 13;
      const ik::Block2x2 m = random_block(600 + stride * 16 + off);
      std::vector<cplx> buf1 = random_vec(nrows * stride, 700 + stride * 16 + off);
      std::vector<cplx> buf2 = buf1;
      sc.rot_cols(buf1.data() + off, nrows, stride, m);
      av.rot_cols(buf2.data() + off, nrows, stride, m);
      CAPTURE(stride);
      CAPTURE(off);
      CHECK(bit_equal(buf1, buf2));
    }
  }
}

TEST_CASE("active backend reports a known name") {
  const std::string name = ik::active_backend().name;
  CHECK((name == "scalar" || name == "avx2"));
  if (ik::avx2_available() && std::getenv("IGMD_KERNELS") == nullptr)
    CHECK(name == "avx2");
}
