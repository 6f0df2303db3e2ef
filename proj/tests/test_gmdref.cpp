#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "igmd/errors.hpp"
#include "igmd/gmdref.hpp"
#include "igmd/igmd.hpp"
#include "igmd/init.hpp"
#include "util.hpp"

using igmd::ComplexMatrix;
using igmd::cplx;

namespace {

ComplexMatrix reconstruct(const igmd::DecompositionTriple& t) {
  return igmd::matmul(igmd::matmul(t.q, t.r), igmd::conj_transpose(t.s));
}

void check_equal_diagonal(const igmd::DecompositionTriple& t,
                          const ComplexMatrix& h) {
  const double sbar = igmd::geometric_mean_target(h);
  CHECK(igmd::unitarity_deviation(t.q) < 1e-12);
  CHECK(igmd::unitarity_deviation(t.s) < 1e-12);
  CHECK(igmd::relative_error(reconstruct(t), h) < 1e-12);
  for (std::size_t i = 0; i < t.r.rows(); ++i) {
    CHECK(t.r(i, i).imag() == 0.0);
    CHECK(std::abs(t.r(i, i).real() - sbar) <= 1e-10 * sbar);
    for (std::size_t j = 0; j < i; ++j) CHECK(t.r(i, j) == cplx(0.0));
  }
}

}  // namespace

TEST_CASE("equal-diagonal construction on random channels") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ComplexMatrix h = testutil::random_matrix(7, 7, 100 + seed);
    CAPTURE(seed);
    check_equal_diagonal(igmd::exact_gmd(h), h);
  }
}

TEST_CASE("equal-diagonal construction on a 2x2 diagonal") {
  ComplexMatrix h(2, 2);
  h(0, 0) = 8.0;
  h(1, 1) = 1.0;
  const igmd::DecompositionTriple t = igmd::exact_gmd(h);
  const double root8 = std::sqrt(8.0);
  CHECK(t.r(0, 0).real() == doctest::Approx(root8).epsilon(1e-12));
  CHECK(t.r(1, 1).real() == doctest::Approx(root8).epsilon(1e-12));
  check_equal_diagonal(t, h);
}

TEST_CASE("pairing crosses the mean when neighbours sit on one side") {
  // Values 4, 3, 2, 1/24 have geometric mean 1, so the leading pairs are all
  // above it and every stage must reach past the immediate neighbour.
  ComplexMatrix h(4, 4);
  h(0, 0) = 4.0;
  h(1, 1) = 3.0;
  h(2, 2) = 2.0;
  h(3, 3) = 1.0 / 24.0;
  const igmd::DecompositionTriple t = igmd::exact_gmd(h);
  check_equal_diagonal(t, h);
  CHECK(t.r(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fifty gm sweeps land close to the equal-diagonal value") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const ComplexMatrix h = testutil::random_matrix(7, 7, 500 + seed);
    const double sbar = igmd::geometric_mean_target(h);
    const igmd::IgmdResult res =
        igmd::igmd(h, igmd::InitKind::PlainSvd, igmd::OmegaKind::GM, 50);
    CAPTURE(seed);
    for (std::size_t i = 0; i < 7; ++i)
      CHECK(std::abs(res.triple.r(i, i).real() - sbar) <= 2e-4 * sbar);
  }
}

TEST_CASE("equal-diagonal construction rejects bad inputs") {
  CHECK_THROWS_AS(igmd::exact_gmd(testutil::random_matrix(3, 4, 1)),
                  std::invalid_argument);
  ComplexMatrix sing(3, 3);
  sing(0, 0) = 1.0;
  sing(1, 1) = 1.0;
  CHECK_THROWS_AS(igmd::exact_gmd(sing), igmd::numeric_error);
}
