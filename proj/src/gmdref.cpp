#include "igmd/gmdref.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "igmd/decompose.hpp"
#include "igmd/errors.hpp"

namespace igmd {

namespace {

// Symmetric permutation r <- P r P for the transposition (i, p), folded into
// column swaps of q and s so that q * r * s^H is unchanged.
void swap_pair(DecompositionTriple& t, std::size_t i, std::size_t p) {
  const std::size_t n = t.r.cols();
  for (std::size_t j = 0; j < n; ++j) std::swap(t.r(i, j), t.r(p, j));
  for (std::size_t row = 0; row < n; ++row)
    std::swap(t.r(row, i), t.r(row, p));
  for (std::size_t row = 0; row < t.q.rows(); ++row)
    std::swap(t.q(row, i), t.q(row, p));
  for (std::size_t row = 0; row < t.s.rows(); ++row)
    std::swap(t.s(row, i), t.s(row, p));
}

}  // namespace

DecompositionTriple exact_gmd(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0)
    throw std::invalid_argument("exact_gmd: square nonempty matrix required");
  const std::size_t k = h.rows();

  const SvdResult sv = svd_full(h);
  if (!(sv.sigma.back() > 1e-12 * sv.sigma.front()))
    throw numeric_error("exact_gmd: numerically rank-deficient input");
  double mean_log = 0.0;
  for (double x : sv.sigma) mean_log += std::log(x);
  const double sbar = std::exp(mean_log / static_cast<double>(k));

  DecompositionTriple t{sv.u, ComplexMatrix(k, k), sv.v};
  for (std::size_t i = 0; i < k; ++i) t.r(i, i) = sv.sigma[i];

  // One stage per position: pick a partner on the other side of the mean so
  // the 2x2 block brackets it, rotate the leading entry to the mean exactly.
  for (std::size_t k0 = 0; k0 + 1 < k; ++k0) {
    const double d1 = t.r(k0, k0).real();
    const double d2 = t.r(k0 + 1, k0 + 1).real();
    if ((d1 - sbar) * (d2 - sbar) > 0.0) {
      for (std::size_t p = k0 + 2; p < k; ++p) {
        const double dp = t.r(p, p).real();
        if ((dp - sbar) * (d1 - sbar) <= 0.0) {
          swap_pair(t, k0 + 1, p);
          break;
        }
      }
    }
    apply_stage_pivot(t, k0 + 1, sbar);
  }
  return t;
}

}  // namespace igmd
