#include "igmd/init.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "igmd/decompose.hpp"
#include "igmd/errors.hpp"

namespace igmd {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

InitKind parse_init_kind(const std::string& s) {
  const std::string t = lower(s);
  if (t == "svd") return InitKind::PlainSvd;
  if (t == "intrlv-svd") return InitKind::InterleavedSvd;
  if (t == "qr") return InitKind::PlainQr;
  if (t == "vbqr") return InitKind::VblastQr;
  throw parse_error("unknown init '" + s +
                    "' (expected svd, intrlv-svd, qr or vbqr)");
}

std::string to_string(InitKind kind) {
  switch (kind) {
    case InitKind::PlainSvd:
      return "svd";
    case InitKind::InterleavedSvd:
      return "intrlv-svd";
    case InitKind::PlainQr:
      return "qr";
    case InitKind::VblastQr:
      return "vbqr";
  }
  throw std::invalid_argument("to_string: bad InitKind");
}

std::vector<std::size_t> interleave_permutation(std::size_t k) {
  std::vector<std::size_t> out;
  out.reserve(k);
  std::size_t lo = 1, hi = k;
  while (lo <= hi) {
    out.push_back(lo++);
    if (lo <= hi) out.push_back(hi--);
  }
  return out;
}

std::vector<std::size_t> vblast_order(const ComplexMatrix& h) {
  const std::size_t n = h.rows();
  const std::size_t m = h.cols();
  if (n < m || m == 0)
    throw std::invalid_argument("vblast_order: need rows >= cols >= 1");
  std::vector<std::size_t> remaining(m);
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  std::vector<std::size_t> pi(m, 0);

  for (std::size_t pos = m; pos > 0; --pos) {
    const std::size_t mr = remaining.size();
    ComplexMatrix aa(mr, mr);
    for (std::size_t i = 0; i < mr; ++i)
      for (std::size_t j = 0; j < mr; ++j) {
        cplx acc = 0.0;
        for (std::size_t t = 0; t < n; ++t)
          acc += std::conj(h(t, remaining[i])) * h(t, remaining[j]);
        aa(i, j) = acc;
      }

    // aa = l * l^H, then diag(aa^{-1})_c = squared norm of column c of l^{-1}.
    ComplexMatrix l(mr, mr);
    for (std::size_t j = 0; j < mr; ++j) {
      double dj = aa(j, j).real();
      for (std::size_t t = 0; t < j; ++t) dj -= std::norm(l(j, t));
      if (!(dj > 0.0))
        throw numeric_error("vblast_order: numerically rank-deficient input");
      l(j, j) = std::sqrt(dj);
      for (std::size_t i = j + 1; i < mr; ++i) {
        cplx acc = aa(i, j);
        for (std::size_t t = 0; t < j; ++t)
          acc -= l(i, t) * std::conj(l(j, t));
        l(i, j) = acc / l(j, j).real();
      }
    }

    std::size_t best = 0;
    double best_val = 0.0;
    std::vector<cplx> x(mr);
    for (std::size_t c = 0; c < mr; ++c) {
      for (std::size_t i = c; i < mr; ++i) {
        cplx acc = (i == c) ? cplx(1.0) : cplx(0.0);
        for (std::size_t t = c; t < i; ++t) acc -= l(i, t) * x[t];
        x[i] = acc / l(i, i).real();
      }
      double val = 0.0;
      for (std::size_t i = c; i < mr; ++i) val += std::norm(x[i]);
      if (c == 0 || val < best_val) {
        best = c;
        best_val = val;
      }
    }
    pi[pos - 1] = remaining[best] + 1;
    remaining.erase(remaining.begin() +
                    static_cast<std::ptrdiff_t>(best));
  }
  return pi;
}

DecompositionTriple init_decompose(const ComplexMatrix& h, InitKind kind) {
  if (h.rows() != h.cols() || h.rows() == 0)
    throw std::invalid_argument(
        "init_decompose: square nonempty matrix required");
  const std::size_t k = h.rows();

  switch (kind) {
    case InitKind::PlainSvd:
    case InitKind::InterleavedSvd: {
      const SvdResult sv = svd_full(h);
      if (!(sv.sigma.back() > 1e-12 * sv.sigma.front()))
        throw numeric_error("init_decompose: numerically rank-deficient input");
      std::vector<std::size_t> perm(k);
      if (kind == InitKind::InterleavedSvd) {
        perm = interleave_permutation(k);
      } else {
        std::iota(perm.begin(), perm.end(), std::size_t{1});
      }
      DecompositionTriple t{ComplexMatrix(k, k), ComplexMatrix(k, k),
                            ComplexMatrix(k, k)};
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t src = perm[j] - 1;
        for (std::size_t i = 0; i < k; ++i) {
          t.q(i, j) = sv.u(i, src);
          t.s(i, j) = sv.v(i, src);
        }
        t.r(j, j) = sv.sigma[src];
      }
      return t;
    }
    case InitKind::PlainQr: {
      QrResult qr = qr_decompose(h);
      return {std::move(qr.q), std::move(qr.r), ComplexMatrix::identity(k)};
    }
    case InitKind::VblastQr: {
      const std::vector<std::size_t> pi = vblast_order(h);
      ComplexMatrix hp(k, k);
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i) hp(i, j) = h(i, pi[j] - 1);
      QrResult qr = qr_decompose(hp);
      ComplexMatrix perm(k, k);
      for (std::size_t j = 0; j < k; ++j) perm(pi[j] - 1, j) = 1.0;
      return {std::move(qr.q), std::move(qr.r), std::move(perm)};
    }
  }
  throw std::invalid_argument("init_decompose: bad kind");
}

}  // namespace igmd
