#include "igmd/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "igmd/errors.hpp"

namespace igmd {

namespace {

constexpr double kRankTol = 1e-12;  // relative to ||a||_F

double col_norm(const ComplexMatrix& a, std::size_t j, std::size_t from) {
  double s = 0.0;
  for (std::size_t i = from; i < a.rows(); ++i) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

QrResult qr_decompose(const ComplexMatrix& a) {
  const std::size_t n = a.rows(), m = a.cols();
  if (n < m) throw std::invalid_argument("qr_decompose: rows < cols");
  if (n == 0) throw std::invalid_argument("qr_decompose: empty matrix");
  const double norm_a = frobenius_norm(a);

  ComplexMatrix r = a;
  ComplexMatrix q = ComplexMatrix::identity(n);
  std::vector<cplx> v(n);
  for (std::size_t j = 0; j < m; ++j) {
    // Householder reflector zeroing r(j+1.., j).
    double xnorm = col_norm(r, j, j);
    if (xnorm > 0.0) {
      cplx x0 = r(j, j);
      double ax0 = std::abs(x0);
      cplx phase = (ax0 > 0.0) ? x0 / ax0 : cplx(1.0);
      double vnorm2 = 0.0;
      for (std::size_t i = j; i < n; ++i) {
        v[i] = r(i, j);
        if (i == j) v[i] += phase * xnorm;
        vnorm2 += std::norm(v[i]);
      }
      if (vnorm2 > 0.0) {
        double beta = 2.0 / vnorm2;
        // r <- (I - beta v v^H) r on rows j..n-1
        for (std::size_t c = j; c < m; ++c) {
          cplx dot = 0.0;
          for (std::size_t i = j; i < n; ++i) dot += std::conj(v[i]) * r(i, c);
          dot *= beta;
          for (std::size_t i = j; i < n; ++i) r(i, c) -= dot * v[i];
        }
        // q <- q (I - beta v v^H)
        for (std::size_t i = 0; i < n; ++i) {
          cplx dot = 0.0;
          for (std::size_t c = j; c < n; ++c) dot += q(i, c) * v[c];
          dot *= beta;
          for (std::size_t c = j; c < n; ++c) q(i, c) -= dot * std::conj(v[c]);
        }
      }
      for (std::size_t i = j + 1; i < n; ++i) r(i, j) = 0.0;  // exact by design
    }
  }

  // Rotate diagonal phases into q so diag(r) is real positive.
  for (std::size_t j = 0; j < m; ++j) {
    cplx d = r(j, j);
    double ad = std::abs(d);
    if (ad < kRankTol * norm_a)
      throw numeric_error("qr_decompose: numerically rank-deficient input");
    cplx phase = d / ad;
    cplx ip = std::conj(phase);
    for (std::size_t c = j; c < m; ++c) r(j, c) *= ip;
    r(j, j) = ad;
    for (std::size_t i = 0; i < n; ++i) q(i, j) *= phase;
  }

  // Semi-unitary q: keep the m columns spanning the range.
  ComplexMatrix qt(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) qt(i, j) = q(i, j);
  ComplexMatrix rt(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) rt(i, j) = r(i, j);
  return {std::move(qt), std::move(rt)};
}

SvdResult svd_full(const ComplexMatrix& a) {
  const std::size_t n = a.rows(), m = a.cols();
  if (n == 0 || m == 0) throw std::invalid_argument("svd_full: empty matrix");
  if (n < m) {
    // Work on the adjoint and swap the factor roles.
    SvdResult t = svd_full(conj_transpose(a));
    return {std::move(t.v), std::move(t.sigma), std::move(t.u)};
  }

  ComplexMatrix w = a;
  ComplexMatrix v = ComplexMatrix::identity(m);
  const double tol = 1e-14;
  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool converged = true;
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        double alpha = 0.0, beta = 0.0;
        cplx gamma = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          alpha += std::norm(w(i, p));
          beta += std::norm(w(i, q));
          gamma += std::conj(w(i, p)) * w(i, q);
        }
        double ag = std::abs(gamma);
        if (ag <= tol * std::sqrt(alpha * beta) || ag == 0.0) continue;
        converged = false;
        // Phase-align column q, then a real Jacobi angle zeroes the coupling.
        cplx eip = gamma / ag;
        double tau = (beta - alpha) / (2.0 * ag);
        double t = (tau >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        cplx mpq = s * eip;           // applied as [[c, mpq], [-conj(mpq), c]]
        for (std::size_t i = 0; i < n; ++i) {
          cplx wp = w(i, p), wq = w(i, q);
          w(i, p) = c * wp - std::conj(mpq) * wq;
          w(i, q) = mpq * wp + c * wq;
        }
        for (std::size_t i = 0; i < m; ++i) {
          cplx vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - std::conj(mpq) * vq;
          v(i, q) = mpq * vp + c * vq;
        }
      }
    }
    if (converged) break;
  }

  std::vector<double> norms(m);
  for (std::size_t j = 0; j < m; ++j) norms[j] = col_norm(w, j, 0);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  SvdResult out;
  out.u = ComplexMatrix(n, m);
  out.v = ComplexMatrix(m, m);
  out.sigma.resize(m);
  double sigma_max = m ? norms[order[0]] : 0.0;
  std::vector<std::size_t> null_cols;
  for (std::size_t j = 0; j < m; ++j) {
    std::size_t src = order[j];
    out.sigma[j] = norms[src];
    for (std::size_t i = 0; i < m; ++i) out.v(i, j) = v(i, src);
    if (norms[src] > 0.0 && norms[src] > 1e-300 * std::max(1.0, sigma_max)) {
      for (std::size_t i = 0; i < n; ++i) out.u(i, j) = w(i, src) / norms[src];
    } else {
      out.sigma[j] = 0.0;
      null_cols.push_back(j);
    }
  }
  if (!null_cols.empty()) {
    // Complete u with orthonormal columns for the zero singular values.
    std::vector<bool> filled(m, true);
    for (std::size_t j : null_cols) filled[j] = false;
    std::size_t next = 0;
    for (std::size_t j : null_cols) {
      for (; next < n; ++next) {
        std::vector<cplx> cand(n, 0.0);
        cand[next] = 1.0;
        for (std::size_t c = 0; c < m; ++c) {
          if (!filled[c]) continue;
          cplx dot = 0.0;
          for (std::size_t i = 0; i < n; ++i)
            dot += std::conj(out.u(i, c)) * cand[i];
          for (std::size_t i = 0; i < n; ++i) cand[i] -= dot * out.u(i, c);
        }
        double nn = 0.0;
        for (const cplx& x : cand) nn += std::norm(x);
        nn = std::sqrt(nn);
        if (nn > 0.5) {
          for (std::size_t i = 0; i < n; ++i) out.u(i, j) = cand[i] / nn;
          filled[j] = true;
          ++next;
          break;
        }
      }
    }
  }
  return out;
}

namespace detail {

Svd2x2Raw svd_2x2_upper_raw(double r00, cplx r01, double r11) {
  Svd2x2Raw out{};
  const double a = r00;
  const double d = r11;
  const double f = std::abs(r01);
  out.phi = (f > 0.0) ? std::arg(r01) : 0.0;

  // Real SVD of [[a, f], [0, d]] via two exact rotations: the right angle
  // diagonalizes the Gram matrix, the left angle orthogonalizes the image.
  const double two_theta = std::atan2(2.0 * a * f, a * a - f * f - d * d);
  const double theta_v = 0.5 * two_theta;
  double cv = std::cos(theta_v), sv = std::sin(theta_v);
  // W = M * V with V = [[cv, -sv], [sv, cv]]
  double w00 = a * cv + f * sv, w01 = -a * sv + f * cv;
  double w10 = d * sv, w11 = d * cv;
  const double theta_u = std::atan2(w10, w00);
  double cu = std::cos(theta_u), su = std::sin(theta_u);
  // Sigma = U^T W with U = [[cu, -su], [su, cu]]
  double s1 = cu * w00 + su * w10;
  double s2 = -su * w01 + cu * w11;
  double v00 = cv, v01 = -sv, v10 = sv, v11 = cv;
  if (s2 < 0.0) {
    s2 = -s2;
    v01 = -v01;
    v11 = -v11;
  }
  double u00 = cu, u01 = -su, u10 = su, u11 = cu;
  if (s1 < s2) {
    std::swap(s1, s2);
    std::swap(u00, u01);
    std::swap(u10, u11);
    std::swap(v00, v01);
    std::swap(v10, v11);
  }
  out.ur[0] = u00;
  out.ur[1] = u01;
  out.ur[2] = u10;
  out.ur[3] = u11;
  out.vr[0] = v00;
  out.vr[1] = v01;
  out.vr[2] = v10;
  out.vr[3] = v11;
  out.s1 = s1;
  out.s2 = s2;
  return out;
}

}  // namespace detail

Svd2x2 svd_2x2_upper(const ComplexMatrix& r) {
  if (r.rows() != 2 || r.cols() != 2)
    throw std::invalid_argument("svd_2x2_upper: matrix must be 2x2");
  if (r(1, 0) != cplx(0.0))
    throw std::invalid_argument("svd_2x2_upper: lower-left entry must be zero");
  if (r(0, 0).imag() != 0.0 || r(1, 1).imag() != 0.0 ||
      r(0, 0).real() <= 0.0 || r(1, 1).real() <= 0.0)
    throw std::invalid_argument(
        "svd_2x2_upper: diagonal must be real and positive");

  auto raw = detail::svd_2x2_upper_raw(r(0, 0).real(), r(0, 1), r(1, 1).real());
  const cplx ph = std::polar(1.0, -raw.phi);
  Svd2x2 out;
  out.u = ComplexMatrix(2, 2);
  out.v = ComplexMatrix(2, 2);
  out.u(0, 0) = raw.ur[0];
  out.u(0, 1) = raw.ur[1];
  out.u(1, 0) = ph * raw.ur[2];
  out.u(1, 1) = ph * raw.ur[3];
  out.v(0, 0) = raw.vr[0];
  out.v(0, 1) = raw.vr[1];
  out.v(1, 0) = ph * raw.vr[2];
  out.v(1, 1) = ph * raw.vr[3];
  out.sigma1 = raw.s1;
  out.sigma2 = raw.s2;
  return out;
}

}  // namespace igmd
