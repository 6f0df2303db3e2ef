#include "igmd/igmd.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "igmd/decompose.hpp"
#include "igmd/errors.hpp"
#include "igmd/init.hpp"
#include "igmd/kernels.hpp"

namespace igmd {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

struct CosSin {
  double c, s;
};

// c, s moving diag(sigma1, sigma2) to leading entry w; requires
// sigma2 <= w <= sigma1 up to a small relative slack.
CosSin rotation_cs(double sigma1, double sigma2, double w) {
  const double slack = 1e-9 * sigma1 + 1e-12;
  if (sigma1 - sigma2 <= 1e-12 * sigma1) {
    if (std::abs(w - sigma1) > slack)
      throw numeric_error("majorization violated");
    return {1.0, 0.0};
  }
  if (w > sigma1 + slack || w < sigma2 - slack)
    throw numeric_error("majorization violated");
  double c2 = (w * w - sigma2 * sigma2) / (sigma1 * sigma1 - sigma2 * sigma2);
  c2 = std::clamp(c2, 0.0, 1.0);
  const double c = std::sqrt(c2);
  const double s = std::sqrt(1.0 - c2);
  return {c, s};
}

std::vector<double> diag_of(const ComplexMatrix& r) {
  std::vector<double> d(r.cols());
  for (std::size_t i = 0; i < r.cols(); ++i) d[i] = r(i, i).real();
  return d;
}

double f_value(const std::vector<double>& d) {
  return std::accumulate(d.begin(), d.end(), 0.0);
}

}  // namespace

OmegaKind parse_omega_kind(const std::string& s) {
  const std::string t = lower(s);
  if (t == "am") return OmegaKind::AM;
  if (t == "gm") return OmegaKind::GM;
  if (t == "hm") return OmegaKind::HM;
  throw parse_error("unknown kind '" + s + "' (expected am, gm or hm)");
}

std::string to_string(OmegaKind kind) {
  switch (kind) {
    case OmegaKind::AM:
      return "am";
    case OmegaKind::GM:
      return "gm";
    case OmegaKind::HM:
      return "hm";
  }
  throw std::invalid_argument("to_string: bad OmegaKind");
}

double omega(double z1, double z2, OmegaKind kind) {
  if (!std::isfinite(z1) || !std::isfinite(z2) || z1 <= 0.0 || z2 <= 0.0)
    throw std::invalid_argument("omega: arguments must be positive and finite");
  switch (kind) {
    case OmegaKind::AM:
      return 0.5 * (z1 + z2);
    case OmegaKind::GM:
      return std::sqrt(z1 * z2);
    case OmegaKind::HM:
      return 2.0 * z1 * z2 / (z1 + z2);
  }
  throw std::invalid_argument("omega: bad kind");
}

RotationPair rotation_pair(double sigma1, double sigma2, double omega_value) {
  if (!std::isfinite(sigma1) || !std::isfinite(sigma2) ||
      !std::isfinite(omega_value) || sigma1 <= 0.0 || sigma2 < 0.0 ||
      omega_value <= 0.0)
    throw std::invalid_argument("rotation_pair: arguments out of domain");
  if (sigma1 < sigma2)
    throw std::invalid_argument("rotation_pair: sigma1 must be >= sigma2");
  const CosSin cs = rotation_cs(sigma1, sigma2, omega_value);
  ComplexMatrix phi_l(2, 2), phi_r(2, 2);
  const double w = omega_value;
  phi_l(0, 0) = cs.c * sigma1 / w;
  phi_l(0, 1) = cs.s * sigma2 / w;
  phi_l(1, 0) = -cs.s * sigma2 / w;
  phi_l(1, 1) = cs.c * sigma1 / w;
  phi_r(0, 0) = cs.c;
  phi_r(0, 1) = -cs.s;
  phi_r(1, 0) = cs.s;
  phi_r(1, 1) = cs.c;
  return {phi_l, phi_r, w};
}

void apply_stage_pivot(DecompositionTriple& state, std::size_t k,
                       double pivot) {
  ComplexMatrix& q = state.q;
  ComplexMatrix& r = state.r;
  ComplexMatrix& s = state.s;
  const std::size_t n = r.cols();
  if (r.rows() != n) throw std::invalid_argument("apply_stage_pivot: r not square");
  if (k < 1 || k >= n)
    throw std::invalid_argument("apply_stage_pivot: stage index out of range");
  const std::size_t k0 = k - 1;

  const double a = r(k0, k0).real();
  const cplx b = r(k0, k0 + 1);
  const double d = r(k0 + 1, k0 + 1).real();
  const detail::Svd2x2Raw f = detail::svd_2x2_upper_raw(a, b, d);
  const CosSin cs = rotation_cs(f.s1, f.s2, pivot);

  // theta_l = phi_l * u^H, theta_r = v * phi_r, with u = diag(1, e^{-i phi}) Ur
  // and v = diag(1, e^{-i phi}) Vr.
  const cplx eip = std::polar(1.0, f.phi);
  const cplx eim = std::conj(eip);
  const double l00 = cs.c * f.s1 / pivot;
  const double l01 = cs.s * f.s2 / pivot;
  kernels::Block2x2 tl;
  tl.m00 = l00 * f.ur[0] + l01 * f.ur[1];
  tl.m01 = eip * (l00 * f.ur[2] + l01 * f.ur[3]);
  tl.m10 = -l01 * f.ur[0] + l00 * f.ur[1];
  tl.m11 = eip * (-l01 * f.ur[2] + l00 * f.ur[3]);
  kernels::Block2x2 tr;
  tr.m00 = f.vr[0] * cs.c + f.vr[1] * cs.s;
  tr.m01 = -f.vr[0] * cs.s + f.vr[1] * cs.c;
  tr.m10 = eim * (f.vr[2] * cs.c + f.vr[3] * cs.s);
  tr.m11 = eim * (-f.vr[2] * cs.s + f.vr[3] * cs.c);
  kernels::Block2x2 tl_adj;
  tl_adj.m00 = std::conj(tl.m00);
  tl_adj.m01 = std::conj(tl.m10);
  tl_adj.m10 = std::conj(tl.m01);
  tl_adj.m11 = std::conj(tl.m11);

  const kernels::Backend& be = kernels::active_backend();
  be.rot_rows(r.row(k0) + k0, r.row(k0 + 1) + k0, n - k0, tl);
  be.rot_cols(r.row(0) + k0, k0 + 2, n, tr);
  be.rot_cols(q.row(0) + k0, q.rows(), q.cols(), tl_adj);
  be.rot_cols(s.row(0) + k0, s.rows(), s.cols(), tr);

  r(k0 + 1, k0) = 0.0;
  for (std::size_t kk = k0; kk <= k0 + 1; ++kk) {
    const cplx dv = r(kk, kk);
    const double ad = std::abs(dv);
    if (ad == 0.0) throw numeric_error("apply_stage_pivot: zero diagonal");
    const cplx ph = dv / ad;
    const cplx phc = std::conj(ph);
    for (std::size_t j = kk + 1; j < n; ++j) r(kk, j) *= phc;
    for (std::size_t i = 0; i < q.rows(); ++i) q(i, kk) *= ph;
    r(kk, kk) = ad;
  }
}

DecompositionTriple stage_update(const DecompositionTriple& state,
                                 std::size_t k, OmegaKind kind) {
  DecompositionTriple out = state;
  const double z1 = out.r(k - 1, k - 1).real();
  const double z2 = out.r(k, k).real();
  apply_stage_pivot(out, k, omega(z1, z2, kind));
  return out;
}

void sweep_in_place(DecompositionTriple& state, OmegaKind kind) {
  const std::size_t n = state.r.cols();
  for (std::size_t k = 1; k < n; ++k) {
    const double z1 = state.r(k - 1, k - 1).real();
    const double z2 = state.r(k, k).real();
    apply_stage_pivot(state, k, omega(z1, z2, kind));
  }
}

DecompositionTriple sweep(const DecompositionTriple& state, OmegaKind kind) {
  DecompositionTriple out = state;
  sweep_in_place(out, kind);
  return out;
}

std::vector<double> scalar_diag_sweep(const std::vector<double>& d,
                                      OmegaKind kind) {
  std::vector<double> out = d;
  for (std::size_t k = 0; k + 1 < out.size(); ++k) {
    const double w = omega(out[k], out[k + 1], kind);
    out[k + 1] = out[k] * out[k + 1] / w;
    out[k] = w;
  }
  return out;
}

IgmdResult igmd(const ComplexMatrix& h, InitKind init, OmegaKind kind,
                std::size_t iterations, std::optional<double> early_stop_mse) {
  IgmdResult res;
  res.triple = init_decompose(h, init);
  res.trace.iteration_index = 0;
  std::vector<double> d = diag_of(res.triple.r);
  res.trace.diag_history.push_back(d);
  res.trace.f_history.push_back(f_value(d));
  for (std::size_t l = 1; l <= iterations; ++l) {
    sweep_in_place(res.triple, kind);
    d = diag_of(res.triple.r);
    res.trace.diag_history.push_back(d);
    res.trace.f_history.push_back(f_value(d));
    res.trace.iteration_index = l;
    if (early_stop_mse) {
      double mean_log = 0.0;
      for (double x : d) mean_log += std::log(x);
      const double sbar = std::exp(mean_log / static_cast<double>(d.size()));
      if (mse_of_diag(d, sbar) < *early_stop_mse) break;
    }
  }
  return res;
}

double geometric_mean_target(const ComplexMatrix& h) {
  const SvdResult sv = svd_full(h);
  double mean_log = 0.0;
  for (double x : sv.sigma) {
    if (!(x > 0.0))
      throw numeric_error("geometric_mean_target: singular input");
    mean_log += std::log(x);
  }
  return std::exp(mean_log / static_cast<double>(sv.sigma.size()));
}

double mse_of_diag(const std::vector<double>& d, double sigma_bar) {
  double acc = 0.0;
  for (double x : d) acc += (x - sigma_bar) * (x - sigma_bar);
  return acc / static_cast<double>(d.size());
}

std::vector<double> mse_diag(const SweepTrace& trace, double sigma_bar) {
  std::vector<double> out;
  out.reserve(trace.diag_history.size());
  for (const auto& d : trace.diag_history)
    out.push_back(mse_of_diag(d, sigma_bar));
  return out;
}

}  // namespace igmd
