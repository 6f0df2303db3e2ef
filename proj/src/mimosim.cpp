#include "igmd/mimosim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <thread>
#include <utility>

#include "igmd/errors.hpp"
#include "igmd/gmdref.hpp"

namespace igmd {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kInvSqrt10 = 1.0 / std::sqrt(10.0);
const double kModDelta = 8.0 / std::sqrt(10.0);

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double qam16_level(unsigned hi, unsigned lo) {
  const double mag = lo ? 1.0 : 3.0;
  return (hi ? mag : -mag) * kInvSqrt10;
}

double mod_centered(double v) {
  return v - kModDelta * std::floor(v / kModDelta + 0.5);
}

cplx mod_centered(cplx v) {
  return {mod_centered(v.real()), mod_centered(v.imag())};
}

std::vector<cplx> matvec(const ComplexMatrix& a, const std::vector<cplx>& x) {
  std::vector<cplx> y(a.rows(), cplx(0.0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

std::vector<cplx> matvec_adj(const ComplexMatrix& a,
                             const std::vector<cplx>& x) {
  std::vector<cplx> y(a.cols(), cplx(0.0));
  for (std::size_t j = 0; j < a.cols(); ++j) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
      acc += std::conj(a(i, j)) * x[i];
    y[j] = acc;
  }
  return y;
}

unsigned resolve_threads(unsigned threads) {
  if (threads != 0) return threads;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1u : hc;
}

// Runs fn(lo, hi) over a partition of [0, count) into contiguous blocks, one
// per worker. Callers keep results in per-trial slots, so the outcome does not
// depend on the block layout.
template <typename Fn>
void parallel_trials(std::size_t count, unsigned threads, const Fn& fn) {
  if (count == 0) return;
  unsigned nw = resolve_threads(threads);
  if (nw > count) nw = static_cast<unsigned>(count);
  if (nw <= 1) {
    fn(std::size_t{0}, count);
    return;
  }
  const std::size_t block = (count + nw - 1) / nw;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(nw);
  for (unsigned w = 0; w < nw; ++w) {
    const std::size_t lo = w * block;
    const std::size_t hi = std::min(count, lo + block);
    if (lo >= hi) break;
    pool.emplace_back([&fn, &errs, lo, hi, w] {
      try {
        fn(lo, hi);
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace

RngStream RngStream::for_trial(std::uint64_t seed, std::uint64_t trial,
                               std::uint64_t point) {
  constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t h = mix64(seed + kGamma);
  h = mix64(h ^ (trial + kGamma));
  h = mix64(h ^ (point + kGamma));
  return RngStream(h);
}

double RngStream::uniform01() {
  return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
}

void RngStream::normal_pair(double& z0, double& z1) {
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * kPi * u2;
  z0 = r * std::cos(th);
  z1 = r * std::sin(th);
}

cplx RngStream::complex_gaussian() {
  double z0 = 0.0, z1 = 0.0;
  normal_pair(z0, z1);
  return cplx(z0, z1) / std::sqrt(2.0);
}

unsigned RngStream::bit() {
  if (bits_left_ == 0) {
    bit_buf_ = eng_();
    bits_left_ = 64;
  }
  const unsigned b = static_cast<unsigned>(bit_buf_ & 1u);
  bit_buf_ >>= 1;
  --bits_left_;
  return b;
}

ComplexMatrix gen_rayleigh(std::size_t k, RngStream& stream) {
  ComplexMatrix h(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) h(i, j) = stream.complex_gaussian();
  return h;
}

cplx qam16_map(const unsigned bits[4]) {
  return {qam16_level(bits[0], bits[1]), qam16_level(bits[2], bits[3])};
}

void qam16_demap(cplx y, unsigned bits[4]) {
  const double thr = 2.0 * kInvSqrt10;
  bits[0] = y.real() > 0.0 ? 1u : 0u;
  bits[1] = std::abs(y.real()) < thr ? 1u : 0u;
  bits[2] = y.imag() > 0.0 ? 1u : 0u;
  bits[3] = std::abs(y.imag()) < thr ? 1u : 0u;
}

std::vector<cplx> zfthp_link(const DecompositionTriple& triple,
                             const std::vector<cplx>& symbols,
                             const std::vector<cplx>& noise) {
  const ComplexMatrix& q = triple.q;
  const ComplexMatrix& r = triple.r;
  const ComplexMatrix& s = triple.s;
  const std::size_t n = r.cols();
  if (r.rows() != n || q.cols() != n || s.cols() != n)
    throw std::invalid_argument("zfthp_link: inconsistent decomposition");
  if (symbols.size() != n || noise.size() != n)
    throw std::invalid_argument("zfthp_link: wrong vector length");

  std::vector<cplx> x(n);
  for (std::size_t idx = n; idx > 0; --idx) {
    const std::size_t k = idx - 1;
    const double rkk = r(k, k).real();
    cplx acc = symbols[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= r(k, j) / rkk * x[j];
    x[k] = mod_centered(acc);
  }

  const std::vector<cplx> t = matvec(s, x);
  std::vector<cplx> y = matvec(r, matvec_adj(s, t));
  y = matvec(q, y);
  for (std::size_t k = 0; k < n; ++k) y[k] += noise[k];
  const std::vector<cplx> z = matvec_adj(q, y);

  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k)
    out[k] = mod_centered(z[k] / r(k, k).real());
  return out;
}

std::vector<MseCurve> run_mse_experiment(const ChannelConfig& cfg,
                                         const std::vector<InitKind>& inits,
                                         const std::vector<OmegaKind>& kinds,
                                         std::size_t iterations,
                                         unsigned threads) {
  if (cfg.k == 0 || cfg.trials == 0)
    throw std::invalid_argument("run_mse_experiment: k and trials must be positive");
  if (inits.empty() || kinds.empty())
    throw std::invalid_argument("run_mse_experiment: empty init or kind list");

  const std::size_t ncurves = inits.size() * kinds.size();
  const std::size_t cols = iterations + 1;
  std::vector<double> slots(cfg.trials * ncurves * cols, 0.0);

  parallel_trials(cfg.trials, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t t = lo; t < hi; ++t) {
      RngStream st = RngStream::for_trial(cfg.seed, t, 0);
      const ComplexMatrix h = gen_rayleigh(cfg.k, st);
      const double sbar = geometric_mean_target(h);
      std::size_t c = 0;
      for (InitKind init : inits) {
        for (OmegaKind kind : kinds) {
          const IgmdResult res = igmd(h, init, kind, iterations);
          const std::vector<double> m = mse_diag(res.trace, sbar);
          std::copy(m.begin(), m.end(),
                    slots.begin() +
                        static_cast<std::ptrdiff_t>((t * ncurves + c) * cols));
          ++c;
        }
      }
    }
  });

  std::vector<MseCurve> out;
  out.reserve(ncurves);
  const double n = static_cast<double>(cfg.trials);
  std::size_t c = 0;
  for (InitKind init : inits) {
    for (OmegaKind kind : kinds) {
      MseCurve curve;
      curve.init = init;
      curve.kind = kind;
      curve.mse_per_iteration.resize(cols, 0.0);
      curve.se_per_iteration.resize(cols, 0.0);
      for (std::size_t it = 0; it < cols; ++it) {
        double sum = 0.0;
        for (std::size_t t = 0; t < cfg.trials; ++t)
          sum += slots[(t * ncurves + c) * cols + it];
        const double mean = sum / n;
        double ss = 0.0;
        for (std::size_t t = 0; t < cfg.trials; ++t) {
          const double dev = slots[(t * ncurves + c) * cols + it] - mean;
          ss += dev * dev;
        }
        curve.mse_per_iteration[it] = mean;
        curve.se_per_iteration[it] =
            cfg.trials > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
      }
      out.push_back(std::move(curve));
      ++c;
    }
  }
  return out;
}

BerResult run_ber_experiment(const ChannelConfig& cfg, InitKind init,
                             OmegaKind kind,
                             const std::vector<std::size_t>& iterations_list,
                             const std::vector<double>& snr_grid_db,
                             std::uint64_t bits_per_point, unsigned threads) {
  if (cfg.k == 0 || cfg.trials == 0)
    throw std::invalid_argument("run_ber_experiment: k and trials must be positive");
  if (snr_grid_db.empty())
    throw std::invalid_argument("run_ber_experiment: empty SNR grid");
  if (bits_per_point == 0)
    throw std::invalid_argument("run_ber_experiment: bits_per_point must be positive");

  const std::size_t kk = cfg.k;
  const std::uint64_t bpv = 4ull * kk;
  const std::uint64_t vec_needed = (bits_per_point + bpv - 1) / bpv;
  const std::uint64_t vpt = (vec_needed + cfg.trials - 1) / cfg.trials;
  const std::uint64_t bits_sent =
      static_cast<std::uint64_t>(cfg.trials) * vpt * bpv;

  std::vector<std::size_t> uniq = iterations_list;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  const std::size_t ncurves = uniq.size() + 1;  // exact baseline last

  BerResult out;
  out.init = init;
  out.kind = kind;
  out.iteration_counts = iterations_list;
  out.igmd_curves.resize(iterations_list.size());

  for (std::size_t p = 0; p < snr_grid_db.size(); ++p) {
    const double n0 = std::pow(10.0, -snr_grid_db[p] / 10.0);
    const double sqrt_n0 = std::sqrt(n0);
    std::vector<std::uint64_t> err(ncurves * cfg.trials, 0);

    parallel_trials(cfg.trials, threads, [&](std::size_t lo, std::size_t hi) {
      std::vector<cplx> symbols(kk), noise(kk);
      std::vector<unsigned> sent(kk * 4);
      unsigned got[4];
      for (std::size_t t = lo; t < hi; ++t) {
        RngStream st = RngStream::for_trial(cfg.seed, t, p);
        const ComplexMatrix h = gen_rayleigh(kk, st);

        std::vector<DecompositionTriple> triples;
        triples.reserve(ncurves);
        DecompositionTriple state = init_decompose(h, init);
        std::size_t cur = 0;
        for (std::size_t target : uniq) {
          while (cur < target) {
            sweep_in_place(state, kind);
            ++cur;
          }
          triples.push_back(state);
        }
        triples.push_back(exact_gmd(h));

        std::vector<std::uint64_t> ec(ncurves, 0);
        for (std::uint64_t v = 0; v < vpt; ++v) {
          for (std::size_t sym = 0; sym < kk; ++sym) {
            for (std::size_t b = 0; b < 4; ++b) sent[sym * 4 + b] = st.bit();
            symbols[sym] = qam16_map(&sent[sym * 4]);
          }
          for (std::size_t sym = 0; sym < kk; ++sym)
            noise[sym] = sqrt_n0 * st.complex_gaussian();
          for (std::size_t c = 0; c < ncurves; ++c) {
            const std::vector<cplx> dec = zfthp_link(triples[c], symbols, noise);
            for (std::size_t sym = 0; sym < kk; ++sym) {
              qam16_demap(dec[sym], got);
              for (std::size_t b = 0; b < 4; ++b)
                ec[c] += (got[b] != sent[sym * 4 + b]) ? 1u : 0u;
            }
          }
        }
        for (std::size_t c = 0; c < ncurves; ++c)
          err[c * cfg.trials + t] = ec[c];
      }
    });

    std::vector<std::uint64_t> totals(ncurves, 0);
    for (std::size_t c = 0; c < ncurves; ++c)
      for (std::size_t t = 0; t < cfg.trials; ++t)
        totals[c] += err[c * cfg.trials + t];

    for (std::size_t i = 0; i < iterations_list.size(); ++i) {
      const std::size_t idx = static_cast<std::size_t>(
          std::lower_bound(uniq.begin(), uniq.end(), iterations_list[i]) -
          uniq.begin());
      out.igmd_curves[i].push_back(
          {snr_grid_db[p], totals[idx], bits_sent,
           static_cast<double>(totals[idx]) / static_cast<double>(bits_sent)});
    }
    out.exact_curve.push_back(
        {snr_grid_db[p], totals[ncurves - 1], bits_sent,
         static_cast<double>(totals[ncurves - 1]) /
             static_cast<double>(bits_sent)});
  }
  return out;
}

}  // namespace igmd
