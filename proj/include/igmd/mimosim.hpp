#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "igmd/complex_matrix.hpp"
#include "igmd/igmd.hpp"
#include "igmd/init.hpp"

namespace igmd {

struct ChannelConfig {
  std::size_t k = 7;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
};

struct BerPoint {
  double snr_db = 0.0;
  std::uint64_t bit_errors = 0;
  std::uint64_t bits_sent = 0;
  double ber = 0.0;
};

struct MseCurve {
  InitKind init;
  OmegaKind kind;
  // Index 0 is the MSE after initialization, before the first sweep.
  std::vector<double> mse_per_iteration;
  // Standard error of each mean across trials.
  std::vector<double> se_per_iteration;
};

// Deterministic per-trial random stream. Each (seed, trial, point) triple
// derives an independent generator, so results do not depend on execution
// order or the degree of parallelism.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}
  static RngStream for_trial(std::uint64_t seed, std::uint64_t trial,
                             std::uint64_t point);

  // Uniform on (0, 1].
  double uniform01();
  // One Box-Muller pair of independent standard normals.
  void normal_pair(double& z0, double& z1);
  // Circularly symmetric unit-variance complex Gaussian.
  cplx complex_gaussian();
  // One uniform bit (64 raw bits buffered per engine draw, consumed LSB first).
  unsigned bit();

 private:
  std::mt19937_64 eng_;
  std::uint64_t bit_buf_ = 0;
  int bits_left_ = 0;
};

// k x k matrix with i.i.d. entries of unit power: real and imaginary parts
// independent Normal(0, 1/2).
ComplexMatrix gen_rayleigh(std::size_t k, RngStream& stream);

// Gray-coded square 16-QAM with unit average symbol energy. bits = b3 b2 b1 b0:
// b3 b2 selects the in-phase level (00:-3, 01:-1, 11:+1, 10:+3, scaled by
// 1/sqrt(10)) and b1 b0 the quadrature level identically.
cplx qam16_map(const unsigned bits[4]);
// Minimum-distance slicing; inverse of qam16_map on the symbol set.
void qam16_demap(cplx y, unsigned bits[4]);

// One use of the precoded link: successive modulo pre-subtraction at the
// transmitter (feedback from the normalized upper-triangular r, processed from
// the last stream to the first), precoding with s, the channel implied by the
// triple, then q^H, per-stream division by r_kk and the same modulo at the
// receiver. Returns the decision-point signals. Modulo period 8/sqrt(10).
std::vector<cplx> zfthp_link(const DecompositionTriple& triple,
                             const std::vector<cplx>& symbols,
                             const std::vector<cplx>& noise);

// Mean squared deviation of diag(r) from the per-channel target, averaged over
// cfg.trials random channels, for every (init, kind) pair; curve index 0 is
// the initialization. threads = 0 uses one worker per hardware thread; the
// result is bit-identical for any thread count.
std::vector<MseCurve> run_mse_experiment(const ChannelConfig& cfg,
                                         const std::vector<InitKind>& inits,
                                         const std::vector<OmegaKind>& kinds,
                                         std::size_t iterations,
                                         unsigned threads = 1);

struct BerResult {
  InitKind init;
  OmegaKind kind;
  std::vector<std::size_t> iteration_counts;
  // One curve per entry of iteration_counts, in the given order.
  std::vector<std::vector<BerPoint>> igmd_curves;
  // The exact equal-diagonal baseline on the same channels, bits and noise.
  std::vector<BerPoint> exact_curve;
};

// Bit error rates of the precoded link over random channels. Per SNR point:
// cfg.trials channels; per channel, the initialization is swept to each
// requested iteration count (and the exact baseline computed), and the same
// modulated bits and noise are run through every resulting triple. bits_sent
// is rounded up to a whole number of vectors per trial. Deterministic given
// cfg.seed, for any thread count.
BerResult run_ber_experiment(const ChannelConfig& cfg, InitKind init,
                             OmegaKind kind,
                             const std::vector<std::size_t>& iterations_list,
                             const std::vector<double>& snr_grid_db,
                             std::uint64_t bits_per_point, unsigned threads = 1);

}  // namespace igmd
