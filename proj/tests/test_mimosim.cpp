#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "igmd/gmdref.hpp"
#include "igmd/igmd.hpp"
#include "igmd/init.hpp"
#include "igmd/mimosim.hpp"

using igmd::BerResult;
using igmd::ChannelConfig;
using igmd::ComplexMatrix;
using igmd::cplx;
using igmd::DecompositionTriple;
using igmd::InitKind;
using igmd::MseCurve;
using igmd::OmegaKind;
using igmd::RngStream;

namespace {

constexpr double kInvSqrt10 = 0.31622776601683794;

std::vector<cplx> random_symbols(std::size_t k, RngStream& st,
                                 std::vector<unsigned>* sent = nullptr) {
  std::vector<cplx> out(k);
  unsigned bits[4];
  for (std::size_t i = 0; i < k; ++i) {
    for (unsigned& b : bits) b = st.bit();
    if (sent) sent->insert(sent->end(), bits, bits + 4);
    out[i] = igmd::qam16_map(bits);
  }
  return out;
}

}  // namespace

TEST_CASE("rng streams are deterministic and separated") {
  RngStream a = RngStream::for_trial(5, 17, 2);
  RngStream b = RngStream::for_trial(5, 17, 2);
  for (int i = 0; i < 20; ++i) CHECK(a.uniform01() == b.uniform01());

  const double base = RngStream::for_trial(0, 0, 0).uniform01();
  CHECK(base != RngStream::for_trial(1, 0, 0).uniform01());
  CHECK(base != RngStream::for_trial(0, 1, 0).uniform01());
  CHECK(base != RngStream::for_trial(0, 0, 1).uniform01());
}

TEST_CASE("rng golden values pin the stream layout") {
  {
    RngStream st = RngStream::for_trial(0, 0, 0);
    CHECK(st.uniform01() == 0.14252030358257983);
    CHECK(st.uniform01() == 0.89845718750218784);
    CHECK(st.uniform01() == 0.9203308723609861);
  }
  {
    RngStream st = RngStream::for_trial(0, 0, 0);
    double z0 = 0.0, z1 = 0.0;
    st.normal_pair(z0, z1);
    CHECK(z0 == 1.585649772729433);
    CHECK(z1 == -1.1756940139876635);
  }
  {
    RngStream st = RngStream::for_trial(0, 0, 0);
    const cplx g1 = st.complex_gaussian();
    const cplx g2 = st.complex_gaussian();
    CHECK(g1.real() == 1.1212237068838899);
    CHECK(g1.imag() == -0.83134120989110849);
    CHECK(g2.real() == 0.28368777845167986);
    CHECK(g2.imag() == 0.050430884207197213);
  }
  {
    RngStream st = RngStream::for_trial(0, 0, 0);
    const unsigned want[16] = {1, 1, 1, 0, 0, 0, 1, 1, 0, 1, 1, 0, 0, 0, 1, 0};
    for (unsigned w : want) CHECK(st.bit() == w);
  }
  CHECK(RngStream::for_trial(7, 3, 1).uniform01() == 0.150514875809445);
}

TEST_CASE("uniform01 stays in (0, 1] and is roughly uniform") {
  RngStream st = RngStream::for_trial(11, 0, 0);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = st.uniform01();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
    sum += u;
  }
  CHECK(sum / 10000.0 == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("normal pairs and complex gaussians have the right moments") {
  RngStream st = RngStream::for_trial(3, 0, 0);
  const int n = 100000;
  double mean = 0.0, sq = 0.0;
  for (int i = 0; i < n / 2; ++i) {
    double z0 = 0.0, z1 = 0.0;
    st.normal_pair(z0, z1);
    mean += z0 + z1;
    sq += z0 * z0 + z1 * z1;
  }
  CHECK(std::abs(mean / n) < 0.02);
  CHECK(sq / n == doctest::Approx(1.0).epsilon(0.03));

  double power = 0.0;
  for (int i = 0; i < n; ++i) power += std::norm(st.complex_gaussian());
  CHECK(power / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("bits are balanced") {
  RngStream st = RngStream::for_trial(9, 0, 0);
  int ones = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) ones += static_cast<int>(st.bit());
  CHECK(std::abs(static_cast<double>(ones) / n - 0.5) < 0.01);
}

TEST_CASE("rayleigh channels fill row by row with unit-power entries") {
  {
    RngStream st = RngStream::for_trial(0, 0, 0);
    const ComplexMatrix h = igmd::gen_rayleigh(2, st);
    CHECK(h(0, 0).real() == 1.1212237068838899);
    CHECK(h(0, 0).imag() == -0.83134120989110849);
    CHECK(h(0, 1).real() == 0.28368777845167986);
    CHECK(h(0, 1).imag() == 0.050430884207197213);
  }
  double power = 0.0;
  for (std::uint64_t t = 0; t < 400; ++t) {
    RngStream st = RngStream::for_trial(21, t, 0);
    const ComplexMatrix h = igmd::gen_rayleigh(5, st);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) power += std::norm(h(i, j));
  }
  CHECK(power / (400.0 * 25.0) == doctest::Approx(1.0).epsilon(0.06));
}

TEST_CASE("16-qam constellation is gray coded with unit average energy") {
  std::vector<cplx> points;
  double energy = 0.0;
  for (unsigned v = 0; v < 16; ++v) {
    const unsigned bits[4] = {(v >> 3) & 1u, (v >> 2) & 1u, (v >> 1) & 1u,
                              v & 1u};
    const cplx p = igmd::qam16_map(bits);
    for (const cplx& prev : points) CHECK(std::abs(p - prev) > 1e-9);
    points.push_back(p);
    energy += std::norm(p);

    unsigned got[4];
    igmd::qam16_demap(p, got);
    for (int b = 0; b < 4; ++b) CHECK(got[b] == bits[b]);
    igmd::qam16_demap(p + cplx(0.3, -0.3) * kInvSqrt10, got);
    for (int b = 0; b < 4; ++b) CHECK(got[b] == bits[b]);
  }
  CHECK(energy / 16.0 == doctest::Approx(1.0).epsilon(1e-12));

  const double step = 2.0 * kInvSqrt10;
  for (unsigned v = 0; v < 16; ++v) {
    for (unsigned w = v + 1; w < 16; ++w) {
      if (std::abs(std::abs(points[v] - points[w]) - step) < 1e-9) {
        int diff = 0;
        for (int b = 0; b < 4; ++b)
          diff += (((v >> b) & 1u) != ((w >> b) & 1u)) ? 1 : 0;
        CHECK(diff == 1);
      }
    }
  }

  CHECK(points[0b0000] == cplx(-3.0, -3.0) * kInvSqrt10);
  CHECK(points[0b0111] == cplx(-1.0, 1.0) * kInvSqrt10);
  CHECK(points[0b1110] == cplx(1.0, 3.0) * kInvSqrt10);
  CHECK(points[0b1010] == cplx(3.0, 3.0) * kInvSqrt10);
}

TEST_CASE("precoded link is lossless without noise") {
  RngStream st = RngStream::for_trial(33, 0, 0);
  const ComplexMatrix h = igmd::gen_rayleigh(7, st);
  const std::vector<cplx> zero(7, cplx(0.0));

  std::vector<DecompositionTriple> triples;
  triples.push_back(igmd::exact_gmd(h));
  triples.push_back(igmd::igmd(h, InitKind::VblastQr, OmegaKind::GM, 4).triple);
  triples.push_back(igmd::igmd(h, InitKind::PlainSvd, OmegaKind::HM, 3).triple);
  triples.push_back(igmd::init_decompose(h, InitKind::PlainQr));

  for (const DecompositionTriple& triple : triples) {
    for (int rep = 0; rep < 8; ++rep) {
      const std::vector<cplx> sym = random_symbols(7, st);
      const std::vector<cplx> out = igmd::zfthp_link(triple, sym, zero);
      REQUIRE(out.size() == 7);
      for (std::size_t k = 0; k < 7; ++k)
        CHECK(std::abs(out[k] - sym[k]) < 1e-9);
    }
  }
}

TEST_CASE("precoded link validates shapes") {
  RngStream st = RngStream::for_trial(1, 0, 0);
  const ComplexMatrix h = igmd::gen_rayleigh(3, st);
  const DecompositionTriple triple = igmd::init_decompose(h, InitKind::PlainQr);
  const std::vector<cplx> sym(3, cplx(0.1));
  CHECK_THROWS_AS(igmd::zfthp_link(triple, sym, std::vector<cplx>(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      igmd::zfthp_link(triple, std::vector<cplx>(4), std::vector<cplx>(3)),
      std::invalid_argument);
}

TEST_CASE("mse experiment matches a direct per-trial replay") {
  ChannelConfig cfg;
  cfg.k = 4;
  cfg.trials = 3;
  cfg.seed = 42;
  const std::size_t iterations = 2;
  const std::vector<MseCurve> curves = igmd::run_mse_experiment(
      cfg, {InitKind::PlainQr}, {OmegaKind::GM}, iterations);
  REQUIRE(curves.size() == 1);
  REQUIRE(curves[0].mse_per_iteration.size() == iterations + 1);
  REQUIRE(curves[0].se_per_iteration.size() == iterations + 1);

  std::vector<double> mean(iterations + 1, 0.0);
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    RngStream st = RngStream::for_trial(cfg.seed, t, 0);
    const ComplexMatrix h = igmd::gen_rayleigh(cfg.k, st);
    const double sbar = igmd::geometric_mean_target(h);
    const igmd::IgmdResult res =
        igmd::igmd(h, InitKind::PlainQr, OmegaKind::GM, iterations);
    const std::vector<double> m = igmd::mse_diag(res.trace, sbar);
    for (std::size_t i = 0; i <= iterations; ++i) mean[i] += m[i];
  }
  for (std::size_t i = 0; i <= iterations; ++i) {
    CHECK(curves[0].mse_per_iteration[i] ==
          mean[i] / static_cast<double>(cfg.trials));
  }
}

TEST_CASE("mse experiment output is ordered and contracts") {
  ChannelConfig cfg;
  cfg.k = 7;
  cfg.trials = 50;
  cfg.seed = 7;
  const std::vector<InitKind> inits = {InitKind::PlainQr, InitKind::VblastQr};
  const std::vector<OmegaKind> kinds = {OmegaKind::GM, OmegaKind::HM};
  const std::vector<MseCurve> curves =
      igmd::run_mse_experiment(cfg, inits, kinds, 5);
  REQUIRE(curves.size() == 4);
  CHECK(curves[0].init == InitKind::PlainQr);
  CHECK(curves[0].kind == OmegaKind::GM);
  CHECK(curves[1].kind == OmegaKind::HM);
  CHECK(curves[3].init == InitKind::VblastQr);
  for (const MseCurve& c : curves) {
    REQUIRE(c.mse_per_iteration.size() == 6);
    CHECK(c.mse_per_iteration.back() < c.mse_per_iteration.front());
    for (double se : c.se_per_iteration) CHECK(se > 0.0);
  }
}

TEST_CASE("mse experiment is independent of the thread count") {
  ChannelConfig cfg;
  cfg.k = 5;
  cfg.trials = 17;
  cfg.seed = 99;
  const std::vector<InitKind> inits = {InitKind::PlainSvd,
                                       InitKind::InterleavedSvd};
  const std::vector<OmegaKind> kinds = {OmegaKind::AM};
  const std::vector<MseCurve> serial =
      igmd::run_mse_experiment(cfg, inits, kinds, 3, 1);
  const std::vector<MseCurve> parallel =
      igmd::run_mse_experiment(cfg, inits, kinds, 3, 3);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t c = 0; c < serial.size(); ++c) {
    CHECK(serial[c].mse_per_iteration == parallel[c].mse_per_iteration);
    CHECK(serial[c].se_per_iteration == parallel[c].se_per_iteration);
  }
}

TEST_CASE("mse experiment rejects empty configurations") {
  ChannelConfig cfg;
  const std::vector<InitKind> inits = {InitKind::PlainQr};
  const std::vector<OmegaKind> kinds = {OmegaKind::GM};
  cfg.k = 0;
  CHECK_THROWS_AS(igmd::run_mse_experiment(cfg, inits, kinds, 1),
                  std::invalid_argument);
  cfg.k = 4;
  cfg.trials = 0;
  CHECK_THROWS_AS(igmd::run_mse_experiment(cfg, inits, kinds, 1),
                  std::invalid_argument);
  cfg.trials = 2;
  CHECK_THROWS_AS(igmd::run_mse_experiment(cfg, {}, kinds, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(igmd::run_mse_experiment(cfg, inits, {}, 1),
                  std::invalid_argument);
}

TEST_CASE("ber experiment rounds bits up to whole vectors") {
  ChannelConfig cfg;
  cfg.k = 7;
  cfg.trials = 60;
  cfg.seed = 1;
  const BerResult res = igmd::run_ber_experiment(cfg, InitKind::VblastQr,
                                                 OmegaKind::GM, {}, {30.0},
                                                 50000);
  CHECK(res.iteration_counts.empty());
  CHECK(res.igmd_curves.empty());
  REQUIRE(res.exact_curve.size() == 1);
  CHECK(res.exact_curve[0].snr_db == 30.0);
  CHECK(res.exact_curve[0].bits_sent == 50400);
  CHECK(res.exact_curve[0].ber ==
        static_cast<double>(res.exact_curve[0].bit_errors) / 50400.0);
}

TEST_CASE("ber experiment echoes iteration counts and dedups the sweeps") {
  ChannelConfig cfg;
  cfg.k = 7;
  cfg.trials = 25;
  cfg.seed = 5;
  const BerResult res = igmd::run_ber_experiment(
      cfg, InitKind::VblastQr, OmegaKind::GM, {4, 1, 4}, {12.0, 20.0}, 10000);
  REQUIRE(res.iteration_counts == std::vector<std::size_t>{4, 1, 4});
  REQUIRE(res.igmd_curves.size() == 3);
  for (const std::vector<igmd::BerPoint>& curve : res.igmd_curves)
    REQUIRE(curve.size() == 2);
  for (std::size_t p = 0; p < 2; ++p) {
    CHECK(res.igmd_curves[0][p].bit_errors == res.igmd_curves[2][p].bit_errors);
    CHECK(res.igmd_curves[0][p].bits_sent == res.igmd_curves[2][p].bits_sent);
  }
}

TEST_CASE("ber experiment reuses channels and noise across curve sets") {
  ChannelConfig cfg;
  cfg.k = 7;
  cfg.trials = 30;
  cfg.seed = 17;
  const std::vector<double> grid = {14.0, 22.0};
  const BerResult a = igmd::run_ber_experiment(cfg, InitKind::VblastQr,
                                               OmegaKind::GM, {1}, grid, 8000);
  const BerResult b = igmd::run_ber_experiment(
      cfg, InitKind::VblastQr, OmegaKind::GM, {1, 4}, grid, 8000);
  REQUIRE(a.exact_curve.size() == b.exact_curve.size());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    CHECK(a.exact_curve[p].bit_errors == b.exact_curve[p].bit_errors);
    CHECK(a.igmd_curves[0][p].bit_errors == b.igmd_curves[0][p].bit_errors);
  }
}

TEST_CASE("ber falls with snr") {
  ChannelConfig cfg;
  cfg.k = 7;
  cfg.trials = 40;
  cfg.seed = 2;
  const BerResult res = igmd::run_ber_experiment(
      cfg, InitKind::VblastQr, OmegaKind::GM, {}, {10.0, 26.0}, 20000);
  REQUIRE(res.exact_curve.size() == 2);
  CHECK(res.exact_curve[0].bit_errors > 50);
  CHECK(res.exact_curve[0].bit_errors > 4 * res.exact_curve[1].bit_errors);
}

TEST_CASE("ber experiment is independent of the thread count") {
  ChannelConfig cfg;
  cfg.k = 7;
  cfg.trials = 20;
  cfg.seed = 8;
  const BerResult serial = igmd::run_ber_experiment(
      cfg, InitKind::PlainQr, OmegaKind::GM, {1, 4}, {16.0}, 6000, 1);
  const BerResult parallel = igmd::run_ber_experiment(
      cfg, InitKind::PlainQr, OmegaKind::GM, {1, 4}, {16.0}, 6000, 3);
  REQUIRE(serial.igmd_curves.size() == parallel.igmd_curves.size());
  for (std::size_t c = 0; c < serial.igmd_curves.size(); ++c) {
    CHECK(serial.igmd_curves[c][0].bit_errors ==
          parallel.igmd_curves[c][0].bit_errors);
  }
  CHECK(serial.exact_curve[0].bit_errors == parallel.exact_curve[0].bit_errors);
}

TEST_CASE("ber experiment rejects bad configurations") {
  ChannelConfig cfg;
  cfg.k = 7;
  cfg.trials = 2;
  CHECK_THROWS_AS(igmd::run_ber_experiment(cfg, InitKind::PlainQr,
                                           OmegaKind::GM, {}, {}, 100),
                  std::invalid_argument);
  CHECK_THROWS_AS(igmd::run_ber_experiment(cfg, InitKind::PlainQr,
                                           OmegaKind::GM, {}, {10.0}, 0),
                  std::invalid_argument);
  cfg.k = 0;
  CHECK_THROWS_AS(igmd::run_ber_experiment(cfg, InitKind::PlainQr,
                                           OmegaKind::GM, {}, {10.0}, 100),
                  std::invalid_argument);
  cfg.k = 7;
  cfg.trials = 0;
  CHECK_THROWS_AS(igmd::run_ber_experiment(cfg, InitKind::PlainQr,
                                           OmegaKind::GM, {}, {10.0}, 100),
                  std::invalid_argument);
}
