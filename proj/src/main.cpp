#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "igmd/complex_matrix.hpp"
#include "igmd/errors.hpp"
#include "igmd/gmdref.hpp"
#include "igmd/igmd.hpp"
#include "igmd/init.hpp"
#include "igmd/mimosim.hpp"
#include "igmd/version.hpp"

namespace {

using igmd::ComplexMatrix;
using nlohmann::json;

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_manifest(const std::filesystem::path& path,
                    const std::string& command, const json& parameters,
                    std::uint64_t seed, double duration_seconds) {
  json m;
  m["command"] = command;
  m["parameters"] = parameters;
  m["seed"] = seed;
  m["version"] = igmd::kVersion;
  m["duration_seconds"] = duration_seconds;
  std::ofstream out = open_out(path);
  out << m.dump(2) << "\n";
}

struct DecomposeArgs {
  std::string matrix_file;
  std::string init = "svd";
  std::string kind = "gm";
  std::size_t iterations = 10;
  std::string out_dir = ".";
};

int run_decompose(const DecomposeArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const ComplexMatrix h = igmd::read_matrix_file(a.matrix_file);
  const igmd::InitKind init = igmd::parse_init_kind(a.init);
  const igmd::OmegaKind kind = igmd::parse_omega_kind(a.kind);

  const igmd::IgmdResult res = igmd::igmd(h, init, kind, a.iterations);
  const double sbar = igmd::geometric_mean_target(h);
  const std::vector<double> mse = igmd::mse_diag(res.trace, sbar);

  const std::filesystem::path dir(a.out_dir);
  std::filesystem::create_directories(dir);
  igmd::write_matrix_file((dir / "q.txt").string(), res.triple.q);
  igmd::write_matrix_file((dir / "r.txt").string(), res.triple.r);
  igmd::write_matrix_file((dir / "s.txt").string(), res.triple.s);

  std::ofstream trace = open_out(dir / "trace.csv");
  const std::size_t k = res.triple.r.cols();
  trace << "iteration";
  for (std::size_t i = 1; i <= k; ++i) trace << ",r_" << i << i;
  trace << ",F,mse\n";
  for (std::size_t l = 0; l < res.trace.diag_history.size(); ++l) {
    trace << l;
    for (double d : res.trace.diag_history[l]) trace << "," << fmt_g(d);
    trace << "," << fmt_g(res.trace.f_history[l]) << "," << fmt_g(mse[l])
          << "\n";
  }
  trace.close();

  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  json params;
  params["matrix-file"] = a.matrix_file;
  params["init"] = a.init;
  params["kind"] = a.kind;
  params["iterations"] = a.iterations;
  params["out-dir"] = a.out_dir;
  write_manifest(dir / "manifest.json", "decompose", params, 0, dt);
  return 0;
}

struct MseArgs {
  std::size_t k = 7;
  std::size_t trials = 10000;
  std::size_t iterations = 10;
  std::uint64_t seed = 0;
  std::vector<std::string> inits = {"svd", "intrlv-svd", "qr", "vbqr"};
  std::vector<std::string> kinds = {"am", "gm", "hm"};
  std::string out_csv;
  unsigned threads = 1;
};

int run_mse(const MseArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<igmd::InitKind> inits;
  for (const auto& s : a.inits) inits.push_back(igmd::parse_init_kind(s));
  std::vector<igmd::OmegaKind> kinds;
  for (const auto& s : a.kinds) kinds.push_back(igmd::parse_omega_kind(s));

  igmd::ChannelConfig cfg;
  cfg.k = a.k;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  const std::vector<igmd::MseCurve> curves =
      igmd::run_mse_experiment(cfg, inits, kinds, a.iterations, a.threads);

  std::ofstream out = open_out(a.out_csv);
  out << "init,kind,iteration,mean_mse\n";
  for (const auto& c : curves)
    for (std::size_t it = 0; it < c.mse_per_iteration.size(); ++it)
      out << igmd::to_string(c.init) << "," << igmd::to_string(c.kind) << ","
          << it << "," << fmt_g(c.mse_per_iteration[it]) << "\n";
  out.close();

  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  json params;
  params["k"] = a.k;
  params["trials"] = a.trials;
  params["iterations"] = a.iterations;
  params["seed"] = a.seed;
  params["inits"] = a.inits;
  params["kinds"] = a.kinds;
  params["out-csv"] = a.out_csv;
  params["threads"] = a.threads;
  write_manifest(a.out_csv + ".manifest.json", "mse", params, a.seed, dt);
  return 0;
}

struct BerArgs {
  std::size_t k = 7;
  std::string init = "vbqr";
  std::string kind = "gm";
  std::vector<std::size_t> iterations_list;
  std::vector<double> snr_list;
  std::uint64_t bits = 100000;
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
  std::string out_csv;
  unsigned threads = 1;
};

int run_ber(const BerArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const igmd::InitKind init = igmd::parse_init_kind(a.init);
  const igmd::OmegaKind kind = igmd::parse_omega_kind(a.kind);
  if (a.snr_list.empty())
    throw igmd::parse_error("--snr-list must contain at least one value");

  igmd::ChannelConfig cfg;
  cfg.k = a.k;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  const igmd::BerResult res = igmd::run_ber_experiment(
      cfg, init, kind, a.iterations_list, a.snr_list, a.bits, a.threads);

  std::ofstream out = open_out(a.out_csv);
  out << "init,kind,iterations,snr_db,bits,bit_errors,ber\n";
  const std::string label =
      igmd::to_string(init) + "," + igmd::to_string(kind);
  for (std::size_t i = 0; i < res.iteration_counts.size(); ++i)
    for (const igmd::BerPoint& pt : res.igmd_curves[i])
      out << label << "," << res.iteration_counts[i] << ","
          << fmt_g(pt.snr_db) << "," << pt.bits_sent << "," << pt.bit_errors
          << "," << fmt_g(pt.ber) << "\n";
  for (const igmd::BerPoint& pt : res.exact_curve)
    out << label << ",exact-gmd," << fmt_g(pt.snr_db) << "," << pt.bits_sent
        << "," << pt.bit_errors << "," << fmt_g(pt.ber) << "\n";
  out.close();

  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  json params;
  params["k"] = a.k;
  params["init"] = a.init;
  params["kind"] = a.kind;
  params["iterations-list"] = a.iterations_list;
  params["snr-list"] = a.snr_list;
  params["bits"] = a.bits;
  params["seed"] = a.seed;
  params["trials"] = a.trials;
  params["out-csv"] = a.out_csv;
  params["threads"] = a.threads;
  write_manifest(a.out_csv + ".manifest.json", "ber", params, a.seed, dt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterative geometric mean decomposition of complex matrices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", igmd::kVersion);

  DecomposeArgs da;
  CLI::App* dec = app.add_subcommand(
      "decompose", "Decompose one matrix and trace the diagonal per sweep");
  dec->add_option("--matrix-file", da.matrix_file, "Input matrix (text format)")
      ->required();
  dec->add_option("--init", da.init, "Initialization: svd, intrlv-svd, qr, vbqr")
      ->capture_default_str();
  dec->add_option("--kind", da.kind, "Mean kind: am, gm, hm")
      ->capture_default_str();
  dec->add_option("--iterations", da.iterations, "Number of sweeps")
      ->capture_default_str();
  dec->add_option("--out-dir", da.out_dir, "Output directory")
      ->capture_default_str();

  MseArgs ma;
  CLI::App* mse = app.add_subcommand(
      "mse", "Mean squared diagonal deviation over random channels");
  mse->add_option("--k", ma.k, "Matrix dimension")->capture_default_str();
  mse->add_option("--trials", ma.trials, "Number of random channels")
      ->capture_default_str();
  mse->add_option("--iterations", ma.iterations, "Number of sweeps")
      ->capture_default_str();
  mse->add_option("--seed", ma.seed, "RNG seed")->capture_default_str();
  mse->add_option("--inits", ma.inits, "Initializations to run")
      ->delimiter(',')
      ->capture_default_str();
  mse->add_option("--kinds", ma.kinds, "Mean kinds to run")
      ->delimiter(',')
      ->capture_default_str();
  mse->add_option("--out-csv", ma.out_csv, "Output CSV path")->required();
  mse->add_option("--threads", ma.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();

  BerArgs ba;
  CLI::App* ber = app.add_subcommand(
      "ber", "Bit error rate of the precoded link over random channels");
  ber->add_option("--k", ba.k, "Matrix dimension")->capture_default_str();
  ber->add_option("--init", ba.init, "Initialization: svd, intrlv-svd, qr, vbqr")
      ->capture_default_str();
  ber->add_option("--kind", ba.kind, "Mean kind: am, gm, hm")
      ->capture_default_str();
  ber->add_option("--iterations-list", ba.iterations_list,
                  "Sweep counts to evaluate (empty = exact baseline only)")
      ->delimiter(',');
  ber->add_option("--snr-list", ba.snr_list, "SNR grid in dB")
      ->delimiter(',')
      ->required();
  ber->add_option("--bits", ba.bits, "Bits per SNR point (rounded up)")
      ->capture_default_str();
  ber->add_option("--seed", ba.seed, "RNG seed")->capture_default_str();
  ber->add_option("--trials", ba.trials, "Channels per SNR point")
      ->capture_default_str();
  ber->add_option("--out-csv", ba.out_csv, "Output CSV path")->required();
  ber->add_option("--threads", ba.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (dec->parsed()) return run_decompose(da);
    if (mse->parsed()) return run_mse(ma);
    if (ber->parsed()) return run_ber(ba);
  } catch (const igmd::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
