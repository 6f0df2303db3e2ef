#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "igmd/complex_matrix.hpp"
#include "igmd/mimosim.hpp"

// Writes one random complex Gaussian channel matrix in the text format the
// decompose subcommand reads.
int main(int argc, char** argv) {
  CLI::App app{"Generate a random channel matrix file"};
  std::size_t k = 7;
  std::uint64_t seed = 0;
  std::string out;
  app.add_option("--k", k, "Matrix dimension")->capture_default_str();
  app.add_option("--seed", seed, "RNG seed")->capture_default_str();
  app.add_option("--out", out, "Output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    igmd::RngStream stream = igmd::RngStream::for_trial(seed, 0, 0);
    const igmd::ComplexMatrix h = igmd::gen_rayleigh(k, stream);
    igmd::write_matrix_file(out, h);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
