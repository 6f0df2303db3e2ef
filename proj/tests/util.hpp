#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "igmd/complex_matrix.hpp"

namespace testutil {

inline igmd::ComplexMatrix random_matrix(std::size_t rows, std::size_t cols,
                                         std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  igmd::ComplexMatrix a(rows, cols);
  const double s = std::sqrt(2.0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = dist(eng);
      const double im = dist(eng);
      a(i, j) = igmd::cplx(re, im) / s;
    }
  return a;
}

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

inline CommandResult run_command(const std::string& cmd) {
  CommandResult res;
  const std::string full = cmd + " 2>&1";
  FILE* pipe = popen(full.c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, n);
  const int rc = pclose(pipe);
  if (WIFEXITED(rc)) res.exit_code = WEXITSTATUS(rc);
  return res;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace testutil
