#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "igmd/complex_matrix.hpp"

namespace igmd {

enum class InitKind : int;  // defined in igmd/init.hpp

// Which two-point mean replaces the leading diagonal entry at each stage.
enum class OmegaKind { AM, GM, HM };

// CLI spellings "am", "gm", "hm" (case-insensitive).
OmegaKind parse_omega_kind(const std::string& s);
std::string to_string(OmegaKind kind);

// h = q * r * s^H with q, s semi-unitary and r upper triangular with real,
// strictly positive diagonal.
struct DecompositionTriple {
  ComplexMatrix q;
  ComplexMatrix r;
  ComplexMatrix s;
};

// The two planar rotations that move a 2x2 diagonal (sigma1, sigma2) to an
// upper-triangular form whose leading entry equals omega_value.
struct RotationPair {
  ComplexMatrix phi_l;  // 2x2, unitary
  ComplexMatrix phi_r;  // 2x2, unitary
  double omega_value;
};

// Per-sweep record of the evolving diagonal. Entry 0 is the initialization;
// entry l is the state after l full sweeps, so histories hold
// iteration_index + 1 vectors.
struct SweepTrace {
  std::size_t iteration_index = 0;
  std::vector<std::vector<double>> diag_history;
  std::vector<double> f_history;  // F(x) = sum_k x_k per recorded diagonal
};

double omega(double z1, double z2, OmegaKind kind);

// Builds the rotation pair for sigma1 >= omega_value >= sigma2 > = 0 from
// c = sqrt((omega^2 - sigma2^2) / (sigma1^2 - sigma2^2)), s = sqrt(1 - c^2).
// Violating the bracketing raises numeric_error("majorization violated").
RotationPair rotation_pair(double sigma1, double sigma2, double omega_value);

// One elementary step at stage k (1-based, 1 <= k < K): replaces the diagonal
// pair (z1, z2) at positions k, k+1 by (omega(z1, z2), z1 z2 / omega(z1, z2))
// while preserving q * r * s^H. Only rows/columns k, k+1 of r and columns
// k, k+1 of q and s change.
DecompositionTriple stage_update(const DecompositionTriple& state,
                                 std::size_t k, OmegaKind kind);

// Stages k = 1..K-1 in order; F(diag(r)) never increases.
DecompositionTriple sweep(const DecompositionTriple& state, OmegaKind kind);
void sweep_in_place(DecompositionTriple& state, OmegaKind kind);

// In-place stage with a caller-chosen target value for the new leading
// diagonal entry; pivot must lie within the singular values of the 2x2 block.
// Shared by sweep (pivot = omega of the diagonal pair) and by the exact
// equal-diagonal construction (pivot = the global geometric mean).
void apply_stage_pivot(DecompositionTriple& state, std::size_t k, double pivot);

// The image of one sweep on the diagonal alone: the scalar map the rotation
// machinery realizes. Used as a matrix-free oracle.
std::vector<double> scalar_diag_sweep(const std::vector<double>& d,
                                      OmegaKind kind);

struct IgmdResult {
  DecompositionTriple triple;
  SweepTrace trace;
};

// Full pipeline: initialize, then run `iterations` sweeps, recording the
// diagonal after each. If early_stop_mse is set, stops once the mean squared
// deviation of diag(r) from its own geometric mean falls below the threshold
// (off by default; the sweeps themselves never compute the target value).
IgmdResult igmd(const ComplexMatrix& h, InitKind init, OmegaKind kind,
                std::size_t iterations,
                std::optional<double> early_stop_mse = std::nullopt);

// Target diagonal value: the geometric mean of the singular values of h,
// computed via a logarithm sum. Exists for oracles and metrics only; the
// sweep path never calls it.
double geometric_mean_target(const ComplexMatrix& h);

// Per-recorded-iteration (1/K) * sum_k (r_kk - sigma_bar)^2.
std::vector<double> mse_diag(const SweepTrace& trace, double sigma_bar);
double mse_of_diag(const std::vector<double>& d, double sigma_bar);

}  // namespace igmd
