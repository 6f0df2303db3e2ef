#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace igmd {

using cplx = std::complex<double>;

// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  cplx* row(std::size_t i) { return data_.data() + i * cols_; }
  const cplx* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::vector<cplx>& data() { return data_; }
  const std::vector<cplx>& data() const { return data_; }

  bool operator==(const ComplexMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix conj_transpose(const ComplexMatrix& a);

double frobenius_norm(const ComplexMatrix& a);
// Largest entrywise |a_ij - b_ij|; shapes must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// max_ij |(a^H a - I)_ij|, the distance of a from having orthonormal columns.
double unitarity_deviation(const ComplexMatrix& a);
// ||a - b||_F / ||b||_F (0 denominator treated as 1).
double relative_error(const ComplexMatrix& a, const ComplexMatrix& b);
bool all_finite(const ComplexMatrix& a);

// Text format: first line "rows cols", then one line per row whose entries are
// written "RE+IMi" / "RE-IMi" (e.g. "1.5-0.25i"), whitespace separated.
ComplexMatrix read_matrix(std::istream& in);
ComplexMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const ComplexMatrix& a);
void write_matrix_file(const std::string& path, const ComplexMatrix& a);

// Round-trip exact formatting of one entry ("%.17g%+.17gi").
std::string format_complex(cplx v);

}  // namespace igmd
