#include "igmd/complex_matrix.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "igmd/errors.hpp"
#include "igmd/kernels.hpp"

namespace igmd {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matmul: inner dimensions differ");
  ComplexMatrix c(a.rows(), b.cols());
  const auto& kern = kernels::active_backend();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx* ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k)
      kern.caxpy(ci, b.row(k), a(i, k), b.cols());
  }
  return c;
}

ComplexMatrix conj_transpose(const ComplexMatrix& a) {
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

double frobenius_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (const cplx& v : a.data()) sum += std::norm(v);
  return std::sqrt(sum);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shapes differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double unitarity_deviation(const ComplexMatrix& a) {
  ComplexMatrix g = matmul(conj_transpose(a), a);
  double m = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      cplx want = (i == j) ? cplx(1.0) : cplx(0.0);
      m = std::max(m, std::abs(g(i, j) - want));
    }
  return m;
}

double relative_error(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("relative_error: shapes differ");
  double num = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    num += std::norm(a.data()[i] - b.data()[i]);
  double den = frobenius_norm(b);
  if (den == 0.0) den = 1.0;
  return std::sqrt(num) / den;
}

bool all_finite(const ComplexMatrix& a) {
  for (const cplx& v : a.data())
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

std::string format_complex(cplx v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", v.real(), v.imag());
  return buf;
}

namespace {

// Parses "RE+IMi" / "RE-IMi"; returns false on any trailing garbage.
bool parse_complex(const std::string& tok, cplx& out) {
  const char* p = tok.c_str();
  char* end = nullptr;
  double re = std::strtod(p, &end);
  if (end == p) return false;
  if (*end != '+' && *end != '-') return false;
  const char* p2 = end;
  double im = std::strtod(p2, &end);
  if (end == p2) return false;
  if (*end != 'i' || *(end + 1) != '\0') return false;
  out = cplx(re, im);
  return true;
}

}  // namespace

ComplexMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line))
    throw parse_error("line 1: missing header \"rows cols\"");
  ++lineno;
  std::istringstream hdr(line);
  long long rows = 0, cols = 0;
  if (!(hdr >> rows >> cols) || rows <= 0 || cols <= 0)
    throw parse_error("line 1: header must be two positive integers \"rows cols\"");
  std::string trailing;
  if (hdr >> trailing)
    throw parse_error("line 1: unexpected text after \"rows cols\"");

  ComplexMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (long long i = 0; i < rows; ++i) {
    if (!std::getline(in, line))
      throw parse_error("line " + std::to_string(lineno + 1) + ": missing row " +
                        std::to_string(i + 1));
    ++lineno;
    std::istringstream row(line);
    std::string tok;
    for (long long j = 0; j < cols; ++j) {
      if (!(row >> tok))
        throw parse_error("line " + std::to_string(lineno) + ": expected " +
                          std::to_string(cols) + " entries, found " +
                          std::to_string(j));
      cplx v;
      if (!parse_complex(tok, v))
        throw parse_error("line " + std::to_string(lineno) + ": bad entry '" +
                          tok + "'");
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
    }
    if (row >> tok)
      throw parse_error("line " + std::to_string(lineno) + ": extra entry '" +
                        tok + "'");
  }
  if (!all_finite(m)) throw parse_error("matrix contains non-finite entries");
  return m;
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw parse_error("cannot open '" + path + "'");
  try {
    return read_matrix(f);
  } catch (const parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

void write_matrix(std::ostream& out, const ComplexMatrix& a) {
  out << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out << ' ';
      out << format_complex(a(i, j));
    }
    out << '\n';
  }
}

void write_matrix_file(const std::string& path, const ComplexMatrix& a) {
  std::ofstream f(path);
  if (!f) throw numeric_error("cannot write '" + path + "'");
  write_matrix(f, a);
}

}  // namespace igmd
