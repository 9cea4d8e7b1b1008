#include "specloc/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specloc/errors.hpp"

namespace specloc {

namespace {

void require_positive(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw DimensionMismatch("matrix dimensions must be positive, got " +
                            std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(what) + ": shapes " +
                            std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " +
                            std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()) + " differ");
  }
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  require_positive(rows, cols);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  require_positive(rows, cols);
  if (data_.size() != rows * cols) {
    throw DimensionMismatch("entry count " + std::to_string(data_.size()) +
                            " does not match " + std::to_string(rows) + "x" +
                            std::to_string(cols));
  }
  if (!all_finite()) throw NonFiniteEntry("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionMismatch("ragged row list");
    data.insert(data.end(), row.begin(), row.end());
  }
  return ComplexMatrix(r, c, std::move(data));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!finite(values[i])) throw NonFiniteEntry("diagonal entry not finite");
    m(i, i) = values[i];
  }
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> values) {
  return diagonal(std::span<const Complex>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> values) {
  return ComplexMatrix(values.size(), 1,
                       std::vector<Complex>(values.begin(), values.end()));
}

ComplexMatrix ComplexMatrix::scalar(Complex value) {
  return ComplexMatrix(1, 1, {value});
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionMismatch("trace of a non-square matrix");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  // Scaled accumulation avoids overflow for large entries.
  double scale = 0.0;
  double sum = 1.0;
  for (const Complex& z : data_) {
    for (double part : {z.real(), z.imag()}) {
      const double v = std::abs(part);
      if (v == 0.0) continue;
      if (scale < v) {
        sum = 1.0 + sum * (scale / v) * (scale / v);
        scale = v;
      } else {
        sum += (v / scale) * (v / scale);
      }
    }
  }
  return scale * std::sqrt(sum);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const Complex& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), finite);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "addition");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "subtraction");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex factor) {
  for (Complex& z : data_) z *= factor;
  return *this;
}

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("product of " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " +
                            std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("Hermitian part of non-square matrix");
  ComplexMatrix out = m + m.adjoint();
  out *= 0.5;
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "comparison");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a) {
  a *= -1.0;
  return a;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return mat_mul(a, b);
}

ComplexMatrix operator*(Complex factor, ComplexMatrix a) {
  a *= factor;
  return a;
}

ComplexMatrix operator*(ComplexMatrix a, Complex factor) {
  a *= factor;
  return a;
}

}  // namespace specloc
