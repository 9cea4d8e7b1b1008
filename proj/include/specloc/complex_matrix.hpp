#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace specloc {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Dimensions are always positive and every
/// entry supplied from outside is checked to be finite.
class ComplexMatrix {
 public:
  /// Zero matrix of the given shape.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols,
                std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);
  static ComplexMatrix diagonal(std::span<const Complex> values);
  static ComplexMatrix diagonal(std::initializer_list<Complex> values);
  static ComplexMatrix column(std::span<const Complex> values);
  static ComplexMatrix scalar(Complex value);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;

  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex factor);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

/// Standard product; throws DimensionMismatch when a.cols() != b.rows().
ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);

/// (M + M*) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// max_ij |a_ij - b_ij|; throws DimensionMismatch on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex factor, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex factor);

}  // namespace specloc
