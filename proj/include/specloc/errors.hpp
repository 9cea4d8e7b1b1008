#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace specloc {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonFiniteEntry : public Error {
 public:
  using Error::Error;
};

/// A pivot of a partial-pivoted LU fell below pivot_tol * max|entry|.
class SingularMatrix : public Error {
 public:
  SingularMatrix(std::size_t pivot_index, double pivot_magnitude)
      : Error("singular matrix: pivot " + std::to_string(pivot_index) +
              " has magnitude " + std::to_string(pivot_magnitude)),
        pivot_index_(pivot_index),
        pivot_magnitude_(pivot_magnitude) {}

  std::size_t pivot_index() const noexcept { return pivot_index_; }
  double pivot_magnitude() const noexcept { return pivot_magnitude_; }

 private:
  std::size_t pivot_index_;
  double pivot_magnitude_;
};

class NotHermitian : public Error {
 public:
  explicit NotHermitian(double asymmetry)
      : Error("matrix is not Hermitian (asymmetry " +
              std::to_string(asymmetry) + ")"),
        asymmetry_(asymmetry) {}
  double asymmetry() const noexcept { return asymmetry_; }

 private:
  double asymmetry_;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class NotAnEigenvalue : public Error {
 public:
  using Error::Error;
};

class InvalidForm : public Error {
 public:
  using Error::Error;
};

/// The vectorized Lyapunov-type system could not be factored: the symbol
/// vanishes (or nearly vanishes) on a pair of eigenvalues.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

class KreinConditionViolated : public Error {
 public:
  using Error::Error;
};

class InvalidContour : public Error {
 public:
  using Error::Error;
};

class ContourTooClose : public Error {
 public:
  using Error::Error;
};

class InvalidRegionParams : public Error {
 public:
  using Error::Error;
};

class UnsupportedRegion : public Error {
 public:
  using Error::Error;
};

class CNotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class HNotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// H is not a certificate solution of the region equation with C = I.
class NotACertificate : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace specloc
