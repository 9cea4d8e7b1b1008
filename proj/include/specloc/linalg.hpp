#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "specloc/complex_matrix.hpp"
#include "specloc/tolerances.hpp"

namespace specloc {

/// Partial-pivoted LU factorization PA = LU of a square matrix.
///
/// Construction throws SingularMatrix when a pivot magnitude falls below
/// pivot_tol * max|a_ij|. The factorization can be reused for any number of
/// right-hand sides.
class LuFactorization {
 public:
  explicit LuFactorization(const ComplexMatrix& a,
                           double pivot_tol = tol::kPivot);

  std::size_t dimension() const noexcept { return n_; }

  /// Solves A X = B for a block of right-hand sides.
  ComplexMatrix solve(const ComplexMatrix& b) const;

  /// Solves A* X = B.
  ComplexMatrix solve_adjoint(const ComplexMatrix& b) const;

  /// Estimate of the 1-norm condition number ||A||_1 ||A^-1||_1 (Hager).
  double condition_estimate() const;

  Complex determinant() const;

  /// Smallest |u_kk| relative to max|a_ij|.
  double min_relative_pivot() const noexcept { return min_relative_pivot_; }

 private:
  std::size_t n_;
  ComplexMatrix lu_;
  std::vector<std::size_t> perm_;
  int parity_ = 1;
  double a_norm1_ = 0.0;
  double min_relative_pivot_ = 0.0;
};

struct LuSolveResult {
  ComplexMatrix x;
  double condition_estimate;
};

/// x with A x = b; b may hold several columns.
LuSolveResult lu_solve(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix inverse(const ComplexMatrix& a);

struct HermitianVerdict {
  bool is_hermitian;
  double asymmetry;  // ||M - M*||_2
};

/// Hermitian test with tolerance herm_tol = kHermitian * ||M||_2.
HermitianVerdict hermitian_check(const ComplexMatrix& m);
HermitianVerdict hermitian_check(const ComplexMatrix& m, double abs_tol);

struct CholeskyResult {
  bool positive_definite;
  /// Lower-triangular L with L L* = H; present only when positive_definite.
  std::optional<ComplexMatrix> factor;
  /// Index of the first pivot at or below posdef_tol (meaningful on failure).
  std::size_t failed_pivot;
  /// Smallest pivot d_k = l_kk^2 reached before success or failure.
  double min_pivot;
  double asymmetry;
};

/// Cholesky-based test for H = H* > 0. Throws NotHermitian when
/// ||H - H*|| exceeds herm_tol; pivots must exceed kPositiveDefinite * ||H||.
CholeskyResult cholesky_posdef(const ComplexMatrix& h);

/// Operator 2-norm via power iteration on A*A.
double spectral_norm(const ComplexMatrix& a);

/// Maximum absolute column sum.
double one_norm(const ComplexMatrix& a);

}  // namespace specloc
