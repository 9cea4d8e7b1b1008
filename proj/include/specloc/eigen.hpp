#pragma once

#include <vector>

#include "specloc/complex_matrix.hpp"
#include "specloc/tolerances.hpp"

// Eigenvalue oracle. Nothing in here calls the LU, Cholesky or Lyapunov
// code: certificates are checked against an independent computation.

namespace specloc {

struct Spectrum {
  /// Eigenvalues with multiplicity, sorted by (real, imag).
  std::vector<Complex> eigenvalues;
  /// max over eigenvalues of sigma_min(A - lambda I) / ||A||_F (estimated).
  double backward_error = 0.0;
};

struct EigOptions {
  int max_sweeps_per_eigenvalue = tol::kMaxSweepsPerEigenvalue;
};

/// Householder reduction to upper-Hessenberg form U* A U.
ComplexMatrix hessenberg(const ComplexMatrix& a);

/// All eigenvalues via Wilkinson-shifted complex QR with deflation.
/// Throws NoConvergence when max_sweeps * n iterations are exhausted.
Spectrum eig(const ComplexMatrix& a, const EigOptions& options = {});

/// Unit eigenvector for a (computed) eigenvalue by shifted inverse iteration.
/// The largest-magnitude component is made real and positive. Throws
/// NotAnEigenvalue if ||Av - lambda v|| cannot be brought below
/// kEigenvector * ||A||_F.
ComplexMatrix eigvec(const ComplexMatrix& a, Complex lambda);

}  // namespace specloc
