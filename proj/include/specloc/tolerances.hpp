#pragma once

namespace specloc::tol {

// Relative thresholds; each is multiplied by a norm of the matrix under test.
inline constexpr double kHermitian = 1e-10;
inline constexpr double kPositiveDefinite = 1e-12;
inline constexpr double kPivot = 1e-13;
inline constexpr double kNorm = 1e-12;
inline constexpr double kKrein = 1e-8;
inline constexpr double kEigenvector = 1e-9;

// Absolute bound on the relative residual of an accepted certificate.
inline constexpr double kCertificateResidual = 1e-9;

// Residual bound used to check that a caller-supplied H solves the region
// equation with C = I before running a perturbation test.
inline constexpr double kSuppliedSolutionResidual = 1e-8;

inline constexpr int kMaxSweepsPerEigenvalue = 30;
inline constexpr int kDefaultQuadraturePoints = 64;

}  // namespace specloc::tol
