#include <cmath>

#include <gtest/gtest.h>

#include "specloc/eigen.hpp"
#include "specloc/errors.hpp"
#include "specloc/linalg.hpp"
#include "test_support.hpp"

namespace specloc {
namespace {

constexpr Complex I{0.0, 1.0};

double column_norm(const ComplexMatrix& v) { return v.frobenius_norm(); }

TEST(LuSolve, IdentityReturnsRightHandSide) {
  const ComplexMatrix b = ComplexMatrix::from_rows({{1.0 + I}, {-2.0}, {0.5 * I}});
  EXPECT_EQ(lu_solve(ComplexMatrix::identity(3), b).x, b);
}

TEST(LuSolve, Diagonal) {
  const LuSolveResult r =
      lu_solve(ComplexMatrix::diagonal({2.0, 4.0}), ComplexMatrix::from_rows({{2.0}, {8.0}}));
  EXPECT_EQ(r.x, ComplexMatrix::from_rows({{1.0}, {2.0}}));
  EXPECT_NEAR(r.condition_estimate, 2.0, 1e-12);
}

TEST(LuSolve, RankDeficientThrows) {
  const ComplexMatrix a = ComplexMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}});
  EXPECT_THROW(lu_solve(a, ComplexMatrix::from_rows({{1.0}, {2.0}})), SingularMatrix);
  EXPECT_THROW(lu_solve(ComplexMatrix(3, 3), ComplexMatrix(3, 1)), SingularMatrix);
}

TEST(LuSolve, SingularMatrixReportsPivot) {
  const ComplexMatrix a = ComplexMatrix::from_rows({{1.0, 2.0}, {2.0, 4.0}});
  try {
    LuFactorization lu(a);
    FAIL() << "expected SingularMatrix";
  } catch (const SingularMatrix& e) {
    EXPECT_EQ(e.pivot_index(), 1u);
    EXPECT_LE(e.pivot_magnitude(), 1e-13 * 4.0);
  }
}

TEST(LuSolve, ShapeErrors) {
  EXPECT_THROW(lu_solve(ComplexMatrix(2, 3), ComplexMatrix(2, 1)), DimensionMismatch);
  EXPECT_THROW(lu_solve(ComplexMatrix::identity(2), ComplexMatrix(3, 1)), DimensionMismatch);
}

TEST(LuSolve, RandomResidualsUpTo64) {
  testing::Rng rng(21);
  for (std::size_t n : {1u, 2u, 5u, 9u, 16u, 33u, 64u}) {
    for (int trial = 0; trial < 3; ++trial) {
      // Diagonal shift keeps the matrix well conditioned.
      ComplexMatrix a = testing::random_matrix(n, n, rng);
      for (std::size_t i = 0; i < n; ++i) a(i, i) += 2.0 * std::sqrt(static_cast<double>(n));
      const ComplexMatrix b = testing::random_matrix(n, 1, rng);
      const LuSolveResult r = lu_solve(a, b);
      EXPECT_LE(column_norm(mat_mul(a, r.x) - b) / column_norm(b), 1e-10) << "n = " << n;
      EXPECT_GE(r.condition_estimate, 1.0);
    }
  }
}

TEST(LuSolve, MultipleRightHandSidesAndAdjoint) {
  testing::Rng rng(22);
  const ComplexMatrix a = testing::random_matrix(5, 5, rng);
  const ComplexMatrix b = testing::random_matrix(5, 3, rng);
  const LuFactorization lu(a);
  EXPECT_LE(max_abs_diff(mat_mul(a, lu.solve(b)), b), 1e-10);
  EXPECT_LE(max_abs_diff(mat_mul(a.adjoint(), lu.solve_adjoint(b)), b), 1e-10);
}

TEST(LuSolve, ConditionEstimateTracksIllConditioning) {
  const ComplexMatrix a = ComplexMatrix::diagonal({1.0, 1e-9});
  const double k = LuFactorization(a).condition_estimate();
  EXPECT_NEAR(k, 1e9, 1e9 * 1e-9);
}

TEST(LuSolve, DeterminantAndInverse) {
  const ComplexMatrix a = ComplexMatrix::from_rows({{0.0, 2.0}, {3.0, 1.0}});
  EXPECT_NEAR(std::abs(LuFactorization(a).determinant() - Complex(-6.0)), 0.0, 1e-14);
  EXPECT_LE(max_abs_diff(mat_mul(a, inverse(a)), ComplexMatrix::identity(2)), 1e-15);
}

TEST(HermitianCheck, Examples) {
  EXPECT_TRUE(hermitian_check(ComplexMatrix::from_rows({{2.0, I}, {-I, 1.0}})).is_hermitian);
  const HermitianVerdict v = hermitian_check(ComplexMatrix::from_rows({{2.0, I}, {I, 1.0}}));
  EXPECT_FALSE(v.is_hermitian);
  EXPECT_NEAR(v.asymmetry, 2.0, 1e-12);
  EXPECT_FALSE(hermitian_check(ComplexMatrix(2, 3)).is_hermitian);
}

TEST(Cholesky, Identity) {
  const CholeskyResult r = cholesky_posdef(ComplexMatrix::identity(3));
  ASSERT_TRUE(r.positive_definite);
  EXPECT_EQ(*r.factor, ComplexMatrix::identity(3));
}

TEST(Cholesky, PositiveDefiniteTwoByTwo) {
  const ComplexMatrix h = ComplexMatrix::from_rows({{2.0, 1.0}, {1.0, 2.0}});
  const CholeskyResult r = cholesky_posdef(h);
  ASSERT_TRUE(r.positive_definite);
  EXPECT_LE(max_abs_diff(mat_mul(*r.factor, r.factor->adjoint()), h), 1e-15);
  EXPECT_EQ((*r.factor)(0, 1), Complex(0.0));
}

TEST(Cholesky, IndefiniteReportsPivot) {
  const CholeskyResult r = cholesky_posdef(ComplexMatrix::from_rows({{1.0, 2.0}, {2.0, 1.0}}));
  EXPECT_FALSE(r.positive_definite);
  EXPECT_FALSE(r.factor.has_value());
  EXPECT_EQ(r.failed_pivot, 1u);
  EXPECT_NEAR(r.min_pivot, -3.0, 1e-15);
}

TEST(Cholesky, NonHermitianThrows) {
  EXPECT_THROW(cholesky_posdef(ComplexMatrix::from_rows({{1.0, 1.0}, {0.0, 1.0}})), NotHermitian);
}

TEST(Cholesky, ComplexHermitian) {
  const ComplexMatrix h = ComplexMatrix::from_rows({{4.0, 1.0 + I}, {1.0 - I, 3.0}});
  const CholeskyResult r = cholesky_posdef(h);
  ASSERT_TRUE(r.positive_definite);
  EXPECT_LE(max_abs_diff(mat_mul(*r.factor, r.factor->adjoint()), h), 1e-14);
}

TEST(Cholesky, AgreesWithEigenOracleOnRandomHermitian) {
  testing::Rng rng(23);
  std::uniform_real_distribution<double> shift(-1.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 8);
    ComplexMatrix h = hermitian_part(testing::random_matrix(n, n, rng));
    const double s = shift(rng);
    for (std::size_t i = 0; i < n; ++i) h(i, i) += s * std::sqrt(static_cast<double>(n));
    double lo = 1e300;
    for (const Complex& z : eig(h).eigenvalues) lo = std::min(lo, z.real());
    const double tol = tol::kPositiveDefinite * spectral_norm(h);
    // Skip the rounding band around the threshold.
    if (std::abs(lo - tol) < 1e-9 * spectral_norm(h)) continue;
    EXPECT_EQ(cholesky_posdef(h).positive_definite, lo > tol) << "trial " << trial;
  }
}

TEST(SpectralNorm, Examples) {
  EXPECT_NEAR(spectral_norm(ComplexMatrix::diagonal({1.0, -3.0})), 3.0, 3e-12);
  EXPECT_NEAR(spectral_norm(ComplexMatrix::from_rows({{0.0, 2.0}, {0.0, 0.0}})), 2.0, 2e-12);
  testing::Rng rng(24);
  EXPECT_NEAR(spectral_norm(testing::random_unitary(5, rng)), 1.0, 1e-12);
  EXPECT_EQ(spectral_norm(ComplexMatrix(3, 2)), 0.0);
}

TEST(SpectralNorm, StartVectorInNullSpace) {
  // First column zero and second column orthogonal to the default start.
  const ComplexMatrix a = ComplexMatrix::from_rows({{0.0, 0.0, 5.0}});
  EXPECT_NEAR(spectral_norm(a), 5.0, 5e-12);
}

TEST(SpectralNorm, AdjointInvariance) {
  testing::Rng rng(25);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
    const ComplexMatrix a = testing::random_matrix(n, n + 1, rng);
    const double s = spectral_norm(a);
    EXPECT_NEAR(spectral_norm(a.adjoint()), s, 1e-10 * s);
    // Bracketed by the Frobenius norm.
    EXPECT_LE(s, a.frobenius_norm() * (1 + 1e-12));
    EXPECT_GE(s * std::sqrt(static_cast<double>(n)), a.frobenius_norm() * (1 - 1e-12));
  }
}

TEST(OneNorm, MaxColumnSum) {
  EXPECT_DOUBLE_EQ(one_norm(ComplexMatrix::from_rows({{1.0, -2.0}, {3.0 * I, 4.0}})), 6.0);
}

}  // namespace
}  // namespace specloc
