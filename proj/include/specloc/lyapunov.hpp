#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "specloc/complex_matrix.hpp"
#include "specloc/eigen.hpp"
#include "specloc/tolerances.hpp"

namespace specloc {

/// Coefficients a_jk (0 <= j, k <= N) of the matrix equation
///
///     sum_jk a_jk B^j H A^k = rhs_sign * C
///
/// together with the sign carried by the right-hand side. The bivariate
/// polynomial P(lambda, mu) = sum a_jk lambda^j mu^k is its symbol.
class LyapunovForm {
 public:
  static constexpr int kMaxOrder = 8;

  struct Term {
    int j;
    int k;
    Complex value;
  };

  /// coeffs is the (N+1)x(N+1) grid in row-major order (index j*(N+1)+k).
  LyapunovForm(int order, std::vector<Complex> coeffs, int rhs_sign = 1);
  LyapunovForm(int order, std::initializer_list<Term> terms, int rhs_sign = 1);

  int order() const noexcept { return order_; }
  int rhs_sign() const noexcept { return rhs_sign_; }
  Complex coefficient(int j, int k) const { return coeffs_[index(j, k)]; }
  double max_abs_coefficient() const;

  /// Real coefficients with a_jk == a_kj; P(conj(z), z) is then real.
  bool is_real_symmetric() const;

 private:
  std::size_t index(int j, int k) const;

  int order_;
  std::vector<Complex> coeffs_;
  int rhs_sign_;
};

/// P(lambda, mu) by nested Horner evaluation.
Complex symbol_eval(const LyapunovForm& form, Complex lambda, Complex mu);

struct KreinPair {
  std::size_t s;  // index into spec_B
  std::size_t r;  // index into spec_A
  Complex lambda;
  Complex mu;
  double abs_symbol;
};

struct KreinVerdict {
  bool ok;
  double min_abs_symbol;
  double tolerance;
  /// Every pair with |P(lambda_s, mu_r)| <= tolerance.
  std::vector<KreinPair> offending;
};

/// Default zero test: kKrein * max(1, max|a_jk| * R^(2N)), R bounding both spectra.
double krein_tolerance(const LyapunovForm& form, const Spectrum& spec_b,
                       const Spectrum& spec_a);

/// Unique solvability test P(lambda_s, mu_r) != 0 over sigma(B) x sigma(A).
KreinVerdict krein_condition(const LyapunovForm& form, const Spectrum& spec_b,
                             const Spectrum& spec_a);
KreinVerdict krein_condition(const LyapunovForm& form, const Spectrum& spec_b,
                             const Spectrum& spec_a, double tolerance);

struct SolveReport {
  ComplexMatrix h;
  /// ||sum a_jk B^j H A^k - Y|| / max(1, ||Y||), recomputed after the solve.
  double residual;
  bool hermitized;
  /// ||H - H*|| of the raw solution when hermitized.
  double asymmetry_dropped;
  /// Kronecker solve: 1-norm condition estimate of the vectorized system.
  /// Contour solve: largest condition estimate among the node resolvents.
  double condition_estimate;
};

/// Solves sum a_jk B^j H A^k = Y through the column-stacked Kronecker system
/// [sum a_jk (A^k)^T (x) B^j] vec(H) = vec(Y). B is m x m, A is n x n, Y is
/// m x n. Note that rhs_sign is not applied: Y is the full right-hand side.
/// Throws SingularSystem when the LU factorization meets a vanishing pivot.
SolveReport solve_kron(const LyapunovForm& form, const ComplexMatrix& b,
                       const ComplexMatrix& a, const ComplexMatrix& y);

/// Relative residual of a candidate H; powers come from repeated mat_mul.
double residual(const LyapunovForm& form, const ComplexMatrix& b,
                const ComplexMatrix& a, const ComplexMatrix& h,
                const ComplexMatrix& y);

/// True when B == A*, Y == Y* and the coefficients are real-symmetric; the
/// unique solution is then Hermitian and is symmetrized after solving.
bool hermitian_compatible(const LyapunovForm& form, const ComplexMatrix& b,
                          const ComplexMatrix& a, const ComplexMatrix& y);

/// Circle used by the trapezoidal rule.
struct ContourConfig {
  Complex center;
  double radius;
  int quadrature_points = tol::kDefaultQuadraturePoints;
};

/// Throws InvalidContour unless radius > 0, Q >= 16 and the circle strictly
/// encloses every eigenvalue of the spectrum.
void validate_contour(const ContourConfig& config, const Spectrum& spectrum);

/// Picks circles for B and A centered at the Gershgorin-disc centroids. The
/// radius is selected among candidates by the smallest predicted trapezoid
/// rate max(spread / r, r / nearest symbol zero). Throws ContourTooClose when
/// no candidate passes validation.
std::pair<ContourConfig, ContourConfig> choose_contours(
    const LyapunovForm& form, const ComplexMatrix& b, const ComplexMatrix& a,
    int quadrature_points = tol::kDefaultQuadraturePoints);

/// Evaluates the double resolvent integral
///   H = (2 pi i)^-2 oint oint P(l, m)^-1 (l I - B)^-1 Y (m I - A)^-1 dl dm
/// by the trapezoidal rule on two circles.
SolveReport solve_contour(const LyapunovForm& form, const ComplexMatrix& b,
                          const ComplexMatrix& a, const ComplexMatrix& y,
                          const ContourConfig& config_b,
                          const ContourConfig& config_a);

}  // namespace specloc
