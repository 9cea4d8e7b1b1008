#pragma once

#include <optional>

#include "specloc/complex_matrix.hpp"
#include "specloc/lyapunov.hpp"
#include "specloc/regions.hpp"

namespace specloc {

enum class ConditionKind { ellipse_interior, ellipse_exterior, parabola_interior, parabola_exterior };

/// M < I or M > -I.
enum class ThresholdSide { less_than_I, greater_than_minus_I };

struct ConditionMatrix {
  ComplexMatrix m;
  ConditionKind kind;
  ThresholdSide side;
};

/// Left-hand side of the perturbation inequality for the region, with
/// S = AB + BA + B^2:
///
///   ellipse:  (1/2a^2 + 1/2b^2)(B*HA + A*HB + B*HB) + (1/4a^2 - 1/4b^2)(HS + S*H)
///   parabola: HB + B*H - (1/2p)(A*HB + B*HA + B*HB) + (1/4p)(HS + S*H)
///
/// Throws UnsupportedRegion for the half-plane and the disk.
ConditionMatrix condition_matrix(const Region& region, const ComplexMatrix& a,
                                 const ComplexMatrix& b, const ComplexMatrix& h);

struct PerturbationReport {
  ConditionMatrix condition;
  /// I - M > 0 or M + I > 0 by Cholesky.
  bool condition_holds;
  /// Distance of the extreme eigenvalue of M from the threshold; positive
  /// when the inequality holds.
  double margin;
  /// Ellipse regions only.
  std::optional<double> radius;
  double b_norm;
  bool verdict;
};

/// H must be positive definite and solve the region equation for A with
/// C = I (NotACertificate otherwise).
PerturbationReport check_perturbation(const Region& region, const ComplexMatrix& a,
                                      const ComplexMatrix& b, const ComplexMatrix& h);

/// sqrt(||A||^2 + b^2/||H||) - ||A||.
double radius_ellipse_interior(const ComplexMatrix& a, const ComplexMatrix& h, double ea,
                               double eb);

/// 2a^2/(a^2-b^2) * (sqrt(||A||^2 + (a^2-b^2)/(2a^2) * b^2/||H||) - ||A||).
double radius_ellipse_exterior(const ComplexMatrix& a, const ComplexMatrix& h, double ea,
                               double eb);

/// Region equation for A + B with right-hand side rhs_sign * C.
SolveReport perturbed_solvability(const Region& region, const ComplexMatrix& a,
                                  const ComplexMatrix& b, const ComplexMatrix& c);

}  // namespace specloc
