#pragma once

#include <optional>
#include <string>
#include <variant>

#include "specloc/complex_matrix.hpp"
#include "specloc/eigen.hpp"
#include "specloc/lyapunov.hpp"

namespace specloc {

struct HalfPlaneLeft {};
struct UnitDisk {};
/// (Re z)^2/a^2 + (Im z)^2/b^2 < 1, a > b > 0.
struct EllipseInterior {
  double a;
  double b;
};
struct EllipseExterior {
  double a;
  double b;
};
/// (Im z)^2 < 2p Re z, p > 0.
struct ParabolaInterior {
  double p;
};
struct ParabolaExterior {
  double p;
};

using Region = std::variant<HalfPlaneLeft, UnitDisk, EllipseInterior, EllipseExterior,
                            ParabolaInterior, ParabolaExterior>;

/// Throws InvalidRegionParams unless a > b > 0 (ellipses) or p > 0 (parabolas).
void validate_region(const Region& region);

/// CLI spelling: halfplane, disk, ellipse-in, ellipse-out, parabola-in, parabola-out.
std::string region_name(const Region& region);

/// Strict membership. Boundary points lie in neither an interior region nor
/// its exterior.
bool contains(const Region& region, Complex z);

/// Euclidean distance from z to the boundary curve.
double boundary_distance(const Region& region, Complex z);

/// boundary_distance, negated when z is not in the region.
double signed_margin(const Region& region, Complex z);

/// Region equation sum a_jk (A*)^j H A^k = rhs_sign * C.
LyapunovForm region_form(const Region& region);

enum class Direction { iff, sufficient_only };

Direction certificate_direction(const Region& region);

struct Membership {
  bool inside;
  /// Smallest signed margin over the spectrum.
  double margin;
  Spectrum spectrum;
};

Membership spectrum_in_region(const Region& region, const ComplexMatrix& a);

struct OracleCheck {
  bool in_region;
  double margin;
  /// iff regions: verdict == in_region. Sufficient-only: verdict implies in_region.
  bool agrees;
  Spectrum spectrum;
};

struct Certificate {
  Region region;
  ComplexMatrix h;
  double residual;
  bool posdef;
  double min_pivot;
  double condition_estimate;
  /// posdef && residual <= kCertificateResidual.
  bool verdict;
  Direction direction;
  std::optional<OracleCheck> oracle;
};

/// Solves the region equation with B = A* and Y = rhs_sign * C (C = I when
/// omitted) and tests H for positive definiteness. Throws
/// CNotPositiveDefinite for a C that is not Hermitian positive definite;
/// SingularSystem propagates from the solver.
Certificate certify(const Region& region, const ComplexMatrix& a,
                    const std::optional<ComplexMatrix>& c = std::nullopt,
                    bool with_oracle = false);

}  // namespace specloc
