#include "specloc/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specloc/eigen.hpp"
#include "specloc/errors.hpp"
#include "specloc/linalg.hpp"

namespace specloc {

namespace {

void require_same_square(const ComplexMatrix& a, const ComplexMatrix& b,
                         const ComplexMatrix& h) {
  if (!a.is_square() || b.rows() != a.rows() || b.cols() != a.cols() ||
      h.rows() != a.rows() || h.cols() != a.cols()) {
    throw DimensionMismatch("A, B and H must be square of one size");
  }
}

void require_posdef_h(const ComplexMatrix& h) {
  bool ok = false;
  try {
    ok = cholesky_posdef(h).positive_definite;
  } catch (const NotHermitian&) {
    ok = false;
  }
  if (!ok) throw HNotPositiveDefinite("H is not Hermitian positive definite");
}

// Both radii in the form c / (sqrt(|A|^2 + k c) + |A|), c = b^2/|H|, which
// avoids cancellation when |A| is large.
double radius(const ComplexMatrix& a, const ComplexMatrix& h, double eb, double k) {
  if (!a.is_square() || h.rows() != a.rows() || h.cols() != a.cols()) {
    throw DimensionMismatch("A and H must be square of one size");
  }
  require_posdef_h(h);
  const double an = spectral_norm(a);
  const double c = eb * eb / spectral_norm(h);
  return c / (std::sqrt(an * an + k * c) + an);
}

}  // namespace

ConditionMatrix condition_matrix(const Region& region, const ComplexMatrix& a,
                                 const ComplexMatrix& b, const ComplexMatrix& h) {
  validate_region(region);
  require_same_square(a, b, h);
  const ComplexMatrix as = a.adjoint();
  const ComplexMatrix bs = b.adjoint();
  const ComplexMatrix s = mat_mul(a, b) + mat_mul(b, a) + mat_mul(b, b);
  const ComplexMatrix cross =
      mat_mul(mat_mul(bs, h), a) + mat_mul(mat_mul(as, h), b) + mat_mul(mat_mul(bs, h), b);
  const ComplexMatrix sym = mat_mul(h, s) + mat_mul(s.adjoint(), h);

  auto ellipse = [&](double ea, double eb, ConditionKind kind, ThresholdSide side) {
    const double alpha = 1.0 / (2.0 * ea * ea) + 1.0 / (2.0 * eb * eb);
    const double beta = 1.0 / (4.0 * ea * ea) - 1.0 / (4.0 * eb * eb);
    return ConditionMatrix{alpha * cross + beta * sym, kind, side};
  };
  auto parabola = [&](double p, ConditionKind kind, ThresholdSide side) {
    const ComplexMatrix m =
        mat_mul(h, b) + mat_mul(bs, h) - (1.0 / (2.0 * p)) * cross + (1.0 / (4.0 * p)) * sym;
    return ConditionMatrix{m, kind, side};
  };

  if (const auto* r = std::get_if<EllipseInterior>(&region))
    return ellipse(r->a, r->b, ConditionKind::ellipse_interior, ThresholdSide::less_than_I);
  if (const auto* r = std::get_if<EllipseExterior>(&region))
    return ellipse(r->a, r->b, ConditionKind::ellipse_exterior,
                   ThresholdSide::greater_than_minus_I);
  if (const auto* r = std::get_if<ParabolaInterior>(&region))
    return parabola(r->p, ConditionKind::parabola_interior, ThresholdSide::greater_than_minus_I);
  if (const auto* r = std::get_if<ParabolaExterior>(&region))
    return parabola(r->p, ConditionKind::parabola_exterior, ThresholdSide::less_than_I);
  throw UnsupportedRegion("no perturbation condition for region " + region_name(region));
}

PerturbationReport check_perturbation(const Region& region, const ComplexMatrix& a,
                                      const ComplexMatrix& b, const ComplexMatrix& h) {
  ConditionMatrix cm = condition_matrix(region, a, b, h);
  require_posdef_h(h);
  const LyapunovForm form = region_form(region);
  const ComplexMatrix y =
      static_cast<double>(form.rhs_sign()) * ComplexMatrix::identity(a.rows());
  const double res = residual(form, a.adjoint(), a, h, y);
  if (!(res <= tol::kSuppliedSolutionResidual)) {
    throw NotACertificate("H does not solve the region equation with C = I (residual " +
                          std::to_string(res) + ")");
  }

  const std::size_t n = a.rows();
  const ComplexMatrix m = hermitian_part(cm.m);
  const bool below = cm.side == ThresholdSide::less_than_I;
  const ComplexMatrix gap = below ? ComplexMatrix::identity(n) - m
                                  : m + ComplexMatrix::identity(n);
  const bool holds = cholesky_posdef(gap).positive_definite;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Complex& z : eig(m).eigenvalues) {
    lo = std::min(lo, z.real());
    hi = std::max(hi, z.real());
  }
  const double margin = below ? 1.0 - hi : lo + 1.0;

  std::optional<double> rho;
  if (const auto* r = std::get_if<EllipseInterior>(&region))
    rho = radius_ellipse_interior(a, h, r->a, r->b);
  else if (const auto* ex = std::get_if<EllipseExterior>(&region))
    rho = radius_ellipse_exterior(a, h, ex->a, ex->b);

  const double bn = spectral_norm(b);
  const bool verdict = holds || (rho && bn < *rho);
  return {std::move(cm), holds, margin, rho, bn, verdict};
}

double radius_ellipse_interior(const ComplexMatrix& a, const ComplexMatrix& h, double ea,
                               double eb) {
  validate_region(EllipseInterior{ea, eb});
  return radius(a, h, eb, 1.0);
}

double radius_ellipse_exterior(const ComplexMatrix& a, const ComplexMatrix& h, double ea,
                               double eb) {
  validate_region(EllipseExterior{ea, eb});
  return radius(a, h, eb, (ea * ea - eb * eb) / (2.0 * ea * ea));
}

SolveReport perturbed_solvability(const Region& region, const ComplexMatrix& a,
                                  const ComplexMatrix& b, const ComplexMatrix& c) {
  validate_region(region);
  require_same_square(a, b, c);
  const LyapunovForm form = region_form(region);
  const ComplexMatrix ab = a + b;
  return solve_kron(form, ab.adjoint(), ab, static_cast<double>(form.rhs_sign()) * c);
}

}  // namespace specloc
