#include "specloc/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "specloc/errors.hpp"
#include "specloc/linalg.hpp"

namespace specloc {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void check_ellipse(double a, double b) {
  if (!(b > 0.0) || !(a > b) || !std::isfinite(a)) {
    throw InvalidRegionParams("ellipse needs a > b > 0 (got a = " + std::to_string(a) +
                              ", b = " + std::to_string(b) + ")");
  }
}

void check_parabola(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw InvalidRegionParams("parabola needs p > 0 (got p = " + std::to_string(p) + ")");
  }
}

double ellipse_distance(double a, double b, Complex z) {
  // Fold into the first quadrant and minimise over (a cos t, b sin t).
  const double x = std::abs(z.real());
  const double y = std::abs(z.imag());
  auto dist2 = [&](double t) {
    const double dx = a * std::cos(t) - x;
    const double dy = b * std::sin(t) - y;
    return dx * dx + dy * dy;
  };
  constexpr int kSamples = 256;
  const double step = 0.5 * std::numbers::pi / kSamples;
  int best = 0;
  for (int i = 1; i <= kSamples; ++i)
    if (dist2(i * step) < dist2(best * step)) best = i;
  double lo = std::max(0.0, (best - 1) * step);
  double hi = std::min(0.5 * std::numbers::pi, (best + 1) * step);
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 100; ++it) {
    const double m1 = hi - ratio * (hi - lo);
    const double m2 = lo + ratio * (hi - lo);
    if (dist2(m1) < dist2(m2)) hi = m2; else lo = m1;
  }
  return std::sqrt(std::min(dist2(0.5 * (lo + hi)), dist2(best * step)));
}

double parabola_distance(double p, Complex z) {
  // Boundary point (s^2 / 2p, s); stationarity gives
  // s^3 + (2p^2 - 2px) s - 2p^2 y = 0.
  const double x = z.real();
  const double y = z.imag();
  const double pc = 2.0 * p * p - 2.0 * p * x;
  const double qc = -2.0 * p * p * y;
  std::vector<double> roots;
  const double disc = 0.25 * qc * qc + pc * pc * pc / 27.0;
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    roots.push_back(std::cbrt(-0.5 * qc + r) + std::cbrt(-0.5 * qc - r));
  } else {
    const double m = 2.0 * std::sqrt(-pc / 3.0);
    const double arg = std::clamp(3.0 * qc / (pc * m), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) roots.push_back(m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0));
  }
  double best = std::numeric_limits<double>::infinity();
  for (double s : roots) {
    for (int it = 0; it < 3; ++it) {
      const double f = s * s * s + pc * s + qc;
      const double df = 3.0 * s * s + pc;
      if (df == 0.0) break;
      s -= f / df;
    }
    best = std::min(best, std::hypot(s * s / (2.0 * p) - x, s - y));
  }
  return best;
}

}  // namespace

void validate_region(const Region& region) {
  std::visit(Overloaded{
                 [](const HalfPlaneLeft&) {},
                 [](const UnitDisk&) {},
                 [](const EllipseInterior& r) { check_ellipse(r.a, r.b); },
                 [](const EllipseExterior& r) { check_ellipse(r.a, r.b); },
                 [](const ParabolaInterior& r) { check_parabola(r.p); },
                 [](const ParabolaExterior& r) { check_parabola(r.p); },
             },
             region);
}

std::string region_name(const Region& region) {
  return std::visit(Overloaded{
                        [](const HalfPlaneLeft&) { return "halfplane"; },
                        [](const UnitDisk&) { return "disk"; },
                        [](const EllipseInterior&) { return "ellipse-in"; },
                        [](const EllipseExterior&) { return "ellipse-out"; },
                        [](const ParabolaInterior&) { return "parabola-in"; },
                        [](const ParabolaExterior&) { return "parabola-out"; },
                    },
                    region);
}

bool contains(const Region& region, Complex z) {
  const double x = z.real();
  const double y = z.imag();
  auto ellipse_level = [&](double a, double b) { return x * x / (a * a) + y * y / (b * b); };
  return std::visit(Overloaded{
                        [&](const HalfPlaneLeft&) { return x < 0.0; },
                        [&](const UnitDisk&) { return std::norm(z) < 1.0; },
                        [&](const EllipseInterior& r) { return ellipse_level(r.a, r.b) < 1.0; },
                        [&](const EllipseExterior& r) { return ellipse_level(r.a, r.b) > 1.0; },
                        [&](const ParabolaInterior& r) { return y * y < 2.0 * r.p * x; },
                        [&](const ParabolaExterior& r) { return y * y > 2.0 * r.p * x; },
                    },
                    region);
}

double boundary_distance(const Region& region, Complex z) {
  validate_region(region);
  return std::visit(Overloaded{
                        [&](const HalfPlaneLeft&) { return std::abs(z.real()); },
                        [&](const UnitDisk&) { return std::abs(std::abs(z) - 1.0); },
                        [&](const EllipseInterior& r) { return ellipse_distance(r.a, r.b, z); },
                        [&](const EllipseExterior& r) { return ellipse_distance(r.a, r.b, z); },
                        [&](const ParabolaInterior& r) { return parabola_distance(r.p, z); },
                        [&](const ParabolaExterior& r) { return parabola_distance(r.p, z); },
                    },
                    region);
}

double signed_margin(const Region& region, Complex z) {
  const double d = boundary_distance(region, z);
  return contains(region, z) ? d : -d;
}

LyapunovForm region_form(const Region& region) {
  validate_region(region);
  using T = LyapunovForm::Term;
  auto ellipse = [](double a, double b, int sign) {
    const double a11 = -(1.0 / (2.0 * a * a) + 1.0 / (2.0 * b * b));
    const double a02 = -(1.0 / (4.0 * a * a) - 1.0 / (4.0 * b * b));
    return LyapunovForm(2, {T{0, 0, 1.0}, T{1, 1, a11}, T{0, 2, a02}, T{2, 0, a02}}, sign);
  };
  auto parabola = [](double p, int sign) {
    return LyapunovForm(2,
                        {T{0, 1, 1.0}, T{1, 0, 1.0}, T{1, 1, -1.0 / (2.0 * p)},
                         T{0, 2, 1.0 / (4.0 * p)}, T{2, 0, 1.0 / (4.0 * p)}},
                        sign);
  };
  return std::visit(
      Overloaded{
          [](const HalfPlaneLeft&) { return LyapunovForm(1, {T{0, 1, 1.0}, T{1, 0, 1.0}}, -1); },
          [](const UnitDisk&) { return LyapunovForm(1, {T{0, 0, 1.0}, T{1, 1, -1.0}}, 1); },
          [&](const EllipseInterior& r) { return ellipse(r.a, r.b, 1); },
          [&](const EllipseExterior& r) { return ellipse(r.a, r.b, -1); },
          [&](const ParabolaInterior& r) { return parabola(r.p, 1); },
          [&](const ParabolaExterior& r) { return parabola(r.p, -1); },
      },
      region);
}

Direction certificate_direction(const Region& region) {
  return std::holds_alternative<ParabolaExterior>(region) ? Direction::sufficient_only
                                                          : Direction::iff;
}

Membership spectrum_in_region(const Region& region, const ComplexMatrix& a) {
  validate_region(region);
  Spectrum spectrum = eig(a);
  bool inside = true;
  double margin = std::numeric_limits<double>::infinity();
  for (const Complex& z : spectrum.eigenvalues) {
    inside = inside && contains(region, z);
    margin = std::min(margin, signed_margin(region, z));
  }
  return {inside, margin, std::move(spectrum)};
}

Certificate certify(const Region& region, const ComplexMatrix& a,
                    const std::optional<ComplexMatrix>& c, bool with_oracle) {
  validate_region(region);
  if (!a.is_square()) throw DimensionMismatch("certificate needs a square matrix");
  const std::size_t n = a.rows();

  ComplexMatrix rhs = c ? *c : ComplexMatrix::identity(n);
  if (rhs.rows() != n || rhs.cols() != n) {
    throw DimensionMismatch("C must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (c) {
    try {
      if (!cholesky_posdef(rhs).positive_definite) {
        throw CNotPositiveDefinite("C is not positive definite");
      }
    } catch (const NotHermitian& e) {
      throw CNotPositiveDefinite(std::string("C is not Hermitian: ") + e.what());
    }
  }

  const LyapunovForm form = region_form(region);
  rhs *= static_cast<double>(form.rhs_sign());
  SolveReport solve = solve_kron(form, a.adjoint(), a, rhs);
  const CholeskyResult chol = cholesky_posdef(solve.h);

  Certificate cert{region,
                   std::move(solve.h),
                   solve.residual,
                   chol.positive_definite,
                   chol.min_pivot,
                   solve.condition_estimate,
                   chol.positive_definite && solve.residual <= tol::kCertificateResidual,
                   certificate_direction(region),
                   std::nullopt};
  if (with_oracle) {
    Membership m = spectrum_in_region(region, a);
    const bool agrees = cert.direction == Direction::iff ? cert.verdict == m.inside
                                                         : (!cert.verdict || m.inside);
    cert.oracle = OracleCheck{m.inside, m.margin, agrees, std::move(m.spectrum)};
  }
  return cert;
}

}  // namespace specloc
