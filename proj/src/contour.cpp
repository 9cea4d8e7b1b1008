#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "specloc/errors.hpp"
#include "specloc/linalg.hpp"
#include "specloc/lyapunov.hpp"

namespace specloc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Complex> nodes(const ContourConfig& config) {
  const auto q = static_cast<std::size_t>(config.quadrature_points);
  std::vector<Complex> out(q);
  for (std::size_t k = 0; k < q; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(q);
    out[k] = config.center + config.radius * Complex(std::cos(theta), std::sin(theta));
  }
  return out;
}

// Roots of sum_d coeffs[d] z^d. nullopt when the polynomial vanishes
// identically (all coefficients negligible).
std::optional<std::vector<Complex>> polynomial_roots(std::vector<Complex> coeffs) {
  double scale = 0.0;
  for (const Complex& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return std::nullopt;
  while (coeffs.size() > 1 && std::abs(coeffs.back()) <= 1e-14 * scale) coeffs.pop_back();
  const std::size_t degree = coeffs.size() - 1;
  if (degree == 0) return std::vector<Complex>{};
  if (degree == 1) return std::vector<Complex>{-coeffs[0] / coeffs[1]};
  ComplexMatrix companion(degree, degree);
  for (std::size_t i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < degree; ++i) companion(i, degree - 1) = -coeffs[i] / coeffs[degree];
  return eig(companion).eigenvalues;
}

// Coefficients of lambda -> P(lambda, mu).
std::vector<Complex> lambda_polynomial(const LyapunovForm& form, Complex mu) {
  std::vector<Complex> c(static_cast<std::size_t>(form.order()) + 1);
  for (int j = 0; j <= form.order(); ++j) {
    Complex s = 0.0;
    for (int k = form.order(); k >= 0; --k) s = s * mu + form.coefficient(j, k);
    c[static_cast<std::size_t>(j)] = s;
  }
  return c;
}

// Coefficients of mu -> P(lambda, mu).
std::vector<Complex> mu_polynomial(const LyapunovForm& form, Complex lambda) {
  std::vector<Complex> c(static_cast<std::size_t>(form.order()) + 1);
  for (int k = 0; k <= form.order(); ++k) {
    Complex s = 0.0;
    for (int j = form.order(); j >= 0; --j) s = s * lambda + form.coefficient(j, k);
    c[static_cast<std::size_t>(k)] = s;
  }
  return c;
}

struct ContourDiagnostics {
  bool ok = true;
  std::string reason;
  double min_grid_symbol = kInf;
  // Distance from each center to the nearest zero of the symbol that the
  // corresponding inner integral must not enclose.
  double zero_distance_b = kInf;
  double zero_distance_a = kInf;
};

ContourDiagnostics diagnose(const LyapunovForm& form, const ContourConfig& config_b,
                            const ContourConfig& config_a, const Spectrum& spec_b,
                            double symbol_tol) {
  ContourDiagnostics d;
  const std::vector<Complex> lambdas = nodes(config_b);
  const std::vector<Complex> mus = nodes(config_a);
  for (const Complex& mu : mus) {
    for (const Complex& lambda : lambdas)
      d.min_grid_symbol = std::min(d.min_grid_symbol, std::abs(symbol_eval(form, lambda, mu)));
  }
  if (!(d.min_grid_symbol > symbol_tol)) {
    d.ok = false;
    d.reason = "symbol nearly vanishes on the quadrature grid";
    return d;
  }
  // For every mu on the A-contour, lambda -> 1/P(lambda, mu) must be analytic
  // inside the B-contour.
  for (const Complex& mu : mus) {
    const auto roots = polynomial_roots(lambda_polynomial(form, mu));
    if (!roots) {
      d.ok = false;
      d.reason = "symbol vanishes identically in lambda on the A-contour";
      return d;
    }
    for (const Complex& z : *roots)
      d.zero_distance_b = std::min(d.zero_distance_b, std::abs(z - config_b.center));
  }
  // After the inner integral, mu -> 1/P(lambda_s, mu) must be analytic
  // inside the A-contour for every eigenvalue lambda_s of B.
  for (const Complex& lambda : spec_b.eigenvalues) {
    const auto roots = polynomial_roots(mu_polynomial(form, lambda));
    if (!roots) {
      d.ok = false;
      d.reason = "symbol vanishes identically in mu at an eigenvalue of B";
      return d;
    }
    for (const Complex& z : *roots)
      d.zero_distance_a = std::min(d.zero_distance_a, std::abs(z - config_a.center));
  }
  if (!(d.zero_distance_b > config_b.radius)) {
    d.ok = false;
    d.reason = "B-contour encloses a zero of the symbol";
  } else if (!(d.zero_distance_a > config_a.radius)) {
    d.ok = false;
    d.reason = "A-contour encloses a zero of the symbol";
  }
  return d;
}

double max_distance(const Spectrum& s, Complex center) {
  double d = 0.0;
  for (const Complex& z : s.eigenvalues) d = std::max(d, std::abs(z - center));
  return d;
}

template <typename Term>
ComplexMatrix pairwise_sum(std::size_t lo, std::size_t hi, const Term& term) {
  if (hi - lo == 1) return term(lo);
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(lo, mid, term) + pairwise_sum(mid, hi, term);
}

ComplexMatrix shifted(const ComplexMatrix& m, Complex z) {
  ComplexMatrix out = -m;
  for (std::size_t i = 0; i < m.rows(); ++i) out(i, i) += z;
  return out;
}

}  // namespace

void validate_contour(const ContourConfig& config, const Spectrum& spectrum) {
  if (!(config.radius > 0.0) || !std::isfinite(config.radius)) {
    throw InvalidContour("contour radius must be positive and finite");
  }
  if (config.quadrature_points < 16) {
    throw InvalidContour("contour needs at least 16 quadrature points");
  }
  const double reach = max_distance(spectrum, config.center);
  if (!(config.radius > reach)) {
    throw InvalidContour("contour radius " + std::to_string(config.radius) +
                         " does not enclose the spectrum (max distance " +
                         std::to_string(reach) + ")");
  }
}

std::pair<ContourConfig, ContourConfig> choose_contours(const LyapunovForm& form,
                                                        const ComplexMatrix& b,
                                                        const ComplexMatrix& a,
                                                        int quadrature_points) {
  if (!a.is_square() || !b.is_square()) throw DimensionMismatch("A and B must be square");
  const Spectrum spec_b = eig(b);
  const Spectrum spec_a = eig(a);
  const double symbol_tol = krein_tolerance(form, spec_b, spec_a);

  const Complex center_b = b.trace() / static_cast<double>(b.rows());
  const Complex center_a = a.trace() / static_cast<double>(a.rows());
  const double spread_b = max_distance(spec_b, center_b);
  const double spread_a = max_distance(spec_a, center_a);
  auto base = [](double spread, const Spectrum& s) {
    double r = 0.0;
    for (const Complex& z : s.eigenvalues) r = std::max(r, std::abs(z));
    return std::max(spread, 0.05 * std::max(1.0, r));
  };
  const double base_b = base(spread_b, spec_b);
  const double base_a = base(spread_a, spec_a);

  std::optional<std::pair<ContourConfig, ContourConfig>> best;
  double best_rate = kInf;
  for (double t : {0.02, 0.05, 0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0}) {
    const ContourConfig cb{center_b, spread_b + t * base_b, quadrature_points};
    const ContourConfig ca{center_a, spread_a + t * base_a, quadrature_points};
    const ContourDiagnostics d = diagnose(form, cb, ca, spec_b, symbol_tol);
    if (!d.ok) continue;
    const double rate = std::max({spread_b / cb.radius, spread_a / ca.radius,
                                  cb.radius / d.zero_distance_b,
                                  ca.radius / d.zero_distance_a});
    if (rate < best_rate) {
      best_rate = rate;
      best.emplace(cb, ca);
    }
  }
  if (!best) {
    throw ContourTooClose(
        "no circle pair separates the spectra from the zeros of the symbol");
  }
  return *best;
}

SolveReport solve_contour(const LyapunovForm& form, const ComplexMatrix& b,
                          const ComplexMatrix& a, const ComplexMatrix& y,
                          const ContourConfig& config_b,
                          const ContourConfig& config_a) {
  if (!b.is_square() || !a.is_square()) throw DimensionMismatch("A and B must be square");
  if (y.rows() != b.rows() || y.cols() != a.rows()) {
    throw DimensionMismatch("right-hand side shape does not match B and A");
  }
  const Spectrum spec_b = eig(b);
  const Spectrum spec_a = eig(a);
  validate_contour(config_b, spec_b);
  validate_contour(config_a, spec_a);

  const KreinVerdict krein = krein_condition(form, spec_b, spec_a);
  if (!krein.ok) {
    throw KreinConditionViolated("symbol vanishes on " +
                                 std::to_string(krein.offending.size()) +
                                 " eigenvalue pair(s)");
  }
  const ContourDiagnostics d = diagnose(form, config_b, config_a, spec_b, krein.tolerance);
  if (!d.ok) throw ContourTooClose(d.reason);

  const std::vector<Complex> lambdas = nodes(config_b);
  const std::vector<Complex> mus = nodes(config_a);
  double worst_condition = 0.0;

  std::vector<ComplexMatrix> left;  // (lambda_k I - B)^-1 Y
  left.reserve(lambdas.size());
  for (const Complex& lambda : lambdas) {
    try {
      const LuFactorization lu(shifted(b, lambda));
      worst_condition = std::max(worst_condition, lu.condition_estimate());
      left.push_back(lu.solve(y));
    } catch (const SingularMatrix&) {
      throw ContourTooClose("quadrature node coincides with an eigenvalue of B");
    }
  }
  std::vector<ComplexMatrix> right;  // (mu_l I - A)^-1
  right.reserve(mus.size());
  for (const Complex& mu : mus) {
    try {
      const LuFactorization lu(shifted(a, mu));
      worst_condition = std::max(worst_condition, lu.condition_estimate());
      right.push_back(lu.solve(ComplexMatrix::identity(a.rows())));
    } catch (const SingularMatrix&) {
      throw ContourTooClose("quadrature node coincides with an eigenvalue of A");
    }
  }

  const double qb = static_cast<double>(lambdas.size());
  const double qa = static_cast<double>(mus.size());
  ComplexMatrix h = pairwise_sum(0, mus.size(), [&](std::size_t l) {
    const Complex mu = mus[l];
    ComplexMatrix inner = pairwise_sum(0, lambdas.size(), [&](std::size_t k) {
      const Complex weight =
          (lambdas[k] - config_b.center) / (qb * symbol_eval(form, lambdas[k], mu));
      return weight * left[k];
    });
    return ((mu - config_a.center) / qa) * mat_mul(inner, right[l]);
  });

  SolveReport report{h, 0.0, false, 0.0, worst_condition};
  if (hermitian_compatible(form, b, a, y)) {
    report.asymmetry_dropped = spectral_norm(h - h.adjoint());
    report.h = hermitian_part(h);
    report.hermitized = true;
  }
  report.residual = residual(form, b, a, report.h, y);
  return report;
}

}  // namespace specloc
