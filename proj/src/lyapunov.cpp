#include "specloc/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "specloc/errors.hpp"
#include "specloc/linalg.hpp"

namespace specloc {

namespace {

void require_square(const ComplexMatrix& m, const char* name) {
  if (!m.is_square()) throw DimensionMismatch(std::string(name) + " must be square");
}

void require_equation_shapes(const ComplexMatrix& b, const ComplexMatrix& a,
                             const ComplexMatrix& y) {
  require_square(b, "B");
  require_square(a, "A");
  if (y.rows() != b.rows() || y.cols() != a.rows()) {
    throw DimensionMismatch("right-hand side must be " + std::to_string(b.rows()) +
                            "x" + std::to_string(a.rows()));
  }
}

std::vector<ComplexMatrix> powers(const ComplexMatrix& m, int order) {
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(order) + 1);
  out.push_back(ComplexMatrix::identity(m.rows()));
  for (int k = 1; k <= order; ++k) out.push_back(mat_mul(out.back(), m));
  return out;
}

double spectral_radius_bound(const Spectrum& s) {
  double r = 0.0;
  for (const Complex& z : s.eigenvalues) r = std::max(r, std::abs(z));
  return r;
}

}  // namespace

LyapunovForm::LyapunovForm(int order, std::vector<Complex> coeffs, int rhs_sign)
    : order_(order), coeffs_(std::move(coeffs)), rhs_sign_(rhs_sign) {
  if (order < 0 || order > kMaxOrder) {
    throw InvalidForm("form order must lie in [0, " + std::to_string(kMaxOrder) + "]");
  }
  const auto side = static_cast<std::size_t>(order) + 1;
  if (coeffs_.size() != side * side) {
    throw InvalidForm("coefficient grid must hold (N+1)^2 entries");
  }
  if (rhs_sign != 1 && rhs_sign != -1) throw InvalidForm("rhs_sign must be +1 or -1");
  bool any = false;
  for (const Complex& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InvalidForm("coefficients must be finite");
    }
    any = any || c != Complex(0.0);
  }
  if (!any) throw InvalidForm("form needs at least one nonzero coefficient");
}

LyapunovForm::LyapunovForm(int order, std::initializer_list<Term> terms, int rhs_sign)
    : LyapunovForm(order, [&] {
        if (order < 0 || order > kMaxOrder) {
          throw InvalidForm("form order must lie in [0, " + std::to_string(kMaxOrder) + "]");
        }
        const auto side = static_cast<std::size_t>(order) + 1;
        std::vector<Complex> grid(side * side);
        for (const Term& t : terms) {
          if (t.j < 0 || t.k < 0 || t.j > order || t.k > order) {
            throw InvalidForm("term index exceeds the form order");
          }
          grid[static_cast<std::size_t>(t.j) * side + static_cast<std::size_t>(t.k)] += t.value;
        }
        return grid;
      }(), rhs_sign) {}

std::size_t LyapunovForm::index(int j, int k) const {
  if (j < 0 || k < 0 || j > order_ || k > order_) {
    throw InvalidForm("coefficient index out of range");
  }
  return static_cast<std::size_t>(j) * (static_cast<std::size_t>(order_) + 1) +
         static_cast<std::size_t>(k);
}

double LyapunovForm::max_abs_coefficient() const {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

bool LyapunovForm::is_real_symmetric() const {
  for (int j = 0; j <= order_; ++j) {
    for (int k = 0; k <= order_; ++k) {
      const Complex c = coefficient(j, k);
      if (c.imag() != 0.0 || c != coefficient(k, j)) return false;
    }
  }
  return true;
}

Complex symbol_eval(const LyapunovForm& form, Complex lambda, Complex mu) {
  Complex outer = 0.0;
  for (int j = form.order(); j >= 0; --j) {
    Complex inner = 0.0;
    for (int k = form.order(); k >= 0; --k) inner = inner * mu + form.coefficient(j, k);
    outer = outer * lambda + inner;
  }
  return outer;
}

double krein_tolerance(const LyapunovForm& form, const Spectrum& spec_b,
                       const Spectrum& spec_a) {
  const double r = std::max(spectral_radius_bound(spec_b), spectral_radius_bound(spec_a));
  const double scale = form.max_abs_coefficient() * std::pow(r, 2 * form.order());
  return tol::kKrein * std::max(1.0, scale);
}

KreinVerdict krein_condition(const LyapunovForm& form, const Spectrum& spec_b,
                             const Spectrum& spec_a) {
  return krein_condition(form, spec_b, spec_a, krein_tolerance(form, spec_b, spec_a));
}

KreinVerdict krein_condition(const LyapunovForm& form, const Spectrum& spec_b,
                             const Spectrum& spec_a, double tolerance) {
  KreinVerdict verdict{true, std::numeric_limits<double>::infinity(), tolerance, {}};
  for (std::size_t s = 0; s < spec_b.eigenvalues.size(); ++s) {
    for (std::size_t r = 0; r < spec_a.eigenvalues.size(); ++r) {
      const Complex lambda = spec_b.eigenvalues[s];
      const Complex mu = spec_a.eigenvalues[r];
      const double v = std::abs(symbol_eval(form, lambda, mu));
      verdict.min_abs_symbol = std::min(verdict.min_abs_symbol, v);
      if (!(v > tolerance)) {
        verdict.ok = false;
        verdict.offending.push_back({s, r, lambda, mu, v});
      }
    }
  }
  return verdict;
}

bool hermitian_compatible(const LyapunovForm& form, const ComplexMatrix& b,
                          const ComplexMatrix& a, const ComplexMatrix& y) {
  if (!form.is_real_symmetric()) return false;
  if (b.rows() != a.cols() || b.cols() != a.rows()) return false;
  const double scale = std::max(1.0, a.max_abs());
  if (max_abs_diff(b, a.adjoint()) > 1e-14 * scale) return false;
  return y.is_square() && hermitian_check(y).is_hermitian;
}

SolveReport solve_kron(const LyapunovForm& form, const ComplexMatrix& b,
                       const ComplexMatrix& a, const ComplexMatrix& y) {
  require_equation_shapes(b, a, y);
  const std::size_t m = b.rows();
  const std::size_t n = a.rows();
  const std::size_t dim = m * n;
  const std::vector<ComplexMatrix> a_pow = powers(a, form.order());
  const std::vector<ComplexMatrix> b_pow = powers(b, form.order());

  // Row index r*m + i pairs with H(i, r) under column stacking; the block
  // (r, c) of (A^k)^T (x) B^j is A^k(c, r) * B^j.
  ComplexMatrix kron(dim, dim);
  for (int j = 0; j <= form.order(); ++j) {
    for (int k = 0; k <= form.order(); ++k) {
      const Complex coeff = form.coefficient(j, k);
      if (coeff == Complex(0.0)) continue;
      const ComplexMatrix& ak = a_pow[static_cast<std::size_t>(k)];
      const ComplexMatrix& bj = b_pow[static_cast<std::size_t>(j)];
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          const Complex w = coeff * ak(c, r);
          if (w == Complex(0.0)) continue;
          for (std::size_t i = 0; i < m; ++i)
            for (std::size_t l = 0; l < m; ++l) kron(r * m + i, c * m + l) += w * bj(i, l);
        }
      }
    }
  }

  ComplexMatrix rhs(dim, 1);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < m; ++i) rhs(r * m + i, 0) = y(i, r);

  std::optional<LuFactorization> lu;
  try {
    lu.emplace(kron);
  } catch (const SingularMatrix& e) {
    throw SingularSystem(
        std::string("vectorized Lyapunov system is singular (symbol vanishes on "
                    "a pair of eigenvalues): ") + e.what());
  }
  const ComplexMatrix x = lu->solve(rhs);

  ComplexMatrix h(m, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < m; ++i) h(i, r) = x(r * m + i, 0);

  SolveReport report{h, 0.0, false, 0.0, lu->condition_estimate()};
  if (hermitian_compatible(form, b, a, y)) {
    report.asymmetry_dropped = spectral_norm(h - h.adjoint());
    report.h = hermitian_part(h);
    report.hermitized = true;
  }
  report.residual = residual(form, b, a, report.h, y);
  return report;
}

double residual(const LyapunovForm& form, const ComplexMatrix& b,
                const ComplexMatrix& a, const ComplexMatrix& h,
                const ComplexMatrix& y) {
  require_equation_shapes(b, a, y);
  if (h.rows() != y.rows() || h.cols() != y.cols()) {
    throw DimensionMismatch("H must have the shape of the right-hand side");
  }
  ComplexMatrix lhs(y.rows(), y.cols());
  ComplexMatrix bj_h = h;
  for (int j = 0; j <= form.order(); ++j) {
    if (j > 0) bj_h = mat_mul(b, bj_h);
    ComplexMatrix term = bj_h;
    for (int k = 0; k <= form.order(); ++k) {
      if (k > 0) term = mat_mul(term, a);
      const Complex coeff = form.coefficient(j, k);
      if (coeff != Complex(0.0)) lhs += coeff * term;
    }
  }
  lhs -= y;
  return spectral_norm(lhs) / std::max(1.0, spectral_norm(y));
}

}  // namespace specloc
