#include "specloc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "specloc/errors.hpp"

namespace specloc {

namespace {

double column_one_norm(const ComplexMatrix& x, std::size_t col) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) s += std::abs(x(i, col));
  return s;
}

double vector_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

LuFactorization::LuFactorization(const ComplexMatrix& a, double pivot_tol)
    : n_(a.rows()), lu_(a), perm_(a.rows()) {
  if (!a.is_square()) throw DimensionMismatch("LU of a non-square matrix");
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  a_norm1_ = one_norm(a);
  const double scale = a.max_abs();
  if (scale == 0.0) throw SingularMatrix(0, 0.0);

  min_relative_pivot_ = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n_; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0.0 || best < pivot_tol * scale) throw SingularMatrix(k, best);
    min_relative_pivot_ = std::min(min_relative_pivot_, best / scale);
    if (p != k) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(p, j));
      std::swap(perm_[k], perm_[p]);
      parity_ = -parity_;
    }
    const Complex pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n_; ++i) {
      const Complex l = lu_(i, k) / pivot;
      lu_(i, k) = l;
      if (l == Complex(0.0)) continue;
      for (std::size_t j = k + 1; j < n_; ++j) lu_(i, j) -= l * lu_(k, j);
    }
  }
}

ComplexMatrix LuFactorization::solve(const ComplexMatrix& b) const {
  if (b.rows() != n_) throw DimensionMismatch("LU solve: right-hand side rows");
  ComplexMatrix x(n_, b.cols());
  std::vector<Complex> y(n_);
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < n_; ++i) y[i] = b(perm_[i], c);
    for (std::size_t i = 0; i < n_; ++i) {
      Complex s = y[i];
      for (std::size_t k = 0; k < i; ++k) s -= lu_(i, k) * y[k];
      y[i] = s;
    }
    for (std::size_t ii = n_; ii-- > 0;) {
      Complex s = y[ii];
      for (std::size_t k = ii + 1; k < n_; ++k) s -= lu_(ii, k) * y[k];
      y[ii] = s / lu_(ii, ii);
    }
    for (std::size_t i = 0; i < n_; ++i) x(i, c) = y[i];
  }
  return x;
}

ComplexMatrix LuFactorization::solve_adjoint(const ComplexMatrix& b) const {
  if (b.rows() != n_) throw DimensionMismatch("LU solve: right-hand side rows");
  // A* = U* L* P, so solve U* w = b, L* u = w, then z = P^T u.
  ComplexMatrix x(n_, b.cols());
  std::vector<Complex> w(n_);
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < n_; ++i) {
      Complex s = b(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= std::conj(lu_(k, i)) * w[k];
      w[i] = s / std::conj(lu_(i, i));
    }
    for (std::size_t ii = n_; ii-- > 0;) {
      Complex s = w[ii];
      for (std::size_t k = ii + 1; k < n_; ++k) s -= std::conj(lu_(k, ii)) * w[k];
      w[ii] = s;
    }
    for (std::size_t i = 0; i < n_; ++i) x(perm_[i], c) = w[i];
  }
  return x;
}

double LuFactorization::condition_estimate() const {
  const std::size_t n = n_;
  ComplexMatrix x(n, 1);
  for (std::size_t i = 0; i < n; ++i) x(i, 0) = 1.0 / static_cast<double>(n);

  double estimate = 0.0;
  for (int iter = 0; iter < 5; ++iter) {
    const ComplexMatrix y = solve(x);
    const double candidate = column_one_norm(y, 0);
    if (iter > 0 && candidate <= estimate) break;
    estimate = candidate;

    ComplexMatrix xi(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      const double m = std::abs(y(i, 0));
      xi(i, 0) = m == 0.0 ? Complex(1.0) : y(i, 0) / m;
    }
    const ComplexMatrix z = solve_adjoint(xi);
    std::size_t j = 0;
    double zmax = 0.0;
    Complex ztx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(z(i, 0)) > zmax) {
        zmax = std::abs(z(i, 0));
        j = i;
      }
      ztx += std::conj(z(i, 0)) * x(i, 0);
    }
    if (iter > 0 && zmax <= ztx.real()) break;
    x = ComplexMatrix(n, 1);
    x(j, 0) = 1.0;
  }

  // Alternating probe guards against the estimator stalling on structured A.
  ComplexMatrix alt(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double ramp =
        n > 1 ? 1.0 + static_cast<double>(i) / static_cast<double>(n - 1) : 1.0;
    alt(i, 0) = (i % 2 == 0 ? 1.0 : -1.0) * ramp;
  }
  const double alt_estimate =
      2.0 * column_one_norm(solve(alt), 0) / (3.0 * static_cast<double>(n));
  // kappa >= 1 always; rounding can put the 1x1 product just below it.
  return std::max(1.0, a_norm1_ * std::max(estimate, alt_estimate));
}

Complex LuFactorization::determinant() const {
  Complex d = static_cast<double>(parity_);
  for (std::size_t i = 0; i < n_; ++i) d *= lu_(i, i);
  return d;
}

LuSolveResult lu_solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square()) throw DimensionMismatch("lu_solve: matrix not square");
  if (b.rows() != a.rows()) throw DimensionMismatch("lu_solve: rhs rows");
  const LuFactorization lu(a);
  return {lu.solve(b), lu.condition_estimate()};
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  const LuFactorization lu(a);
  return lu.solve(ComplexMatrix::identity(a.rows()));
}

HermitianVerdict hermitian_check(const ComplexMatrix& m) {
  return hermitian_check(m, tol::kHermitian * spectral_norm(m));
}

HermitianVerdict hermitian_check(const ComplexMatrix& m, double abs_tol) {
  if (!m.is_square()) return {false, std::numeric_limits<double>::infinity()};
  const double asym = spectral_norm(m - m.adjoint());
  return {asym <= abs_tol, asym};
}

CholeskyResult cholesky_posdef(const ComplexMatrix& h) {
  if (!h.is_square()) throw DimensionMismatch("Cholesky of a non-square matrix");
  const HermitianVerdict herm = hermitian_check(h);
  if (!herm.is_hermitian) throw NotHermitian(herm.asymmetry);

  const ComplexMatrix hs = hermitian_part(h);
  const std::size_t n = hs.rows();
  const double posdef_tol = tol::kPositiveDefinite * spectral_norm(hs);

  ComplexMatrix l(n, n);
  double min_pivot = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    double d = hs(k, k).real();
    for (std::size_t j = 0; j < k; ++j) d -= std::norm(l(k, j));
    min_pivot = std::min(min_pivot, d);
    if (!(d > posdef_tol)) {
      return {false, std::nullopt, k, d, herm.asymmetry};
    }
    const double lkk = std::sqrt(d);
    l(k, k) = lkk;
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex s = hs(i, k);
      for (std::size_t j = 0; j < k; ++j) s -= l(i, j) * std::conj(l(k, j));
      l(i, k) = s / lkk;
    }
  }
  return {true, std::move(l), n, min_pivot, herm.asymmetry};
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.max_abs() == 0.0) return 0.0;
  const std::size_t n = a.cols();
  const ComplexMatrix ah = a.adjoint();

  ComplexMatrix v(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i);
    v(i, 0) = Complex(1.0 + 0.3 * std::cos(1.7 * t), 0.2 * std::sin(2.3 * t + 0.5));
  }
  v *= 1.0 / vector_norm(v.entries());

  double sigma = 0.0;
  bool restarted = false;
  for (int iter = 0; iter < 20000; ++iter) {
    const ComplexMatrix u = mat_mul(a, v);
    const double s = vector_norm(u.entries());
    if (s == 0.0) {
      if (restarted) return 0.0;
      // Start vector in the null space: restart on the heaviest column.
      std::size_t best = 0;
      double best_norm = -1.0;
      for (std::size_t j = 0; j < n; ++j) {
        double c = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) c += std::norm(a(i, j));
        if (c > best_norm) {
          best_norm = c;
          best = j;
        }
      }
      v = ComplexMatrix(n, 1);
      v(best, 0) = 1.0;
      restarted = true;
      continue;
    }
    const bool converged = iter > 2 && std::abs(s - sigma) <= tol::kNorm * s;
    sigma = std::max(sigma, s);
    if (converged) break;
    ComplexMatrix w = mat_mul(ah, u);
    const double wn = vector_norm(w.entries());
    if (wn == 0.0) break;
    w *= 1.0 / wn;
    v = std::move(w);
  }
  return sigma;
}

double one_norm(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) best = std::max(best, column_one_norm(a, j));
  return best;
}

}  // namespace specloc
