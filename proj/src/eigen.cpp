#include "specloc/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "specloc/errors.hpp"

namespace specloc {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Rotation {
  double c;
  Complex s;
  Complex r;
};

// G = [[c, s], [-conj(s), c]] with G [f; g] = [r; 0] and c real.
Rotation givens(Complex f, Complex g) {
  const double af = std::abs(f);
  const double ag = std::abs(g);
  if (ag == 0.0) return {1.0, 0.0, f};
  if (af == 0.0) return {0.0, std::conj(g) / ag, ag};
  const double norm = std::hypot(af, ag);
  const Complex phase = f / af;
  return {af / norm, phase * std::conj(g) / norm, phase * norm};
}

// Eigenvalue of [[a, b], [c, d]] closest to d.
Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  const Complex mean = 0.5 * (a + d);
  const Complex half_gap = 0.5 * (a - d);
  const Complex disc = std::sqrt(half_gap * half_gap + b * c);
  const Complex e1 = mean + disc;
  const Complex e2 = mean - disc;
  return std::abs(e1 - d) < std::abs(e2 - d) ? e1 : e2;
}

// One implicit single-shift QR sweep on the active block H[lo..hi, lo..hi].
// Only the block is updated; coupling to deflated parts does not affect its
// eigenvalues.
void qr_sweep(ComplexMatrix& h, std::size_t lo, std::size_t hi, Complex shift) {
  for (std::size_t k = lo; k < hi; ++k) {
    Complex x, y;
    if (k == lo) {
      x = h(lo, lo) - shift;
      y = h(lo + 1, lo);
    } else {
      x = h(k, k - 1);
      y = h(k + 1, k - 1);
    }
    const Rotation g = givens(x, y);
    std::size_t first_col = lo;
    if (k > lo) {
      h(k, k - 1) = g.r;
      h(k + 1, k - 1) = 0.0;
      first_col = k;
    }
    for (std::size_t j = first_col; j <= hi; ++j) {
      const Complex a = h(k, j);
      const Complex b = h(k + 1, j);
      h(k, j) = g.c * a + g.s * b;
      h(k + 1, j) = -std::conj(g.s) * a + g.c * b;
    }
    const std::size_t last_row = std::min(k + 2, hi);
    for (std::size_t i = lo; i <= last_row; ++i) {
      const Complex a = h(i, k);
      const Complex b = h(i, k + 1);
      h(i, k) = g.c * a + std::conj(g.s) * b;
      h(i, k + 1) = -g.s * a + g.c * b;
    }
  }
}

struct InverseIterationResult {
  std::vector<Complex> vector;
  double residual;
};

// Gaussian elimination on A - shift I with tiny pivots replaced by a floor,
// so an exact eigenvalue shift still yields a usable (huge) solution.
class ShiftedSolver {
 public:
  ShiftedSolver(const ComplexMatrix& a, Complex shift, double pivot_floor)
      : n_(a.rows()), m_(a), perm_(a.rows()) {
    for (std::size_t i = 0; i < n_; ++i) {
      m_(i, i) -= shift;
      perm_[i] = i;
    }
    for (std::size_t k = 0; k < n_; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < n_; ++i)
        if (std::abs(m_(i, k)) > std::abs(m_(p, k))) p = i;
      if (p != k) {
        for (std::size_t j = 0; j < n_; ++j) std::swap(m_(k, j), m_(p, j));
        std::swap(perm_[k], perm_[p]);
      }
      if (std::abs(m_(k, k)) < pivot_floor) m_(k, k) = pivot_floor;
      for (std::size_t i = k + 1; i < n_; ++i) {
        const Complex l = m_(i, k) / m_(k, k);
        m_(i, k) = l;
        for (std::size_t j = k + 1; j < n_; ++j) m_(i, j) -= l * m_(k, j);
      }
    }
  }

  std::vector<Complex> solve(const std::vector<Complex>& b) const {
    std::vector<Complex> y(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      Complex s = b[perm_[i]];
      for (std::size_t k = 0; k < i; ++k) s -= m_(i, k) * y[k];
      y[i] = s;
    }
    for (std::size_t i = n_; i-- > 0;) {
      Complex s = y[i];
      for (std::size_t k = i + 1; k < n_; ++k) s -= m_(i, k) * y[k];
      y[i] = s / m_(i, i);
    }
    return y;
  }

 private:
  std::size_t n_;
  ComplexMatrix m_;
  std::vector<std::size_t> perm_;
};

double norm2(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

double eigen_residual(const ComplexMatrix& a, Complex lambda,
                      const std::vector<Complex>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex r = -lambda * v[i];
    for (std::size_t j = 0; j < a.cols(); ++j) r += a(i, j) * v[j];
    s += std::norm(r);
  }
  return std::sqrt(s);
}

std::vector<Complex> start_vector(std::size_t n, int variant) {
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) + 0.37 * variant;
    v[i] = variant == 0 ? Complex(1.0)
                        : Complex(std::cos(1.3 * t + variant), std::sin(0.7 * t * variant));
  }
  const double nv = norm2(v);
  for (Complex& z : v) z /= nv;
  return v;
}

InverseIterationResult inverse_iteration(const ComplexMatrix& a, Complex lambda,
                                         double target, int max_iter) {
  const std::size_t n = a.rows();
  const double scale = std::max({a.frobenius_norm(), std::abs(lambda),
                                 std::numeric_limits<double>::min()});
  const ShiftedSolver solver(a, lambda, kEps * scale);

  InverseIterationResult best{start_vector(n, 0),
                              std::numeric_limits<double>::infinity()};
  for (int variant = 0; variant < 3; ++variant) {
    std::vector<Complex> v = start_vector(n, variant);
    for (int it = 0; it < max_iter; ++it) {
      std::vector<Complex> x = solver.solve(v);
      const double nx = norm2(x);
      if (!(nx > 0.0) || !std::isfinite(nx)) break;
      for (Complex& z : x) z /= nx;
      v = std::move(x);
      const double r = eigen_residual(a, lambda, v);
      if (r < best.residual) best = {v, r};
      if (r <= target) return best;
    }
  }
  return best;
}

}  // namespace

ComplexMatrix hessenberg(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("Hessenberg form of a non-square matrix");
  ComplexMatrix h = a;
  const std::size_t n = h.rows();
  std::vector<Complex> v;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double tail = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(h(i, k));
    if (tail == 0.0) continue;

    const Complex head = h(k + 1, k);
    const double alpha = std::sqrt(std::norm(head) + tail);
    const Complex phase = std::abs(head) == 0.0 ? Complex(1.0) : head / std::abs(head);
    const std::size_t len = n - k - 1;
    v.assign(len, 0.0);
    v[0] = head + phase * alpha;
    for (std::size_t i = 1; i < len; ++i) v[i] = h(k + 1 + i, k);
    double vnorm2 = 0.0;
    for (const Complex& z : v) vnorm2 += std::norm(z);
    const double beta = 2.0 / vnorm2;

    for (std::size_t j = k; j < n; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = 0; i < len; ++i) dot += std::conj(v[i]) * h(k + 1 + i, j);
      dot *= beta;
      for (std::size_t i = 0; i < len; ++i) h(k + 1 + i, j) -= v[i] * dot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot = 0.0;
      for (std::size_t j = 0; j < len; ++j) dot += h(i, k + 1 + j) * v[j];
      dot *= beta;
      for (std::size_t j = 0; j < len; ++j) h(i, k + 1 + j) -= dot * std::conj(v[j]);
    }
    h(k + 1, k) = -phase * alpha;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
  return h;
}

Spectrum eig(const ComplexMatrix& a, const EigOptions& options) {
  if (!a.is_square()) throw DimensionMismatch("eigenvalues of a non-square matrix");
  if (!a.all_finite()) throw NonFiniteEntry("eigenvalues of a non-finite matrix");
  const std::size_t n = a.rows();

  ComplexMatrix h = hessenberg(a);
  const double fro = h.frobenius_norm();
  const double tiny = std::numeric_limits<double>::min() / kEps;
  const long limit =
      static_cast<long>(std::max(options.max_sweeps_per_eigenvalue, 0)) *
      static_cast<long>(n);

  std::vector<Complex> values(n);
  long total = 0;
  int its = 0;
  std::size_t hi = n - 1;
  while (true) {
    std::size_t lo = hi;
    for (; lo > 0; --lo) {
      const double sub = std::abs(h(lo, lo - 1));
      double tst = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (tst == 0.0) tst = fro;
      if (sub <= kEps * tst || sub <= tiny) {
        h(lo, lo - 1) = 0.0;
        break;
      }
    }
    if (lo == hi) {
      values[hi] = h(hi, hi);
      its = 0;
      if (hi == 0) break;
      --hi;
      continue;
    }
    if (total >= limit) {
      throw NoConvergence("QR iteration did not converge after " +
                          std::to_string(total) + " sweeps");
    }
    ++total;
    ++its;

    Complex shift;
    if (its % 10 == 0) {
      // Exceptional shift to break cycles.
      double s = std::abs(h(hi, hi - 1));
      if (hi >= 2) s += std::abs(h(hi - 1, hi - 2));
      shift = h(hi, hi) + Complex(0.75 * s, 0.4375 * s);
    } else {
      shift = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    }
    qr_sweep(h, lo, hi, shift);
  }

  std::sort(values.begin(), values.end(), [](Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });

  Spectrum spectrum{std::move(values), 0.0};
  const double anorm = a.frobenius_norm();
  if (anorm > 0.0) {
    for (const Complex& lambda : spectrum.eigenvalues) {
      const InverseIterationResult r = inverse_iteration(a, lambda, 0.0, 2);
      spectrum.backward_error = std::max(spectrum.backward_error, r.residual / anorm);
    }
  }
  return spectrum;
}

ComplexMatrix eigvec(const ComplexMatrix& a, Complex lambda) {
  if (!a.is_square()) throw DimensionMismatch("eigenvector of a non-square matrix");
  const double anorm = a.frobenius_norm();
  const double target = tol::kEigenvector * std::max(anorm, std::abs(lambda));
  InverseIterationResult r = inverse_iteration(a, lambda, target, 8);
  if (!(r.residual <= target)) {
    throw NotAnEigenvalue("no eigenvector for the requested value (residual " +
                          std::to_string(r.residual) + ")");
  }
  std::size_t big = 0;
  for (std::size_t i = 1; i < r.vector.size(); ++i)
    if (std::abs(r.vector[i]) > std::abs(r.vector[big])) big = i;
  const Complex phase = std::conj(r.vector[big]) / std::abs(r.vector[big]);
  for (Complex& z : r.vector) z *= phase;
  return ComplexMatrix::column(r.vector);
}

}  // namespace specloc
