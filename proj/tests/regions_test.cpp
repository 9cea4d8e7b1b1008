#include <cmath>

#include <gtest/gtest.h>

#include "specloc/errors.hpp"
#include "specloc/linalg.hpp"
#include "specloc/regions.hpp"
#include "test_support.hpp"

namespace specloc {
namespace {

constexpr Complex I{0.0, 1.0};

TEST(Contains, Examples) {
  EXPECT_TRUE(contains(EllipseInterior{2, 1}, 1.0));
  EXPECT_FALSE(contains(EllipseInterior{2, 1}, 2.0));
  EXPECT_FALSE(contains(EllipseExterior{2, 1}, 2.0));
  EXPECT_TRUE(contains(ParabolaExterior{1}, -1.0));
  EXPECT_FALSE(contains(ParabolaInterior{1}, -1.0));
}

TEST(Contains, BoundaryBelongsToNeitherSide) {
  EXPECT_FALSE(contains(HalfPlaneLeft{}, Complex(0.0, 3.0)));
  EXPECT_FALSE(contains(UnitDisk{}, I));
  EXPECT_FALSE(contains(EllipseInterior{2, 1}, I));
  EXPECT_FALSE(contains(EllipseExterior{2, 1}, I));
  EXPECT_FALSE(contains(ParabolaInterior{1}, Complex(0.5, 1.0)));
  EXPECT_FALSE(contains(ParabolaExterior{1}, Complex(0.5, 1.0)));
}

TEST(Contains, InteriorAndExteriorPartitionThePlane) {
  testing::Rng rng(61);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 1000; ++i) {
    const Complex z{u(rng), u(rng)};
    EXPECT_NE(contains(EllipseInterior{2, 1}, z), contains(EllipseExterior{2, 1}, z));
    EXPECT_NE(contains(ParabolaInterior{1.5}, z), contains(ParabolaExterior{1.5}, z));
  }
}

TEST(RegionForm, EllipseCoefficients) {
  const LyapunovForm f = region_form(EllipseInterior{2, 1});
  EXPECT_EQ(f.order(), 2);
  EXPECT_EQ(f.rhs_sign(), 1);
  EXPECT_DOUBLE_EQ(f.coefficient(0, 0).real(), 1.0);
  EXPECT_DOUBLE_EQ(f.coefficient(1, 1).real(), -0.625);
  EXPECT_DOUBLE_EQ(f.coefficient(0, 2).real(), 0.1875);
  EXPECT_DOUBLE_EQ(f.coefficient(2, 0).real(), 0.1875);
  EXPECT_EQ(f.coefficient(0, 1), Complex(0.0));
  EXPECT_EQ(f.coefficient(2, 2), Complex(0.0));
  EXPECT_TRUE(f.is_real_symmetric());
  EXPECT_EQ(region_form(EllipseExterior{2, 1}).rhs_sign(), -1);
}

TEST(RegionForm, ParabolaCoefficients) {
  const LyapunovForm f = region_form(ParabolaInterior{1});
  EXPECT_DOUBLE_EQ(f.coefficient(0, 1).real(), 1.0);
  EXPECT_DOUBLE_EQ(f.coefficient(1, 0).real(), 1.0);
  EXPECT_DOUBLE_EQ(f.coefficient(1, 1).real(), -0.5);
  EXPECT_DOUBLE_EQ(f.coefficient(0, 2).real(), 0.25);
  EXPECT_DOUBLE_EQ(f.coefficient(2, 0).real(), 0.25);
  EXPECT_EQ(f.coefficient(0, 0), Complex(0.0));
  EXPECT_EQ(f.rhs_sign(), 1);
  EXPECT_EQ(region_form(ParabolaExterior{1}).rhs_sign(), -1);
}

TEST(RegionForm, ClassicalLyapunovForms) {
  const LyapunovForm h = region_form(HalfPlaneLeft{});
  EXPECT_EQ(h.order(), 1);
  EXPECT_EQ(h.rhs_sign(), -1);
  EXPECT_EQ(h.coefficient(0, 1), Complex(1.0));
  EXPECT_EQ(h.coefficient(1, 0), Complex(1.0));
  EXPECT_EQ(h.coefficient(0, 0), Complex(0.0));
  const LyapunovForm d = region_form(UnitDisk{});
  EXPECT_EQ(d.rhs_sign(), 1);
  EXPECT_EQ(d.coefficient(0, 0), Complex(1.0));
  EXPECT_EQ(d.coefficient(1, 1), Complex(-1.0));
}

TEST(RegionForm, InvalidParameters) {
  EXPECT_THROW(region_form(EllipseInterior{1, 2}), InvalidRegionParams);
  EXPECT_THROW(region_form(EllipseExterior{1, 1}), InvalidRegionParams);
  EXPECT_THROW(region_form(EllipseInterior{2, 0}), InvalidRegionParams);
  EXPECT_THROW(region_form(ParabolaInterior{0}), InvalidRegionParams);
  EXPECT_THROW(region_form(ParabolaExterior{-1}), InvalidRegionParams);
  EXPECT_THROW(region_form(ParabolaExterior{std::nan("")}), InvalidRegionParams);
}

TEST(RegionForm, SymbolSignMatchesMembership) {
  testing::Rng rng(62);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (const Region& region : testing::all_regions()) {
    const LyapunovForm f = region_form(region);
    for (int i = 0; i < 500; ++i) {
      const Complex z{u(rng), u(rng)};
      const double s = f.rhs_sign() * symbol_eval(f, std::conj(z), z).real();
      if (std::abs(s) < 1e-12) continue;
      EXPECT_EQ(s > 0.0, contains(region, z)) << region_name(region) << " " << z;
    }
  }
}

TEST(RegionName, CliSpelling) {
  EXPECT_EQ(region_name(HalfPlaneLeft{}), "halfplane");
  EXPECT_EQ(region_name(UnitDisk{}), "disk");
  EXPECT_EQ(region_name(EllipseInterior{2, 1}), "ellipse-in");
  EXPECT_EQ(region_name(EllipseExterior{2, 1}), "ellipse-out");
  EXPECT_EQ(region_name(ParabolaInterior{1}), "parabola-in");
  EXPECT_EQ(region_name(ParabolaExterior{1}), "parabola-out");
}

TEST(BoundaryDistance, ClosedForms) {
  EXPECT_DOUBLE_EQ(boundary_distance(HalfPlaneLeft{}, Complex(-0.3, 5.0)), 0.3);
  EXPECT_DOUBLE_EQ(boundary_distance(UnitDisk{}, Complex(0.0, 0.25)), 0.75);
  EXPECT_NEAR(boundary_distance(EllipseInterior{2, 1}, 0.0), 1.0, 1e-12);
  EXPECT_NEAR(boundary_distance(EllipseExterior{2, 1}, 3.0), 1.0, 1e-12);
  EXPECT_NEAR(boundary_distance(EllipseInterior{2, 1}, Complex(0.0, 1.5)), 0.5, 1e-12);
  EXPECT_NEAR(boundary_distance(ParabolaInterior{1}, 3.0), std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(boundary_distance(ParabolaExterior{1}, -2.0), 2.0, 1e-12);
  EXPECT_NEAR(boundary_distance(ParabolaInterior{1}, Complex(0.5, 1.0)), 0.0, 1e-12);
}

TEST(BoundaryDistance, NoBoundarySampleIsCloser) {
  testing::Rng rng(63);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < 200; ++i) {
    const Complex z{u(rng), u(rng)};
    const double de = boundary_distance(EllipseInterior{2, 1}, z);
    const double dp = boundary_distance(ParabolaInterior{1}, z);
    for (int k = 0; k < 2000; ++k) {
      const double t = 2 * pi * k / 2000.0;
      EXPECT_LE(de, std::abs(z - Complex(2 * std::cos(t), std::sin(t))) + 1e-12);
      const double s = -6.0 + 12.0 * k / 2000.0;
      EXPECT_LE(dp, std::abs(z - Complex(s * s / 2.0, s)) + 1e-12);
    }
  }
}

TEST(SpectrumInRegion, Examples) {
  const Membership m = spectrum_in_region(EllipseInterior{2, 1}, ComplexMatrix::diagonal({0.1, 0.5 * I}));
  EXPECT_TRUE(m.inside);
  EXPECT_NEAR(m.margin, 0.5, 1e-12);
  const Membership h = spectrum_in_region(HalfPlaneLeft{}, ComplexMatrix::identity(2));
  EXPECT_FALSE(h.inside);
  EXPECT_NEAR(h.margin, -1.0, 1e-15);
  EXPECT_TRUE(spectrum_in_region(UnitDisk{}, ComplexMatrix::scalar(0.5)).inside);
}

TEST(Certify, ScalarGoldenValues) {
  const Certificate e = certify(EllipseInterior{2, 1}, ComplexMatrix::scalar(0.5));
  EXPECT_NEAR(e.h(0, 0).real(), 16.0 / 15.0, 1e-14);
  EXPECT_TRUE(e.verdict);
  EXPECT_EQ(e.direction, Direction::iff);

  const Certificate x = certify(EllipseExterior{2, 1}, ComplexMatrix::scalar(3.0));
  EXPECT_NEAR(x.h(0, 0).real(), 0.8, 1e-14);
  EXPECT_TRUE(x.verdict);

  const Certificate p = certify(ParabolaInterior{1}, ComplexMatrix::scalar(1.0));
  EXPECT_NEAR(p.h(0, 0).real(), 0.5, 1e-14);
  EXPECT_TRUE(p.verdict);
}

TEST(Certify, ClassicalStabilityCriteria) {
  const ComplexMatrix stable = ComplexMatrix::from_rows({{-1.0, 5.0}, {0.0, -2.0}});
  EXPECT_TRUE(certify(HalfPlaneLeft{}, stable).verdict);
  EXPECT_FALSE(certify(HalfPlaneLeft{}, -stable).verdict);
  // Discrete Lyapunov: scalar H = 1 / (1 - |a|^2).
  const Certificate d = certify(UnitDisk{}, ComplexMatrix::scalar(0.5));
  EXPECT_NEAR(d.h(0, 0).real(), 1.0 / 0.75, 1e-14);
  const Certificate u = certify(UnitDisk{}, ComplexMatrix::scalar(2.0));
  EXPECT_NEAR(u.h(0, 0).real(), -1.0 / 3.0, 1e-14);
  EXPECT_FALSE(u.posdef);
}

TEST(Certify, DirectionPerRegion) {
  for (const Region& r : testing::all_regions()) {
    EXPECT_EQ(certificate_direction(r), std::holds_alternative<ParabolaExterior>(r)
                                            ? Direction::sufficient_only
                                            : Direction::iff);
  }
}

TEST(Certify, CustomRightHandSide) {
  testing::Rng rng(64);
  const ComplexMatrix a = testing::with_spectrum({0.3, Complex(-0.5, 0.2)}, rng);
  const ComplexMatrix c = testing::random_hermitian_posdef(2, rng);
  const Certificate cert = certify(EllipseInterior{2, 1}, a, c);
  EXPECT_TRUE(cert.verdict);
  EXPECT_LE(max_abs_diff(testing::apply_form(region_form(EllipseInterior{2, 1}), a, cert.h), c),
            1e-12);
}

TEST(Certify, RejectsBadRightHandSide) {
  const ComplexMatrix a = ComplexMatrix::scalar(0.5);
  EXPECT_THROW(certify(EllipseInterior{2, 1}, a, ComplexMatrix::scalar(-1.0)), CNotPositiveDefinite);
  EXPECT_THROW(certify(EllipseInterior{2, 1}, ComplexMatrix::identity(2),
                       ComplexMatrix::from_rows({{1.0, 1.0}, {0.0, 1.0}})),
               CNotPositiveDefinite);
  EXPECT_THROW(certify(EllipseInterior{2, 1}, a, ComplexMatrix::identity(2)), DimensionMismatch);
  EXPECT_THROW(certify(EllipseInterior{2, 1}, ComplexMatrix(2, 3)), DimensionMismatch);
  EXPECT_THROW(certify(EllipseInterior{1, 2}, a), InvalidRegionParams);
}

TEST(Certify, BoundaryContactIsSingular) {
  EXPECT_THROW(certify(EllipseInterior{2, 1}, ComplexMatrix::scalar(2.0)), SingularSystem);
  EXPECT_THROW(certify(ParabolaInterior{1}, ComplexMatrix::scalar(Complex(0.5, 1.0))), SingularSystem);
}

TEST(Certify, OracleAgreement) {
  const Certificate in = certify(EllipseInterior{2, 1}, ComplexMatrix::scalar(0.5), std::nullopt, true);
  ASSERT_TRUE(in.oracle.has_value());
  EXPECT_TRUE(in.oracle->in_region);
  EXPECT_TRUE(in.oracle->agrees);
  const Certificate out = certify(EllipseInterior{2, 1}, ComplexMatrix::scalar(3.0), std::nullopt, true);
  EXPECT_FALSE(out.verdict);
  EXPECT_FALSE(out.oracle->in_region);
  EXPECT_TRUE(out.oracle->agrees);
  EXPECT_FALSE(certify(EllipseInterior{2, 1}, ComplexMatrix::scalar(0.5)).oracle.has_value());
}

TEST(Certify, ExteriorCertificateCanFailForNonNormalMatrix) {
  // Both eigenvalues lie outside the ellipse, yet the symbol vanishes close
  // to (3, 8.2) and the coupling makes H indefinite.
  const ComplexMatrix a = ComplexMatrix::from_rows({{3.0, 1.0}, {0.0, 8.2}});
  const Certificate c = certify(EllipseExterior{2, 1}, a, std::nullopt, true);
  EXPECT_TRUE(c.oracle->in_region);
  EXPECT_FALSE(c.posdef);
  EXPECT_LE(c.residual, 1e-9);
  EXPECT_FALSE(c.oracle->agrees);
  // The diagonal part alone is certified.
  EXPECT_TRUE(certify(EllipseExterior{2, 1}, ComplexMatrix::diagonal({3.0, 8.2})).verdict);
}

TEST(Certify, ForwardSoundness) {
  testing::Rng rng(65);
  for (const Region& region : testing::all_regions()) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
      std::vector<Complex> eigs;
      for (std::size_t i = 0; i < n; ++i) eigs.push_back(testing::sample_inside(region, rng));
      const Certificate c = certify(region, testing::with_spectrum(eigs, rng), std::nullopt, true);
      EXPECT_TRUE(c.posdef) << region_name(region) << " trial " << trial;
      EXPECT_LE(c.residual, 1e-9);
      EXPECT_TRUE(c.oracle->agrees);
    }
  }
}

TEST(Certify, ReverseSoundness) {
  testing::Rng rng(66);
  for (const Region& region : testing::all_regions()) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
      std::vector<Complex> eigs{testing::sample_outside(region, rng)};
      for (std::size_t i = 1; i < n; ++i)
        eigs.push_back(trial % 2 ? testing::sample_inside(region, rng)
                                 : testing::sample_outside(region, rng));
      const ComplexMatrix a = testing::with_spectrum(eigs, rng);
      try {
        const Certificate c = certify(region, a);
        EXPECT_FALSE(c.verdict) << region_name(region) << " trial " << trial;
      } catch (const SingularSystem&) {
      }
    }
  }
}

TEST(QuadraticForm, EigenpairIdentity) {
  testing::Rng rng(67);
  const std::vector<Region> regions = {EllipseInterior{2, 1}, EllipseExterior{2, 1},
                                       ParabolaInterior{1}, ParabolaExterior{1}};
  for (const Region& region : regions) {
    const LyapunovForm f = region_form(region);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
      const ComplexMatrix a = testing::random_matrix(n, n, rng);
      const ComplexMatrix h = testing::random_hermitian_posdef(n, rng);
      const ComplexMatrix lhs = testing::apply_form(f, a, h);
      for (const Complex& mu : eig(a).eigenvalues) {
        const ComplexMatrix v = eigvec(a, mu);
        const ComplexMatrix vs = v.adjoint();
        const Complex q = mat_mul(mat_mul(vs, lhs), v)(0, 0);
        const Complex hv = mat_mul(mat_mul(vs, h), v)(0, 0);
        const double x = mu.real(), y = mu.imag();
        const double p = std::holds_alternative<EllipseInterior>(region) ||
                                 std::holds_alternative<EllipseExterior>(region)
                             ? 1 - x * x / 4 - y * y
                             : 2 * x - y * y;
        const Complex expected = p * hv;
        EXPECT_LE(std::abs(q - expected), 1e-8 * std::max(std::abs(expected), spectral_norm(lhs)));
      }
    }
  }
}

}  // namespace
}  // namespace specloc
