#include <gtest/gtest.h>

#include <cmath>

#include "lpapprox/grid.hpp"

using namespace lpapprox;

TEST(DiskGrid, WeightsAreNormalizedArea) {
  const DiskGrid g = DiskGrid::product(16, 32);
  double sum = 0.0;
  for (double w : g.weights()) sum += w;
  EXPECT_NEAR(sum, 1.0, 1e-14);
  EXPECT_EQ(g.size(), 16u * 32u);
}

TEST(DiskGrid, MomentsOfModulus) {
  // int |z|^{2k} dA = 1/(k+1) with normalized area.
  const DiskGrid g = DiskGrid::product(12, 16);
  for (int k = 0; k <= 8; ++k) {
    const cplx v = integrate(g, [k](cplx z) { return cplx(std::pow(std::norm(z), k)); });
    EXPECT_NEAR(v.real(), 1.0 / (k + 1), 1e-13);
  }
}

TEST(DiskGrid, AngularModesVanish) {
  const DiskGrid g = DiskGrid::product(8, 32);
  for (int k = 1; k < 32; ++k) EXPECT_LT(std::abs(integrate(g, [k](cplx z) { return std::pow(z, k); })), 1e-14);
}

TEST(DiskGrid, SplitGridIsExactForDiskIndicator) {
  const double r0 = std::sqrt(0.5);
  const DiskGrid g = DiskGrid::product(8, 16, {r0});
  const cplx v = integrate(g, [r0](cplx z) { return cplx(std::abs(z) < r0 ? 1.0 : 0.0); });
  EXPECT_NEAR(v.real(), 0.5, 1e-14);
  const DiskGrid plain = DiskGrid::product(8, 16);
  EXPECT_GT(std::abs(integrate(plain, [r0](cplx z) { return cplx(std::abs(z) < r0 ? 1.0 : 0.0); }).real() - 0.5),
            1e-6);
}

TEST(DiskGrid, RefinedDoublesBothSizes) {
  const DiskGrid g = DiskGrid::product(8, 16, {0.5});
  const DiskGrid f = g.refined();
  EXPECT_EQ(f.size(), 4 * g.size());
  EXPECT_EQ(f.n_theta(), 32);
  EXPECT_EQ(f.radial_breaks().size(), 3u);
}

TEST(DiskGrid, RejectsBadSizes) {
  EXPECT_THROW(DiskGrid::product(0, 16), std::invalid_argument);
  EXPECT_THROW(DiskGrid::product(8, 3), std::invalid_argument);
  EXPECT_THROW(DiskGrid::scattered({cplx(0.1)}, {}), std::invalid_argument);
}

TEST(DiskGrid, IntegrateWithErrorIsSmallForSmoothData) {
  const DiskGrid g = DiskGrid::product(32, 64);
  const auto e = integrate_with_error(g, [](cplx z) { return std::exp(z.real()) * cplx(1.0, 0.0); });
  EXPECT_LT(e.error, 1e-12);
}

TEST(Field, MismatchedSizesThrow) {
  const DiskGrid g = DiskGrid::product(4, 8);
  Field f;
  f.values.assign(3, 1.0);
  EXPECT_THROW(integrate(f, g), std::invalid_argument);
}

TEST(Field, NonFiniteValuesDetected) {
  Field f;
  f.values = {1.0, cplx(std::nan(""), 0.0)};
  EXPECT_THROW(f.check_finite(), std::domain_error);
}

TEST(RadialGrid, WeightsCarryJacobian) {
  for (int dim : {2, 3, 5}) {
    const RadialGrid g = build_radial_grid(8, dim, {0.7}, 3);
    double sum = 0.0;
    for (double w : g.weights) sum += w;
    EXPECT_NEAR(sum, 1.0 / dim, 1e-14);
  }
  EXPECT_THROW(build_radial_grid(8, 1), std::invalid_argument);
  EXPECT_THROW(build_radial_grid(1, 2), std::invalid_argument);
}

TEST(BallSpec, HalfVolumeRadius) {
  for (int n : {2, 3, 4, 7}) {
    const BallSpec s(n);
    EXPECT_NEAR(std::pow(s.rho(), n), 0.5, 1e-15);
  }
  EXPECT_NEAR(BallSpec(2).volume(), kPi, 1e-14);
  EXPECT_NEAR(BallSpec(3).volume(), 4.0 * kPi / 3.0, 1e-14);
  EXPECT_NEAR(BallSpec(3).sphere_area(), 4.0 * kPi, 1e-13);
  EXPECT_THROW(BallSpec(1), std::invalid_argument);
}

TEST(BallSampler, WeightsSumToVolumeAndSigmaHasMeanZero) {
  for (int n : {2, 3, 4}) {
    const BallSpec s(n);
    const BallSampler smp(s, 8, 50, 7);
    double sum = 0.0, sig = 0.0;
    for (std::size_t i = 0; i < smp.size(); ++i) {
      sum += smp.weights()[i];
      sig += smp.weights()[i] * sigma(smp.points()[i].norm(), s);
    }
    EXPECT_NEAR(sum, s.volume(), 1e-12);
    EXPECT_NEAR(sig, 0.0, 1e-12);
  }
}

TEST(BallSampler, SeedDeterminesPoints) {
  const BallSpec s(3);
  const BallSampler a(s, 4, 10, 42), b(s, 4, 10, 42), c(s, 4, 10, 43);
  EXPECT_EQ((a.points()[5] - b.points()[5]).norm(), 0.0);
  EXPECT_GT((a.points()[5] - c.points()[5]).norm(), 0.0);
  const auto u = a.uniform_points(1000);
  for (const Point& p : u) EXPECT_LT(p.norm(), 1.0);
  const auto sp = a.sphere_points(10, 0.5);
  for (const Point& p : sp) EXPECT_NEAR(p.norm(), 0.5, 1e-14);
}

TEST(BallSampler, MonteCarloErrorBarCoversRadialFunctions) {
  const BallSpec s(3);
  const BallSampler smp(s, 12, 64, 1);
  // Radial integrands are exact direction by direction, so the error bar vanishes.
  const auto e = integrate_mc(smp, [](const Point& x) { return x.squaredNorm(); });
  EXPECT_NEAR(e.value, 4.0 * kPi / 5.0, 1e-12);
  EXPECT_LT(e.std_error, 1e-12);
}
