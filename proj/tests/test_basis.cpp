#include <gtest/gtest.h>

#include <cmath>

#include "lpapprox/basis.hpp"

using namespace lpapprox;

TEST(Basis, DimensionsAndOrdering) {
  EXPECT_EQ(BasisSpec(BasisKind::analytic, 4).dimension(), 5u);
  EXPECT_EQ(BasisSpec(BasisKind::harmonic2d, 3).dimension(), 7u);
  EXPECT_EQ(BasisSpec(BasisKind::constants, 9).dimension(), 1u);
  const BasisSpec h(BasisKind::harmonic2d, 2);
  const cplx z(0.3, -0.4);
  EXPECT_EQ(h.element(0, z), cplx(1.0));
  EXPECT_NEAR(std::abs(h.element(2, z) - z * z), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h.element(4, z) - std::conj(z * z)), 0.0, 1e-15);
  EXPECT_EQ(h.power(3), -1);
  EXPECT_THROW(BasisSpec(BasisKind::analytic, -1), std::invalid_argument);
}

TEST(Basis, MatrixMatchesElements) {
  const BasisSpec h(BasisKind::harmonic2d, 3);
  const std::vector<cplx> pts{cplx(0.1, 0.2), cplx(-0.5, 0.3)};
  const auto phi = basis_matrix(h, pts);
  for (int i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < h.dimension(); ++k)
      EXPECT_NEAR(std::abs(phi(i, static_cast<Eigen::Index>(k)) - h.element(k, pts[i])), 0.0, 1e-15);
}

TEST(ProjectL2, MonomialCoefficientMatchesInnerProductRatio) {
  // <z^n conj(z)^m, z^{n-m}> / <z^{n-m}, z^{n-m}> = (n-m+1)/(n+1).
  const DiskGrid g = DiskGrid::product(32, 64);
  for (auto [n, m] : {std::pair{1, 1}, {2, 1}, {3, 1}, {4, 2}}) {
    const Field w = Field::sample(g, [n, m](cplx z) { return std::pow(z, n) * std::pow(std::conj(z), m); });
    const BasisSpec spec(BasisKind::analytic, 6);
    const Coeffs c = project_l2(w, spec, g);
    for (int k = 0; k <= 6; ++k) {
      const double expect = k == n - m ? (n - m + 1.0) / (n + 1.0) : 0.0;
      EXPECT_NEAR(std::abs(c[k] - expect), 0.0, 1e-12) << n << "," << m << " k=" << k;
    }
  }
}

TEST(ProjectL2, DenseAndDiagonalPathsAgree) {
  const DiskGrid g = DiskGrid::product(24, 48);
  const Field w = Field::sample(g, [](cplx z) { return std::exp(z) + std::conj(z) * z; });
  const BasisSpec spec(BasisKind::harmonic2d, 4);
  const Coeffs diag = project_l2(w, spec, g);
  const DiskGrid free = DiskGrid::scattered({g.nodes().begin(), g.nodes().end()}, {g.weights().begin(), g.weights().end()});
  const Coeffs dense = project_l2(w, spec, free);
  EXPECT_LT((diag - dense).norm(), 1e-10);
}

TEST(ProjectL2, SingularGramIsReported) {
  const DiskGrid g = DiskGrid::scattered({cplx(0.1), cplx(0.2)}, {0.5, 0.5});
  Field w;
  w.values = {1.0, 2.0};
  EXPECT_THROW(project_l2(w, BasisSpec(BasisKind::analytic, 4), g), std::runtime_error);
}

TEST(BoundaryNorm, MonomialHasUnitNorm) {
  Coeffs c = Coeffs::Zero(4);
  c[3] = cplx(0.0, 2.0);
  for (double p : {1.0, 2.0, 3.5}) EXPECT_NEAR(boundary_norm(c, BasisSpec(BasisKind::analytic, 3), p, 64), 2.0, 1e-14);
  EXPECT_THROW(boundary_norm(c, BasisSpec(BasisKind::harmonic2d, 1), 1.0, 64), std::invalid_argument);
}

TEST(EvalCombo, RejectsWrongCoefficientCount) {
  const std::vector<cplx> pts{cplx(0.1)};
  EXPECT_THROW(eval_combo(Coeffs::Zero(2), BasisSpec(BasisKind::analytic, 3), pts), std::invalid_argument);
}
