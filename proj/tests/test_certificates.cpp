#include <gtest/gtest.h>

#include <cmath>

#include "lpapprox/certificates.hpp"

using namespace lpapprox;

namespace {
const double kR0 = std::sqrt(0.5);
}

TEST(Dual, SignOfResidualForPEqualsOne) {
  const DiskGrid g = DiskGrid::product(8, 16);
  const Field w = Field::sample(g, [](cplx z) { return z * std::conj(z) + cplx(0, 1) * std::conj(z); });
  const Field f = Field::sample(g, [](cplx z) { return 0.2 * z; });
  const auto d = construct_dual(w, f, 1.0, 0.7);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx r = w.values[i] - f.values[i];
    EXPECT_NEAR(std::abs(d.g.values[i] * r - std::abs(r)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(d.g.values[i]), 1.0, 1e-14);
  }
  EXPECT_LT(d.alignment_deviation, 1e-14);
}

TEST(Dual, PEqualsTwoIsConjugateResidualOverLambda) {
  const DiskGrid g = DiskGrid::product(6, 8);
  const Field w = Field::sample(g, [](cplx z) { return std::conj(z) + 1.0; });
  const Field f = Field::sample(g, [](cplx) { return cplx(0.0); });
  const auto d = construct_dual(w, f, 2.0, 2.5);
  for (std::size_t i = 0; i < g.size(); ++i)
    EXPECT_NEAR(std::abs(d.g.values[i] - std::conj(w.values[i]) / 2.5), 0.0, 1e-14);
}

TEST(Dual, Errors) {
  const DiskGrid g = DiskGrid::product(2, 4);
  const Field w = Field::sample(g, [](cplx z) { return z; });
  EXPECT_THROW(construct_dual(w, w, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(construct_dual(w, w, 0.5, 1.0), std::invalid_argument);
  EXPECT_THROW(check_annihilation(w, ProblemKind::analytic, -1, g), std::invalid_argument);
}

TEST(Annihilation, SplitSignKillsAllMoments) {
  // sgn(|z|^2 - 1/2): mean zero by the split, rotation kills the rest.
  const DiskGrid g = DiskGrid::product(16, 32, {kR0});
  const Field s = Field::sample(g, [](cplx z) { return cplx(std::abs(z) < kR0 ? -1.0 : 1.0); });
  const auto res = check_annihilation(s, ProblemKind::harmonic, 10, g);
  ASSERT_EQ(res.size(), 21u);
  for (double r : res) EXPECT_LT(r, 1e-13);
}

TEST(Annihilation, DetectsNonzeroMoment) {
  const DiskGrid g = DiskGrid::product(16, 32);
  const Field s = Field::sample(g, [](cplx z) { return std::conj(z); });
  const auto res = check_annihilation(s, ProblemKind::analytic, 3, g);
  // int conj(z) z dA = 1/2
  EXPECT_NEAR(res[1], 0.5, 1e-13);
  EXPECT_LT(res[0] + res[2] + res[3], 1e-13);
}

TEST(Alignment, RecoversConstantPhase) {
  const DiskGrid g = DiskGrid::product(4, 8);
  const Field w = Field::sample(g, [](cplx z) { return z + 0.3; });
  const Field f = Field::sample(g, [](cplx) { return cplx(0.0); });
  Field rotated = construct_dual(w, f, 1.0, 1.0).g;
  for (auto& v : rotated.values) v *= std::polar(1.0, -2.0 * kPi * 37 / 720);
  EXPECT_LT(check_alignment(rotated, w, f), 1e-13);
  EXPECT_GT(check_alignment(rotated, w, f, 7), 1e-2);
}

TEST(Optimality, CertifiesMedianAndRefutesShiftedCandidate) {
  const DiskGrid g = DiskGrid::product(16, 32, {kR0});
  const Field w = Field::sample(g, [](cplx z) { return cplx(std::norm(z)); });
  const Field good = Field::sample(g, [](cplx) { return cplx(0.5); });
  const Field bad = Field::sample(g, [](cplx) { return cplx(0.3); });
  EXPECT_TRUE(certify_optimality(w, good, 1.0, ProblemKind::analytic, 10, g).verdict.certified());
  const auto r = certify_optimality(w, bad, 1.0, ProblemKind::analytic, 10, g);
  EXPECT_TRUE(r.verdict.refuted());
}

TEST(Optimality, L2ProjectionIsCertified) {
  const DiskGrid g = DiskGrid::product(16, 32);
  const Field w = Field::sample(g, [](cplx z) { return z * z * std::conj(z); });
  const Field f = Field::sample(g, [](cplx z) { return 2.0 / 3.0 * z; });
  EXPECT_TRUE(certify_optimality(w, f, 2.0, ProblemKind::analytic, 8, g).verdict.certified());
}

TEST(BadlyApproximable, Verdicts) {
  EXPECT_TRUE(badly_approximable_test([](cplx z) { return std::conj(z); }, 1.0, 10).verdict.certified());
  const auto shifted = badly_approximable_test([](cplx z) { return std::conj(z + 2.0); }, 1.0, 10);
  EXPECT_TRUE(shifted.verdict.refuted());
  EXPECT_EQ(shifted.verdict.witness_index, 0);
  EXPECT_THROW(badly_approximable_test([](cplx) { return cplx(0.0); }, 1.0, 2), std::invalid_argument);
}

TEST(BadlyApproximable, ConjugateQuarticAndRatio) {
  const double a = 0.5;
  const auto quartic = badly_approximable_test([a](cplx z) { return std::pow(std::conj(z) - a, 4); }, 1.0, 10);
  EXPECT_TRUE(quartic.verdict.certified()) << quartic.verdict.witness_value;
  // |omega| / omega for the quartic is the squared ratio, which must annihilate z^k.
  const DiskGrid g = DiskGrid::product(128, 256);
  const Field ratio = Field::sample(g, [a](cplx z) {
    const cplx q = (z - a) / (std::conj(z) - a);
    return q * q;
  });
  for (double r : check_annihilation(ratio, ProblemKind::analytic, 10, g)) EXPECT_LT(r, 1e-3);
  const auto q = construct_dual(Field::sample(g, [a](cplx z) { return std::pow(std::conj(z) - a, 4); }),
                                Field::sample(g, [](cplx) { return cplx(0.0); }), 1.0, 1.0);
  for (std::size_t i = 0; i < g.size(); i += 101) EXPECT_NEAR(std::abs(q.g.values[i] - ratio.values[i]), 0.0, 1e-12);
}

TEST(Witness, VanishesOnCircleAndHasRatioAsDbar) {
  const double a = 0.5;
  for (int j = 0; j < 256; ++j) EXPECT_LT(std::abs(prop53_witness(a, std::polar(1.0, 2.0 * kPi * j / 256))), 1e-12);
  const auto v = [a](cplx z) { return prop53_witness(a, z); };
  for (cplx z : {cplx(0.1, 0.2), cplx(-0.4, 0.5), cplx(0.0, -0.7), cplx(-0.8, 0.0)}) {
    const cplx q = (z - a) / (std::conj(z) - a);
    EXPECT_NEAR(std::abs(dbar_central(v, z, 1e-4) - q * q), 0.0, 1e-6);
  }
  EXPECT_THROW(prop53_witness(1.5, 0.0), std::invalid_argument);
  EXPECT_THROW(prop53_witness(0.5, cplx(0.5)), std::domain_error);
}

TEST(Wirtinger, CentralDifferenceOfConjugate) {
  const auto f = [](cplx z) { return std::conj(z) * std::conj(z) + z; };
  const cplx z(0.3, -0.2);
  EXPECT_NEAR(std::abs(dbar_central(f, z, 1e-4) - 2.0 * std::conj(z)), 0.0, 1e-8);
}
