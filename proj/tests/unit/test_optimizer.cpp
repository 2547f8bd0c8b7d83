#include <gtest/gtest.h>

#include <chrono>
#include <numbers>
#include <random>

#include "swimopt/errors.hpp"
#include "swimopt/optimizer.hpp"

using namespace swimopt;

namespace {

Mat6 random_spd(std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Mat6 B;
  for (int i = 0; i < 36; ++i) B.data()[i] = nd(rng);
  return B * B.transpose() + 0.1 * Mat6::Identity();
}

}  // namespace

TEST(Optimizer, PartialMatchesBruteForce) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 50; ++k) {
    const Mat6 Z = random_spd(rng);
    const Vec3 W(nd(rng), nd(rng), nd(rng));
    const OptimalGait g = partial_minimize(Z, W);
    const BruteForceResult b = brute_force_partial(Z, W);
    EXPECT_NEAR(g.power, b.power, 1e-9 * b.power);
    EXPECT_NEAR(g.h.s, b.s, 1e-7 * (1 + std::abs(b.s)));
    EXPECT_LT((g.h.V - b.V).norm(), 1e-7 * (1 + b.V.norm()));
    EXPECT_LT(g.h.V.dot(W), 1e-9 * W.norm() * (1 + g.h.V.norm()));
    EXPECT_LT((g.h.U - (W + g.h.V)).norm(), 1e-12 * (1 + g.h.U.norm()));
    EXPECT_LT((g.h.Omega - g.h.s * W).norm(), 1e-12 * (1 + g.h.Omega.norm()));
    EXPECT_NEAR(g.alpha.dot(Z * g.alpha), g.power, 1e-9 * g.power);
  }
}

TEST(Optimizer, PowerIsHomogeneousOfDegreeTwo) {
  std::mt19937_64 rng(2);
  const Mat6 Z = random_spd(rng);
  const Vec3 W(0.3, -1.2, 0.5);
  EXPECT_NEAR(reduced_power(Z, 2.0 * W), 4.0 * reduced_power(Z, W), 1e-10 * reduced_power(Z, W));
}

TEST(Optimizer, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(3);
  const Mat6 Z = random_spd(rng);
  const Vec3 W(0.4, 0.1, -0.9);
  const Vec3 g = reduced_power_gradient(Z, W);
  const double h = 1e-6;
  for (int i = 0; i < 3; ++i) {
    const Vec3 e = Vec3::Unit(i) * h;
    const double fd = (reduced_power(Z, W + e) - reduced_power(Z, W - e)) / (2 * h);
    EXPECT_NEAR(g[i], fd, 1e-6 * g.norm());
  }
}

TEST(Optimizer, DegenerateBranchTranslationOnly) {
  Mat6 Z = Mat6::Identity();
  Z.topLeftCorner<3, 3>() = Vec3(2, 2, 3).asDiagonal();
  const OptimalGait g = partial_minimize(Z, Vec3(0, 0, 1));
  EXPECT_TRUE(g.degenerate);
  EXPECT_DOUBLE_EQ(g.h.s, 0.0);
  EXPECT_NEAR(g.power, 3.0, 1e-14);
  EXPECT_TRUE(g.h.consistent);
  EXPECT_LT((g.h.U - Vec3(0, 0, 1)).norm(), 1e-14);
}

TEST(Optimizer, GlobalOptimumOfUncoupledSystemIsRotationless) {
  Mat6 Z = Mat6::Identity();
  Z.topLeftCorner<3, 3>() = Vec3(4, 2, 3).asDiagonal();
  const OptimalGait g = global_minimize(Z);
  EXPECT_NEAR(g.power, 2.0, 1e-10);
  EXPECT_NEAR(std::abs(g.h.W[1]), 1.0, 1e-8);
  EXPECT_LT(g.h.Omega.norm(), 1e-8);
  EXPECT_EQ(g.cls, MotionClass::pure_translation);
  const Rotationless r = rotationless_optimal(Z);
  EXPECT_NEAR(r.power, 2.0, 1e-14);
}

TEST(Optimizer, GlobalMinimumIsStationaryAndBelowSamples) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 10; ++k) {
    const Mat6 Z = random_spd(rng);
    const OptimalGait g = global_minimize(Z);
    EXPECT_NEAR(g.h.W.norm(), 1.0, 1e-12);
    EXPECT_LT(g.stationarity, 1e-9);
    EXPECT_NEAR(stationarity_residual(Z, g.h.W), g.stationarity, 1e-9);
    for (int j = 0; j < 50; ++j) {
      const Vec3 W = Vec3(nd(rng), nd(rng), nd(rng)).normalized();
      EXPECT_LE(g.power, reduced_power(Z, W) * (1 + 1e-12));
    }
    // Sandwich at the optimum.
    const SpinningStraight sb = spinning_straight(Z, g.h.W);
    EXPECT_LE(g.power, sb.power * (1 + 1e-12));
    EXPECT_LE(sb.power, sb.B_UU * (1 + 1e-12));
    EXPECT_LE(g.power, rotationless_optimal(Z).power * (1 + 1e-12));
  }
}

TEST(Optimizer, DeterministicAndCanonicalSign) {
  std::mt19937_64 rng(5);
  const Mat6 Z = random_spd(rng);
  const OptimalGait a = global_minimize(Z), b = global_minimize(Z);
  EXPECT_EQ(a.h.W, b.h.W);
  EXPECT_EQ(canonical_sign(-a.h.W), canonical_sign(a.h.W));
  EXPECT_EQ(default_seeds().size(), 26u);
}

TEST(Optimizer, RejectsInvalidInput) {
  EXPECT_THROW(partial_minimize(Mat6::Identity(), Vec3::Zero()), ConfigError);
  Mat6 Z = Mat6::Identity();
  Z(0, 0) = -1.0;
  EXPECT_THROW(partial_minimize(Z, Vec3(1, 0, 0)), ResolutionError);
}

TEST(Optimizer, HundredSystemsUnderOneSecond) {
  std::mt19937_64 rng(6);
  const auto t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < 100; ++k) global_minimize(random_spd(rng));
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 1.0);
}
