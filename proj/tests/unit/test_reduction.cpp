#include <gtest/gtest.h>

#include <memory>
#include <numbers>

#include "swimopt/reduction.hpp"

using namespace swimopt;

namespace {

constexpr double kPi = std::numbers::pi;

struct Built {
  RigidSystem rs;
  GaitSystem gs;
};

Built build(const ShapeSpec& s, int p, GaitMode mode) {
  auto ops = std::make_shared<const LayerOperators>(assemble_layer_operators(build_grid(s, p)));
  Built b{assemble_rigid_system(ops), {}};
  b.gs = build_gait_system(b.rs, mode);
  return b;
}

ShapeSpec lumpy() {
  ShapeSpec s = ShapeSpec::sphere();
  s.terms.push_back(ShapeTerm::harmonic(2, 1, {0.4, 0.0}));
  s.terms.push_back(ShapeTerm::harmonic(3, 2, {0.1, 0.05}));
  return s;
}

}  // namespace

TEST(Reduction, SphereOracles) {
  const Built b = build(ShapeSpec::sphere(), 10, GaitMode::axisym);
  EXPECT_EQ(b.gs.spin_mask, 0b111000u);
  EXPECT_EQ(b.gs.free_mask, 0b111000u);
  for (int i = 0; i < 3; ++i) {
    const Vec6 a = Vec6::Unit(i);
    EXPECT_NEAR(power_from_alpha(b.gs, a), 12 * kPi, 1e-8);
    EXPECT_NEAR(perfect_slip_resistance(b.gs)(i, i), 4 * kPi, 1e-8);
    EXPECT_NEAR(efficiency(b.gs, a), 1.0 / 3.0, 1e-10);
  }
  // Rotations are reached at zero power.
  EXPECT_NEAR(power_from_alpha(b.gs, Vec6::Unit(4)), 0.0, 1e-12);
  EXPECT_THROW(efficiency(b.gs, Vec6::Zero()), std::exception);
}

TEST(Reduction, SlipBasisReproducesMotionAndPower) {
  const Built b = build(lumpy(), 12, GaitMode::general);
  EXPECT_EQ(b.gs.free_mask, 0u);
  EXPECT_LT(b.gs.asymmetry, 1e-6);
  EXPECT_EQ(Eigen::LLT<Mat6>(b.gs.A).info(), Eigen::Success);
  EXPECT_LT((b.gs.A * b.gs.Z - Mat6::Identity()).cwiseAbs().maxCoeff(), 1e-10);
  for (int j = 0; j < 6; ++j) {
    EXPECT_LT((swim_velocity(b.rs, b.gs.y[j]) - Vec6::Unit(j)).cwiseAbs().maxCoeff(), 1e-5);
    EXPECT_LT(normal_component_residual(b.rs.grid(), b.gs.y[j]), 1e-12);
  }
  Vec6 a;
  a << 0.15, 0.74, 0.26, 0.53, 0.01, 0.92;
  const double P = power_from_alpha(b.gs, a);
  EXPECT_NEAR(power_loss_direct(b.rs, slip_from_alpha(b.gs, a)).power, P, 1e-5 * P);
}

TEST(Reduction, OptimalSlipBeatsOtherSlips) {
  const Built b = build(lumpy(), 10, GaitMode::general);
  const SurfaceGrid& g = b.rs.grid();
  const Field w = tangential_projection(g, constant_field(g, Vec3(0.2, -0.7, 1.0)));
  const Vec6 a = swim_velocity(b.rs, w);
  EXPECT_LE(power_from_alpha(b.gs, a), power_loss_direct(b.rs, w).power * (1 + 1e-8));
}

TEST(Reduction, EfficiencyBounded) {
  const Built b = build(lumpy(), 8, GaitMode::general);
  for (int k = 0; k < 5; ++k) {
    const Vec6 a = Vec6::Random();
    const double e = efficiency(b.gs, a);
    EXPECT_GT(e, 0.0);
    EXPECT_LE(e, 1.0);
    EXPECT_NEAR(efficiency(b.gs, 3.0 * a), e, 1e-12);
  }
}
