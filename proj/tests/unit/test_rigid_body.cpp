#include <gtest/gtest.h>

#include <memory>
#include <numbers>

#include "swimopt/rigid_body.hpp"

using namespace swimopt;

namespace {

RigidSystem system_for(const ShapeSpec& s, int p) {
  auto ops = std::make_shared<const LayerOperators>(assemble_layer_operators(build_grid(s, p)));
  return assemble_rigid_system(ops);
}

ShapeSpec dumbbell() {
  ShapeSpec s = ShapeSpec::sphere();
  s.terms.push_back(ShapeTerm::harmonic(2, 1, {1.0, 0.0}));
  s.terms.push_back(ShapeTerm::harmonic(3, 2, {0.1, 0.0}));
  return s;
}

}  // namespace

TEST(RigidBody, SphereResistance) {
  const RigidSystem rs = system_for(ShapeSpec::sphere(), 8);
  Mat6 ex = Mat6::Zero();
  ex.diagonal() << 6, 6, 6, 8, 8, 8;
  ex *= std::numbers::pi;
  EXPECT_LT((rs.C - ex).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LT((rs.C * rs.C_inv - Mat6::Identity()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(RigidBody, ResistanceSymmetricPositive) {
  const RigidSystem rs = system_for(dumbbell(), 12);
  EXPECT_LT(rs.symmetry_residual, 1e-6);
  EXPECT_EQ(Eigen::LLT<Mat6>(rs.C).info(), Eigen::Success);
  EXPECT_GT(rs.condition, 1.0);
}

TEST(RigidBody, ExtractorsRecoverRigidVelocity) {
  // A tangential slip equal to -vR(alpha) makes the body move by alpha with the fluid at rest.
  const RigidSystem rs = system_for(ShapeSpec::sphere(), 8);
  Vec6 a;
  a << 0.3, -0.2, 0.1, 0.5, 0.0, -0.4;
  // For the sphere the rotational part is tangential and costs nothing.
  Vec6 rot = a;
  rot.head<3>().setZero();
  const Vec6 v = swim_velocity(rs, -1.0 * rigid_motion_field(rs.grid(), rot));
  EXPECT_LT((v - rot).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(power_loss_direct(rs, -1.0 * rigid_motion_field(rs.grid(), rot)).power, 0.0, 1e-9);
}

TEST(RigidBody, FreeSwimmerNetForceConverges) {
  double prev = 1e300;
  for (int p : {8, 12}) {
    const RigidSystem rs = system_for(dumbbell(), p);
    const SurfaceGrid& g = rs.grid();
    const Field uS = tangential_projection(g, constant_field(g, Vec3(0.3, 1.0, -0.5)));
    const PowerLoss pl = power_loss_direct(rs, uS);
    const double rel = pl.net_force.cwiseAbs().maxCoeff() / pl.power;
    EXPECT_GT(pl.power, 0.0);
    EXPECT_NEAR(pl.power, pl.slip_form, 1e-5 * pl.power);
    EXPECT_LT(rel, prev / 5);
    prev = rel;
  }
  EXPECT_LT(prev, 1e-5);
}

TEST(RigidBody, DragPower) {
  Mat6 C = Mat6::Identity() * 2.0;
  Vec6 a = Vec6::Ones();
  EXPECT_DOUBLE_EQ(drag_power(C, a), 12.0);
}
