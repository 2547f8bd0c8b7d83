#include <gtest/gtest.h>

#include <numbers>

#include "swimopt/errors.hpp"
#include "swimopt/kernels.hpp"

using namespace swimopt;

TEST(Kernels, StokesletSymmetricAndScaled) {
  const Vec3 r(0.3, -0.4, 1.2);
  const Mat3 G = stokeslet(r, 2.0);
  EXPECT_LT((G - G.transpose()).norm(), 1e-16);
  const Mat3 G1 = stokeslet(r, 1.0);
  EXPECT_LT((2.0 * G - G1).norm(), 1e-15);
  const double d = r.norm();
  const Mat3 ex = (Mat3::Identity() / d + r * r.transpose() / (d * d * d)) / (8 * std::numbers::pi);
  EXPECT_LT((G1 - ex).norm(), 1e-15);
  EXPECT_THROW(stokeslet(Vec3::Zero()), std::exception);
}

TEST(Kernels, StokesletDivergenceFree) {
  const Vec3 r(0.5, 0.2, -0.7), F(1, 2, 3);
  const double h = 1e-5;
  double div = 0;
  for (int i = 0; i < 3; ++i) {
    const Vec3 e = Vec3::Unit(i) * h;
    div += ((stokeslet(r + e) * F)[i] - (stokeslet(r - e) * F)[i]) / (2 * h);
  }
  EXPECT_NEAR(div, 0.0, 1e-8);
}

TEST(Kernels, StressletTotalForceOnSphere) {
  // -int_{|r|=R} T(r) F . n dS with n = r/R gives the enclosed force F.
  const Vec3 F(1.0, 0.5, -0.25);
  Vec3 total = Vec3::Zero();
  const int n = 200;
  for (int a = 0; a < n; ++a) {
    const double th = std::numbers::pi * (a + 0.5) / n;
    for (int b = 0; b < 2 * n; ++b) {
      const double ph = std::numbers::pi * (b + 0.5) / n;
      const Vec3 x(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
      total += stresslet_apply(x, F, x) * std::sin(th) * (std::numbers::pi / n) * (std::numbers::pi / n);
    }
  }
  EXPECT_LT((total + F).norm(), 1e-4);
}

TEST(Kernels, InsideBody) {
  EXPECT_TRUE(inside_body(ShapeSpec::sphere(), Vec3(0.1, 0.2, 0.3)));
  EXPECT_FALSE(inside_body(ShapeSpec::sphere(), Vec3(1.1, 0.0, 0.0)));
  EXPECT_TRUE(inside_body(ShapeSpec::spheroid(0.25, 0.25, 1.0), Vec3(0, 0, 0.9)));
  EXPECT_FALSE(inside_body(ShapeSpec::spheroid(0.25, 0.25, 1.0), Vec3(0.3, 0, 0)));
}

TEST(Kernels, PointForceRequiresInteriorSource) {
  const SurfaceGrid g = build_grid(ShapeSpec::sphere(), 6);
  EXPECT_THROW(point_force_solution(Vec3(1, 0, 0), Vec3(2, 0, 0), g), ConfigError);
  const PointForceFields f = point_force_solution(Vec3(1, 0, 0), Vec3(0.1, 0, 0), g);
  EXPECT_EQ(f.velocity.rows(), g.size());
  EXPECT_LT((f.velocity.row(3).transpose() - point_force_velocity(Vec3(1, 0, 0), Vec3(0.1, 0, 0),
                                                                  g.nodes.row(3).transpose()))
                .norm(),
            1e-15);
}
