#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "swimopt/errors.hpp"
#include "swimopt/geometry.hpp"
#include "swimopt/spherical_harmonics.hpp"

using namespace swimopt;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Geometry, UnitSphereAreaAndCentroid) {
  const SurfaceGrid g = build_grid(ShapeSpec::sphere(), 8);
  EXPECT_EQ(g.size(), 2 * 8 * 9);
  EXPECT_NEAR(g.area(), 4 * kPi, 1e-12);
  EXPECT_LT(g.centroid().norm(), 1e-13);
  for (int i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(g.nodes.row(i).norm(), 1.0, 1e-14);
    // Outward normal of the body points into the body from the fluid: n = -x on the unit sphere.
    EXPECT_NEAR(std::abs(g.normals.row(i).dot(g.nodes.row(i))), 1.0, 1e-13);
  }
}

TEST(Geometry, ScaledSphereArea) {
  const SurfaceGrid g = build_grid(ShapeSpec::sphere(2.0), 6);
  EXPECT_NEAR(g.area(), 16 * kPi, 1e-11);
}

TEST(Geometry, SpheroidAreaConverges) {
  // Prolate spheroid (a, a, c): S = 2 pi a^2 (1 + c/(a e) asin e), e^2 = 1 - a^2/c^2.
  const double a = 0.5, c = 1.0, e = std::sqrt(1 - a * a / (c * c));
  const double exact = 2 * kPi * a * a * (1 + c / (a * e) * std::asin(e));
  const SurfaceGrid g = build_grid(ShapeSpec::spheroid(a, a, c), 16);
  EXPECT_NEAR(g.area(), exact, 1e-9 * exact);
}

TEST(Geometry, DivergenceTheoremVolume) {
  // Volume = (1/3) int x . n_out dS with n pointing out of the body.
  ShapeSpec s = ShapeSpec::sphere();
  s.terms.push_back(ShapeTerm::harmonic(2, 0, {0.2, 0.0}));
  const SurfaceGrid g1 = build_grid(s, 16), g2 = build_grid(s, 20);
  double v1 = 0, v2 = 0;
  for (int i = 0; i < g1.size(); ++i) v1 -= g1.weights[i] * g1.nodes.row(i).dot(g1.normals.row(i)) / 3;
  for (int i = 0; i < g2.size(); ++i) v2 -= g2.weights[i] * g2.nodes.row(i).dot(g2.normals.row(i)) / 3;
  EXPECT_GT(v1, 0.0);
  EXPECT_NEAR(v1, v2, 1e-10);
}

TEST(Geometry, ConstantFieldOnlyMonopole) {
  const SurfaceGrid g = build_grid(ShapeSpec::sphere(), 8);
  const ShCoeffs c = sh_analysis(g, Eigen::VectorXd::Constant(g.size(), 3.0));
  EXPECT_NEAR(c.at(0, 0).real(), 3.0 * std::sqrt(4 * kPi), 1e-12);
  for (int l = 1; l <= c.L; ++l) {
    for (int m = -l; m <= l; ++m) EXPECT_LT(std::abs(c.at(l, m)), 1e-12) << l << " " << m;
  }
}

TEST(Geometry, HarmonicAnalysisIsolatesDegreeAndOrder) {
  const SurfaceGrid g = build_grid(ShapeSpec::sphere(), 8);
  Eigen::VectorXd f(g.size());
  for (int j = 0; j < g.n_theta(); ++j) {
    for (int k = 0; k < g.n_phi(); ++k) f[g.index(j, k)] = ylm(2, 1, g.theta[j], g.phi[k]).real();
  }
  const ShCoeffs c = sh_analysis(g, f);
  for (int l = 0; l <= c.L; ++l) {
    for (int m = -l; m <= l; ++m) {
      if (l == 2 && std::abs(m) == 1) {
        EXPECT_NEAR(std::abs(c.at(l, m)), 0.5, 1e-12);
      } else {
        EXPECT_LT(std::abs(c.at(l, m)), 1e-12);
      }
    }
  }
}

TEST(Geometry, SynthesisReproducesSamples) {
  ShapeSpec s = ShapeSpec::sphere();
  const SurfaceGrid g = build_grid(s, 10);
  Eigen::VectorXd f(g.size());
  for (int i = 0; i < g.size(); ++i) f[i] = g.nodes(i, 0) * g.nodes(i, 1) + g.nodes(i, 2);
  const ShCoeffs c = sh_analysis(g, f);
  Eigen::VectorXd th(2), ph(2);
  th << 0.4, 2.2;
  ph << 1.0, 4.0;
  const Eigen::VectorXd v = sh_synthesis(c, th, ph);
  for (int i = 0; i < 2; ++i) {
    const double x = std::sin(th[i]) * std::cos(ph[i]), y = std::sin(th[i]) * std::sin(ph[i]);
    EXPECT_NEAR(v[i], x * y + std::cos(th[i]), 1e-12);
  }
}

TEST(Geometry, RealBasisIsOrthonormal) {
  const SurfaceGrid g = build_grid(ShapeSpec::sphere(), 6);
  const Eigen::MatrixXd B = real_sh_basis(g);
  ASSERT_EQ(B.cols(), real_sh_count(6));
  const Eigen::MatrixXd G = B.transpose() * g.weights.asDiagonal() * B;
  EXPECT_LT((G - Eigen::MatrixXd::Identity(B.cols(), B.cols())).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Geometry, TangentialProjection) {
  ShapeSpec s = ShapeSpec::sphere();
  s.terms.push_back(ShapeTerm::harmonic(3, 2, {0.2, 0.1}));
  const SurfaceGrid g = build_grid(s, 8);
  const Field t = tangential_projection(g, constant_field(g, Vec3(1, 2, 3)));
  EXPECT_LT(normal_component_residual(g, t), 1e-14);
}

TEST(Geometry, InvalidShapesRejected) {
  ShapeSpec s = ShapeSpec::sphere();
  s.terms.push_back(ShapeTerm::harmonic(1, 0, {5.0, 0.0}));
  EXPECT_THROW(build_grid(s, 8), ShapeError);
  EXPECT_THROW(build_grid(ShapeSpec::sphere(), 2), ConfigError);
  EXPECT_THROW(ShapeSpec::spheroid(-1, 1, 1).validate(), ShapeError);
}

TEST(Geometry, HashDistinguishesShapes) {
  ShapeSpec a = ShapeSpec::sphere(), b = ShapeSpec::sphere();
  b.terms.push_back(ShapeTerm::harmonic(2, 1, {0.1, 0.0}));
  EXPECT_EQ(a.hash(), ShapeSpec::sphere().hash());
  EXPECT_NE(a.hash(), b.hash());
}

TEST(Geometry, ExponentialCompositionRadius) {
  ShapeSpec s = ShapeSpec::sphere();
  s.composition = ShapeSpec::Composition::exponential;
  s.terms.push_back(ShapeTerm::trig(0.4, 1, 0, 1, false));
  const double th = 0.7, ph = 0.3;
  EXPECT_NEAR(shape_radius(s, th, ph), std::exp(0.4 * std::sin(th) * std::cos(ph)), 1e-15);
}
