#include <gtest/gtest.h>

#include <memory>
#include <numbers>

#include "swimopt/bie.hpp"
#include "swimopt/errors.hpp"
#include "swimopt/gmres.hpp"
#include "swimopt/kernels.hpp"

using namespace swimopt;

namespace {

std::shared_ptr<const LayerOperators> ops_for(const ShapeSpec& s, int p, const BieOptions& o = {}) {
  return std::make_shared<const LayerOperators>(assemble_layer_operators(build_grid(s, p), o));
}

ShapeSpec bumpy() {
  ShapeSpec s = ShapeSpec::sphere();
  s.terms.push_back(ShapeTerm::harmonic(4, 3, {0.5, 0.0}));
  return s;
}

}  // namespace

TEST(Gmres, SolvesDenseSystem) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Random(40, 40) + 10 * Eigen::MatrixXd::Identity(40, 40);
  const Eigen::VectorXd b = Eigen::VectorXd::Random(40);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(40);
  const GmresResult r = gmres(A, b, x, {});
  EXPECT_TRUE(r.converged);
  EXPECT_LT((A * x - b).norm() / b.norm(), 1e-9);
}

TEST(Bie, SingleLayerOfSphereTranslation) {
  // Rigid translation of the unit sphere: total drag 6 pi mu.
  auto ops = ops_for(ShapeSpec::sphere(), 8);
  const DirichletSolver ds(ops);
  const DirichletSolution sol = ds.solve(constant_field(*ops->grid, Vec3(1, 0, 0)));
  Vec3 F = Vec3::Zero();
  for (int i = 0; i < ops->grid->size(); ++i) F += ops->grid->weights[i] * sol.traction.row(i).transpose();
  EXPECT_NEAR(std::abs(F[0]), 6 * std::numbers::pi, 1e-8);
  EXPECT_LT(std::abs(F[1]) + std::abs(F[2]), 1e-9);
}

TEST(Bie, DirichletMatchesPointForceOnSurface) {
  const Vec3 F(1, 0.5, 1.0 / 3), x0(0.1, 0.2, -0.3);
  for (auto disc : {BieOptions::Discretization::collocation, BieOptions::Discretization::galerkin}) {
    BieOptions o;
    o.dirichlet = disc;
    ShapeSpec s = ShapeSpec::sphere();
    s.terms.push_back(ShapeTerm::harmonic(2, 0, {0.2, 0.0}));
    auto ops = ops_for(s, 12, o);
    const PointForceFields ex = point_force_solution(F, x0, *ops->grid);
    const DirichletSolver ds(ops, o);
    const DirichletSolution sol = ds.solve(ex.velocity);
    const double err = (sol.traction - ex.traction).cwiseAbs().maxCoeff() / ex.traction.cwiseAbs().maxCoeff();
    EXPECT_LT(err, 1e-3);
    const OffSurfaceEvaluator ev = ds.evaluator(sol);
    const Vec3 x(0, 0, 2.5);
    EXPECT_LT((ev.velocity(x) - point_force_velocity(F, x0, x)).norm(), 1e-5);
  }
}

TEST(Bie, GmresAndLuAgree) {
  BieOptions lu, gm;
  gm.method = BieOptions::Method::gmres;
  auto ops = ops_for(bumpy(), 8);
  const Field uD = constant_field(*ops->grid, Vec3(0.2, -1, 0.5));
  const DirichletSolution a = DirichletSolver(ops, lu).solve(uD);
  const DirichletSolution b = DirichletSolver(ops, gm).solve(uD);
  EXPECT_LT((a.traction - b.traction).cwiseAbs().maxCoeff(), 1e-7 * a.traction.cwiseAbs().maxCoeff());
}

TEST(Bie, MixedSolveRecoversPointForceFlow) {
  const Vec3 F(1, 0.5, 1.0 / 3), x0(0.1, 0.2, -0.3);
  BieOptions o;
  o.mixed = BieOptions::Discretization::collocation;
  o.quad_degree = 24;
  auto ops = ops_for(bumpy(), 12, o);
  const PointForceFields ex = point_force_solution(F, x0, *ops->grid);
  const SurfaceGrid& g = *ops->grid;
  Eigen::VectorXd gn(g.size());
  for (int i = 0; i < g.size(); ++i) gn[i] = ex.velocity.row(i).dot(g.normals.row(i));
  const MixedSolution sol = MixedSolver(ops, ConstraintMode::none, o).solve(ex.traction, gn);
  const OffSurfaceEvaluator ev(g, sol.density, 1.0, 24);
  const Vec3 x(2.0, 0.0, 0.5);
  EXPECT_LT((ev.velocity(x) - point_force_velocity(F, x0, x)).norm(), 1e-4);
}

TEST(Bie, MixedRigidUnknownsZeroForce) {
  // A rigid motion plus mixed data with vanishing tangential traction: total force and torque vanish.
  auto ops = ops_for(bumpy(), 8);
  const SurfaceGrid& g = *ops->grid;
  const Field gt = tangential_projection(g, constant_field(g, Vec3(1, 0, 0)));
  const Eigen::VectorXd gn = Eigen::VectorXd::Zero(g.size());
  const MixedSolution sol = MixedSolver(ops, ConstraintMode::general).solve(gt, gn);
  for (int l = 0; l < 6; ++l) {
    EXPECT_LT(std::abs(surface_scalar_product(g, sol.traction, rigid_field(g, l))), 1e-9) << l;
  }
}

TEST(Bie, TangentialRigidMask) {
  EXPECT_EQ(tangential_rigid_mask(build_grid(ShapeSpec::sphere(), 6)), 0b111000u);
  EXPECT_EQ(tangential_rigid_mask(build_grid(ShapeSpec::spheroid(0.5, 0.5, 1), 6)), 0b100000u);
  EXPECT_EQ(tangential_rigid_mask(build_grid(bumpy(), 6)), 0u);
}

TEST(Bie, FlattenRoundTrip) {
  auto g = build_grid(ShapeSpec::sphere(), 4);
  const Field f = g.nodes;
  EXPECT_EQ(unflatten(flatten(f)), f);
}
