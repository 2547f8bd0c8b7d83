#include <gtest/gtest.h>

#include <memory>

#include "swimopt/errors.hpp"
#include "swimopt/reduction.hpp"
#include "swimopt/symmetry.hpp"

using namespace swimopt;

namespace {

ShapeSpec dumbbell() {
  ShapeSpec s = ShapeSpec::sphere();
  s.terms.push_back(ShapeTerm::harmonic(2, 1, {1.0, 0.0}));
  s.terms.push_back(ShapeTerm::harmonic(3, 2, {0.1, 0.0}));
  return s;
}

ShapeSpec chiral() {
  ShapeSpec s = ShapeSpec::sphere();
  s.composition = ShapeSpec::Composition::exponential;
  s.terms.push_back(ShapeTerm::trig(0.4, 1, 0, 1, false));
  s.terms.push_back(ShapeTerm::trig(0.4, 4, 1, 1, true));
  return s;
}

/// Random SPD matrix with the zero pattern of a symmetry class imposed.
Mat6 patterned(const ShapeSymmetry& sym, unsigned seed) {
  std::srand(seed);
  Mat6 B = Mat6::Random();
  Mat6 M = B * B.transpose() + Mat6::Identity();
  const auto z = predicted_zeros(sym);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (z(i, j)) M(i, j) = 0.0;
    }
  }
  return M;
}

}  // namespace

TEST(Symmetry, DetectsClasses) {
  EXPECT_EQ(detect_shape_symmetry(ShapeSpec::sphere()).cls, SymmetryClass::A);
  EXPECT_EQ(detect_shape_symmetry(ShapeSpec::spheroid(0.25, 0.25, 1)).cls, SymmetryClass::A);
  EXPECT_EQ(detect_shape_symmetry(ShapeSpec::spheroid(1, 2, 3)).cls, SymmetryClass::S3);
  EXPECT_EQ(detect_shape_symmetry(chiral()).cls, SymmetryClass::none);
  const ShapeSymmetry d = detect_shape_symmetry(dumbbell());
  EXPECT_EQ(d.cls, SymmetryClass::S1);
  EXPECT_FALSE(d.mirror[0]);
  EXPECT_TRUE(d.mirror[1]);
  EXPECT_FALSE(d.mirror[2]);
  EXPECT_EQ(d.mirror_count(), 1);
}

TEST(Symmetry, PredictedZerosForSinglePlane) {
  const auto z = predicted_zeros(canonical_symmetry(SymmetryClass::S1));
  // Mirror x3 -> -x3: U3, O1, O2 odd; U1, U2, O3 even.
  EXPECT_TRUE(z(0, 2));
  EXPECT_TRUE(z(0, 3));
  EXPECT_FALSE(z(0, 5));
  EXPECT_FALSE(z(2, 3));
  EXPECT_FALSE(z(0, 1));
}

TEST(Symmetry, PatternCheckAcceptsAndRejects) {
  for (SymmetryClass c : {SymmetryClass::S1, SymmetryClass::S2, SymmetryClass::S3}) {
    const ShapeSymmetry sym = canonical_symmetry(c);
    const Mat6 M = patterned(sym, 11);
    EXPECT_LT(verify_matrix_pattern(M, c).max(), 1e-12) << to_string(c);
    Mat6 bad = M;
    bad(0, 2) = bad(2, 0) = 0.3;
    if (predicted_zeros(sym)(0, 2)) {
      EXPECT_GT(verify_matrix_pattern(bad, c).max(), 1e-3);
    }
  }
  EXPECT_THROW(verify_matrix_pattern(Mat6::Identity(), SymmetryClass::none), ConfigError);
}

TEST(Symmetry, AxisymmetricRelations) {
  Mat6 M = Mat6::Zero();
  M.diagonal() << 2, 2, 3, 5, 5, 7;
  M(0, 4) = M(4, 0) = 0.5;
  M(1, 3) = M(3, 1) = -0.5;
  const PatternCheck ok = verify_matrix_pattern(M, SymmetryClass::A);
  EXPECT_LT(ok.max(), 1e-12);
  Mat6 bad = M;
  bad(1, 1) = 2.5;
  EXPECT_GT(verify_matrix_pattern(bad, SymmetryClass::A).relation_residual, 1e-3);
}

TEST(Symmetry, DumbbellMatricesFollowMirrorPattern) {
  auto ops = std::make_shared<const LayerOperators>(assemble_layer_operators(build_grid(dumbbell(), 10)));
  const RigidSystem rs = assemble_rigid_system(ops);
  const GaitSystem gs = build_gait_system(rs, GaitMode::general);
  const SymmetryReport rep = symmetry_report(detect_shape_symmetry(dumbbell()), gs.C, gs.C_inv, gs.A, gs.Z);
  EXPECT_LT(rep.C.max(), 1e-10);
  EXPECT_LT(rep.A.max(), 1e-10);
  EXPECT_LT(rep.Z.max(), 1e-10);
  EXPECT_FALSE(rep.near_axisymmetric);
}

TEST(Symmetry, RotationlessConsequenceForAxisymmetricClass) {
  OptimalGait g;
  g.h.W = Vec3(0, 0, 1);
  g.h.Omega = Vec3::Zero();
  const SymmetryConsequenceCheck ok = check_prop_symmetry_consequences(canonical_symmetry(SymmetryClass::A), g);
  EXPECT_TRUE(ok.applicable);
  EXPECT_TRUE(ok.passed);
  g.h.Omega = Vec3(0, 0, 0.1);
  EXPECT_FALSE(check_prop_symmetry_consequences(canonical_symmetry(SymmetryClass::A), g).passed);
  EXPECT_FALSE(check_prop_symmetry_consequences(canonical_symmetry(SymmetryClass::none), g).applicable);
}
