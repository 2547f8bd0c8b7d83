#include "swimopt/reduction.hpp"

#include <algorithm>
#include <vector>

#include <Eigen/Cholesky>

#include "swimopt/errors.hpp"

namespace swimopt {

namespace {
constexpr double kFreeModeTol = 1e-8;
}  // namespace

GaitSystem build_gait_system(const RigidSystem& rs, GaitMode mode, const BieOptions& opts) {
  const SurfaceGrid& g = rs.grid();
  GaitSystem gs;
  gs.mode = mode;
  gs.C = rs.C;
  gs.C_inv = rs.C_inv;
  const unsigned tangential = tangential_rigid_mask(g);
  if (mode == GaitMode::general && tangential != 0u) {
    throw ModeMismatchError("a rigid rotation is tangential on the surface; use axisym mode");
  }
  if (mode == GaitMode::axisym && !(tangential & kSpinE3)) {
    throw ModeMismatchError("axisym mode requires a body of revolution about e3");
  }
  gs.spin_mask = mode == GaitMode::axisym ? tangential : 0u;
  const ConstraintMode cm =
      mode == GaitMode::axisym ? ConstraintMode::axisym : ConstraintMode::general;
  const MixedSolver solver(rs.ops, cm, opts, gs.spin_mask);
  const Eigen::VectorXd gn = Eigen::VectorXd::Zero(g.size());
  Vec6 normal_slip;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < 6; ++i) {
    Field gt = tangential_projection(g, rs.falpha[i]);
    if (gs.spin_mask & (1u << i)) {
      gt += rs.uR[i] / surface_scalar_product(g, rs.uR[i], rs.uR[i]);
    }
    const MixedSolution sol = solver.solve(gt, gn);
    gs.z[i] = sol.slip;
    gs.f[i] = sol.traction;
    gs.rigid[i] = sol.rigid;
    normal_slip[i] = sol.normal_slip;
  }
  gs.max_normal_slip = normal_slip.maxCoeff();
  double zmax = 0.0;
  for (int i = 0; i < 6; ++i) {
    zmax = std::max(zmax, gs.z[i].cwiseAbs().maxCoeff());
    for (int j = 0; j < 6; ++j) gs.A_raw(i, j) = surface_scalar_product(g, gs.f[i], gs.z[j]);
  }
  // A spin mode whose spin-free auxiliary slip vanishes is reached at zero
  // power by the rigid counter-rotation slip -uR_l (the sphere's rotations).
  for (int l = 0; l < 6; ++l) {
    if ((gs.spin_mask & (1u << l)) && gs.z[l].cwiseAbs().maxCoeff() <= kFreeModeTol * zmax) {
      gs.free_mask |= 1u << l;
    }
  }
  gs.asymmetry = (gs.A_raw - gs.A_raw.transpose()).norm() / gs.A_raw.norm();
  gs.A = 0.5 * (gs.A_raw + gs.A_raw.transpose());
  std::vector<int> act;
  for (int l = 0; l < 6; ++l) {
    if (!(gs.free_mask & (1u << l))) act.push_back(l);
  }
  const int na = static_cast<int>(act.size());
  Eigen::MatrixXd Aa(na, na);
  for (int a = 0; a < na; ++a) {
    for (int b = 0; b < na; ++b) Aa(a, b) = gs.A(act[a], act[b]);
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(Aa);
  if (llt.info() != Eigen::Success) {
    throw ResolutionError("reduction matrix A is not positive definite; increase p");
  }
  const Eigen::MatrixXd Za = llt.solve(Eigen::MatrixXd::Identity(na, na));
  gs.Z.setZero();
  for (int a = 0; a < na; ++a) {
    for (int b = 0; b < na; ++b) gs.Z(act[a], act[b]) = Za(a, b);
  }
  for (int j = 0; j < 6; ++j) {
    gs.y[j] = (gs.free_mask & (1u << j)) ? Field(-rs.uR[j]) : combine(gs.z, gs.Z.col(j));
  }
  return gs;
}

double power_from_alpha(const GaitSystem& gs, const Vec6& alpha) {
  return alpha.dot(gs.Z * alpha);
}

Field slip_from_alpha(const GaitSystem& gs, const Vec6& alpha) { return combine(gs.y, alpha); }

Mat6 perfect_slip_resistance(const GaitSystem& gs) {
  // (A + C^-1)^-1 = C (C + Z)^-1 Z, which stays defined when Z is singular.
  const Mat6 M = gs.C + gs.Z;
  return gs.C * M.lu().solve(gs.Z);
}

double efficiency(const GaitSystem& gs, const Vec6& alpha) {
  if (alpha.squaredNorm() == 0.0) throw ConfigError("efficiency requires a nonzero motion");
  return alpha.dot(perfect_slip_resistance(gs) * alpha) / power_from_alpha(gs, alpha);
}

}  // namespace swimopt
