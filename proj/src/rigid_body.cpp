#include "swimopt/rigid_body.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "swimopt/errors.hpp"

namespace swimopt {

std::shared_ptr<const DirichletSolver> make_dirichlet_solver(
    std::shared_ptr<const LayerOperators> ops, const BieOptions& opts) {
  return std::make_shared<const DirichletSolver>(std::move(ops), opts);
}

Field combine(const std::array<Field, 6>& fields, const Vec6& coeffs) {
  Field out = Field::Zero(fields[0].rows(), 3);
  for (int l = 0; l < 6; ++l) {
    if (coeffs[l] != 0.0) out += coeffs[l] * fields[l];
  }
  return out;
}

RigidSystem assemble_rigid_system(std::shared_ptr<const LayerOperators> ops,
                                  const BieOptions& opts) {
  RigidSystem rs;
  rs.ops = ops;
  rs.dirichlet = make_dirichlet_solver(ops, opts);
  const SurfaceGrid& g = *ops->grid;
  for (int l = 0; l < 6; ++l) rs.uR[l] = rigid_field(g, l);
#pragma omp parallel for schedule(dynamic)
  for (int l = 0; l < 6; ++l) rs.fR[l] = rs.dirichlet->solve(rs.uR[l]).traction;
  for (int k = 0; k < 6; ++k) {
    for (int l = 0; l < 6; ++l) rs.C_raw(k, l) = surface_scalar_product(g, rs.uR[k], rs.fR[l]);
  }
  rs.symmetry_residual = (rs.C_raw - rs.C_raw.transpose()).norm() / rs.C_raw.norm();
  rs.C = 0.5 * (rs.C_raw + rs.C_raw.transpose());
  const Eigen::LLT<Mat6> llt(rs.C);
  if (llt.info() != Eigen::Success) {
    throw ResolutionError("resistance matrix C is not positive definite; increase p");
  }
  rs.C_inv = llt.solve(Mat6::Identity());
  const Eigen::SelfAdjointEigenSolver<Mat6> es(rs.C);
  rs.condition = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
  for (int i = 0; i < 6; ++i) rs.falpha[i] = -combine(rs.fR, rs.C_inv.col(i));
  return rs;
}

Vec6 swim_velocity(const RigidSystem& rs, const Field& uS) {
  Vec6 a;
  for (int i = 0; i < 6; ++i) a[i] = surface_scalar_product(rs.grid(), rs.falpha[i], uS);
  return a;
}

PowerLoss power_loss_direct(const RigidSystem& rs, const Field& uS) {
  PowerLoss out;
  const SurfaceGrid& g = rs.grid();
  out.alpha = swim_velocity(rs, uS);
  const Field u = uS + rigid_motion_field(g, out.alpha);
  out.traction = rs.dirichlet->solve(u).traction;
  out.power = surface_scalar_product(g, out.traction, u);
  out.slip_form = surface_scalar_product(g, out.traction, uS);
  for (int k = 0; k < 6; ++k) out.net_force[k] = surface_scalar_product(g, out.traction, rs.uR[k]);
  return out;
}

double drag_power(const Mat6& C, const Vec6& alpha) { return alpha.dot(C * alpha); }

}  // namespace swimopt
