#pragma once

#include <array>
#include <memory>

#include "swimopt/bie.hpp"

namespace swimopt {

/**
 * @brief Rigid basis fields, their no-slip tractions, the resistance matrix C
 * and the extractor tractions f^alpha_i = -(f^R C^-1)_i of one shape.
 */
struct RigidSystem {
  std::shared_ptr<const LayerOperators> ops;
  std::shared_ptr<const DirichletSolver> dirichlet;
  std::array<Field, 6> uR;
  std::array<Field, 6> fR;
  std::array<Field, 6> falpha;
  Mat6 C = Mat6::Zero();         ///< symmetrized (C + C^t) / 2
  Mat6 C_raw = Mat6::Zero();     ///< C_kl = <uR_k, fR_l> as computed
  Mat6 C_inv = Mat6::Zero();
  double symmetry_residual = 0;  ///< |C_raw - C_raw^t| / |C_raw|
  double condition = 0;          ///< 2-norm condition number of C

  const SurfaceGrid& grid() const { return *ops->grid; }
};

/// @brief Assembles operators and the Dirichlet solver on a grid.
std::shared_ptr<const DirichletSolver> make_dirichlet_solver(
    std::shared_ptr<const LayerOperators> ops, const BieOptions& opts = {});

/**
 * @brief Six Dirichlet solves uD = uR_l, then C and the extractors.
 *
 * Throws ResolutionError when C is not symmetric positive definite.
 */
RigidSystem assemble_rigid_system(std::shared_ptr<const LayerOperators> ops,
                                  const BieOptions& opts = {});

/// @brief alpha_i = <f^alpha_i, uS>.
Vec6 swim_velocity(const RigidSystem& rs, const Field& uS);

/// @brief Both expressions of the free-swimming power loss of one slip.
struct PowerLoss {
  double power = 0;       ///< <f[u], u> with u = uS + vR(alpha)
  double slip_form = 0;   ///< <f[u], uS>
  Vec6 alpha = Vec6::Zero();
  Vec6 net_force = Vec6::Zero();  ///< <f[u], uR_k>, zero for a free swimmer
  Field traction;
};

/// @brief One Dirichlet solve with datum uS + vR(alpha[uS]).
PowerLoss power_loss_direct(const RigidSystem& rs, const Field& uS);

/// @brief Drag power alpha^t C alpha.
double drag_power(const Mat6& C, const Vec6& alpha);

/// @brief Sum_l coeffs_l * fields_l.
Field combine(const std::array<Field, 6>& fields, const Vec6& coeffs);

}  // namespace swimopt
