#pragma once

#include <array>
#include <memory>

#include "swimopt/rigid_body.hpp"

namespace swimopt {

/**
 * @brief general: six zero net force/torque rows. axisym: slip restricted to be
 * spin-free with respect to every tangential rigid rotation (e3 for bodies of
 * revolution, all three for the sphere).
 */
enum class GaitMode { general, axisym };

/**
 * @brief Optimal reduced slip space of one shape: A, Z = A^-1, the slip
 * bases z_i, y = z Z and the auxiliary tractions f[v_i].
 */
struct GaitSystem {
  GaitMode mode = GaitMode::general;
  unsigned spin_mask = 0;      ///< rigid fields handled by spin-orthogonality rows
  unsigned free_mask = 0;      ///< zero-power modes: y_l = -uR_l, row/column l of Z zero
  Mat6 C = Mat6::Zero();
  Mat6 C_inv = Mat6::Zero();
  Mat6 A = Mat6::Zero();       ///< symmetrized
  Mat6 A_raw = Mat6::Zero();   ///< A_ij = <f[v_i], z_j>
  Mat6 Z = Mat6::Zero();
  double asymmetry = 0;        ///< |A_raw - A_raw^t| / |A_raw|
  double max_normal_slip = 0;  ///< worst normal part of v_i - vR_i removed from the z_i
  std::array<Field, 6> z, y, f;
  std::array<Vec6, 6> rigid;   ///< vR_i of each auxiliary solve

  Mat3 Z_UU() const { return Z.topLeftCorner<3, 3>(); }
  Mat3 Z_UO() const { return Z.topRightCorner<3, 3>(); }
  Mat3 Z_OO() const { return Z.bottomRightCorner<3, 3>(); }
};

/**
 * @brief Six mixed solves with tangential traction data Pi f^alpha_i; in axisym
 * mode each spin datum gains uR_l / <uR_l, uR_l> and its torque row becomes
 * <v - vR, uR_l> = 0.
 *
 * Throws ModeMismatchError when the mode does not fit the shape and
 * ResolutionError when A is not positive definite.
 */
GaitSystem build_gait_system(const RigidSystem& rs, GaitMode mode, const BieOptions& opts = {});

/// @brief alpha^t Z alpha.
double power_from_alpha(const GaitSystem& gs, const Vec6& alpha);

/// @brief Optimal slip y alpha.
Field slip_from_alpha(const GaitSystem& gs, const Vec6& alpha);

/// @brief R_PS = (A + C^-1)^-1, evaluated as C (C + Z)^-1 Z so zero-power modes map to 0.
Mat6 perfect_slip_resistance(const GaitSystem& gs);

/// @brief alpha^t R_PS alpha / alpha^t Z alpha; throws ConfigError for alpha = 0.
double efficiency(const GaitSystem& gs, const Vec6& alpha);

}  // namespace swimopt
