#pragma once

#include <memory>

#include "swimopt/optimizer.hpp"
#include "swimopt/reduction.hpp"

namespace swimopt {

/// @brief Result of the six-solve algorithm for a body of revolution about e3.
struct AxisymGait {
  double C11 = 0, C33 = 0, C44 = 0, C15 = 0, D_C = 0;
  double A11 = 0, A33 = 0, A44 = 0, A15 = 0, D_A = 0;
  double Z11 = 0, Z33 = 0, Z15 = 0;
  Field y1, y3;         ///< optimal slips of unit translations along e1 and e3
  Vec3 W = Vec3::Zero();  ///< e3 if Z33 <= Z11, e1 otherwise
  double power = 0;     ///< min(Z11, Z33)
  Field slip;           ///< y3 or y1
  bool degenerate = false;  ///< |Z11 - Z33| <= 1e-6 max(Z11, Z33)
  unsigned spin_mask = 0;
  OptimalGait gait;     ///< rotationless gait in the common result schema
};

/**
 * @brief r f(x) = R f(R^-1 x) for the +90 degree rotation R about e3, applied
 * as the azimuthal index shift k -> k - p/2. Throws ConfigError for odd p.
 */
Field quarter_turn(const SurfaceGrid& grid, const Field& f);

/**
 * @brief Dirichlet solves l = 1, 3, 4, extractors from C11, C33, C44, C15,
 * spin-free mixed solves i = 1, 3, 4, then Z11, Z33, Z15 and the optimum.
 *
 * Requires an even p and a shape detected axisymmetric about e3
 * (ModeMismatchError otherwise). Throws ResolutionError when Z11 or Z33 is
 * not positive.
 */
AxisymGait axisym_optimize(std::shared_ptr<const LayerOperators> ops, const BieOptions& opts = {});

/// @brief Six-solve result against the twelve-solve pipeline in axisym mode.
struct AxisymCrossCheck {
  double Z11_axi = 0, Z11_gen = 0;
  double Z33_axi = 0, Z33_gen = 0;
  double P_axi = 0, P_gen = 0;
  double omega_axi = 0, omega_gen = 0;  ///< |Omega*| of both optima
  bool same_direction = false;          ///< both axial or both transverse (or degenerate)
  double max_rel_diff = 0;
  bool passed = false;                  ///< max_rel_diff < 1e-5 and same_direction
};

AxisymCrossCheck cross_check_general(const AxisymGait& axi, const GaitSystem& general);

}  // namespace swimopt
