#pragma once

#include <vector>

#include "swimopt/bie.hpp"

namespace swimopt {

/// @brief Interior point force whose exterior Stokes flow is known in closed form.
struct PointForceCase {
  ShapeSpec shape;
  Vec3 F = Vec3::Zero();
  Vec3 x0 = Vec3::Zero();
};

/// @brief r = 1 + 0.5 Re(Y_4^3), F = (1, 1/2, 1/3), x0 = (0.1, 0.2, -0.3).
PointForceCase reference_point_force_case();

/// @brief Errors of the mixed traction / normal-velocity solve at one p.
struct ValidationRow {
  int p = 0;
  double flow_error = 0;       ///< max |u_h - u| over the gated far region
  double flow_error_near = 0;  ///< same on the circle |x| = 1.5 (informational)
  double surface_error = 0;    ///< max |S mu - u| at the nodes
  double power_error = 0;      ///< |<u_h, f_h> - <u, f>| / |<u, f>|
  double seconds = 0;
};

/**
 * @brief Sampling of the flow error: circles of the given radii in the
 * x2 = 0 plane, n_theta points per half circle, points inside the body skipped.
 */
struct ValidationOptions {
  std::vector<double> radii{2.0, 2.5, 3.0};
  double near_radius = 1.5;
  int n_theta = 60;
  double flow_tol = 1e-6;
  int quad_factor = 2;  ///< singular-quadrature degree quad_factor * p when BieOptions::quad_degree is 0
};

/**
 * @brief Solves the mixed BVP with tangential traction and normal velocity
 * of the exact flow as data (no rigid unknowns), then samples the flow.
 */
ValidationRow point_force_study(const PointForceCase& c, int p, const BieOptions& opts,
                                const ValidationOptions& vo = {});

/// @brief Collocation mixed rows, the discretization used for this study.
BieOptions validation_bie_options();

}  // namespace swimopt
