#pragma once

#include "swimopt/geometry.hpp"

namespace swimopt {

/// @brief Dynamic viscosity; must be positive.
struct Viscosity {
  double mu = 1.0;
};

/// @brief Stokeslet G(r) = (I/|r| + r r^t/|r|^3) / (8 pi mu). Throws on r = 0.
Mat3 stokeslet(const Vec3& r, double mu = 1.0);

/// @brief Stresslet contraction T(r) q . n = -3/(4 pi) (r.q)(r.n) r / |r|^5. Throws on r = 0.
Vec3 stresslet_apply(const Vec3& r, const Vec3& q, const Vec3& n);

/// @brief Exact exterior Stokes flow of a point force sampled on the grid.
struct PointForceFields {
  Field velocity;
  Field traction;
};

/**
 * @brief u = G(x - x0) F and f = T(x - x0) F . n(x) on Gamma.
 *
 * Throws ConfigError unless x0 lies strictly inside the body.
 */
PointForceFields point_force_solution(const Vec3& F, const Vec3& x0, const SurfaceGrid& grid,
                                      double mu = 1.0);

/// @brief Point-force velocity at an arbitrary field point.
Vec3 point_force_velocity(const Vec3& F, const Vec3& x0, const Vec3& x, double mu = 1.0);

/// @brief True when x lies strictly inside the closed surface (radial test).
bool inside_body(const ShapeSpec& shape, const Vec3& x);

}  // namespace swimopt
