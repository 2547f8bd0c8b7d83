#pragma once

#include <vector>

#include "swimopt/geometry.hpp"
#include "swimopt/trajectory.hpp"

namespace swimopt {

/// @brief Rigid motion U = W + V, Omega = s W with V . W = 0.
struct HelicalParams {
  Vec3 W = Vec3::Zero();
  double s = 0;
  Vec3 V = Vec3::Zero();
  Vec3 U = Vec3::Zero();
  Vec3 Omega = Vec3::Zero();
  bool consistent = true;  ///< false when the degenerate branch leaves W off the net velocity
};

/// @brief Partial (fixed W) or global minimizer of the power over (s, V).
struct OptimalGait {
  HelicalParams h;
  Vec6 alpha = Vec6::Zero();
  double power = 0;
  double A_UU = 0, A_UO = 0, A_OO = 0, D = 0;
  MotionClass cls = MotionClass::rest;
  bool degenerate = false;       ///< A_UO below threshold: s = 0 branch
  bool near_degenerate = false;  ///< |s| < 1e-6 or helix radius > 1e6
  double stationarity = 0;       ///< |Pi grad P(W)| / P, filled by global_minimize
  bool anomaly = false;          ///< A_UO(W*) ~ 0 but W* not an eigenvector of Z_UU^-1
};

/**
 * @brief Closed-form minimization over s and V perpendicular to W.
 *
 * Z_UU must be SPD. Throws ConfigError for W = 0 and ResolutionError when
 * D <= 0 in the non-degenerate branch.
 */
OptimalGait partial_minimize(const Mat6& Z, const Vec3& W);

/// @brief P(W) of partial_minimize, degree-2 homogeneous in W.
double reduced_power(const Mat6& Z, const Vec3& W);

/// @brief Euclidean gradient of reduced_power from the closed-form directional derivative.
Vec3 reduced_power_gradient(const Mat6& Z, const Vec3& W);

/// @brief |grad P(W) - 2 P(W) W| / P(W) for unit W (tangential first-order residual).
double stationarity_residual(const Mat6& Z, const Vec3& W);

/// @brief Motion restricted to Omega = s W, V = 0.
struct SpinningStraight {
  double s = 0;
  double power = 0;
  double B_UU = 0, B_UO = 0, B_OO = 0;
};

SpinningStraight spinning_straight(const Mat6& Z, const Vec3& W);

/// @brief Smallest eigenpair of Z_UU (sign-canonical eigenvector).
struct Rotationless {
  Vec3 W = Vec3::Zero();
  double power = 0;
  Vec3 eigenvalues = Vec3::Zero();
};

Rotationless rotationless_optimal(const Mat6& Z);

/// @brief Minimizer of (a0 + J x)^t Z (a0 + J x) over x = (s, a, b) with
/// U = W + a e1 + b e2, Omega = s W and (e1, e2) an orthonormal basis of W-perp.
struct BruteForceResult {
  double s = 0;
  Vec3 V = Vec3::Zero();
  double power = 0;
};

BruteForceResult brute_force_partial(const Mat6& Z, const Vec3& W);

/// @brief 12 icosahedron vertices, 6 coordinate directions, 8 cube diagonals.
std::vector<Vec3> default_seeds();

/// @brief First component with |w| > 1e-12 made positive.
Vec3 canonical_sign(const Vec3& W);

/**
 * @brief Minimizes reduced_power over the unit sphere from `seeds`
 * (default_seeds() when empty, truncated or cycled to multistart > 0 entries).
 *
 * Riemannian gradient descent with Armijo backtracking followed by Newton
 * polish. Ties within 1e-10 relative are broken by the lexicographically
 * smallest canonical W. Throws SolverError when no start reaches
 * stationarity below 1e-8.
 */
OptimalGait global_minimize(const Mat6& Z, int multistart = 0, std::vector<Vec3> seeds = {});

}  // namespace swimopt
