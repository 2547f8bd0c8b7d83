#pragma once

#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "swimopt/geometry.hpp"

namespace swimopt {

/// @brief Kinematic class of a constant rigid motion (U, Omega).
enum class MotionClass { rest, pure_translation, spinning_straight, circular, helical };

std::string to_string(MotionClass c);

/// @brief Net velocity W of the centroid path and its class.
struct NetMotion {
  Vec3 W = Vec3::Zero();
  MotionClass cls = MotionClass::rest;
};

/**
 * @brief W = (U.Omega / |Omega|^2) Omega if Omega != 0, W = U otherwise.
 *
 * Omega is treated as zero when |Omega| <= tol * |U|; U x Omega and U . Omega
 * are compared to tol * |U| |Omega|.
 */
NetMotion net_velocity(const Vec3& U, const Vec3& Omega, double tol = 1e-10);

/// @brief Helix of spin s, drift V (V . W = 0) and net velocity W.
struct HelixGeometry {
  double radius = 0;  ///< |V| / |s W|
  double pitch = 0;   ///< 2 pi / |s|
  double period = 0;  ///< 2 pi / |s W|
  Vec3 axis = Vec3::Zero();
  bool straight = false;         ///< s = 0 or V = 0
  bool near_degenerate = false;  ///< |s| < 1e-6 or radius > 1e6 with V != 0
};

HelixGeometry helix_geometry(double s, const Vec3& V, const Vec3& W);

/// @brief One sample of a rigid path: centroid and body orientation.
struct PathSample {
  double t = 0;
  Vec3 x = Vec3::Zero();
  Eigen::Quaterniond q = Eigen::Quaterniond::Identity();
};

/**
 * @brief Integrates dx/dt = R U_body, dR/dt = R [Omega_body]x from the identity
 * pose with classical RK4 on (x, q), renormalizing q after every step.
 *
 * Returns the initial sample and one sample per step; the last step is
 * shortened to end exactly at T. Throws ConfigError unless T, dt > 0.
 */
std::vector<PathSample> integrate_path(const Vec3& U_body, const Vec3& Omega_body, double T,
                                       double dt);

/// @brief Closed-form centroid position of the same motion at time t.
Vec3 analytic_position(const Vec3& U_body, const Vec3& Omega_body, double t);

/// @brief Max centroid deviation of a path from the closed form.
double path_deviation(const std::vector<PathSample>& path, const Vec3& U_body,
                      const Vec3& Omega_body);

/// @brief CSV with header t,x,y,z,qw,qx,qy,qz at 17 significant digits.
void write_path_csv(const std::string& file, const std::vector<PathSample>& path);

/// @brief Legacy-VTK polyline of the centroid path.
void write_path_vtk(const std::string& file, const std::vector<PathSample>& path);

}  // namespace swimopt
