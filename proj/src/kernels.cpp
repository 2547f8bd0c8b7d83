#include "swimopt/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "swimopt/errors.hpp"

namespace swimopt {

namespace {
constexpr double kPi = std::numbers::pi;
}

Mat3 stokeslet(const Vec3& r, double mu) {
  const double d = r.norm();
  if (d == 0.0) throw std::domain_error("stokeslet evaluated at r = 0");
  return (Mat3::Identity() / d + r * r.transpose() / (d * d * d)) / (8.0 * kPi * mu);
}

Vec3 stresslet_apply(const Vec3& r, const Vec3& q, const Vec3& n) {
  const double d = r.norm();
  if (d == 0.0) throw std::domain_error("stresslet evaluated at r = 0");
  const double d2 = d * d;
  return -3.0 / (4.0 * kPi) * r.dot(q) * r.dot(n) / (d2 * d2 * d) * r;
}

bool inside_body(const ShapeSpec& shape, const Vec3& x) {
  if (shape.kind == ShapeSpec::Kind::spheroid) {
    return x.cwiseQuotient(shape.semi_axes).squaredNorm() < 1.0;
  }
  const double rho = x.norm();
  if (rho == 0.0) return true;
  const double theta = std::acos(std::clamp(x.z() / rho, -1.0, 1.0));
  const double phi = std::atan2(x.y(), x.x());
  return rho < shape_radius(shape, theta, phi);
}

Vec3 point_force_velocity(const Vec3& F, const Vec3& x0, const Vec3& x, double mu) {
  return stokeslet(x - x0, mu) * F;
}

PointForceFields point_force_solution(const Vec3& F, const Vec3& x0, const SurfaceGrid& grid,
                                      double mu) {
  if (!inside_body(grid.shape, x0)) throw ConfigError("point force must lie inside the body");
  PointForceFields out;
  out.velocity.resize(grid.size(), 3);
  out.traction.resize(grid.size(), 3);
  for (int i = 0; i < grid.size(); ++i) {
    const Vec3 r = grid.nodes.row(i).transpose() - x0;
    out.velocity.row(i) = (stokeslet(r, mu) * F).transpose();
    out.traction.row(i) = stresslet_apply(r, F, grid.normals.row(i).transpose()).transpose();
  }
  return out;
}

}  // namespace swimopt
