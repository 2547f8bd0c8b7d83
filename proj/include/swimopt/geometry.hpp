#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "swimopt/spherical_harmonics.hpp"

namespace swimopt {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
/// One 3-vector per quadrature node, node-major (flattens to x0,y0,z0,x1,...).
using Field = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;

/**
 * @brief One additive term of the radial shape function h(theta, phi).
 *
 * harmonic: Re(c * Y_l^m(theta, phi)).
 * trig:     coef * sin^a(theta) cos^b(theta) * {cos, sin}(m phi).
 */
struct ShapeTerm {
  enum class Kind { harmonic, trig };
  Kind kind = Kind::harmonic;
  int l = 0;
  int m = 0;
  std::complex<double> c{0.0, 0.0};
  double coef = 0.0;
  int sin_pow = 0;
  int cos_pow = 0;
  bool sine = false;

  static ShapeTerm harmonic(int l, int m, std::complex<double> c);
  static ShapeTerm trig(double coef, int sin_pow, int cos_pow, int m, bool sine);
};

/**
 * @brief Star-shaped radial surface r = base + h or r = base * exp(h), or a
 * coordinate-aligned spheroid with semi-axes (a, b, c).
 */
struct ShapeSpec {
  enum class Kind { radial, spheroid };
  enum class Composition { additive, exponential };
  Kind kind = Kind::radial;
  Composition composition = Composition::additive;
  double base_radius = 1.0;
  std::vector<ShapeTerm> terms;
  Vec3 semi_axes{1.0, 1.0, 1.0};
  std::string name;

  static ShapeSpec sphere(double radius = 1.0);
  static ShapeSpec spheroid(double a, double b, double c);
  /// Throws ShapeError on non-positive semi-axes or unsupported terms.
  void validate() const;
  /// Stable hash of the shape definition, used for cache keys.
  std::uint64_t hash() const;
};

/// @brief Surface quantities at one parameter point (theta, phi).
struct SurfacePoint {
  Vec3 x;         ///< position
  Vec3 n;         ///< unit normal pointing away from the fluid (into the body)
  Vec3 xtheta;    ///< d x / d theta (tangent)
  double jac = 0; ///< area element per unit-sphere solid angle, dS / dOmega
};

/// @brief Radius r(theta, phi) of a radial shape (distance from origin for spheroids).
double shape_radius(const ShapeSpec& shape, double theta, double phi);

/// @brief Analytic evaluation of position, normal and area element.
SurfacePoint evaluate_surface(const ShapeSpec& shape, double theta, double phi);

/**
 * @brief Tensor Gauss-Legendre (polar) x trapezoid (azimuthal) surface grid.
 *
 * Node (j, k) sits at theta_j = arccos(x_j), phi_k = k pi / p and has flat
 * index j * 2p + k. Weights include the surface Jacobian.
 */
struct SurfaceGrid {
  int p = 0;
  ShapeSpec shape;
  Eigen::VectorXd gl_x, gl_w;  ///< polar nodes cos(theta_j) and weights
  Eigen::VectorXd theta, phi;  ///< ring colatitudes and azimuths
  Field nodes, normals, t1, t2;
  Eigen::VectorXd weights;     ///< full quadrature weights (area)
  Eigen::VectorXd jac;         ///< dS / dOmega at nodes

  int n_theta() const { return p + 1; }
  int n_phi() const { return 2 * p; }
  int size() const { return 2 * p * (p + 1); }
  int index(int j, int k) const { return j * 2 * p + k; }
  double area() const { return weights.sum(); }
  Vec3 centroid() const;
};

/// @brief Builds the grid; requires p >= 4. Throws ShapeError if r <= 0 anywhere.
SurfaceGrid build_grid(const ShapeSpec& shape, int p);

/// @brief <f, g>_Gamma = sum_j w_j f_j . g_j.
double surface_scalar_product(const SurfaceGrid& grid, const Field& f, const Field& g);

/// @brief Integral of a scalar node field.
double surface_integral(const SurfaceGrid& grid, const Eigen::VectorXd& f);

/// @brief Field with the same constant vector at every node.
Field constant_field(const SurfaceGrid& grid, const Vec3& v);

/// @brief max_j |v_j . n_j| / max_j |v_j| (0 for a zero field): tangentiality residual.
double normal_component_residual(const SurfaceGrid& grid, const Field& v);

/// @brief Removes the normal component at every node.
Field tangential_projection(const SurfaceGrid& grid, const Field& v);

/**
 * @brief Spherical-harmonic analysis of a scalar node field up to degree p.
 *
 * Exact for band-limited fields with l <= p and |m| < p; |m| = p aliases on
 * the 2p-point azimuthal rule.
 */
ShCoeffs sh_analysis(const SurfaceGrid& grid, const Eigen::VectorXd& f);

/// @brief Real part of the expansion evaluated at arbitrary parameter points.
Eigen::VectorXd sh_synthesis(const ShCoeffs& coeffs, const Eigen::VectorXd& theta,
                             const Eigen::VectorXd& phi);

/// @brief Number of real harmonics of degree <= p with |m| < p.
int real_sh_count(int p);

/**
 * @brief Real orthonormal spherical harmonics at the grid nodes, N x real_sh_count(p).
 *
 * Columns ordered by (l, m) with m = 0 -> Y_l^0, m > 0 -> sqrt2 Re Y_l^m,
 * m < 0 -> sqrt2 Im Y_l^|m|. Orthonormal under the unit-sphere node weights;
 * |m| = p is omitted because it aliases on the 2p-point azimuthal rule.
 */
Eigen::MatrixXd real_sh_basis(const SurfaceGrid& grid);

/**
 * @brief Interpolant of node data exact on the grid.
 *
 * Azimuthal trigonometric interpolation on every ring; for even azimuthal
 * modes a degree-p polynomial in cos(theta) through the ring values, for odd
 * modes sin(theta) times such a polynomial. Reproduces Y_l^m (l <= p) exactly
 * and is smooth on the doubled sphere, so it converges spectrally.
 */
class GridInterpolator {
 public:
  explicit GridInterpolator(const SurfaceGrid& grid);

  /// Lagrange basis in cos(theta) at colatitude theta, size p+1.
  Eigen::VectorXd polar_basis(double theta) const;
  /// Even/odd-mode azimuthal kernels relative to node 0 at offset phi; each of size 2p.
  void azimuthal_kernels(double phi, Eigen::VectorXd& even, Eigen::VectorXd& odd) const;
  /// Interpolation weights over all N nodes at (theta, phi).
  Eigen::RowVectorXd weights(double theta, double phi) const;
  /// Dense interpolation matrix for a list of points (rows) over nodes (columns).
  Eigen::MatrixXd matrix(const Eigen::VectorXd& theta, const Eigen::VectorXd& phi) const;

  int p() const { return p_; }
  const Eigen::VectorXd& ring_sin() const { return sin_theta_; }

 private:
  int p_;
  Eigen::VectorXd x_, bary_, sin_theta_;
};

/**
 * @brief Quadrature rule on Gamma whose polar axis passes through a target node.
 *
 * Rotated Gauss-Legendre x trapezoid grid of degree q in the parameter sphere;
 * the sin(theta') factor of the rotated rule cancels the 1/|r| singularity at
 * the target. Geometry is evaluated analytically at the rotated points and
 * node data are moved onto them by the grid interpolant.
 */
struct RotatedQuadrature {
  Mat3 rotation;                 ///< maps the north pole to the target parameter point
  Eigen::VectorXd theta, phi;    ///< rotated nodes in original parameter coordinates
  Eigen::VectorXd sphere_weights;///< unit-sphere solid-angle weights
  std::vector<SurfacePoint> points;
  Eigen::MatrixXd interp;        ///< (rotated nodes) x (grid nodes)

  /// Area weights w_q * jac_q.
  Eigen::VectorXd area_weights() const;
};

RotatedQuadrature rotate_to_pole(const SurfaceGrid& grid, int target, int q);

/**
 * @brief Parameter-sphere nodes of a rotated degree-q product rule.
 *
 * singular = true places Gauss-Legendre nodes in the rotated polar angle
 * (weights carry sin(theta')), integrating 1/|r| singularities at the rotated
 * pole spectrally; otherwise the standard rule in cos(theta') is used.
 */
void rotated_sphere_rule(const Mat3& R, int q, Eigen::VectorXd& theta, Eigen::VectorXd& phi,
                         Eigen::VectorXd& weights, bool singular);

/// @brief Rotation taking the north pole to the direction (theta, phi).
Mat3 pole_rotation(double theta, double phi);

}  // namespace swimopt
