#pragma once

#include <memory>

#include "swimopt/geometry.hpp"
#include "swimopt/gmres.hpp"

namespace swimopt {

struct BieOptions {
  double mu = 1.0;
  /// Degree of the rotated singular rule; 0 selects a default tied to p.
  int quad_degree = 0;
  /// Degree of the upsampled grid used for off-surface evaluation; 0 selects 2p.
  int eval_degree = 0;
  enum class Method { gmres, lu };
  Method method = Method::lu;
  /// collocation: equations enforced pointwise at the nodes; galerkin: density
  /// in real harmonics of degree p, each Cartesian equation component projected
  /// onto the same space in L2(Gamma).
  enum class Discretization { collocation, galerkin };
  Discretization dirichlet = Discretization::galerkin;
  Discretization mixed = Discretization::galerkin;
  GmresOptions gmres;
};

int default_quad_degree(int p);

/**
 * @brief Dense discretizations of the single-layer operator S and of the
 * traction operator T = 1/2 I + K (principal value, fluid-side limit) on one grid.
 *
 * Row block i applies to the density at all nodes and returns the value at
 * node i; ordering is node-major 3-vectors.
 */
struct LayerOperators {
  std::shared_ptr<const SurfaceGrid> grid;
  double mu = 1.0;
  int quad_degree = 0;
  Eigen::MatrixXd S;
  Eigen::MatrixXd T;

  Field apply_slp(const Field& density) const;
  Field apply_traction(const Field& density) const;
};

LayerOperators assemble_layer_operators(const SurfaceGrid& grid, const BieOptions& opts = {});

Eigen::VectorXd flatten(const Field& f);
Field unflatten(const Eigen::VectorXd& v);

/// @brief Velocity of a single-layer density at points off Gamma.
class OffSurfaceEvaluator {
 public:
  OffSurfaceEvaluator(const SurfaceGrid& grid, const Field& density, double mu, int degree);
  Vec3 velocity(const Vec3& x) const;

 private:
  double mu_;
  Field nodes_, weighted_density_;
};

/// @brief Real harmonic trial/test space: phi (N x nb) and phi^t diag(w) (nb x N).
struct GalerkinBasis {
  explicit GalerkinBasis(const SurfaceGrid& grid);
  Eigen::MatrixXd phi;
  Eigen::MatrixXd phitw;
};

struct DirichletSolution {
  Field density;
  Field traction;
  double residual = 0.0;
  int iterations = 0;
  /// |<uD, n>| / (|uD|_inf * area): compatibility of the datum.
  double compatibility = 0.0;
};

/**
 * @brief S mu = uD with the rank-one completion S + n <n, .> removing the
 * first-kind null space; traction recovered as T mu.
 */
class DirichletSolver {
 public:
  DirichletSolver(std::shared_ptr<const LayerOperators> ops, const BieOptions& opts = {});
  DirichletSolution solve(const Field& uD) const;
  OffSurfaceEvaluator evaluator(const DirichletSolution& sol) const;
  const LayerOperators& operators() const { return *ops_; }

 private:
  std::shared_ptr<const LayerOperators> ops_;
  BieOptions opts_;
  Eigen::MatrixXd A_;
  std::shared_ptr<Eigen::PartialPivLU<Eigen::MatrixXd>> lu_;
  std::shared_ptr<const GalerkinBasis> basis_;
};

/// @brief Which rigid-motion unknowns and integral constraints close the mixed system.
enum class ConstraintMode {
  none,     ///< no rigid motion: plain mixed traction/normal-velocity problem
  general,  ///< six rigid unknowns, six zero net force/torque rows
  axisym    ///< as general, but masked rows become spin orthogonality <v - vR, uR_l> = 0
};

/// @brief Bit l set: rigid field uR_l is tangential and gets a spin-orthogonality row.
constexpr unsigned kSpinE3 = 1u << 5;

struct MixedSolution {
  Field density;
  Vec6 rigid = Vec6::Zero();  ///< [U; Omega] of vR
  Field velocity;             ///< S mu on Gamma
  Field traction;             ///< T mu
  Field slip;                 ///< tangential part of velocity - vR on Gamma
  double normal_slip = 0.0;   ///< normal part of velocity - vR removed from slip, relative
  double residual = 0.0;
  int iterations = 0;
};

/**
 * @brief Square mixed system: tangential-traction rows in the local (t1, t2)
 * frames, normal-velocity rows and nr constraint rows. Collocation gives
 * 3N + nr unknowns; Galerkin recombines the three rows of each node into one
 * Cartesian vector equation and projects it, with each density component,
 * onto nb harmonics, giving 3 nb + nr.
 */
class MixedSolver {
 public:
  MixedSolver(std::shared_ptr<const LayerOperators> ops, ConstraintMode mode,
              const BieOptions& opts = {}, unsigned spin_mask = kSpinE3);
  /// gt: tangential traction data (its normal part is ignored); gn: normal velocity data.
  MixedSolution solve(const Field& gt, const Eigen::VectorXd& gn) const;
  ConstraintMode mode() const { return mode_; }
  unsigned spin_mask() const { return spin_mask_; }
  const Eigen::MatrixXd& matrix() const { return A_; }
  const LayerOperators& operators() const { return *ops_; }

 private:
  std::shared_ptr<const LayerOperators> ops_;
  ConstraintMode mode_;
  unsigned spin_mask_;
  BieOptions opts_;
  Eigen::MatrixXd A_;
  std::shared_ptr<Eigen::PartialPivLU<Eigen::MatrixXd>> lu_;
  std::shared_ptr<const GalerkinBasis> basis_;
};

/// @brief Mask of rigid fields with max |uR_l . n| / max |uR_l| below tol.
unsigned tangential_rigid_mask(const SurfaceGrid& grid, double tol = 1e-10);

/// @brief Node weights repeated per component (length 3N).
Eigen::VectorXd rep_weights(const SurfaceGrid& grid);

/// @brief Rigid basis field uR_l (l = 0..5): e_i, then e_i x x.
Field rigid_field(const SurfaceGrid& grid, int l);
/// @brief vR(x) = U + Omega x x on the grid.
Field rigid_motion_field(const SurfaceGrid& grid, const Vec6& alpha);

}  // namespace swimopt
