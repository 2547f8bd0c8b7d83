#pragma once

#include <array>
#include <string>

#include "swimopt/geometry.hpp"
#include "swimopt/optimizer.hpp"

namespace swimopt {

/**
 * @brief Symmetry classes: S1/S2/S3 for one/two/three coordinate mirror
 * planes, D for mirrors x1 = 0, x2 = 0 plus the quarter turn about e3, A for
 * rotational symmetry about e3.
 */
enum class SymmetryClass { none, S1, S2, S3, D, A };

std::string to_string(SymmetryClass c);

/// @brief Tested isometries of a shape and the resulting class.
struct ShapeSymmetry {
  std::array<bool, 3> mirror{false, false, false};  ///< x_i -> -x_i
  bool quarter_turn = false;                        ///< +90 degrees about e3
  bool axisymmetric = false;                        ///< every rotation about e3
  std::array<double, 3> mirror_dev{0, 0, 0};        ///< max position deviation
  double quarter_turn_dev = 0;
  double axisym_dev = 0;
  SymmetryClass cls = SymmetryClass::none;

  int mirror_count() const { return int(mirror[0]) + int(mirror[1]) + int(mirror[2]); }
};

/**
 * @brief Samples x(theta, phi) on a samples x 2 samples offset grid and
 * accepts each isometry when max |x(s . ) - s x(.)| < tol.
 */
ShapeSymmetry detect_shape_symmetry(const ShapeSpec& shape, int samples = 24,
                                    double tol = 1e-10);

/// @brief Isometries of a class in its standard frame.
ShapeSymmetry canonical_symmetry(SymmetryClass cls);

/// @brief Residuals of one 6x6 matrix against the predicted pattern.
struct PatternCheck {
  double zero_residual = 0;      ///< max |M_kl| over predicted zeros / |M|
  double relation_residual = 0;  ///< D/A: M22 = M11, M55 = M44, M24 = -M15 / |M|
  double inverse_residual = 0;   ///< D/A: |M^-1 - a', b', c', d', e' formulas| / |M^-1|
  double max() const { return std::max({zero_residual, relation_residual, inverse_residual}); }
};

/// @brief Entries forced to vanish by the mirrors of `sym` (true = zero).
Eigen::Matrix<bool, 6, 6> predicted_zeros(const ShapeSymmetry& sym);

PatternCheck verify_matrix_pattern(const Mat6& M, const ShapeSymmetry& sym);

/// @brief Throws ConfigError for SymmetryClass::none.
PatternCheck verify_matrix_pattern(const Mat6& M, SymmetryClass cls);

/// @brief Shape isometries and pattern residuals of C, C^-1, A and Z.
struct SymmetryReport {
  ShapeSymmetry shape;
  PatternCheck C, C_inv, A, Z;
  bool near_axisymmetric = false;  ///< axisym residual in (1e-6, 1e-2): conditioning warning
};

SymmetryReport symmetry_report(const ShapeSymmetry& shape, const Mat6& C, const Mat6& C_inv,
                               const Mat6& A, const Mat6& Z);

/// @brief Outcome of the rotationless / in-plane consequences for one gait.
struct SymmetryConsequenceCheck {
  bool applicable = false;
  bool passed = true;
  double omega_norm = 0;
  double plane_distance = 0;  ///< distance of W* / |W*| to the nearest symmetry plane
  std::string detail;
};

/**
 * @brief A, D, S3: requires |Omega*| < 1e-6 and (S3) W* within 1e-6 of a
 * mirror plane. S1, S2: requires rotationless motion when W* lies within
 * 1e-6 of a mirror plane; vacuous otherwise.
 */
SymmetryConsequenceCheck check_prop_symmetry_consequences(const ShapeSymmetry& sym,
                                                  const OptimalGait& gait);

}  // namespace swimopt
