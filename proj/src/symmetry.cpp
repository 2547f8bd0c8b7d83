#include "swimopt/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <Eigen/LU>

#include "swimopt/errors.hpp"

namespace swimopt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPlaneTol = 1e-6;
constexpr double kOmegaTol = 1e-6;

/// Parameter map and matching linear map of one isometry.
using ParamMap = std::function<void(double&, double&)>;

double deviation(const ShapeSpec& shape, int samples, const ParamMap& map, const Mat3& S) {
  double dev = 0.0, scale = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double th = (i + 0.37) * kPi / samples;
    for (int k = 0; k < 2 * samples; ++k) {
      const double ph = (k + 0.21) * kPi / samples;
      const Vec3 x = evaluate_surface(shape, th, ph).x;
      double th2 = th, ph2 = ph;
      map(th2, ph2);
      const Vec3 y = evaluate_surface(shape, th2, ph2).x;
      dev = std::max(dev, (y - S * x).norm());
      scale = std::max(scale, x.norm());
    }
  }
  return dev / scale;
}

Mat3 rotation_e3(double a) {
  Mat3 R;
  R << std::cos(a), -std::sin(a), 0.0, std::sin(a), std::cos(a), 0.0, 0.0, 0.0, 1.0;
  return R;
}

/// +1 when rigid field l is even under the mirror x_i -> -x_i.
int parity(int l, int i) {
  if (l < 3) return l == i ? -1 : 1;
  return l - 3 == i ? 1 : -1;
}

bool dihedral(const ShapeSymmetry& s) {
  return s.cls == SymmetryClass::D || s.cls == SymmetryClass::A;
}

}  // namespace

std::string to_string(SymmetryClass c) {
  switch (c) {
    case SymmetryClass::none: return "none";
    case SymmetryClass::S1: return "S1";
    case SymmetryClass::S2: return "S2";
    case SymmetryClass::S3: return "S3";
    case SymmetryClass::D: return "D";
    case SymmetryClass::A: return "A";
  }
  return "unknown";
}

ShapeSymmetry detect_shape_symmetry(const ShapeSpec& shape, int samples, double tol) {
  shape.validate();
  ShapeSymmetry s;
  const ParamMap maps[3] = {[](double&, double& p) { p = kPi - p; },
                            [](double&, double& p) { p = -p; },
                            [](double& t, double&) { t = kPi - t; }};
  for (int i = 0; i < 3; ++i) {
    Mat3 S = Mat3::Identity();
    S(i, i) = -1.0;
    s.mirror_dev[i] = deviation(shape, samples, maps[i], S);
    s.mirror[i] = s.mirror_dev[i] < tol;
  }
  s.quarter_turn_dev =
      deviation(shape, samples, [](double&, double& p) { p += 0.5 * kPi; }, rotation_e3(0.5 * kPi));
  s.quarter_turn = s.quarter_turn_dev < tol;
  for (double a : {0.3, 1.1, 2.7, 4.4}) {
    s.axisym_dev = std::max(
        s.axisym_dev, deviation(shape, samples, [a](double&, double& p) { p += a; }, rotation_e3(a)));
  }
  s.axisymmetric = s.axisym_dev < tol;
  const int nm = s.mirror_count();
  if (s.axisymmetric) {
    s.cls = SymmetryClass::A;
  } else if (s.quarter_turn && s.mirror[0] && s.mirror[1]) {
    s.cls = SymmetryClass::D;
  } else if (nm == 3) {
    s.cls = SymmetryClass::S3;
  } else if (nm == 2) {
    s.cls = SymmetryClass::S2;
  } else if (nm == 1) {
    s.cls = SymmetryClass::S1;
  }
  return s;
}

ShapeSymmetry canonical_symmetry(SymmetryClass cls) {
  ShapeSymmetry s;
  s.cls = cls;
  switch (cls) {
    case SymmetryClass::none: break;
    case SymmetryClass::S1: s.mirror = {false, false, true}; break;
    case SymmetryClass::S2: s.mirror = {true, true, false}; break;
    case SymmetryClass::S3: s.mirror = {true, true, true}; break;
    case SymmetryClass::D:
      s.mirror = {true, true, false};
      s.quarter_turn = true;
      break;
    case SymmetryClass::A:
      s.mirror = {true, true, false};
      s.quarter_turn = true;
      s.axisymmetric = true;
      break;
  }
  return s;
}

Eigen::Matrix<bool, 6, 6> predicted_zeros(const ShapeSymmetry& sym) {
  Eigen::Matrix<bool, 6, 6> z;
  z.setConstant(false);
  for (int i = 0; i < 3; ++i) {
    if (!sym.mirror[i]) continue;
    for (int k = 0; k < 6; ++k) {
      for (int l = 0; l < 6; ++l) {
        if (parity(k, i) != parity(l, i)) z(k, l) = true;
      }
    }
  }
  return z;
}

PatternCheck verify_matrix_pattern(const Mat6& M, const ShapeSymmetry& sym) {
  PatternCheck pc;
  const double nm = M.norm();
  if (nm == 0.0) return pc;
  const Eigen::Matrix<bool, 6, 6> zeros = predicted_zeros(sym);
  for (int k = 0; k < 6; ++k) {
    for (int l = 0; l < 6; ++l) {
      if (zeros(k, l)) pc.zero_residual = std::max(pc.zero_residual, std::abs(M(k, l)) / nm);
    }
  }
  if (!dihedral(sym)) return pc;
  pc.relation_residual =
      std::max({std::abs(M(1, 1) - M(0, 0)), std::abs(M(4, 4) - M(3, 3)),
                std::abs(M(1, 3) + M(0, 4)), std::abs(M(3, 1) + M(4, 0))}) /
      nm;
  const Eigen::FullPivLU<Mat6> lu(M);
  if (!lu.isInvertible()) return pc;
  const Mat6 Minv = lu.inverse();
  const double a = 0.5 * (M(0, 0) + M(1, 1)), e = 0.5 * (M(3, 3) + M(4, 4));
  const double b = 0.25 * (M(0, 4) + M(4, 0) - M(1, 3) - M(3, 1));
  const double den = b * b - e * a;
  Mat6 P = Mat6::Zero();
  P(0, 0) = P(1, 1) = -e / den;
  P(3, 3) = P(4, 4) = -a / den;
  P(0, 4) = P(4, 0) = b / den;
  P(1, 3) = P(3, 1) = -b / den;
  P(2, 2) = 1.0 / M(2, 2);
  P(5, 5) = 1.0 / M(5, 5);
  pc.inverse_residual = (Minv - P).cwiseAbs().maxCoeff() / Minv.norm();
  return pc;
}

PatternCheck verify_matrix_pattern(const Mat6& M, SymmetryClass cls) {
  if (cls == SymmetryClass::none) throw ConfigError("no pattern predicted for class none");
  return verify_matrix_pattern(M, canonical_symmetry(cls));
}

SymmetryReport symmetry_report(const ShapeSymmetry& shape, const Mat6& C, const Mat6& C_inv,
                               const Mat6& A, const Mat6& Z) {
  SymmetryReport r;
  r.shape = shape;
  r.C = verify_matrix_pattern(C, shape);
  r.C_inv = verify_matrix_pattern(C_inv, shape);
  r.A = verify_matrix_pattern(A, shape);
  r.Z = verify_matrix_pattern(Z, shape);
  r.Z.inverse_residual = 0.0;  // Z may carry zero-power modes
  if (!shape.axisymmetric) {
    const PatternCheck ax = verify_matrix_pattern(C, SymmetryClass::A);
    const double res = std::max(ax.zero_residual, ax.relation_residual);
    r.near_axisymmetric = res > 1e-6 && res < 1e-2;
  }
  return r;
}

SymmetryConsequenceCheck check_prop_symmetry_consequences(const ShapeSymmetry& sym,
                                                  const OptimalGait& gait) {
  SymmetryConsequenceCheck pc;
  const Vec3 W = gait.h.W.normalized();
  pc.omega_norm = gait.h.Omega.norm();
  pc.plane_distance = INFINITY;
  for (int i = 0; i < 3; ++i) {
    if (sym.mirror[i]) pc.plane_distance = std::min(pc.plane_distance, std::abs(W[i]));
  }
  if (sym.axisymmetric) pc.plane_distance = 0.0;  // the plane spanned by e3 and W
  const bool rotationless = pc.omega_norm < kOmegaTol;
  switch (sym.cls) {
    case SymmetryClass::none:
      pc.detail = "no symmetry: check vacuous";
      return pc;
    case SymmetryClass::A:
    case SymmetryClass::D:
    case SymmetryClass::S3:
      pc.applicable = true;
      pc.passed = rotationless && (sym.cls != SymmetryClass::S3 || pc.plane_distance < kPlaneTol);
      pc.detail = pc.passed ? "rotationless optimum in a symmetry plane"
                            : (rotationless ? "W* off every symmetry plane" : "optimum rotates");
      return pc;
    case SymmetryClass::S1:
    case SymmetryClass::S2:
      if (pc.plane_distance >= kPlaneTol) {
        pc.detail = "W* off the symmetry planes: check vacuous";
        return pc;
      }
      pc.applicable = true;
      pc.passed = rotationless;
      pc.detail = rotationless ? "W* in a symmetry plane, rotationless"
                               : "W* in a symmetry plane but rotating";
      return pc;
  }
  return pc;
}

}  // namespace swimopt
