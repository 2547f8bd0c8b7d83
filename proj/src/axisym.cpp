#include "swimopt/axisym.hpp"

#include <algorithm>
#include <cmath>

#include "swimopt/errors.hpp"
#include "swimopt/symmetry.hpp"

namespace swimopt {

namespace {

constexpr double kFreeModeTol = 1e-8;
constexpr double kDegenerateTol = 1e-6;
constexpr double kAgreeTol = 1e-5;

/// Solved rigid indices (1, 3, 4 in one-based numbering).
constexpr int kSolved[3] = {0, 2, 3};

double max_abs(const Field& f) { return f.cwiseAbs().maxCoeff(); }

/// 0 transverse, 1 axial, -1 neither.
int direction_class(const Vec3& W) {
  const double c = std::abs(W.normalized().z());
  if (c > 1.0 - kDegenerateTol) return 1;
  if (c < kDegenerateTol) return 0;
  return -1;
}

}  // namespace

Field quarter_turn(const SurfaceGrid& grid, const Field& f) {
  const int p = grid.p;
  if (p % 2 != 0) throw ConfigError("the quarter-turn index shift needs an even p");
  const int np = 2 * p, shift = p / 2;
  Field out(f.rows(), 3);
  for (int j = 0; j < grid.n_theta(); ++j) {
    for (int k = 0; k < np; ++k) {
      const Eigen::RowVector3d v = f.row(grid.index(j, (k - shift + np) % np));
      out.row(grid.index(j, k)) << -v[1], v[0], v[2];
    }
  }
  return out;
}

AxisymGait axisym_optimize(std::shared_ptr<const LayerOperators> ops, const BieOptions& opts) {
  const SurfaceGrid& g = *ops->grid;
  if (g.p % 2 != 0) throw ConfigError("axisym mode requires an even p");
  if (!detect_shape_symmetry(g.shape).axisymmetric) {
    throw ModeMismatchError("axisym mode requires a body of revolution about e3");
  }
  AxisymGait out;
  out.spin_mask = tangential_rigid_mask(g);
  std::array<Field, 6> uR;
  for (int l = 0; l < 6; ++l) uR[l] = rigid_field(g, l);

  const DirichletSolver dir(ops, opts);
  std::array<Field, 3> fR;
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < 3; ++k) fR[k] = dir.solve(uR[kSolved[k]]).traction;
  out.C11 = surface_scalar_product(g, uR[0], fR[0]);
  out.C33 = surface_scalar_product(g, uR[2], fR[1]);
  out.C44 = surface_scalar_product(g, uR[3], fR[2]);
  out.C15 = surface_scalar_product(g, fR[0], uR[4]);
  out.D_C = out.C15 * out.C15 - out.C11 * out.C44;
  const Field fR2 = quarter_turn(g, fR[0]);
  const Field fR5 = quarter_turn(g, fR[2]);
  std::array<Field, 3> fa;
  fa[0] = (out.C44 * fR[0] - out.C15 * fR5) / out.D_C;
  fa[1] = -fR[1] / out.C33;
  fa[2] = (out.C11 * fR[2] + out.C15 * fR2) / out.D_C;

  const MixedSolver ms(ops, ConstraintMode::axisym, opts, out.spin_mask);
  const Eigen::VectorXd gn = Eigen::VectorXd::Zero(g.size());
  std::array<Field, 3> z, f;
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < 3; ++k) {
    const int l = kSolved[k];
    Field gt = tangential_projection(g, fa[k]);
    if (out.spin_mask & (1u << l)) gt += uR[l] / surface_scalar_product(g, uR[l], uR[l]);
    const MixedSolution sol = ms.solve(gt, gn);
    z[k] = sol.slip;
    f[k] = sol.traction;
  }
  const Field z5 = quarter_turn(g, z[2]);
  out.A11 = surface_scalar_product(g, f[0], z[0]);
  out.A33 = surface_scalar_product(g, f[1], z[1]);
  out.Z33 = 1.0 / out.A33;
  const bool free4 = (out.spin_mask & (1u << 3)) &&
                     max_abs(z[2]) <= kFreeModeTol * std::max(max_abs(z[0]), max_abs(z[1]));
  if (free4) {
    // Zero-power tilting rotation (sphere): the translation block decouples.
    out.Z11 = 1.0 / out.A11;
    out.Z15 = 0.0;
  } else {
    out.A44 = surface_scalar_product(g, f[2], z[2]);
    out.A15 = surface_scalar_product(g, f[0], z5);
    out.D_A = out.A15 * out.A15 - out.A11 * out.A44;
    out.Z11 = -out.A44 / out.D_A;
    out.Z15 = out.A15 / out.D_A;
  }
  if (!(out.Z11 > 0.0) || !(out.Z33 > 0.0)) {
    throw ResolutionError("axisym reduction lost positivity (Z11 or Z33 <= 0); increase p");
  }
  out.y1 = out.Z11 * z[0] + out.Z15 * z5;
  out.y3 = out.Z33 * z[1];
  out.degenerate = std::abs(out.Z11 - out.Z33) <= kDegenerateTol * std::max(out.Z11, out.Z33);
  const bool axial = out.Z33 <= out.Z11;
  out.W = axial ? Vec3::UnitZ() : Vec3::UnitX();
  out.power = axial ? out.Z33 : out.Z11;
  out.slip = axial ? out.y3 : out.y1;

  OptimalGait& gait = out.gait;
  gait.h.W = out.W;
  gait.h.U = out.W;
  gait.alpha << out.W, Vec3::Zero();
  gait.power = out.power;
  gait.A_UU = 1.0 / out.power;
  gait.degenerate = true;
  gait.cls = MotionClass::pure_translation;
  return out;
}

AxisymCrossCheck cross_check_general(const AxisymGait& axi, const GaitSystem& general) {
  AxisymCrossCheck cc;
  cc.Z11_axi = axi.Z11;
  cc.Z33_axi = axi.Z33;
  cc.P_axi = axi.power;
  cc.omega_axi = axi.gait.h.Omega.norm();
  cc.Z11_gen = general.Z(0, 0);
  cc.Z33_gen = general.Z(2, 2);
  const OptimalGait gen = global_minimize(general.Z);
  cc.P_gen = gen.power;
  cc.omega_gen = gen.h.Omega.norm();
  const auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
  cc.max_rel_diff =
      std::max({rel(cc.Z11_axi, cc.Z11_gen), rel(cc.Z33_axi, cc.Z33_gen), rel(cc.P_axi, cc.P_gen)});
  cc.same_direction = axi.degenerate || direction_class(axi.W) == direction_class(gen.h.W);
  cc.passed = cc.max_rel_diff < kAgreeTol && cc.same_direction;
  return cc;
}

}  // namespace swimopt
