#include "swimopt/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "swimopt/errors.hpp"

namespace swimopt {

namespace {

constexpr double kDegenerateTol = 1e-10;
constexpr double kCouplingTol = 1e-8;
constexpr double kEigenTol = 1e-6;
constexpr double kConverged = 1e-8;
constexpr double kTieTol = 1e-10;

/// Blocks and derived operators of Z used by every quantity at fixed W.
struct Blocks {
  Mat3 UU, UO, OU, OO;
  Mat3 UUinv;   ///< Z_UU^-1
  Mat3 M1;      ///< Z_UU^-1 Z_UO
  Mat3 schur;   ///< Z_OO - Z_OU Z_UU^-1 Z_UO
  double scale; ///< |Z| |Z_UU^-1|, reference for A_UO ~ 0
};

Blocks blocks(const Mat6& Z) {
  Blocks b;
  b.UU = Z.topLeftCorner<3, 3>();
  b.UO = Z.topRightCorner<3, 3>();
  b.OU = Z.bottomLeftCorner<3, 3>();
  b.OO = Z.bottomRightCorner<3, 3>();
  const Eigen::LLT<Mat3> llt(b.UU);
  if (llt.info() != Eigen::Success) throw ResolutionError("Z_UU is not positive definite");
  b.UUinv = llt.solve(Mat3::Identity());
  b.M1 = b.UUinv * b.UO;
  b.schur = b.OO - b.OU * b.M1;
  b.schur = 0.5 * (b.schur + b.schur.transpose()).eval();
  b.scale = Z.norm() * b.UUinv.norm();
  return b;
}

struct Scalars {
  double UU, UO, OO, D, w2;
  bool degenerate;
};

Scalars scalars(const Blocks& b, const Vec3& W) {
  Scalars a;
  a.w2 = W.squaredNorm();
  a.UU = W.dot(b.UUinv * W);
  a.UO = W.dot(b.M1 * W);
  a.OO = W.dot(b.schur * W);
  a.D = a.UU * a.OO + a.UO * a.UO;
  a.degenerate = std::abs(a.UO) <= kDegenerateTol * b.scale * a.w2;
  return a;
}

double power_of(const Scalars& a) {
  return a.degenerate ? a.w2 * a.w2 / a.UU : a.w2 * a.w2 * a.OO / a.D;
}

Vec3 gradient_of(const Blocks& b, const Scalars& a, const Vec3& W) {
  const Vec3 gUU = 2.0 * (b.UUinv * W);
  if (a.degenerate) return -a.w2 * a.w2 / (a.UU * a.UU) * gUU + 4.0 * a.w2 / a.UU * W;
  const Vec3 gUO = (b.M1 + b.M1.transpose()) * W;
  const Vec3 gOO = 2.0 * (b.schur * W);
  const double w4 = a.w2 * a.w2;
  return w4 / (a.D * a.D) *
             (a.UO * a.UO * gOO - a.OO * a.OO * gUU - 2.0 * a.OO * a.UO * gUO) +
         4.0 * a.w2 * a.OO / a.D * W;
}

/// Orthonormal basis of the plane perpendicular to W.
void perp_basis(const Vec3& W, Vec3& e1, Vec3& e2) {
  const Vec3 w = W.normalized();
  int k = 0;
  w.cwiseAbs().minCoeff(&k);
  e1 = w.cross(Vec3::Unit(k)).normalized();
  e2 = w.cross(e1);
}

struct Local {
  Vec3 W;
  double P;
  double res;
};

double rel_residual(const Blocks& b, const Vec3& W, double& P) {
  const Scalars a = scalars(b, W);
  P = power_of(a);
  const Vec3 g = gradient_of(b, a, W);
  return (g - 2.0 * P * W).norm() / P;
}

/// Chart gradient of P(normalize(W + c1 e1 + c2 e2)) at c.
Eigen::Vector2d chart_gradient(const Blocks& b, const Vec3& W, const Vec3& e1, const Vec3& e2,
                               const Eigen::Vector2d& c) {
  const Vec3 v = W + c[0] * e1 + c[1] * e2;
  const double nv = v.norm();
  const Vec3 phi = v / nv;
  const Vec3 g = gradient_of(b, scalars(b, phi), phi);
  const Vec3 gt = (g - phi * phi.dot(g)) / nv;
  return Eigen::Vector2d(gt.dot(e1), gt.dot(e2));
}

Local descend(const Blocks& b, Vec3 W) {
  W.normalize();
  double P = 0.0;
  double res = rel_residual(b, W, P);
  double t = 1.0 / P;
  for (int it = 0; it < 2000 && res > 1e-6; ++it) {
    const Scalars a = scalars(b, W);
    const Vec3 g = gradient_of(b, a, W);
    const Vec3 gt = g - W * W.dot(g);
    const double g2 = gt.squaredNorm();
    bool moved = false;
    for (int k = 0; k < 60; ++k) {
      const Vec3 Wn = (W - t * gt).normalized();
      const double Pn = power_of(scalars(b, Wn));
      if (Pn <= P - 1e-4 * t * g2) {
        W = Wn;
        moved = true;
        t *= 2.0;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
    res = rel_residual(b, W, P);
  }
  for (int it = 0; it < 50 && res > 1e-14; ++it) {
    Vec3 e1, e2;
    perp_basis(W, e1, e2);
    const Eigen::Vector2d G = chart_gradient(b, W, e1, e2, Eigen::Vector2d::Zero());
    const double h = 1e-5;
    Eigen::Matrix2d H;
    for (int j = 0; j < 2; ++j) {
      const Eigen::Vector2d d = h * Eigen::Vector2d::Unit(j);
      H.col(j) = (chart_gradient(b, W, e1, e2, d) - chart_gradient(b, W, e1, e2, -d)) / (2.0 * h);
    }
    H = 0.5 * (H + H.transpose()).eval();
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(H);
    Eigen::Vector2d step;
    if (es.eigenvalues().minCoeff() > 0.0) {
      step = -H.ldlt().solve(G);
    } else {
      step = -G / P;
    }
    bool improved = false;
    for (int k = 0; k < 30; ++k) {
      const Vec3 Wn = (W + step[0] * e1 + step[1] * e2).normalized();
      double Pn = 0.0;
      const double rn = rel_residual(b, Wn, Pn);
      if (rn < res && Pn <= P * (1.0 + 1e-12)) {
        W = Wn;
        P = Pn;
        res = rn;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return Local{canonical_sign(W), P, res};
}

bool lex_less(const Vec3& a, const Vec3& b) {
  for (int i = 0; i < 3; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

}  // namespace

Vec3 canonical_sign(const Vec3& W) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(W[i]) > 1e-12) return W[i] < 0.0 ? Vec3(-W) : W;
  }
  return W;
}

OptimalGait partial_minimize(const Mat6& Z, const Vec3& W) {
  if (W.squaredNorm() == 0.0) throw ConfigError("partial minimization needs W != 0");
  const Blocks b = blocks(Z);
  const Scalars a = scalars(b, W);
  OptimalGait g;
  g.h.W = W;
  g.A_UU = a.UU;
  g.A_UO = a.UO;
  g.A_OO = a.OO;
  g.D = a.D;
  g.degenerate = a.degenerate;
  if (a.degenerate) {
    const Vec3 ZW = b.UUinv * W;
    g.h.s = 0.0;
    g.h.U = a.w2 / a.UU * ZW;
    g.power = a.w2 * a.w2 / a.UU;
    const double lam = a.UU / a.w2;
    g.h.consistent = (ZW - lam * W).norm() <= kEigenTol * b.UUinv.norm() * std::sqrt(a.w2);
    if (g.h.consistent) g.h.U = W;
    g.h.V = g.h.U - W;
  } else {
    if (!(a.D > 0.0)) throw ResolutionError("partial minimization: D <= 0, Z is not SPD");
    g.h.s = -a.w2 * a.UO / a.D;
    g.h.V = (a.w2 * a.OO / a.D * (b.UUinv * W) - g.h.s * (b.M1 * W)) - W;
    g.h.U = W + g.h.V;
    g.power = a.w2 * a.w2 * a.OO / a.D;
    const double radius = g.h.V.norm() / (std::abs(g.h.s) * std::sqrt(a.w2));
    g.near_degenerate = std::abs(g.h.s) < 1e-6 || (g.h.V.norm() > 0.0 && radius > 1e6);
  }
  g.h.Omega = g.h.s * W;
  g.alpha << g.h.U, g.h.Omega;
  g.cls = net_velocity(g.h.U, g.h.Omega).cls;
  return g;
}

double reduced_power(const Mat6& Z, const Vec3& W) {
  if (W.squaredNorm() == 0.0) return 0.0;
  const Blocks b = blocks(Z);
  return power_of(scalars(b, W));
}

Vec3 reduced_power_gradient(const Mat6& Z, const Vec3& W) {
  const Blocks b = blocks(Z);
  return gradient_of(b, scalars(b, W), W);
}

double stationarity_residual(const Mat6& Z, const Vec3& W) {
  double P = 0.0;
  return rel_residual(blocks(Z), W.normalized(), P);
}

SpinningStraight spinning_straight(const Mat6& Z, const Vec3& W) {
  SpinningStraight r;
  r.B_UU = W.dot(Z.topLeftCorner<3, 3>() * W);
  r.B_UO = W.dot(Z.topRightCorner<3, 3>() * W);
  r.B_OO = W.dot(Z.bottomRightCorner<3, 3>() * W);
  if (r.B_OO <= 1e-14 * Z.norm() * W.squaredNorm()) {
    r.s = 0.0;
    r.power = r.B_UU;
  } else {
    r.s = -r.B_UO / r.B_OO;
    r.power = r.B_UU - r.B_UO * r.B_UO / r.B_OO;
  }
  return r;
}

Rotationless rotationless_optimal(const Mat6& Z) {
  const Eigen::SelfAdjointEigenSolver<Mat3> es(Mat3(Z.topLeftCorner<3, 3>()));
  Rotationless r;
  r.eigenvalues = es.eigenvalues();
  r.power = r.eigenvalues[0];
  r.W = canonical_sign(es.eigenvectors().col(0));
  return r;
}

BruteForceResult brute_force_partial(const Mat6& Z, const Vec3& W) {
  Vec3 e1, e2;
  perp_basis(W, e1, e2);
  Eigen::Matrix<double, 6, 3> J = Eigen::Matrix<double, 6, 3>::Zero();
  J.block<3, 1>(0, 0) = e1;
  J.block<3, 1>(0, 1) = e2;
  J.block<3, 1>(3, 2) = W;
  Vec6 a0;
  a0 << W, Vec3::Zero();
  const Mat3 H = J.transpose() * Z * J;
  const Vec3 rhs = -(J.transpose() * Z * a0);
  const Vec3 x = H.completeOrthogonalDecomposition().solve(rhs);
  const Vec6 alpha = a0 + J * x;
  BruteForceResult r;
  r.V = x[0] * e1 + x[1] * e2;
  r.s = x[2];
  r.power = alpha.dot(Z * alpha);
  return r;
}

std::vector<Vec3> default_seeds() {
  std::vector<Vec3> s;
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  for (double a : {-1.0, 1.0}) {
    for (double c : {-phi, phi}) {
      s.push_back(Vec3(0.0, a, c).normalized());
      s.push_back(Vec3(a, c, 0.0).normalized());
      s.push_back(Vec3(c, 0.0, a).normalized());
    }
  }
  for (int i = 0; i < 3; ++i) {
    s.push_back(Vec3::Unit(i));
    s.push_back(-Vec3::Unit(i));
  }
  for (double x : {-1.0, 1.0}) {
    for (double y : {-1.0, 1.0}) {
      for (double z : {-1.0, 1.0}) s.push_back(Vec3(x, y, z).normalized());
    }
  }
  return s;
}

OptimalGait global_minimize(const Mat6& Z, int multistart, std::vector<Vec3> seeds) {
  if (seeds.empty()) seeds = default_seeds();
  if (multistart > 0) {
    std::vector<Vec3> chosen;
    for (int i = 0; i < multistart; ++i) chosen.push_back(seeds[i % seeds.size()]);
    seeds = std::move(chosen);
  }
  const Blocks b = blocks(Z);
  const int n = static_cast<int>(seeds.size());
  std::vector<Local> runs(n);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) runs[i] = descend(b, seeds[i]);
  int best = -1;
  double worst_res = 0.0;
  for (int i = 0; i < n; ++i) {
    worst_res = std::max(worst_res, runs[i].res);
    if (!(runs[i].res < kConverged)) continue;
    if (best < 0) {
      best = i;
      continue;
    }
    const double tie = kTieTol * runs[best].P;
    if (runs[i].P < runs[best].P - tie ||
        (std::abs(runs[i].P - runs[best].P) <= tie && lex_less(runs[i].W, runs[best].W))) {
      best = i;
    }
  }
  if (best < 0) throw SolverError("global minimization: no start reached stationarity", worst_res);
  OptimalGait g = partial_minimize(Z, runs[best].W);
  g.stationarity = runs[best].res;
  if (std::abs(g.A_UO) <= kCouplingTol * b.scale) {
    const Vec3 ZW = b.UUinv * g.h.W;
    g.anomaly = (ZW - g.A_UU * g.h.W).norm() > kEigenTol * b.UUinv.norm();
  }
  return g;
}

}  // namespace swimopt
