#include "swimopt/bie.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "swimopt/errors.hpp"
#include "swimopt/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace swimopt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kComp = 13;
// Symmetric index pairs (00, 01, 02, 11, 12, 22).
constexpr int kSym[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
constexpr int kPairA[6] = {0, 0, 0, 1, 1, 2};
constexpr int kPairB[6] = {0, 1, 2, 1, 2, 2};

/// Per-ring interpolation tables of the rotated rule (target at phi = 0).
struct RingTables {
  Eigen::VectorXd theta, phi, w;
  Eigen::MatrixXd Le, Lo;   // Nq x (p+1): polar basis, odd variant scaled by sin ratio
  Eigen::MatrixXd Ee, Eo;   // Nq x 2p: azimuthal kernels
};

RingTables ring_tables(const SurfaceGrid& grid, const GridInterpolator& interp, int j0, int q) {
  RingTables t;
  rotated_sphere_rule(pole_rotation(grid.theta[j0], 0.0), q, t.theta, t.phi, t.w, true);
  const int nq = static_cast<int>(t.theta.size());
  const int p = grid.p;
  t.Le.resize(nq, p + 1);
  t.Lo.resize(nq, p + 1);
  t.Ee.resize(nq, 2 * p);
  t.Eo.resize(nq, 2 * p);
  Eigen::VectorXd ev, od;
  for (int i = 0; i < nq; ++i) {
    const Eigen::VectorXd L = interp.polar_basis(t.theta[i]);
    const double st = std::sin(t.theta[i]);
    t.Le.row(i) = L.transpose();
    t.Lo.row(i) = (L.array() * st / interp.ring_sin().array()).transpose();
    interp.azimuthal_kernels(t.phi[i], ev, od);
    t.Ee.row(i) = ev.transpose();
    t.Eo.row(i) = od.transpose();
  }
  return t;
}

}  // namespace



int default_quad_degree(int p) { return p + 8; }

Eigen::VectorXd flatten(const Field& f) {
  return Eigen::Map<const Eigen::VectorXd>(f.data(), f.size());
}

Field unflatten(const Eigen::VectorXd& v) {
  return Eigen::Map<const Field>(v.data(), v.size() / 3, 3);
}

Field LayerOperators::apply_slp(const Field& density) const {
  return unflatten(S * flatten(density));
}

Field LayerOperators::apply_traction(const Field& density) const {
  return unflatten(T * flatten(density));
}

LayerOperators assemble_layer_operators(const SurfaceGrid& grid, const BieOptions& opts) {
  if (!(opts.mu > 0.0)) throw ConfigError("viscosity must be positive");
  LayerOperators ops;
  ops.grid = std::make_shared<const SurfaceGrid>(grid);
  ops.mu = opts.mu;
  ops.quad_degree = opts.quad_degree > 0 ? opts.quad_degree : default_quad_degree(grid.p);
  const int p = grid.p, N = grid.size(), np = 2 * p, nt = p + 1;
  ops.S = Eigen::MatrixXd::Zero(3 * N, 3 * N);
  ops.T = Eigen::MatrixXd::Zero(3 * N, 3 * N);
  const GridInterpolator interp(grid);
  const double cs = 1.0 / (8.0 * kPi * opts.mu);
  const double ck = -3.0 / (4.0 * kPi);

  for (int j0 = 0; j0 < nt; ++j0) {
    const RingTables rt = ring_tables(grid, interp, j0, ops.quad_degree);
    const int nq = static_cast<int>(rt.theta.size());
#pragma omp parallel
    {
      Eigen::MatrixXd Ve(nq, kComp * nt), Vo(nq, kComp * nt), R(np, kComp * nt);
      double v[kComp];
#pragma omp for schedule(dynamic)
      for (int k = 0; k < np; ++k) {
        const int i = grid.index(j0, k);
        const Vec3 x = grid.nodes.row(i).transpose();
        const Vec3 nx = grid.normals.row(i).transpose();
        for (int qi = 0; qi < nq; ++qi) {
          const SurfacePoint sp = evaluate_surface(grid.shape, rt.theta[qi], rt.phi[qi] + grid.phi[k]);
          const Vec3 r = x - sp.x;
          const double d2 = r.squaredNorm();
          const double d = std::sqrt(d2);
          const double w = rt.w[qi] * sp.jac;
          const double a = cs * w / d;
          const double b = cs * w / (d * d2);
          const double c = ck * w * r.dot(nx) / (d2 * d2 * d);
          v[0] = a;
          for (int s = 0; s < 6; ++s) {
            const double rr = r[kPairA[s]] * r[kPairB[s]];
            v[1 + s] = b * rr;
            v[7 + s] = c * rr;
          }
          for (int comp = 0; comp < kComp; ++comp) {
            Ve.row(qi).segment(comp * nt, nt) = v[comp] * rt.Le.row(qi);
            Vo.row(qi).segment(comp * nt, nt) = v[comp] * rt.Lo.row(qi);
          }
        }
        R.noalias() = rt.Ee.transpose() * Ve;
        R.noalias() += rt.Eo.transpose() * Vo;
        for (int j = 0; j < nt; ++j) {
          for (int kk = 0; kk < np; ++kk) {
            const int col = grid.index(j, (k + kk) % np);
            const double iso = R(kk, 0 * nt + j);
            for (int a2 = 0; a2 < 3; ++a2) {
              for (int b2 = 0; b2 < 3; ++b2) {
                const int s = kSym[a2][b2];
                ops.S(3 * i + a2, 3 * col + b2) =
                    R(kk, (1 + s) * nt + j) + (a2 == b2 ? iso : 0.0);
                ops.T(3 * i + a2, 3 * col + b2) = R(kk, (7 + s) * nt + j);
              }
            }
          }
        }
      }
    }
  }
  ops.T.diagonal().array() += 0.5;
  return ops;
}

OffSurfaceEvaluator::OffSurfaceEvaluator(const SurfaceGrid& grid, const Field& density, double mu,
                                         int degree)
    : mu_(mu) {
  const int q = degree > 0 ? degree : 2 * grid.p;
  Eigen::VectorXd th, ph, w;
  rotated_sphere_rule(Mat3::Identity(), q, th, ph, w, false);
  const GridInterpolator interp(grid);
  const Eigen::MatrixXd M = interp.matrix(th, ph);
  const Field dens = M * density;
  nodes_.resize(th.size(), 3);
  weighted_density_.resize(th.size(), 3);
  for (Eigen::Index i = 0; i < th.size(); ++i) {
    const SurfacePoint sp = evaluate_surface(grid.shape, th[i], ph[i]);
    nodes_.row(i) = sp.x.transpose();
    weighted_density_.row(i) = w[i] * sp.jac * dens.row(i);
  }
}

Vec3 OffSurfaceEvaluator::velocity(const Vec3& x) const {
  Vec3 u = Vec3::Zero();
  for (Eigen::Index i = 0; i < nodes_.rows(); ++i) {
    const Vec3 r = x - nodes_.row(i).transpose();
    const Vec3 m = weighted_density_.row(i).transpose();
    const double d = r.norm();
    u += (m / d + r * (r.dot(m) / (d * d * d)));
  }
  return u / (8.0 * kPi * mu_);
}

unsigned tangential_rigid_mask(const SurfaceGrid& grid, double tol) {
  unsigned mask = 0;
  for (int l = 0; l < 6; ++l) {
    const Field u = rigid_field(grid, l);
    double un = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
      un = std::max(un, std::abs(u.row(i).dot(grid.normals.row(i))));
    }
    if (un <= tol * u.cwiseAbs().maxCoeff()) mask |= 1u << l;
  }
  return mask;
}

Eigen::VectorXd rep_weights(const SurfaceGrid& grid) {
  Eigen::VectorXd w(3 * grid.size());
  for (int i = 0; i < grid.size(); ++i) w.segment<3>(3 * i).setConstant(grid.weights[i]);
  return w;
}

Field rigid_field(const SurfaceGrid& grid, int l) {
  Field f(grid.size(), 3);
  const Vec3 e = Vec3::Unit(l % 3);
  for (int i = 0; i < grid.size(); ++i) {
    if (l < 3) {
      f.row(i) = e.transpose();
    } else {
      f.row(i) = e.cross(Vec3(grid.nodes.row(i).transpose())).transpose();
    }
  }
  return f;
}

Field rigid_motion_field(const SurfaceGrid& grid, const Vec6& alpha) {
  Field f(grid.size(), 3);
  const Vec3 U = alpha.head<3>(), W = alpha.tail<3>();
  for (int i = 0; i < grid.size(); ++i) {
    f.row(i) = (U + W.cross(Vec3(grid.nodes.row(i).transpose()))).transpose();
  }
  return f;
}

namespace {

Eigen::VectorXd run_solve(const Eigen::MatrixXd& A,
                          const std::shared_ptr<Eigen::PartialPivLU<Eigen::MatrixXd>>& lu,
                          const BieOptions& opts, const Eigen::VectorXd& b, double& residual,
                          int& iterations, const char* what) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
  if (opts.method == BieOptions::Method::lu) {
    x = lu->solve(b);
    const double bn = b.norm();
    residual = bn > 0 ? (A * x - b).norm() / bn : 0.0;
    iterations = 0;
    if (!x.allFinite()) throw SolverError(std::string(what) + ": singular system", residual);
    return x;
  }
  const GmresResult r = gmres(A, b, x, opts.gmres);
  residual = r.relative_residual;
  iterations = r.iterations;
  if (!r.converged) {
    throw SolverError(std::string(what) + ": GMRES did not converge", r.relative_residual);
  }
  return x;
}

/// Columns c, c+3, c+6, ... of a matrix with node-major vector columns.
using Strided = Eigen::Map<Eigen::MatrixXd, 0, Eigen::OuterStride<>>;
using ConstStrided = Eigen::Map<const Eigen::MatrixXd, 0, Eigen::OuterStride<>>;

/// B (rows x 3N) times (Phi kron I3): columns 3j+c -> 3b+c.
Eigen::MatrixXd right_project(const Eigen::MatrixXd& B, const Eigen::MatrixXd& phi) {
  const Eigen::Index rows = B.rows(), N = phi.rows(), nb = phi.cols();
  Eigen::MatrixXd out(rows, 3 * nb);
  for (int c = 0; c < 3; ++c) {
    ConstStrided in(B.data() + c * rows, rows, N, Eigen::OuterStride<>(3 * rows));
    Strided res(out.data() + c * rows, rows, nb, Eigen::OuterStride<>(3 * rows));
    res.noalias() = in * phi;
  }
  return out;
}

/// (PhiTW kron I3) times B: rows 3j+c -> 3b+c.
Eigen::MatrixXd left_project_node_major(const Eigen::MatrixXd& B, const Eigen::MatrixXd& phitw) {
  const Eigen::MatrixXd Bt = B.transpose();
  return right_project(Bt, phitw.transpose()).transpose();
}

Eigen::VectorXd left_project_node_major(const Eigen::VectorXd& v, const Eigen::MatrixXd& phitw) {
  const Eigen::Index N = phitw.cols(), nb = phitw.rows();
  Eigen::VectorXd out(3 * nb);
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>> in(v.data(), N, 3);
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>> res(out.data(), nb, 3);
  res.noalias() = phitw * in;
  return out;
}

Eigen::VectorXd expand_node_major(const Eigen::VectorXd& c, const Eigen::MatrixXd& phi) {
  const Eigen::Index N = phi.rows(), nb = phi.cols();
  Eigen::VectorXd out(3 * N);
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>> in(c.data(), nb, 3);
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>> res(out.data(), N, 3);
  res.noalias() = phi * in;
  return out;
}

}  // namespace

GalerkinBasis::GalerkinBasis(const SurfaceGrid& grid) {
  phi = real_sh_basis(grid);
  phitw = phi.transpose() * grid.weights.asDiagonal();
}

DirichletSolver::DirichletSolver(std::shared_ptr<const LayerOperators> ops, const BieOptions& opts)
    : ops_(std::move(ops)), opts_(opts) {
  const SurfaceGrid& g = *ops_->grid;
  const int N = g.size();
  Eigen::VectorXd nw(3 * N), nn(3 * N);
  for (int i = 0; i < N; ++i) {
    for (int a = 0; a < 3; ++a) {
      nn[3 * i + a] = g.normals(i, a);
      nw[3 * i + a] = g.normals(i, a) * g.weights[i];
    }
  }
  Eigen::MatrixXd B = ops_->S;
  B.noalias() += nn * nw.transpose();
  if (opts_.dirichlet == BieOptions::Discretization::galerkin) {
    basis_ = std::make_shared<GalerkinBasis>(g);
    A_ = left_project_node_major(right_project(B, basis_->phi), basis_->phitw);
  } else {
    A_ = std::move(B);
  }
  if (opts_.method == BieOptions::Method::lu) {
    lu_ = std::make_shared<Eigen::PartialPivLU<Eigen::MatrixXd>>(A_);
  }
}

DirichletSolution DirichletSolver::solve(const Field& uD) const {
  const SurfaceGrid& g = *ops_->grid;
  if (uD.rows() != g.size()) throw ConfigError("Dirichlet datum size does not match grid");
  DirichletSolution sol;
  const double scale = std::max(uD.cwiseAbs().maxCoeff() * g.area(), 1e-300);
  sol.compatibility = std::abs(surface_scalar_product(g, uD, g.normals)) / scale;
  Eigen::VectorXd b = flatten(uD);
  if (basis_) b = left_project_node_major(b, basis_->phitw);
  Eigen::VectorXd x = run_solve(A_, lu_, opts_, b, sol.residual, sol.iterations, "Dirichlet solve");
  if (basis_) x = expand_node_major(x, basis_->phi);
  sol.density = unflatten(x);
  sol.traction = ops_->apply_traction(sol.density);
  return sol;
}

OffSurfaceEvaluator DirichletSolver::evaluator(const DirichletSolution& sol) const {
  return OffSurfaceEvaluator(*ops_->grid, sol.density, ops_->mu, opts_.eval_degree);
}

MixedSolver::MixedSolver(std::shared_ptr<const LayerOperators> ops, ConstraintMode mode,
                         const BieOptions& opts, unsigned spin_mask)
    : ops_(std::move(ops)),
      mode_(mode),
      spin_mask_(mode == ConstraintMode::axisym ? spin_mask : 0u),
      opts_(opts) {
  const SurfaceGrid& g = *ops_->grid;
  const int N = g.size();
  const int nr = mode_ == ConstraintMode::none ? 0 : 6;
  // Node-level rows: [t1 traction (N); t2 traction (N); normal velocity (N); constraints].
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(3 * N + nr, 3 * N + nr);
  const Eigen::MatrixXd& S = ops_->S;
  const Eigen::MatrixXd& T = ops_->T;
  Eigen::VectorXd nw(3 * N);
  for (int i = 0; i < N; ++i) {
    for (int a = 0; a < 3; ++a) nw[3 * i + a] = g.normals(i, a) * g.weights[i];
  }
  std::vector<Field> uR;
  for (int l = 0; l < 6; ++l) uR.push_back(rigid_field(g, l));

  for (int i = 0; i < N; ++i) {
    const Eigen::RowVector3d t1 = g.t1.row(i), t2 = g.t2.row(i), n = g.normals.row(i);
    B.block(i, 0, 1, 3 * N) = t1 * T.middleRows(3 * i, 3);
    B.block(N + i, 0, 1, 3 * N) = t2 * T.middleRows(3 * i, 3);
    // Normal velocity rows, completed by <n, mu> to remove the first-kind null space.
    B.block(2 * N + i, 0, 1, 3 * N) = n * S.middleRows(3 * i, 3) + nw.transpose();
    if (nr) {
      for (int l = 0; l < 6; ++l) B(2 * N + i, 3 * N + l) = -n.dot(uR[l].row(i));
    }
  }
  if (nr) {
    const Eigen::VectorXd rw = rep_weights(g);
    for (int k = 0; k < 6; ++k) {
      const Eigen::RowVectorXd wk = (flatten(uR[k]).array() * rw.array()).matrix().transpose();
      if (spin_mask_ & (1u << k)) {
        B.block(3 * N + k, 0, 1, 3 * N) = wk * S;
        for (int l = 0; l < 6; ++l) {
          B(3 * N + k, 3 * N + l) = -surface_scalar_product(g, uR[l], uR[k]);
        }
      } else {
        B.block(3 * N + k, 0, 1, 3 * N) = wk * T;
      }
    }
  }
  if (opts_.mixed == BieOptions::Discretization::galerkin) {
    // Recombine the three scalar rows of each node into one Cartesian vector
    // equation, then project every component onto the harmonic test space.
    basis_ = std::make_shared<GalerkinBasis>(g);
    const Eigen::Index nb = basis_->phi.cols();
    Eigen::MatrixXd BR(3 * N + nr, 3 * nb + nr);
    BR.leftCols(3 * nb) = right_project(B.leftCols(3 * N), basis_->phi);
    BR.rightCols(nr) = B.rightCols(nr);
    Eigen::MatrixXd V(3 * N, 3 * nb + nr);
    for (int i = 0; i < N; ++i) {
      for (int a = 0; a < 3; ++a) {
        V.row(3 * i + a) = g.t1(i, a) * BR.row(i) + g.t2(i, a) * BR.row(N + i) +
                           g.normals(i, a) * BR.row(2 * N + i);
      }
    }
    A_.resize(3 * nb + nr, 3 * nb + nr);
    A_.topRows(3 * nb) = left_project_node_major(V, basis_->phitw);
    A_.bottomRows(nr) = BR.bottomRows(nr);
  } else {
    A_ = std::move(B);
  }
  if (opts_.method == BieOptions::Method::lu) {
    lu_ = std::make_shared<Eigen::PartialPivLU<Eigen::MatrixXd>>(A_);
  }
}

MixedSolution MixedSolver::solve(const Field& gt, const Eigen::VectorXd& gn) const {
  const SurfaceGrid& g = *ops_->grid;
  const int N = g.size();
  if (gt.rows() != N || gn.size() != N) throw ConfigError("mixed data size does not match grid");
  const int nr = mode_ == ConstraintMode::none ? 0 : 6;
  Eigen::VectorXd b1(N), b2(N);
  for (int i = 0; i < N; ++i) {
    b1[i] = gt.row(i).dot(g.t1.row(i));
    b2[i] = gt.row(i).dot(g.t2.row(i));
  }
  Eigen::VectorXd b;
  if (basis_) {
    const Eigen::Index nb = basis_->phi.cols();
    Eigen::VectorXd v(3 * N);
    for (int i = 0; i < N; ++i) {
      v.segment<3>(3 * i) = (b1[i] * g.t1.row(i) + b2[i] * g.t2.row(i) + gn[i] * g.normals.row(i))
                                .transpose();
    }
    b = Eigen::VectorXd::Zero(3 * nb + nr);
    b.head(3 * nb) = left_project_node_major(v, basis_->phitw);
  } else {
    b = Eigen::VectorXd::Zero(3 * N + nr);
    b << b1, b2, gn, Eigen::VectorXd::Zero(nr);
  }
  MixedSolution sol;
  const Eigen::VectorXd x = run_solve(A_, lu_, opts_, b, sol.residual, sol.iterations, "mixed solve");
  const Eigen::Index nd = x.size() - nr;
  Eigen::VectorXd dens = x.head(nd);
  if (basis_) dens = expand_node_major(dens, basis_->phi);
  sol.density = unflatten(dens);
  if (nr) sol.rigid = x.tail(6);
  sol.velocity = ops_->apply_slp(sol.density);
  sol.traction = ops_->apply_traction(sol.density);
  const Field rel = sol.velocity - rigid_motion_field(g, sol.rigid);
  sol.normal_slip = normal_component_residual(g, rel);
  sol.slip = tangential_projection(g, rel);
  return sol;
}

}  // namespace swimopt
