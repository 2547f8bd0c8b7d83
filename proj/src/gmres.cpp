#include "swimopt/gmres.hpp"

#include <cmath>
#include <vector>

namespace swimopt {

GmresResult gmres(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, Eigen::VectorXd& x,
                  const GmresOptions& opts) {
  const Eigen::Index n = b.size();
  GmresResult res;
  if (x.size() != n) x = Eigen::VectorXd::Zero(n);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    x.setZero();
    res.converged = true;
    return res;
  }
  const int m = opts.restart;
  Eigen::MatrixXd V(n, m + 1);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
  Eigen::VectorXd cs(m), sn(m), g(m + 1);

  Eigen::VectorXd r = b - A * x;
  double beta = r.norm();
  res.relative_residual = beta / bnorm;
  while (res.iterations < opts.max_iterations) {
    if (res.relative_residual <= opts.rtol) {
      res.converged = true;
      return res;
    }
    V.col(0) = r / beta;
    g.setZero();
    g[0] = beta;
    H.setZero();
    int k = 0;
    for (; k < m && res.iterations < opts.max_iterations; ++k) {
      ++res.iterations;
      Eigen::VectorXd w = A * V.col(k);
      for (int i = 0; i <= k; ++i) {
        H(i, k) = V.col(i).dot(w);
        w -= H(i, k) * V.col(i);
      }
      H(k + 1, k) = w.norm();
      for (int i = 0; i < k; ++i) {
        const double t = cs[i] * H(i, k) + sn[i] * H(i + 1, k);
        H(i + 1, k) = -sn[i] * H(i, k) + cs[i] * H(i + 1, k);
        H(i, k) = t;
      }
      const double den = std::hypot(H(k, k), H(k + 1, k));
      cs[k] = H(k, k) / den;
      sn[k] = H(k + 1, k) / den;
      H(k, k) = den;
      H(k + 1, k) = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      const bool breakdown = den == 0.0 || w.norm() == 0.0;
      if (!breakdown) V.col(k + 1) = w / w.norm();
      if (std::abs(g[k + 1]) / bnorm <= opts.rtol || breakdown) {
        ++k;
        break;
      }
    }
    Eigen::VectorXd y =
        H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    x += V.leftCols(k) * y;
    r = b - A * x;
    beta = r.norm();
    res.relative_residual = beta / bnorm;
    if (beta == 0.0) break;
  }
  res.converged = res.relative_residual <= opts.rtol;
  return res;
}

}  // namespace swimopt
