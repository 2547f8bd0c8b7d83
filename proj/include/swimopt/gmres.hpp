#pragma once

#include <Eigen/Dense>

namespace swimopt {

struct GmresOptions {
  int restart = 80;
  double rtol = 1e-10;
  int max_iterations = 500;
};

struct GmresResult {
  bool converged = false;
  int iterations = 0;
  double relative_residual = 0.0;
};

/**
 * @brief Restarted GMRES for a dense matrix, modified Gram-Schmidt Arnoldi
 * with Givens rotations. x holds the initial guess on entry.
 */
GmresResult gmres(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, Eigen::VectorXd& x,
                  const GmresOptions& opts = {});

}  // namespace swimopt
