#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace swimopt {

/**
 * @brief Fully normalized associated Legendre values at one colatitude.
 *
 * Condon-Shortley phase, so that Y_l^m = P(l,m) e^{i m phi} is orthonormal on
 * the unit sphere. Stores P, dP/dtheta and P/sin(theta) (m >= 1) for
 * 0 <= m <= l <= L.
 */
class LegendreTable {
 public:
  LegendreTable(int L, double theta);

  int degree() const { return L_; }
  double p(int l, int m) const { return p_[idx(l, m)]; }
  double dtheta(int l, int m) const { return dp_[idx(l, m)]; }
  /// P(l,m)/sin(theta); regular at the poles for m >= 1, zero for m = 0.
  double over_sin(int l, int m) const { return q_[idx(l, m)]; }

 private:
  static int idx(int l, int m) { return l * (l + 1) / 2 + m; }
  int L_;
  std::vector<double> p_, dp_, q_;
};

/// @brief Complex orthonormal spherical harmonic Y_l^m(theta, phi), any sign of m.
std::complex<double> ylm(int l, int m, double theta, double phi);

/// @brief Y_l^m together with its theta derivative and phi derivative over sin(theta).
struct YlmDerivs {
  std::complex<double> y, dtheta, dphi_over_sin;
};
YlmDerivs ylm_derivs(int l, int m, const LegendreTable& table, double phi);

/// @brief Gauss-Legendre nodes and weights on [-1, 1], nodes in decreasing order.
void gauss_legendre(int n, Eigen::VectorXd& x, Eigen::VectorXd& w);

/**
 * @brief Complex spherical-harmonic coefficient table a(l, m), |m| <= l <= L.
 */
struct ShCoeffs {
  int L = 0;
  std::vector<std::complex<double>> a;

  explicit ShCoeffs(int degree = 0) : L(degree), a((degree + 1) * (degree + 1)) {}
  static int index(int l, int m) { return l * l + l + m; }
  std::complex<double>& at(int l, int m) { return a[index(l, m)]; }
  const std::complex<double>& at(int l, int m) const { return a[index(l, m)]; }
};

}  // namespace swimopt
