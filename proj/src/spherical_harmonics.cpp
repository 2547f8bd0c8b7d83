#include "swimopt/spherical_harmonics.hpp"

#include <cmath>
#include <numbers>

namespace swimopt {

LegendreTable::LegendreTable(int L, double theta) : L_(L) {
  const int n = (L + 1) * (L + 2) / 2;
  p_.assign(n, 0.0);
  dp_.assign(n, 0.0);
  q_.assign(n, 0.0);
  const double x = std::cos(theta);
  const double u = std::sin(theta);

  // Sectoral seeds: P(m,m) and P(m,m)/u share the same multiplier chain.
  double pmm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  p_[idx(0, 0)] = pmm;
  for (int m = 1; m <= L; ++m) {
    const double f = -std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    q_[idx(m, m)] = f * pmm;
    pmm *= f * u;
    p_[idx(m, m)] = pmm;
  }
  for (int m = 0; m <= L; ++m) {
    for (int l = m + 1; l <= L; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
      double b = 0.0;
      if (l - 2 >= m) {
        b = std::sqrt((double(l - 1) * (l - 1) - double(m) * m) / (4.0 * (l - 1) * (l - 1) - 1.0));
      }
      const double p2 = (l - 2 >= m) ? p_[idx(l - 2, m)] : 0.0;
      p_[idx(l, m)] = a * (x * p_[idx(l - 1, m)] - b * p2);
      if (m >= 1) {
        const double q2 = (l - 2 >= m) ? q_[idx(l - 2, m)] : 0.0;
        q_[idx(l, m)] = a * (x * q_[idx(l - 1, m)] - b * q2);
      }
    }
  }
  for (int l = 0; l <= L; ++l) {
    for (int m = 0; m <= l; ++m) {
      const double up = (m + 1 <= l) ? p_[idx(l, m + 1)] : 0.0;
      if (m == 0) {
        dp_[idx(l, 0)] = std::sqrt(double(l) * (l + 1)) * up;
      } else {
        dp_[idx(l, m)] = 0.5 * (std::sqrt(double(l + m + 1) * (l - m)) * up -
                                std::sqrt(double(l + m) * (l - m + 1)) * p_[idx(l, m - 1)]);
      }
    }
  }
}

std::complex<double> ylm(int l, int m, double theta, double phi) {
  LegendreTable t(l, theta);
  return ylm_derivs(l, m, t, phi).y;
}

YlmDerivs ylm_derivs(int l, int m, const LegendreTable& table, double phi) {
  const int am = std::abs(m);
  const double sign = (m < 0 && (am % 2 == 1)) ? -1.0 : 1.0;
  const std::complex<double> e = std::polar(1.0, m * phi);
  YlmDerivs d;
  d.y = sign * table.p(l, am) * e;
  d.dtheta = sign * table.dtheta(l, am) * e;
  d.dphi_over_sin = std::complex<double>(0.0, m) * sign * table.over_sin(l, am) * e;
  return d;
}

void gauss_legendre(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

}  // namespace swimopt
