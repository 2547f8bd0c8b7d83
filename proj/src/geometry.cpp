#include "swimopt/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "swimopt/errors.hpp"

namespace swimopt {

namespace {

constexpr double kPi = std::numbers::pi;

struct RadialValue {
  double h = 0, h_theta = 0, h_phi_over_sin = 0;
};

int max_harmonic_degree(const ShapeSpec& shape) {
  int L = 0;
  for (const auto& t : shape.terms) {
    if (t.kind == ShapeTerm::Kind::harmonic) L = std::max(L, t.l);
  }
  return L;
}

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

RadialValue radial_terms(const ShapeSpec& shape, double theta, double phi) {
  RadialValue v;
  bool has_harmonic = false;
  for (const auto& t : shape.terms) has_harmonic |= (t.kind == ShapeTerm::Kind::harmonic);
  const double s = std::sin(theta), c = std::cos(theta);
  if (has_harmonic) {
    LegendreTable table(max_harmonic_degree(shape), theta);
    for (const auto& t : shape.terms) {
      if (t.kind != ShapeTerm::Kind::harmonic) continue;
      const YlmDerivs d = ylm_derivs(t.l, t.m, table, phi);
      v.h += (t.c * d.y).real();
      v.h_theta += (t.c * d.dtheta).real();
      v.h_phi_over_sin += (t.c * d.dphi_over_sin).real();
    }
  }
  for (const auto& t : shape.terms) {
    if (t.kind != ShapeTerm::Kind::trig) continue;
    const double g = t.sine ? std::sin(t.m * phi) : std::cos(t.m * phi);
    const double dg = t.sine ? t.m * std::cos(t.m * phi) : -t.m * std::sin(t.m * phi);
    const int a = t.sin_pow, b = t.cos_pow;
    v.h += t.coef * ipow(s, a) * ipow(c, b) * g;
    double dth = 0.0;
    if (a > 0) dth += a * ipow(s, a - 1) * ipow(c, b + 1);
    if (b > 0) dth -= b * ipow(s, a + 1) * ipow(c, b - 1);
    v.h_theta += t.coef * dth * g;
    if (t.m != 0) v.h_phi_over_sin += t.coef * ipow(s, a - 1) * ipow(c, b) * dg;
  }
  return v;
}

}  // namespace

ShapeTerm ShapeTerm::harmonic(int l, int m, std::complex<double> c) {
  ShapeTerm t;
  t.kind = Kind::harmonic;
  t.l = l;
  t.m = m;
  t.c = c;
  return t;
}

ShapeTerm ShapeTerm::trig(double coef, int sin_pow, int cos_pow, int m, bool sine) {
  ShapeTerm t;
  t.kind = Kind::trig;
  t.coef = coef;
  t.sin_pow = sin_pow;
  t.cos_pow = cos_pow;
  t.m = m;
  t.sine = sine;
  return t;
}

ShapeSpec ShapeSpec::sphere(double radius) {
  ShapeSpec s;
  s.kind = Kind::radial;
  s.base_radius = radius;
  s.name = "sphere";
  return s;
}

ShapeSpec ShapeSpec::spheroid(double a, double b, double c) {
  ShapeSpec s;
  s.kind = Kind::spheroid;
  s.semi_axes = Vec3(a, b, c);
  s.name = "spheroid";
  return s;
}

void ShapeSpec::validate() const {
  if (kind == Kind::spheroid) {
    if (!(semi_axes.minCoeff() > 0.0)) throw ShapeError("spheroid semi-axes must be positive");
    return;
  }
  if (!(base_radius > 0.0) && composition == Composition::exponential) {
    throw ShapeError("base_radius must be positive");
  }
  for (const auto& t : terms) {
    if (t.kind == ShapeTerm::Kind::harmonic) {
      if (t.l < 0 || std::abs(t.m) > t.l) throw ShapeError("harmonic term needs |m| <= l");
    } else {
      if (t.sin_pow < 0 || t.cos_pow < 0) throw ShapeError("trig powers must be non-negative");
      if (t.m != 0 && t.sin_pow == 0) {
        throw ShapeError("trig term with m != 0 needs sin_pow >= 1 to be regular at the poles");
      }
    }
  }
}

std::uint64_t ShapeSpec::hash() const {
  std::string s;
  char buf[128];
  auto add = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g;", v);
    s += buf;
  };
  s += (kind == Kind::radial) ? "radial;" : "spheroid;";
  s += (composition == Composition::additive) ? "add;" : "exp;";
  add(base_radius);
  for (int i = 0; i < 3; ++i) add(semi_axes[i]);
  for (const auto& t : terms) {
    add(static_cast<double>(t.kind == ShapeTerm::Kind::harmonic));
    add(t.l);
    add(t.m);
    add(t.c.real());
    add(t.c.imag());
    add(t.coef);
    add(t.sin_pow);
    add(t.cos_pow);
    add(t.sine ? 1.0 : 0.0);
  }
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

double shape_radius(const ShapeSpec& shape, double theta, double phi) {
  if (shape.kind == ShapeSpec::Kind::spheroid) {
    return evaluate_surface(shape, theta, phi).x.norm();
  }
  const RadialValue v = radial_terms(shape, theta, phi);
  return shape.composition == ShapeSpec::Composition::additive ? shape.base_radius + v.h
                                                               : shape.base_radius * std::exp(v.h);
}

SurfacePoint evaluate_surface(const ShapeSpec& shape, double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  SurfacePoint out;
  Vec3 cross_over_sin;
  if (shape.kind == ShapeSpec::Kind::spheroid) {
    const double a = shape.semi_axes[0], b = shape.semi_axes[1], c = shape.semi_axes[2];
    out.x = Vec3(a * st * cp, b * st * sp, c * ct);
    out.xtheta = Vec3(a * ct * cp, b * ct * sp, -c * st);
    cross_over_sin = Vec3(b * c * st * cp, a * c * st * sp, a * b * ct);
  } else {
    const RadialValue v = radial_terms(shape, theta, phi);
    double r, r_t, r_ps;
    if (shape.composition == ShapeSpec::Composition::additive) {
      r = shape.base_radius + v.h;
      r_t = v.h_theta;
      r_ps = v.h_phi_over_sin;
    } else {
      r = shape.base_radius * std::exp(v.h);
      r_t = r * v.h_theta;
      r_ps = r * v.h_phi_over_sin;
    }
    const Vec3 xi(st * cp, st * sp, ct);
    const Vec3 et(ct * cp, ct * sp, -st);
    const Vec3 ep(-sp, cp, 0.0);
    out.x = r * xi;
    out.xtheta = r_t * xi + r * et;
    cross_over_sin = r * (r * xi - r_t * et - r_ps * ep);
  }
  out.jac = cross_over_sin.norm();
  out.n = -cross_over_sin / out.jac;
  return out;
}

Vec3 SurfaceGrid::centroid() const {
  Vec3 c = Vec3::Zero();
  for (int i = 0; i < size(); ++i) c += weights[i] * nodes.row(i).transpose();
  return c / area();
}

SurfaceGrid build_grid(const ShapeSpec& shape, int p) {
  if (p < 4) throw ConfigError("grid degree p must be >= 4");
  shape.validate();
  SurfaceGrid g;
  g.p = p;
  g.shape = shape;
  gauss_legendre(p + 1, g.gl_x, g.gl_w);
  g.theta = g.gl_x.array().acos();
  g.phi.resize(2 * p);
  for (int k = 0; k < 2 * p; ++k) g.phi[k] = k * kPi / p;

  // Positivity check on a finer sample than the grid itself.
  if (shape.kind == ShapeSpec::Kind::radial) {
    const int ns = 4 * p;
    for (int i = 0; i <= ns; ++i) {
      for (int k = 0; k < 2 * ns; ++k) {
        const double r = shape_radius(shape, kPi * i / ns, kPi * k / ns);
        if (!(r > 0.0)) throw ShapeError("shape radius is non-positive at some sample");
      }
    }
  }

  const int N = g.size();
  g.nodes.resize(N, 3);
  g.normals.resize(N, 3);
  g.t1.resize(N, 3);
  g.t2.resize(N, 3);
  g.weights.resize(N);
  g.jac.resize(N);
  for (int j = 0; j <= p; ++j) {
    for (int k = 0; k < 2 * p; ++k) {
      const int i = g.index(j, k);
      const SurfacePoint sp = evaluate_surface(shape, g.theta[j], g.phi[k]);
      if (!(sp.jac > 0.0)) throw ShapeError("degenerate surface element");
      g.nodes.row(i) = sp.x.transpose();
      g.normals.row(i) = sp.n.transpose();
      const Vec3 t1 = (sp.xtheta - sp.xtheta.dot(sp.n) * sp.n).normalized();
      g.t1.row(i) = t1.transpose();
      g.t2.row(i) = sp.n.cross(t1).transpose();
      g.jac[i] = sp.jac;
      g.weights[i] = g.gl_w[j] * (kPi / p) * sp.jac;
    }
  }
  return g;
}

double surface_scalar_product(const SurfaceGrid& grid, const Field& f, const Field& g) {
  if (f.rows() != grid.size() || g.rows() != grid.size()) {
    throw ConfigError("field size does not match grid");
  }
  return (grid.weights.array() * (f.array() * g.array()).rowwise().sum()).sum();
}

double surface_integral(const SurfaceGrid& grid, const Eigen::VectorXd& f) {
  if (f.size() != grid.size()) throw ConfigError("field size does not match grid");
  return grid.weights.dot(f);
}

Field constant_field(const SurfaceGrid& grid, const Vec3& v) {
  Field f(grid.size(), 3);
  f.rowwise() = v.transpose();
  return f;
}

double normal_component_residual(const SurfaceGrid& grid, const Field& v) {
  double res = 0.0, vmax = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    res = std::max(res, std::abs(v.row(i).dot(grid.normals.row(i))));
    vmax = std::max(vmax, v.row(i).norm());
  }
  return vmax > 0.0 ? res / vmax : 0.0;
}

Field tangential_projection(const SurfaceGrid& grid, const Field& v) {
  Field out = v;
  for (int i = 0; i < grid.size(); ++i) {
    const double vn = v.row(i).dot(grid.normals.row(i));
    out.row(i) -= vn * grid.normals.row(i);
  }
  return out;
}

ShCoeffs sh_analysis(const SurfaceGrid& grid, const Eigen::VectorXd& f) {
  if (f.size() != grid.size()) throw ConfigError("field size does not match grid");
  const int p = grid.p;
  ShCoeffs out(p);
  for (int j = 0; j <= p; ++j) {
    LegendreTable table(p, grid.theta[j]);
    const double wj = grid.gl_w[j] * kPi / p;
    for (int k = 0; k < 2 * p; ++k) {
      const double v = wj * f[grid.index(j, k)];
      for (int l = 0; l <= p; ++l) {
        for (int m = -l; m <= l; ++m) {
          const YlmDerivs d = ylm_derivs(l, m, table, grid.phi[k]);
          out.at(l, m) += v * std::conj(d.y);
        }
      }
    }
  }
  return out;
}

Eigen::VectorXd sh_synthesis(const ShCoeffs& coeffs, const Eigen::VectorXd& theta,
                             const Eigen::VectorXd& phi) {
  Eigen::VectorXd out(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    LegendreTable table(coeffs.L, theta[i]);
    std::complex<double> s = 0.0;
    for (int l = 0; l <= coeffs.L; ++l) {
      for (int m = -l; m <= l; ++m) {
        s += coeffs.at(l, m) * ylm_derivs(l, m, table, phi[i]).y;
      }
    }
    out[i] = s.real();
  }
  return out;
}

int real_sh_count(int p) { return (p + 1) * (p + 1) - 2; }

Eigen::MatrixXd real_sh_basis(const SurfaceGrid& grid) {
  const int p = grid.p;
  Eigen::MatrixXd B(grid.size(), real_sh_count(p));
  const double r2 = std::sqrt(2.0);
  for (int j = 0; j <= p; ++j) {
    LegendreTable table(p, grid.theta[j]);
    for (int k = 0; k < 2 * p; ++k) {
      const int i = grid.index(j, k);
      int col = 0;
      for (int l = 0; l <= p; ++l) {
        for (int m = -l; m <= l; ++m) {
          if (std::abs(m) >= p) continue;
          const double pl = table.p(l, std::abs(m));
          const double ph = std::abs(m) * grid.phi[k];
          B(i, col++) = m == 0 ? pl : (m > 0 ? r2 * pl * std::cos(ph) : r2 * pl * std::sin(ph));
        }
      }
    }
  }
  return B;
}

GridInterpolator::GridInterpolator(const SurfaceGrid& grid) : p_(grid.p) {
  x_ = grid.gl_x;
  sin_theta_ = grid.theta.array().sin();
  bary_.resize(p_ + 1);
  for (int j = 0; j <= p_; ++j) {
    bary_[j] = ((j % 2) ? -1.0 : 1.0) * std::sqrt((1.0 - x_[j] * x_[j]) * grid.gl_w[j]);
  }
}

Eigen::VectorXd GridInterpolator::polar_basis(double theta) const {
  const double x = std::cos(theta);
  Eigen::VectorXd L(p_ + 1);
  for (int j = 0; j <= p_; ++j) {
    if (x == x_[j]) {
      L.setZero();
      L[j] = 1.0;
      return L;
    }
  }
  double den = 0.0;
  for (int j = 0; j <= p_; ++j) {
    L[j] = bary_[j] / (x - x_[j]);
    den += L[j];
  }
  return L / den;
}

void GridInterpolator::azimuthal_kernels(double phi, Eigen::VectorXd& even,
                                         Eigen::VectorXd& odd) const {
  const int n = 2 * p_;
  even.resize(n);
  odd.resize(n);
  for (int k = 0; k < n; ++k) {
    const double d = phi - k * kPi / p_;
    double e = 1.0, o = 0.0;
    for (int m = 1; m < p_; ++m) {
      const double c = 2.0 * std::cos(m * d);
      if (m % 2) o += c; else e += c;
    }
    const double nyq = std::cos(p_ * d);
    if (p_ % 2) o += nyq; else e += nyq;
    even[k] = e / n;
    odd[k] = o / n;
  }
}

Eigen::RowVectorXd GridInterpolator::weights(double theta, double phi) const {
  const Eigen::VectorXd L = polar_basis(theta);
  Eigen::VectorXd ev, od;
  azimuthal_kernels(phi, ev, od);
  const double st = std::sin(theta);
  const int n = 2 * p_;
  Eigen::RowVectorXd w((p_ + 1) * n);
  for (int j = 0; j <= p_; ++j) {
    const double ratio = st / sin_theta_[j];
    for (int k = 0; k < n; ++k) w[j * n + k] = L[j] * (ev[k] + ratio * od[k]);
  }
  return w;
}

Eigen::MatrixXd GridInterpolator::matrix(const Eigen::VectorXd& theta,
                                         const Eigen::VectorXd& phi) const {
  Eigen::MatrixXd M(theta.size(), 2 * p_ * (p_ + 1));
  for (Eigen::Index i = 0; i < theta.size(); ++i) M.row(i) = weights(theta[i], phi[i]);
  return M;
}

Mat3 pole_rotation(double theta, double phi) {
  return (Eigen::AngleAxisd(phi, Vec3::UnitZ()) * Eigen::AngleAxisd(theta, Vec3::UnitY()))
      .toRotationMatrix();
}

void rotated_sphere_rule(const Mat3& R, int q, Eigen::VectorXd& theta, Eigen::VectorXd& phi,
                         Eigen::VectorXd& weights, bool singular) {
  Eigen::VectorXd x, w;
  gauss_legendre(q + 1, x, w);
  const int nphi = 2 * q;
  const int n = (q + 1) * nphi;
  theta.resize(n);
  phi.resize(n);
  weights.resize(n);
  for (int j = 0; j <= q; ++j) {
    // Singular rule: Gauss-Legendre in theta' itself, so the sin(theta') area
    // factor multiplies the 1/|r| kernel; regular rule: Gauss-Legendre in cos(theta').
    double ct, st, wj;
    if (singular) {
      const double th = 0.5 * kPi * (1.0 - x[j]);
      ct = std::cos(th);
      st = std::sin(th);
      wj = 0.5 * kPi * w[j] * st;
    } else {
      ct = x[j];
      st = std::sqrt(std::max(0.0, 1.0 - x[j] * x[j]));
      wj = w[j];
    }
    for (int k = 0; k < nphi; ++k) {
      // Half-step azimuthal offset keeps rotated nodes off the original poles.
      const double ph = (k + 0.5) * kPi / q;
      const Vec3 xi = R * Vec3(st * std::cos(ph), st * std::sin(ph), ct);
      const int i = j * nphi + k;
      theta[i] = std::acos(std::clamp(xi.z(), -1.0, 1.0));
      double a = std::atan2(xi.y(), xi.x());
      if (a < 0) a += 2.0 * kPi;
      phi[i] = a;
      weights[i] = wj * kPi / q;
    }
  }
}

Eigen::VectorXd RotatedQuadrature::area_weights() const {
  Eigen::VectorXd a(sphere_weights.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = sphere_weights[i] * points[i].jac;
  return a;
}

RotatedQuadrature rotate_to_pole(const SurfaceGrid& grid, int target, int q) {
  if (target < 0 || target >= grid.size()) throw ConfigError("target index out of range");
  const int j = target / (2 * grid.p), k = target % (2 * grid.p);
  RotatedQuadrature rq;
  rq.rotation = pole_rotation(grid.theta[j], grid.phi[k]);
  rotated_sphere_rule(rq.rotation, q, rq.theta, rq.phi, rq.sphere_weights, true);
  rq.points.reserve(rq.theta.size());
  for (Eigen::Index i = 0; i < rq.theta.size(); ++i) {
    rq.points.push_back(evaluate_surface(grid.shape, rq.theta[i], rq.phi[i]));
  }
  GridInterpolator interp(grid);
  rq.interp = interp.matrix(rq.theta, rq.phi);
  return rq;
}

}  // namespace swimopt
