#include "swimopt/trajectory.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>

#include "swimopt/errors.hpp"

namespace swimopt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct State {
  Vec3 x;
  Eigen::Vector4d q;  // (w, x, y, z)
};

Eigen::Quaterniond to_quat(const Eigen::Vector4d& v) {
  return Eigen::Quaterniond(v[0], v[1], v[2], v[3]);
}

/// q' = 1/2 q (0, Omega), x' = R(q) U.
State rhs(const State& s, const Vec3& U, const Vec3& Om) {
  const Eigen::Quaterniond q = to_quat(s.q);
  const Eigen::Quaterniond w(0.0, Om.x(), Om.y(), Om.z());
  const Eigen::Quaterniond dq = q * w;
  State d;
  d.q = 0.5 * Eigen::Vector4d(dq.w(), dq.x(), dq.y(), dq.z());
  const double n2 = s.q.squaredNorm();
  d.x = q.toRotationMatrix() * U / n2;
  return d;
}

State axpy(const State& s, double h, const State& d) {
  return State{s.x + h * d.x, s.q + h * d.q};
}

std::ofstream open_out(const std::string& file) {
  std::ofstream os(file);
  if (!os) throw ConfigError("cannot open " + file + " for writing");
  os << std::setprecision(17);
  return os;
}

}  // namespace

std::string to_string(MotionClass c) {
  switch (c) {
    case MotionClass::rest: return "rest";
    case MotionClass::pure_translation: return "pure-translation";
    case MotionClass::spinning_straight: return "spinning-straight";
    case MotionClass::circular: return "circular";
    case MotionClass::helical: return "helical";
  }
  return "unknown";
}

NetMotion net_velocity(const Vec3& U, const Vec3& Omega, double tol) {
  NetMotion m;
  const double nu = U.norm(), no = Omega.norm();
  if (no <= tol * nu || no == 0.0) {
    m.W = U;
    m.cls = nu == 0.0 ? MotionClass::rest : MotionClass::pure_translation;
    return m;
  }
  m.W = (U.dot(Omega) / (no * no)) * Omega;
  if (U.cross(Omega).norm() <= tol * nu * no) {
    m.cls = MotionClass::spinning_straight;
  } else if (std::abs(U.dot(Omega)) <= tol * nu * no) {
    m.cls = MotionClass::circular;
    m.W.setZero();
  } else {
    m.cls = MotionClass::helical;
  }
  return m;
}

HelixGeometry helix_geometry(double s, const Vec3& V, const Vec3& W) {
  HelixGeometry h;
  const double nw = W.norm(), nv = V.norm();
  if (nw > 0.0) h.axis = W / nw;
  const double sw = std::abs(s) * nw;
  h.pitch = s != 0.0 ? kTwoPi / std::abs(s) : INFINITY;
  h.period = sw > 0.0 ? kTwoPi / sw : INFINITY;
  h.straight = s == 0.0 || nv == 0.0;
  if (nv == 0.0) {
    h.radius = 0.0;
  } else {
    h.radius = sw > 0.0 ? nv / sw : INFINITY;
    h.near_degenerate = std::abs(s) < 1e-6 || h.radius > 1e6;
  }
  return h;
}

std::vector<PathSample> integrate_path(const Vec3& U_body, const Vec3& Omega_body, double T,
                                       double dt) {
  if (!(T > 0.0) || !(dt > 0.0)) throw ConfigError("trajectory needs T > 0 and dt > 0");
  std::vector<PathSample> path;
  const long steps = static_cast<long>(std::ceil(T / dt - 1e-9));
  path.reserve(steps + 1);
  State s{Vec3::Zero(), Eigen::Vector4d(1.0, 0.0, 0.0, 0.0)};
  double t = 0.0;
  path.push_back(PathSample{t, s.x, to_quat(s.q)});
  for (long n = 0; n < steps; ++n) {
    const double h = std::min(dt, T - t);
    const State k1 = rhs(s, U_body, Omega_body);
    const State k2 = rhs(axpy(s, 0.5 * h, k1), U_body, Omega_body);
    const State k3 = rhs(axpy(s, 0.5 * h, k2), U_body, Omega_body);
    const State k4 = rhs(axpy(s, h, k3), U_body, Omega_body);
    s.x += h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    s.q += h / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q);
    s.q.normalize();
    t = n + 1 == steps ? T : t + h;
    path.push_back(PathSample{t, s.x, to_quat(s.q)});
  }
  return path;
}

Vec3 analytic_position(const Vec3& U_body, const Vec3& Omega_body, double t) {
  const double w = Omega_body.norm();
  if (w == 0.0) return t * U_body;
  const Vec3 e = Omega_body / w;
  const Vec3 par = U_body.dot(e) * e;
  const Vec3 perp = U_body - par;
  return t * par + (std::sin(w * t) / w) * perp + ((1.0 - std::cos(w * t)) / w) * e.cross(perp);
}

double path_deviation(const std::vector<PathSample>& path, const Vec3& U_body,
                      const Vec3& Omega_body) {
  double dev = 0.0;
  for (const PathSample& s : path) {
    dev = std::max(dev, (s.x - analytic_position(U_body, Omega_body, s.t)).norm());
  }
  return dev;
}

void write_path_csv(const std::string& file, const std::vector<PathSample>& path) {
  std::ofstream os = open_out(file);
  os << "t,x,y,z,qw,qx,qy,qz\n";
  for (const PathSample& s : path) {
    os << s.t << ',' << s.x.x() << ',' << s.x.y() << ',' << s.x.z() << ',' << s.q.w() << ','
       << s.q.x() << ',' << s.q.y() << ',' << s.q.z() << '\n';
  }
}

void write_path_vtk(const std::string& file, const std::vector<PathSample>& path) {
  std::ofstream os = open_out(file);
  const size_t n = path.size();
  os << "# vtk DataFile Version 3.0\nswimmer centroid path\nASCII\nDATASET POLYDATA\n";
  os << "POINTS " << n << " double\n";
  for (const PathSample& s : path) os << s.x.x() << ' ' << s.x.y() << ' ' << s.x.z() << '\n';
  os << "LINES 1 " << n + 1 << '\n' << n;
  for (size_t i = 0; i < n; ++i) os << ' ' << i;
  os << "\nPOINT_DATA " << n << "\nSCALARS time double 1\nLOOKUP_TABLE default\n";
  for (const PathSample& s : path) os << s.t << '\n';
}

}  // namespace swimopt
