#include "swimopt/validation.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "swimopt/kernels.hpp"

namespace swimopt {

PointForceCase reference_point_force_case() {
  PointForceCase c;
  c.shape = ShapeSpec::sphere();
  c.shape.terms.push_back(ShapeTerm::harmonic(4, 3, {0.5, 0.0}));
  c.shape.name = "point-force-reference";
  c.F = Vec3(1.0, 0.5, 1.0 / 3.0);
  c.x0 = Vec3(0.1, 0.2, -0.3);
  return c;
}

BieOptions validation_bie_options() {
  BieOptions o;
  o.mixed = BieOptions::Discretization::collocation;
  return o;
}

ValidationRow point_force_study(const PointForceCase& c, int p, const BieOptions& opts,
                                const ValidationOptions& vo) {
  ValidationRow row;
  row.p = p;
  const auto t0 = std::chrono::steady_clock::now();
  const SurfaceGrid g = build_grid(c.shape, p);
  const PointForceFields ex = point_force_solution(c.F, c.x0, g, opts.mu);
  BieOptions o = opts;
  if (o.quad_degree == 0) o.quad_degree = vo.quad_factor * p;
  auto ops = std::make_shared<const LayerOperators>(assemble_layer_operators(g, o));
  const MixedSolver ms(ops, ConstraintMode::none, o);
  Eigen::VectorXd gn(g.size());
  for (int i = 0; i < g.size(); ++i) gn[i] = ex.velocity.row(i).dot(g.normals.row(i));
  const MixedSolution sol = ms.solve(ex.traction, gn);
  const OffSurfaceEvaluator ev(g, sol.density, opts.mu, opts.eval_degree > 0 ? opts.eval_degree : 2 * p);

  const auto circle_error = [&](double R) {
    double e = 0.0;
    for (int i = 0; i < vo.n_theta; ++i) {
      const double th = std::numbers::pi * (i + 0.5) / vo.n_theta;
      for (double ph : {0.0, std::numbers::pi}) {
        const Vec3 x(R * std::sin(th) * std::cos(ph), 0.0, R * std::cos(th));
        if (inside_body(c.shape, x)) continue;
        e = std::max(e, (ev.velocity(x) - point_force_velocity(c.F, c.x0, x, opts.mu)).norm());
      }
    }
    return e;
  };
  for (double R : vo.radii) row.flow_error = std::max(row.flow_error, circle_error(R));
  row.flow_error_near = circle_error(vo.near_radius);
  row.surface_error = (sol.velocity - ex.velocity).rowwise().norm().maxCoeff();
  const double P = surface_scalar_product(g, ex.velocity, ex.traction);
  const double Ph = surface_scalar_product(g, sol.velocity, sol.traction);
  row.power_error = std::abs(Ph - P) / std::abs(P);
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

}  // namespace swimopt
