/**
 * @file swimopt_cli.cpp
 * @brief Command-line driver: validate, optimize, axisym, trajectory, export.
 */
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swimopt/axisym.hpp"
#include "swimopt/errors.hpp"
#include "swimopt/io.hpp"
#include "swimopt/optimizer.hpp"
#include "swimopt/reduction.hpp"
#include "swimopt/symmetry.hpp"
#include "swimopt/trajectory.hpp"
#include "swimopt/validation.hpp"

namespace fs = std::filesystem;
using namespace swimopt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitThreshold = 4;

/// @brief Threshold failure raised after results are written.
class ThresholdFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// @brief Options shared by all subcommands.
struct RunConfig {
  std::string shape_path;
  int p = 16;
  std::string mode = "auto";
  std::string out = ".";
  bool cache = false;
  std::string fixed_W;
  std::string alpha;
  int multistart = 0;
  bool cross_check = false;
  double traj_T = 0.0;
  double traj_dt = 0.0;
  std::string p_list = "8,10,12,14,16";
  double flow_tol = 1e-6;
};

std::vector<double> parse_list(const std::string& s, size_t n, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string("cannot parse ") + what + ": '" + s + "'");
    }
  }
  if (n > 0 && v.size() != n) {
    throw ConfigError(std::string(what) + " needs " + std::to_string(n) + " comma-separated values");
  }
  return v;
}

std::string stage_label;

/// Clears the sign of values that print as zero.
double shown(double v) { return std::abs(v) < 5e-7 ? 0.0 : v; }

void stage(const std::string& s) {
  stage_label = s;
  std::cerr << "[" << s << "]\n";
}

/// @brief Resolved pipeline: shape, grid, mode and (lazily) the gait system.
struct Pipeline {
  RunConfig cfg;
  ShapeSpec shape;
  ShapeSymmetry sym;
  bool use_axisym_solver = false;  ///< six-solve path
  GaitMode gait_mode = GaitMode::general;
  BieOptions opts;
  std::unique_ptr<SurfaceGrid> grid;
  std::shared_ptr<const LayerOperators> ops;
  std::optional<CacheEntry> entry;
  bool cache_hit = false;

  void validate_config() {
    if (cfg.shape_path.empty()) throw ConfigError("--shape is required");
    if (cfg.p < 4) throw ConfigError("--p must be at least 4");
    if (cfg.mode != "auto" && cfg.mode != "general" && cfg.mode != "axisym") {
      throw ConfigError("--mode must be auto, general or axisym");
    }
    if (cfg.multistart < 0) throw ConfigError("--multistart must be non-negative");
    if (cfg.traj_T < 0.0 || cfg.traj_dt < 0.0) throw ConfigError("--traj-T and --traj-dt must be positive");
    if (!cfg.fixed_W.empty()) {
      const auto w = parse_list(cfg.fixed_W, 3, "--fixed-W");
      if (w[0] == 0.0 && w[1] == 0.0 && w[2] == 0.0) throw ConfigError("--fixed-W must be nonzero");
    }
    if (!cfg.alpha.empty()) parse_list(cfg.alpha, 6, "--alpha");
    shape = read_shape_file(cfg.shape_path);
    sym = detect_shape_symmetry(shape);
    const bool tangential_spin = sym.axisymmetric;
    if (cfg.mode == "axisym") {
      if (!sym.axisymmetric) throw ModeMismatchError("--mode axisym needs a body of revolution about e3");
      if (cfg.p % 2 != 0) throw ConfigError("--mode axisym needs an even --p");
      use_axisym_solver = true;
    } else if (cfg.mode == "auto") {
      use_axisym_solver = sym.axisymmetric && cfg.p % 2 == 0;
    } else if (tangential_spin) {
      throw ModeMismatchError("--mode general is ill-posed for a body of revolution; use axisym or auto");
    }
    gait_mode = tangential_spin ? GaitMode::axisym : GaitMode::general;
    fs::create_directories(cfg.out);
  }

  void build_grid_ops() {
    if (ops) return;
    stage("grid and layer operators");
    grid = std::make_unique<SurfaceGrid>(swimopt::build_grid(shape, cfg.p));
    ops = std::make_shared<const LayerOperators>(assemble_layer_operators(*grid, opts));
  }

  /// Twelve-solve reduction, cache-aware.
  const CacheEntry& gait_system() {
    if (entry) return *entry;
    if (!grid) grid = std::make_unique<SurfaceGrid>(swimopt::build_grid(shape, cfg.p));
    const std::string cdir = cfg.out + "/cache";
    const std::string cpath = cache_path(cdir, shape, cfg.p, gait_mode, opts);
    CacheEntry e;
    if (cfg.cache && load_cache(cpath, grid->size(), e)) {
      std::cerr << "cache hit: " << cpath << "\n";
      cache_hit = true;
      entry = std::move(e);
      return *entry;
    }
    build_grid_ops();
    stage("rigid-body solves");
    const RigidSystem rs = assemble_rigid_system(ops, opts);
    stage("auxiliary mixed solves");
    e.gs = build_gait_system(rs, gait_mode, opts);
    e.c_symmetry = rs.symmetry_residual;
    e.c_condition = rs.condition;
    if (cfg.cache) {
      fs::create_directories(cdir);
      save_cache(cpath, e);
    }
    entry = std::move(e);
    return *entry;
  }

  Json header(const std::string& command) const {
    Json j;
    j["command"] = command;
    j["shape"] = shape_to_json(shape);
    j["p"] = cfg.p;
    j["mode"] = use_axisym_solver ? "axisym" : (gait_mode == GaitMode::axisym ? "general-axisym-reduction" : "general");
    j["symmetry_class"] = to_string(sym.cls);
    if (grid) j["centroid"] = vector_to_json(grid->centroid());
    return j;
  }
};

/// Gait by fixed W or global search on a twelve-solve system.
OptimalGait solve_gait(const Mat6& Z, const RunConfig& cfg) {
  if (!cfg.fixed_W.empty()) {
    const auto w = parse_list(cfg.fixed_W, 3, "--fixed-W");
    OptimalGait g = partial_minimize(Z, Vec3(w[0], w[1], w[2]));
    g.stationarity = stationarity_residual(Z, g.h.W);
    return g;
  }
  return global_minimize(Z, cfg.multistart);
}

void write_trajectory(const RunConfig& cfg, const OptimalGait& g, Json& out) {
  const HelixGeometry hx = helix_geometry(g.h.s, g.h.V, g.h.W);
  const double period = std::isfinite(hx.period) ? hx.period : 1.0;
  const double T = cfg.traj_T > 0.0 ? cfg.traj_T : 3.0 * period;
  const double dt = cfg.traj_dt > 0.0 ? cfg.traj_dt : period / 1000.0;
  stage("trajectory integration");
  const auto path = integrate_path(g.h.U, g.h.Omega, T, dt);
  write_path_csv(cfg.out + "/path.csv", path);
  write_path_vtk(cfg.out + "/path.vtk", path);
  out["trajectory"] = {{"T", T},
                       {"dt", dt},
                       {"samples", path.size()},
                       {"max_deviation_from_helix", path_deviation(path, g.h.U, g.h.Omega)},
                       {"files", {"path.csv", "path.vtk"}}};
}

int cmd_validate(RunConfig cfg) {
  PointForceCase pc = reference_point_force_case();
  if (!cfg.shape_path.empty()) pc.shape = read_shape_file(cfg.shape_path);
  std::vector<int> ps;
  for (double v : parse_list(cfg.p_list, 0, "--p-list")) {
    if (v < 4 || v != static_cast<int>(v)) throw ConfigError("--p-list entries must be integers >= 4");
    ps.push_back(static_cast<int>(v));
  }
  fs::create_directories(cfg.out);
  const BieOptions opts = validation_bie_options();
  ValidationOptions vo;
  vo.flow_tol = cfg.flow_tol;
  Json rows = Json::array();
  std::printf("%4s %14s %14s %14s %14s %9s\n", "p", "flow_err", "flow_err_r1.5", "surface_err",
              "power_err", "seconds");
  bool gate = true;
  double first = -1.0, last = -1.0;
  for (int p : ps) {
    stage("point-force mixed solve p=" + std::to_string(p));
    const ValidationRow r = point_force_study(pc, p, opts, vo);
    std::printf("%4d %14.3e %14.3e %14.3e %14.3e %9.2f\n", r.p, r.flow_error, r.flow_error_near,
                r.surface_error, r.power_error, r.seconds);
    rows.push_back({{"p", r.p},
                    {"flow_error", r.flow_error},
                    {"flow_error_near", r.flow_error_near},
                    {"surface_error", r.surface_error},
                    {"power_error", r.power_error}});
    if (r.p >= 16 && !(r.flow_error < vo.flow_tol)) gate = false;
    if (first < 0) first = r.flow_error;
    last = r.flow_error;
  }
  const bool decays = ps.size() < 2 || last < first;
  Json out;
  out["command"] = "validate";
  out["shape"] = shape_to_json(pc.shape);
  out["F"] = vector_to_json(pc.F);
  out["x0"] = vector_to_json(pc.x0);
  out["flow_tol"] = vo.flow_tol;
  out["rows"] = rows;
  out["gate_passed"] = gate;
  out["decays"] = decays;
  write_json_file(cfg.out + "/validation.json", out);
  std::printf("gate (flow error < %.1e for p >= 16): %s; decay: %s\n", vo.flow_tol,
              gate ? "pass" : "FAIL", decays ? "pass" : "FAIL");
  if (!gate || !decays) throw ThresholdFailure("validation thresholds not met");
  return kExitOk;
}

int cmd_optimize(const RunConfig& cfg, bool trajectory_only = false) {
  Pipeline pl;
  pl.cfg = cfg;
  pl.validate_config();
  Json out = pl.header(trajectory_only ? "trajectory" : "optimize");
  OptimalGait gait;
  bool threshold_failed = false;
  if (pl.use_axisym_solver && cfg.fixed_W.empty() && cfg.alpha.empty()) {
    pl.build_grid_ops();
    stage("axisymmetric six-solve reduction");
    const AxisymGait ag = axisym_optimize(pl.ops, pl.opts);
    gait = ag.gait;
    out["gait"] = axisym_to_json(ag);
    out["centroid"] = vector_to_json(pl.grid->centroid());
    if (!trajectory_only) write_fields_vtk(cfg.out + "/slip.vtk", *pl.grid, {"optimal_slip"}, {ag.slip});
    if (cfg.cross_check) {
      const CacheEntry& e = pl.gait_system();
      const AxisymCrossCheck cc = cross_check_general(ag, e.gs);
      out["cross_check"] = cross_check_to_json(cc);
      threshold_failed = !cc.passed;
    }
  } else {
    const CacheEntry& e = pl.gait_system();
    const GaitSystem& gs = e.gs;
    stage("optimization");
    gait = solve_gait(gs.Z, cfg);
    out["centroid"] = vector_to_json(pl.grid->centroid());
    out["cache_hit"] = pl.cache_hit;
    out["gait"] = gait_to_json(gait);
    out["stationarity_residual"] = gait.stationarity;
    const SpinningStraight sb = spinning_straight(gs.Z, gait.h.W.normalized());
    out["spinning_straight"] = {{"s", sb.s}, {"power", sb.power}, {"B_UU", sb.B_UU},
                                {"B_UO", sb.B_UO}, {"B_OO", sb.B_OO}};
    const Rotationless rl = rotationless_optimal(gs.Z);
    out["rotationless"] = {{"W", vector_to_json(rl.W)}, {"power", rl.power},
                           {"eigenvalues", vector_to_json(rl.eigenvalues)}};
    if (!cfg.alpha.empty()) {
      const auto a = parse_list(cfg.alpha, 6, "--alpha");
      Vec6 alpha;
      for (int i = 0; i < 6; ++i) alpha[i] = a[i];
      out["alpha_query"] = {{"alpha", vector_to_json(alpha)},
                            {"power", power_from_alpha(gs, alpha)},
                            {"efficiency", efficiency(gs, alpha)}};
    }
    out["matrices"] = gait_system_to_json(gs, e.c_symmetry, e.c_condition);
    const SymmetryReport rep = symmetry_report(pl.sym, gs.C, gs.C_inv, gs.A, gs.Z);
    out["symmetry"] = symmetry_to_json(rep);
    if (cfg.fixed_W.empty()) {
      out["symmetry_consequences"] = consequences_to_json(check_prop_symmetry_consequences(pl.sym, gait));
    }
    if (!trajectory_only) {
      write_fields_vtk(cfg.out + "/slip.vtk", *pl.grid, {"optimal_slip"},
                       {slip_from_alpha(gs, gait.alpha)});
    }
    if (gait.anomaly) std::cerr << "warning: A_UO(W*) ~ 0 but W* is not an eigenvector of Z_UU^-1\n";
    if (rep.near_axisymmetric) std::cerr << "warning: nearly axisymmetric shape, reduction may be ill-conditioned\n";
  }
  if (trajectory_only || cfg.traj_T > 0.0) write_trajectory(cfg, gait, out);
  const std::string file = cfg.out + (trajectory_only ? "/trajectory.json" : "/result.json");
  write_json_file(file, out);
  std::printf("W* = (%.6f, %.6f, %.6f)  s = %.6g  P = %.10g  class = %s\n", shown(gait.h.W[0]),
              shown(gait.h.W[1]), shown(gait.h.W[2]), gait.h.s, gait.power, to_string(gait.cls).c_str());
  std::printf("U* = (%.6f, %.6f, %.6f)  Omega* = (%.6f, %.6f, %.6f)\n", shown(gait.h.U[0]), shown(gait.h.U[1]),
              shown(gait.h.U[2]), shown(gait.h.Omega[0]), shown(gait.h.Omega[1]), shown(gait.h.Omega[2]));
  if (out.contains("alpha_query")) {
    std::printf("power(alpha) = %.10g\n", out["alpha_query"]["power"].get<double>());
  }
  std::printf("wrote %s\n", file.c_str());
  if (threshold_failed) throw ThresholdFailure("axisym / general cross-check disagrees beyond 1e-5");
  return kExitOk;
}

int cmd_axisym(RunConfig cfg) {
  if (cfg.mode == "general") throw ConfigError("the axisym command runs in axisym mode only");
  cfg.mode = "axisym";
  Pipeline pl;
  pl.cfg = cfg;
  pl.validate_config();
  pl.build_grid_ops();
  stage("axisymmetric six-solve reduction");
  const AxisymGait ag = axisym_optimize(pl.ops, pl.opts);
  Json out = pl.header("axisym");
  out["gait"] = axisym_to_json(ag);
  write_fields_vtk(cfg.out + "/slip.vtk", *pl.grid, {"optimal_slip", "y1", "y3"},
                   {ag.slip, ag.y1, ag.y3});
  bool ok = true;
  if (cfg.cross_check) {
    const AxisymCrossCheck cc = cross_check_general(ag, pl.gait_system().gs);
    out["cross_check"] = cross_check_to_json(cc);
    ok = cc.passed;
    std::printf("cross-check max relative difference %.3e: %s\n", cc.max_rel_diff, ok ? "pass" : "FAIL");
  }
  write_json_file(cfg.out + "/axisym.json", out);
  std::printf("Z11 = %.10g  Z33 = %.10g  Z15 = %.6g  W* = %s  P* = %.10g%s\n", ag.Z11, ag.Z33,
              ag.Z15, ag.W.z() == 1.0 ? "e3 (axial)" : "e1 (transverse)", ag.power,
              ag.degenerate ? "  (degenerate: Z11 = Z33)" : "");
  if (!ok) throw ThresholdFailure("axisym / general cross-check disagrees beyond 1e-5");
  return kExitOk;
}

int cmd_export(RunConfig cfg) {
  if (cfg.mode == "auto" || cfg.mode == "axisym") cfg.mode = "auto";
  Pipeline pl;
  pl.cfg = cfg;
  pl.validate_config();
  pl.use_axisym_solver = false;
  const CacheEntry& e = pl.gait_system();
  Json out = pl.header("export");
  out["matrices"] = gait_system_to_json(e.gs, e.c_symmetry, e.c_condition);
  out["A_raw"] = matrix_to_json(e.gs.A_raw);
  write_json_file(cfg.out + "/matrices.json", out);
  write_json_file(cfg.out + "/grid.json", grid_to_json(*pl.grid));
  std::vector<std::string> names;
  std::vector<Field> fields;
  for (int i = 0; i < 6; ++i) {
    names.push_back("y" + std::to_string(i + 1));
    fields.push_back(e.gs.y[i]);
    names.push_back("z" + std::to_string(i + 1));
    fields.push_back(e.gs.z[i]);
  }
  write_fields_vtk(cfg.out + "/fields.vtk", *pl.grid, names, fields);
  std::printf("wrote %s/matrices.json, grid.json, fields.vtk\n", cfg.out.c_str());
  return kExitOk;
}

void add_common(CLI::App* sc, RunConfig& cfg, bool shape_required) {
  auto* o = sc->add_option("--shape", cfg.shape_path, "shape configuration (JSON)");
  if (shape_required) o->required();
  sc->add_option("--p", cfg.p, "spherical-harmonic degree of the grid")->capture_default_str();
  sc->add_option("--mode", cfg.mode, "auto, general or axisym")->capture_default_str();
  sc->add_option("--out", cfg.out, "output directory")->capture_default_str();
  sc->add_flag("--cache", cfg.cache, "reuse / store the reduction in <out>/cache");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-power tangential slip of rigid microswimmers in Stokes flow"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* validate = app.add_subcommand("validate", "point-force mixed BVP convergence study");
  add_common(validate, cfg, false);
  validate->add_option("--p-list", cfg.p_list, "comma-separated resolutions")->capture_default_str();
  validate->add_option("--flow-tol", cfg.flow_tol, "flow error gate for p >= 16")->capture_default_str();

  auto* optimize = app.add_subcommand("optimize", "optimal gait of a shape");
  add_common(optimize, cfg, true);
  auto* trajectory = app.add_subcommand("trajectory", "optimal gait and its swimming path");
  add_common(trajectory, cfg, true);
  for (auto* sc : {optimize, trajectory}) {
    sc->add_option("--fixed-W", cfg.fixed_W, "net velocity W for partial minimization only");
    sc->add_option("--alpha", cfg.alpha, "rigid motion (U; Omega) for a fixed-motion power query");
    sc->add_option("--multistart", cfg.multistart, "number of global-search seeds (0: default 26)");
    sc->add_flag("--cross-check", cfg.cross_check, "compare the axisym and general paths");
    sc->add_option("--traj-T", cfg.traj_T, "trajectory duration (default three periods)");
    sc->add_option("--traj-dt", cfg.traj_dt, "trajectory time step (default period / 1000)");
  }
  auto* axisym = app.add_subcommand("axisym", "six-solve algorithm for bodies of revolution");
  add_common(axisym, cfg, true);
  axisym->add_flag("--cross-check", cfg.cross_check, "compare with the twelve-solve path");
  auto* exp = app.add_subcommand("export", "matrices (JSON), grid (JSON) and slip bases (VTK)");
  add_common(exp, cfg, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }
  const auto t0 = std::chrono::steady_clock::now();
  try {
    int rc = kExitOk;
    if (validate->parsed()) rc = cmd_validate(cfg);
    if (optimize->parsed()) rc = cmd_optimize(cfg);
    if (trajectory->parsed()) rc = cmd_optimize(cfg, true);
    if (axisym->parsed()) rc = cmd_axisym(cfg);
    if (exp->parsed()) rc = cmd_export(cfg);
    std::cerr << "done in "
              << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
              << " s\n";
    return rc;
  } catch (const ThresholdFailure& e) {
    std::cerr << "threshold failure: " << e.what() << "\n";
    return kExitThreshold;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ModeMismatchError& e) {
    std::cerr << "config error (mode): " << e.what() << "\n";
    return kExitConfig;
  } catch (const SolverError& e) {
    std::cerr << "solver failure [" << stage_label << "]: " << e.what()
              << " (residual " << e.residual() << ")\n";
    return kExitSolver;
  } catch (const ResolutionError& e) {
    std::cerr << "solver failure [" << stage_label << "]: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "solver failure [" << stage_label << "]: " << e.what() << "\n";
    return kExitSolver;
  }
}
