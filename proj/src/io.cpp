#include "swimopt/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "swimopt/errors.hpp"

namespace swimopt {

namespace {

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) throw ConfigError(what + " must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + what);
  }
}

template <class T>
T get_or(const Json& j, const char* key, T def) {
  if (!j.contains(key)) return def;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

void dump_rec(const Json& j, std::ostringstream& os, int indent) {
  const std::string pad(indent, ' '), pad2(indent + 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad2 << Json(k).dump() << ": ";
        dump_rec(v, os, indent + 2);
      }
      os << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
      os << "[";
      bool first = true;
      for (const Json& v : j) {
        if (!first) os << (flat ? ", " : ",");
        if (!flat) os << "\n" << pad2;
        first = false;
        dump_rec(v, os, indent + 2);
      }
      if (!flat) os << "\n" << pad;
      os << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        os << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      std::string s(buf);
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      os << s;
      return;
    }
    default:
      os << j.dump();
  }
}

template <class T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
bool get(std::istream& is, T& v) {
  return static_cast<bool>(is.read(reinterpret_cast<char*>(&v), sizeof(T)));
}

void put_field(std::ostream& os, const Field& f) {
  const std::int64_t rows = f.rows();
  put(os, rows);
  os.write(reinterpret_cast<const char*>(f.data()), sizeof(double) * f.size());
}

bool get_field(std::istream& is, int n, Field& f) {
  std::int64_t rows = 0;
  if (!get(is, rows) || rows != n) return false;
  f.resize(n, 3);
  return static_cast<bool>(is.read(reinterpret_cast<char*>(f.data()), sizeof(double) * f.size()));
}

constexpr char kMagic[8] = {'S', 'W', 'O', 'P', 'T', 'C', '0', '1'};

}  // namespace

ShapeSpec shape_from_json(const Json& j) {
  check_keys(j, {"name", "kind", "composition", "base_radius", "semi_axes", "terms"}, "shape");
  ShapeSpec s;
  s.name = get_or<std::string>(j, "name", "");
  const std::string kind = get_or<std::string>(j, "kind", "radial");
  if (kind == "spheroid") {
    s.kind = ShapeSpec::Kind::spheroid;
    if (!j.contains("semi_axes")) throw ConfigError("spheroid needs semi_axes");
    s.semi_axes = vec3_from_json(j.at("semi_axes"));
  } else if (kind != "radial") {
    throw ConfigError("shape kind must be 'radial' or 'spheroid'");
  }
  const std::string comp = get_or<std::string>(j, "composition", "additive");
  if (comp == "exponential") {
    s.composition = ShapeSpec::Composition::exponential;
  } else if (comp != "additive") {
    throw ConfigError("composition must be 'additive' or 'exponential'");
  }
  s.base_radius = get_or<double>(j, "base_radius", 1.0);
  if (j.contains("terms")) {
    if (!j.at("terms").is_array()) throw ConfigError("terms must be an array");
    for (const Json& t : j.at("terms")) {
      const std::string type = get_or<std::string>(t, "type", "harmonic");
      if (type == "harmonic") {
        check_keys(t, {"type", "l", "m", "c", "re", "im"}, "harmonic term");
        std::complex<double> c{get_or<double>(t, "re", 0.0), get_or<double>(t, "im", 0.0)};
        if (t.contains("c")) {
          const Json& cj = t.at("c");
          if (cj.is_number()) {
            c = {cj.get<double>(), 0.0};
          } else if (cj.is_array() && cj.size() == 2) {
            c = {cj[0].get<double>(), cj[1].get<double>()};
          } else {
            throw ConfigError("harmonic 'c' must be a number or [re, im]");
          }
        }
        s.terms.push_back(ShapeTerm::harmonic(get_or<int>(t, "l", 0), get_or<int>(t, "m", 0), c));
      } else if (type == "trig") {
        check_keys(t, {"type", "coef", "sin_pow", "cos_pow", "m", "sine"}, "trig term");
        s.terms.push_back(ShapeTerm::trig(get_or<double>(t, "coef", 0.0),
                                          get_or<int>(t, "sin_pow", 0),
                                          get_or<int>(t, "cos_pow", 0), get_or<int>(t, "m", 0),
                                          get_or<bool>(t, "sine", false)));
      } else {
        throw ConfigError("term type must be 'harmonic' or 'trig'");
      }
    }
  }
  s.validate();
  return s;
}

Json shape_to_json(const ShapeSpec& s) {
  Json j;
  j["name"] = s.name;
  if (s.kind == ShapeSpec::Kind::spheroid) {
    j["kind"] = "spheroid";
    j["semi_axes"] = vector_to_json(s.semi_axes);
    return j;
  }
  j["kind"] = "radial";
  j["composition"] =
      s.composition == ShapeSpec::Composition::exponential ? "exponential" : "additive";
  j["base_radius"] = s.base_radius;
  j["terms"] = Json::array();
  for (const ShapeTerm& t : s.terms) {
    Json tj;
    if (t.kind == ShapeTerm::Kind::harmonic) {
      tj = {{"type", "harmonic"}, {"l", t.l}, {"m", t.m}, {"c", {t.c.real(), t.c.imag()}}};
    } else {
      tj = {{"type", "trig"},       {"coef", t.coef}, {"sin_pow", t.sin_pow},
            {"cos_pow", t.cos_pow}, {"m", t.m},       {"sine", t.sine}};
    }
    j["terms"].push_back(tj);
  }
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read " + path);
  try {
    return Json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

ShapeSpec read_shape_file(const std::string& path) { return shape_from_json(read_json_file(path)); }

std::string dump_json(const Json& j) {
  std::ostringstream os;
  dump_rec(j, os, 0);
  os << "\n";
  return os.str();
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  os << dump_json(j);
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json j = Json::array();
  for (int i = 0; i < m.rows(); ++i) j.push_back(vector_to_json(m.row(i).transpose()));
  return j;
}

Mat6 mat6_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 6) throw ConfigError("expected a 6x6 matrix");
  Mat6 m;
  for (int i = 0; i < 6; ++i) {
    if (!j[i].is_array() || j[i].size() != 6) throw ConfigError("expected a 6x6 matrix");
    for (int k = 0; k < 6; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json j = Json::array();
  for (int i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

Vec3 vec3_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("expected a 3-vector");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Json grid_to_json(const SurfaceGrid& g) {
  Json j;
  j["p"] = g.p;
  j["nodes"] = matrix_to_json(g.nodes);
  j["normals"] = matrix_to_json(g.normals);
  j["weights"] = vector_to_json(g.weights);
  return j;
}

Json gait_to_json(const OptimalGait& g) {
  const HelixGeometry hx = helix_geometry(g.h.s, g.h.V, g.h.W);
  Json j;
  j["W"] = vector_to_json(g.h.W);
  j["s"] = g.h.s;
  j["V"] = vector_to_json(g.h.V);
  j["U"] = vector_to_json(g.h.U);
  j["Omega"] = vector_to_json(g.h.Omega);
  j["power"] = g.power;
  j["classification"] = to_string(g.cls);
  j["consistency"] = g.h.consistent;
  j["stationarity_residual"] = g.stationarity;
  j["degenerate"] = g.degenerate;
  j["near_degenerate"] = g.near_degenerate;
  j["anomaly"] = g.anomaly;
  j["A_UU"] = g.A_UU;
  j["A_UO"] = g.A_UO;
  j["A_OO"] = g.A_OO;
  j["D"] = g.D;
  j["helix"] = {{"radius", hx.radius}, {"pitch", hx.pitch}, {"period", hx.period},
                {"axis", vector_to_json(hx.axis)}, {"straight", hx.straight}};
  return j;
}

Json symmetry_to_json(const SymmetryReport& r) {
  const auto pc = [](const PatternCheck& c) {
    return Json{{"zero_residual", c.zero_residual},
                {"relation_residual", c.relation_residual},
                {"inverse_residual", c.inverse_residual}};
  };
  Json j;
  j["class"] = to_string(r.shape.cls);
  j["mirror"] = {r.shape.mirror[0], r.shape.mirror[1], r.shape.mirror[2]};
  j["quarter_turn"] = r.shape.quarter_turn;
  j["axisymmetric"] = r.shape.axisymmetric;
  j["C"] = pc(r.C);
  j["C_inv"] = pc(r.C_inv);
  j["A"] = pc(r.A);
  j["Z"] = pc(r.Z);
  j["near_axisymmetric_warning"] = r.near_axisymmetric;
  return j;
}

Json consequences_to_json(const SymmetryConsequenceCheck& c) {
  return Json{{"applicable", c.applicable},     {"passed", c.passed},
              {"omega_norm", c.omega_norm},     {"plane_distance", c.plane_distance},
              {"detail", c.detail}};
}

Json axisym_to_json(const AxisymGait& a) {
  Json j = gait_to_json(a.gait);
  j["Z11"] = a.Z11;
  j["Z33"] = a.Z33;
  j["Z15"] = a.Z15;
  j["degenerate"] = a.degenerate;
  j["C11"] = a.C11;
  j["C33"] = a.C33;
  j["C44"] = a.C44;
  j["C15"] = a.C15;
  j["spin_mask"] = a.spin_mask;
  return j;
}

Json cross_check_to_json(const AxisymCrossCheck& c) {
  return Json{{"Z11_axisym", c.Z11_axi}, {"Z11_general", c.Z11_gen},
              {"Z33_axisym", c.Z33_axi}, {"Z33_general", c.Z33_gen},
              {"P_axisym", c.P_axi},     {"P_general", c.P_gen},
              {"same_direction", c.same_direction},
              {"max_rel_diff", c.max_rel_diff}, {"passed", c.passed}};
}

Json gait_system_to_json(const GaitSystem& gs, double c_symmetry, double c_condition) {
  Json j;
  j["mode"] = gs.mode == GaitMode::axisym ? "axisym" : "general";
  j["spin_mask"] = gs.spin_mask;
  j["free_mask"] = gs.free_mask;
  j["C"] = matrix_to_json(gs.C);
  j["C_inv"] = matrix_to_json(gs.C_inv);
  j["A"] = matrix_to_json(gs.A);
  j["Z"] = matrix_to_json(gs.Z);
  j["C_symmetry_residual"] = c_symmetry;
  j["C_condition"] = c_condition;
  j["A_asymmetry_residual"] = gs.asymmetry;
  j["max_normal_slip"] = gs.max_normal_slip;
  return j;
}

void write_fields_vtk(const std::string& path, const SurfaceGrid& grid,
                      const std::vector<std::string>& names, const std::vector<Field>& fields) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  os << std::setprecision(17);
  const int n = grid.size(), nt = grid.n_theta(), np = grid.n_phi();
  os << "# vtk DataFile Version 3.0\nswimmer surface fields\nASCII\nDATASET POLYDATA\n";
  os << "POINTS " << n << " double\n";
  for (int i = 0; i < n; ++i) {
    os << grid.nodes(i, 0) << ' ' << grid.nodes(i, 1) << ' ' << grid.nodes(i, 2) << '\n';
  }
  const int nq = (nt - 1) * np;
  os << "POLYGONS " << nq << ' ' << 5 * nq << '\n';
  for (int j = 0; j + 1 < nt; ++j) {
    for (int k = 0; k < np; ++k) {
      const int k1 = (k + 1) % np;
      os << "4 " << grid.index(j, k) << ' ' << grid.index(j, k1) << ' ' << grid.index(j + 1, k1)
         << ' ' << grid.index(j + 1, k) << '\n';
    }
  }
  os << "POINT_DATA " << n << '\n';
  os << "VECTORS normal double\n";
  for (int i = 0; i < n; ++i) {
    os << grid.normals(i, 0) << ' ' << grid.normals(i, 1) << ' ' << grid.normals(i, 2) << '\n';
  }
  for (size_t f = 0; f < fields.size(); ++f) {
    os << "VECTORS " << names.at(f) << " double\n";
    for (int i = 0; i < n; ++i) {
      os << fields[f](i, 0) << ' ' << fields[f](i, 1) << ' ' << fields[f](i, 2) << '\n';
    }
  }
}

std::string cache_path(const std::string& dir, const ShapeSpec& shape, int p, GaitMode mode,
                       const BieOptions& opts) {
  const auto d = [](BieOptions::Discretization x) {
    return x == BieOptions::Discretization::galerkin ? "g" : "c";
  };
  char buf[160];
  std::snprintf(buf, sizeof buf, "swimopt-%016llx-p%d-%s-%s%s-q%d.bin",
                static_cast<unsigned long long>(shape.hash()), p,
                mode == GaitMode::axisym ? "axi" : "gen", d(opts.dirichlet), d(opts.mixed),
                opts.quad_degree);
  return dir + "/" + buf;
}

void save_cache(const std::string& path, const CacheEntry& e) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write cache " + path);
  const GaitSystem& gs = e.gs;
  os.write(kMagic, sizeof kMagic);
  put(os, static_cast<std::int32_t>(gs.mode));
  put(os, gs.spin_mask);
  put(os, gs.free_mask);
  for (const Mat6* m : {&gs.C, &gs.C_inv, &gs.A, &gs.A_raw, &gs.Z}) {
    os.write(reinterpret_cast<const char*>(m->data()), sizeof(double) * 36);
  }
  put(os, gs.asymmetry);
  put(os, gs.max_normal_slip);
  put(os, e.c_symmetry);
  put(os, e.c_condition);
  for (int i = 0; i < 6; ++i) {
    put_field(os, gs.z[i]);
    put_field(os, gs.y[i]);
    put_field(os, gs.f[i]);
    os.write(reinterpret_cast<const char*>(gs.rigid[i].data()), sizeof(double) * 6);
  }
}

bool load_cache(const std::string& path, int n_nodes, CacheEntry& e) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return false;
  char magic[8];
  if (!is.read(magic, sizeof magic) || !std::equal(magic, magic + 8, kMagic)) return false;
  GaitSystem& gs = e.gs;
  std::int32_t mode = 0;
  if (!get(is, mode) || !get(is, gs.spin_mask) || !get(is, gs.free_mask)) return false;
  gs.mode = static_cast<GaitMode>(mode);
  for (Mat6* m : {&gs.C, &gs.C_inv, &gs.A, &gs.A_raw, &gs.Z}) {
    if (!is.read(reinterpret_cast<char*>(m->data()), sizeof(double) * 36)) return false;
  }
  if (!get(is, gs.asymmetry) || !get(is, gs.max_normal_slip) || !get(is, e.c_symmetry) ||
      !get(is, e.c_condition)) {
    return false;
  }
  for (int i = 0; i < 6; ++i) {
    if (!get_field(is, n_nodes, gs.z[i]) || !get_field(is, n_nodes, gs.y[i]) ||
        !get_field(is, n_nodes, gs.f[i])) {
      return false;
    }
    if (!is.read(reinterpret_cast<char*>(gs.rigid[i].data()), sizeof(double) * 6)) return false;
  }
  return true;
}

}  // namespace swimopt
