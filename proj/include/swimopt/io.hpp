#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "swimopt/axisym.hpp"
#include "swimopt/reduction.hpp"
#include "swimopt/symmetry.hpp"

namespace swimopt {

using Json = nlohmann::ordered_json;

/**
 * @brief Shape configuration.
 *
 * {"name", "kind": "radial"|"spheroid", "composition": "additive"|"exponential",
 *  "base_radius", "semi_axes": [a, b, c], "terms": [{"type": "harmonic", "l", "m",
 *  "c": number | [re, im]} | {"type": "trig", "coef", "sin_pow", "cos_pow", "m", "sine"}]}.
 * Throws ConfigError on unknown keys or values and ShapeError on invalid shapes.
 */
ShapeSpec shape_from_json(const Json& j);
Json shape_to_json(const ShapeSpec& s);
ShapeSpec read_shape_file(const std::string& path);

Json read_json_file(const std::string& path);

/// @brief Pretty JSON with every floating value at 17 significant digits; inf/nan become null.
std::string dump_json(const Json& j);
void write_json_file(const std::string& path, const Json& j);

Json matrix_to_json(const Eigen::MatrixXd& m);
Mat6 mat6_from_json(const Json& j);
Json vector_to_json(const Eigen::VectorXd& v);
Vec3 vec3_from_json(const Json& j);

/// @brief {p, nodes, normals, weights}.
Json grid_to_json(const SurfaceGrid& g);

Json gait_to_json(const OptimalGait& g);
Json symmetry_to_json(const SymmetryReport& r);
Json consequences_to_json(const SymmetryConsequenceCheck& c);
Json axisym_to_json(const AxisymGait& a);
Json cross_check_to_json(const AxisymCrossCheck& c);

/// @brief Quality metrics of the reduction: C, C^-1, A, Z and residuals.
Json gait_system_to_json(const GaitSystem& gs, double c_symmetry, double c_condition);

/// @brief Legacy-VTK polydata of the grid nodes (quads between rings) with vector point data.
void write_fields_vtk(const std::string& path, const SurfaceGrid& grid,
                      const std::vector<std::string>& names, const std::vector<Field>& fields);

/// @brief Everything optimize needs after the twelve solves.
struct CacheEntry {
  GaitSystem gs;
  double c_symmetry = 0;
  double c_condition = 0;
};

/// @brief dir/swimopt-<shape hash>-p<p>-<mode>-<discretizations>.bin
std::string cache_path(const std::string& dir, const ShapeSpec& shape, int p, GaitMode mode,
                       const BieOptions& opts);

/// @brief Exact binary round trip; load returns false when the file is absent or malformed.
void save_cache(const std::string& path, const CacheEntry& e);
bool load_cache(const std::string& path, int n_nodes, CacheEntry& e);

}  // namespace swimopt
