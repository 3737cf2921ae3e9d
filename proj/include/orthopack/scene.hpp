#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "orthopack/coxeter.hpp"
#include "orthopack/horoball.hpp"
#include "orthopack/inball.hpp"
#include "orthopack/tiling.hpp"

namespace orthopack {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kSceneSchemaVersion = 1;

struct Mesh {
    std::vector<Point3> vertices; // Klein ball coordinates
    std::vector<std::array<int, 3>> triangles;
    std::string part_label;
};

struct Scene {
    std::vector<Mesh> meshes;
    nlohmann::json metadata = nlohmann::json::object();
};

enum class ExportFormat { Obj, Ply, Json };

std::string_view to_string(ExportFormat f);
ExportFormat parse_export_format(std::string_view text);

/// Klein-coordinate polygons of the five faces, counter-clockwise seen from
/// outside the cell. A face through a single vertex is skipped.
std::vector<std::vector<Point3>> face_polygons(const std::vector<LorentzVector>& vertices,
                                               const std::array<LorentzVector, 5>& normals);
std::vector<std::vector<Point3>> face_polygons(const CoxeterCell& cell);

Mesh mesh_cell(const CoxeterCell& cell);
Mesh mesh_instance(const CellInstance& instance);

/// (resolution + 1) x resolution grid in (phi, theta); row phi = 0 is the ideal center.
Mesh mesh_horoball(const Horoball& ball, int resolution);
Mesh mesh_ball(const InscribedBall& ball, int resolution);
Mesh mesh_model_sphere(int resolution);

/// Throws InvalidInput on out-of-range indices or vertices outside the closed unit ball.
void validate(const Mesh& mesh);

std::string export_obj(const Scene& scene);
std::string export_ply(const Scene& scene);
std::string export_json(const Scene& scene);
std::string export_scene(const Scene& scene, ExportFormat format);
Scene import_json(std::string_view text);

/// Header "t,density", six decimals.
std::string density_csv(const DensityCurve& curve);

/// Throws IoError when the file cannot be written.
void write_file(const std::string& path, std::string_view bytes);

} // namespace orthopack
