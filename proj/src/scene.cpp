#include "orthopack/scene.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>

#include <Eigen/Geometry>
#include <fmt/format.h>

#include "orthopack/error.hpp"

namespace orthopack {

namespace {

using Eigen::Vector3d;

Vector3d vec(const Point3& p) {
    return {p[0], p[1], p[2]};
}

Point3 pt(const Vector3d& v) {
    return {v[0], v[1], v[2]};
}

// Grid over phi in [0, pi] (rows) and theta in [0, 2pi) (columns), with the
// degenerate triangles at both poles left out.
template <class F>
Mesh sphere_grid(int resolution, std::string label, F&& point) {
    if (resolution < 8)
        throw InvalidInput(fmt::format("mesh resolution must be at least 8, got {}", resolution));
    Mesh m;
    m.part_label = std::move(label);
    const int n = resolution;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < n; ++j)
            m.vertices.push_back(point(std::numbers::pi * i / n, 2.0 * std::numbers::pi * j / n));
    auto id = [n](int i, int j) { return i * n + (j % n); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i > 0)
                m.triangles.push_back({id(i, j), id(i, j + 1), id(i + 1, j)});
            if (i < n - 1)
                m.triangles.push_back({id(i, j + 1), id(i + 1, j + 1), id(i + 1, j)});
        }
    return m;
}

Mesh fan(const std::vector<std::vector<Point3>>& polygons, std::string label) {
    Mesh m;
    m.part_label = std::move(label);
    for (const auto& poly : polygons) {
        const int base = static_cast<int>(m.vertices.size());
        m.vertices.insert(m.vertices.end(), poly.begin(), poly.end());
        for (int k = 1; k + 1 < static_cast<int>(poly.size()); ++k)
            m.triangles.push_back({base, base + k, base + k + 1});
    }
    return m;
}

template <class T>
void put_le(std::string& out, T value) {
    char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes, bytes + sizeof(T));
    out.append(bytes, sizeof(T));
}

std::string object_name(const std::string& label) {
    std::string s = label.empty() ? "part" : label;
    std::replace(s.begin(), s.end(), ' ', '_');
    return s;
}

} // namespace

std::string_view to_string(ExportFormat f) {
    switch (f) {
    case ExportFormat::Obj: return "obj";
    case ExportFormat::Ply: return "ply";
    case ExportFormat::Json: return "json";
    }
    return "?";
}

ExportFormat parse_export_format(std::string_view text) {
    if (text == "obj")
        return ExportFormat::Obj;
    if (text == "ply")
        return ExportFormat::Ply;
    if (text == "json")
        return ExportFormat::Json;
    throw InvalidInput(fmt::format("unknown export format '{}' (expected obj, ply or json)", text));
}

std::vector<std::vector<Point3>> face_polygons(const std::vector<LorentzVector>& vertices,
                                               const std::array<LorentzVector, 5>& normals) {
    std::vector<std::vector<Point3>> out;
    for (const auto& u : normals) {
        std::vector<Vector3d> pts;
        for (const auto& v : vertices)
            if (std::abs(bilinear(v, u)) <= 1e-9 * std::max(1.0, v.euclidean_norm()) * u.euclidean_norm())
                pts.push_back(vec(klein_coords(v)));
        if (pts.size() < 3)
            continue;
        Vector3d c = Vector3d::Zero();
        for (const auto& p : pts)
            c += p;
        c /= static_cast<double>(pts.size());
        // Klein image of the plane: -u0 + u1 x + u2 y + u3 z = 0; the cell lies where it is positive.
        const Vector3d n = -Vector3d(u[1], u[2], u[3]).normalized();
        const Vector3d e1 = (pts[0] - c).normalized();
        const Vector3d e2 = n.cross(e1);
        std::sort(pts.begin(), pts.end(), [&](const Vector3d& a, const Vector3d& b) {
            return std::atan2((a - c).dot(e2), (a - c).dot(e1)) < std::atan2((b - c).dot(e2), (b - c).dot(e1));
        });
        std::vector<Point3> poly;
        for (const auto& p : pts)
            poly.push_back(pt(p));
        out.push_back(std::move(poly));
    }
    return out;
}

std::vector<std::vector<Point3>> face_polygons(const CoxeterCell& cell) {
    std::vector<LorentzVector> verts;
    for (const auto& v : cell.polyhedron_vertices())
        verts.push_back(v.point);
    std::array<LorentzVector, 5> normals;
    for (int i = 0; i < 5; ++i)
        normals[i] = cell.normal(i);
    return face_polygons(verts, normals);
}

Mesh mesh_cell(const CoxeterCell& cell) {
    return fan(face_polygons(cell), "cell");
}

Mesh mesh_instance(const CellInstance& instance) {
    return fan(face_polygons(instance.vertices, instance.normals), "cell " + instance.word_string());
}

Mesh mesh_horoball(const Horoball& ball, int resolution) {
    const double s = ball.s_param();
    const Transform back = canonical_transform(ball.center).inverse();
    return sphere_grid(resolution, "horoball", [&](double phi, double theta) {
        return klein_coords(back(from_klein(canonical_horosphere_point(s, theta, phi))));
    });
}

Mesh mesh_ball(const InscribedBall& ball, int resolution) {
    const LorentzVector c = normalize_proper(ball.center);
    // Orthonormal spacelike frame orthogonal to c.
    std::array<LorentzVector, 3> e;
    int found = 0;
    for (int k = 1; k <= 3 && found < 3; ++k) {
        LorentzVector v(0.0, k == 1, k == 2, k == 3);
        v = v + c * bilinear(v, c);
        for (int p = 0; p < found; ++p)
            v = v - e[p] * bilinear(v, e[p]);
        e[found++] = v * (1.0 / std::sqrt(quadratic(v)));
    }
    const double ch = std::cosh(ball.radius), sh = std::sinh(ball.radius);
    return sphere_grid(resolution, "inball", [&](double phi, double theta) {
        const LorentzVector dir = e[0] * (std::sin(phi) * std::cos(theta)) + e[1] * (std::sin(phi) * std::sin(theta)) +
                                  e[2] * std::cos(phi);
        return klein_coords(c * ch + dir * sh);
    });
}

Mesh mesh_model_sphere(int resolution) {
    return sphere_grid(resolution, "model sphere", [](double phi, double theta) {
        return Point3{std::sin(phi) * std::cos(theta), std::sin(phi) * std::sin(theta), std::cos(phi)};
    });
}

void validate(const Mesh& mesh) {
    const int n = static_cast<int>(mesh.vertices.size());
    for (const auto& t : mesh.triangles)
        for (int i : t)
            if (i < 0 || i >= n)
                throw InvalidInput(fmt::format("mesh '{}' has triangle index {} out of range", mesh.part_label, i));
    for (const auto& v : mesh.vertices)
        if (vec(v).norm() > 1.0 + 1e-9)
            throw InvalidInput(fmt::format("mesh '{}' leaves the unit ball", mesh.part_label));
}

std::string export_obj(const Scene& scene) {
    std::string out = fmt::format("# orthopack {} scene\n", kToolVersion);
    int offset = 1;
    for (const auto& m : scene.meshes) {
        out += fmt::format("o {}\n", object_name(m.part_label));
        for (const auto& v : m.vertices)
            out += fmt::format("v {:.12g} {:.12g} {:.12g}\n", v[0], v[1], v[2]);
        for (const auto& t : m.triangles)
            out += fmt::format("f {} {} {}\n", t[0] + offset, t[1] + offset, t[2] + offset);
        offset += static_cast<int>(m.vertices.size());
    }
    return out;
}

std::string export_ply(const Scene& scene) {
    std::size_t nv = 0, nf = 0;
    for (const auto& m : scene.meshes) {
        nv += m.vertices.size();
        nf += m.triangles.size();
    }
    std::string out = "ply\nformat binary_little_endian 1.0\n";
    out += fmt::format("comment orthopack {}\n", kToolVersion);
    std::size_t first = 0;
    for (const auto& m : scene.meshes) {
        out += fmt::format("comment part {} faces {} {}\n", object_name(m.part_label), first, m.triangles.size());
        first += m.triangles.size();
    }
    out += fmt::format("element vertex {}\nproperty double x\nproperty double y\nproperty double z\n", nv);
    out += fmt::format("element face {}\nproperty list uchar int vertex_indices\nend_header\n", nf);
    for (const auto& m : scene.meshes)
        for (const auto& v : m.vertices)
            for (double c : v)
                put_le(out, c);
    std::int32_t offset = 0;
    for (const auto& m : scene.meshes) {
        for (const auto& t : m.triangles) {
            put_le(out, std::uint8_t{3});
            for (int i : t)
                put_le(out, static_cast<std::int32_t>(i + offset));
        }
        offset += static_cast<std::int32_t>(m.vertices.size());
    }
    return out;
}

std::string export_json(const Scene& scene) {
    nlohmann::json j;
    j["schema"] = "orthopack.scene";
    j["version"] = kSceneSchemaVersion;
    j["metadata"] = scene.metadata;
    j["meshes"] = nlohmann::json::array();
    for (const auto& m : scene.meshes)
        j["meshes"].push_back({{"label", m.part_label}, {"vertices", m.vertices}, {"triangles", m.triangles}});
    return j.dump(1) + "\n";
}

std::string export_scene(const Scene& scene, ExportFormat format) {
    switch (format) {
    case ExportFormat::Obj: return export_obj(scene);
    case ExportFormat::Ply: return export_ply(scene);
    case ExportFormat::Json: return export_json(scene);
    }
    throw InvalidInput("unknown export format");
}

Scene import_json(std::string_view text) {
    Scene scene;
    try {
        const auto j = nlohmann::json::parse(text);
        if (j.at("schema") != "orthopack.scene")
            throw InvalidInput("not an orthopack scene");
        if (j.at("version").get<int>() != kSceneSchemaVersion)
            throw InvalidInput(fmt::format("unsupported scene version {}", j.at("version").dump()));
        scene.metadata = j.at("metadata");
        for (const auto& m : j.at("meshes")) {
            Mesh mesh;
            mesh.part_label = m.at("label").get<std::string>();
            mesh.vertices = m.at("vertices").get<std::vector<Point3>>();
            mesh.triangles = m.at("triangles").get<std::vector<std::array<int, 3>>>();
            scene.meshes.push_back(std::move(mesh));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(fmt::format("malformed scene JSON: {}", e.what()));
    }
    return scene;
}

std::string density_csv(const DensityCurve& curve) {
    std::string out = "t,density\n";
    for (const auto& [t, d] : curve.samples)
        out += fmt::format("{:.6f},{:.6f}\n", t, d);
    return out;
}

void write_file(const std::string& path, std::string_view bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw IoError(fmt::format("cannot open '{}' for writing", path));
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f)
        throw IoError(fmt::format("failed writing '{}'", path));
}

} // namespace orthopack
