#include <cmath>
#include <cstring>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "orthopack/coxeter.hpp"
#include "orthopack/error.hpp"
#include "orthopack/horoball.hpp"
#include "orthopack/inball.hpp"
#include "orthopack/scene.hpp"

using namespace orthopack;
using doctest::Approx;

namespace {

double norm(const Point3& p) {
    return std::hypot(p[0], p[1], p[2]);
}

int count_lines(const std::string& s, const std::string& prefix) {
    int n = 0;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const std::size_t end = s.find('\n', pos);
        if (s.compare(pos, prefix.size(), prefix) == 0)
            ++n;
        if (end == std::string::npos)
            break;
        pos = end + 1;
    }
    return n;
}

LorentzVector lift(const Point3& p) {
    const double r2 = 1.0 - p[0] * p[0] - p[1] * p[1] - p[2] * p[2];
    return LorentzVector(1.0, p[0], p[1], p[2]) * (1.0 / std::sqrt(r2));
}

} // namespace

TEST_CASE("cell mesh") {
    const CoxeterCell cell = build_cell({3, 3});
    const auto faces = face_polygons(cell);
    CHECK(faces.size() == 5);
    // h4 is the triangle a2, T0, T1; h2 the quadrilateral.
    std::vector<std::size_t> sizes;
    for (const auto& f : faces)
        sizes.push_back(f.size());
    CHECK(sizes == std::vector<std::size_t>{3, 3, 4, 3, 3});
    for (std::size_t i = 0; i < faces.size(); ++i) {
        const Eigen::Vector3d n(cell.normal(static_cast<int>(i))[1], cell.normal(static_cast<int>(i))[2],
                                cell.normal(static_cast<int>(i))[3]);
        const double off = cell.normal(static_cast<int>(i))[0];
        for (const auto& p : faces[i])
            CHECK(std::abs(n.dot(Eigen::Vector3d(p[0], p[1], p[2])) - off) < 1e-9);
    }
    const Mesh m = mesh_cell(cell);
    CHECK(m.triangles.size() == 6);
    validate(m);
    const Point3 a2 = klein_coords(cell.vertices[2]);
    CHECK(norm(a2) == Approx(1.0).epsilon(1e-9));
    bool found = false;
    for (const auto& v : m.vertices)
        found = found || (std::hypot(v[0] - a2[0], v[1] - a2[1], v[2] - a2[2]) < 1e-12);
    CHECK(found);
}

TEST_CASE("horoball mesh") {
    const Horoball canon = Horoball::from_null_vector({1, 0, 0, 1});
    const Mesh m = mesh_horoball(canon, 16);
    CHECK(m.vertices.size() == 17 * 16);
    // s = 0: 2(x^2 + y^2) + 4(z - 1/2)^2 = 1, through the origin and (0,0,1).
    for (const auto& v : m.vertices)
        CHECK(std::abs(2 * (v[0] * v[0] + v[1] * v[1]) + 4 * (v[2] - 0.5) * (v[2] - 0.5) - 1) < 1e-12);
    CHECK(norm(m.vertices[0]) == Approx(1.0));
    CHECK(norm(m.vertices.back()) < 1e-12);
    CHECK_THROWS_AS(mesh_horoball(canon, 4), InvalidInput);

    const CoxeterCell cell = build_cell({4, 4});
    const Horoball b = max_one_horoball(cell, 2).ball;
    for (int res : {8, 12, 33}) {
        const Mesh h = mesh_horoball(b, res);
        validate(h);
        CHECK(h.vertices.size() == static_cast<std::size_t>((res + 1) * res));
        const Point3 apex = klein_coords(cell.vertices[2]);
        CHECK(std::hypot(h.vertices[0][0] - apex[0], h.vertices[0][1] - apex[1], h.vertices[0][2] - apex[2]) <
              1e-12);
        const Transform t = canonical_transform(b.center);
        for (const auto& v : h.vertices) {
            if (norm(v) > 1 - 1e-12)
                continue;
            const Point3 k = klein_coords(t(from_klein(v)));
            CHECK(std::abs(horosphere_equation_residual(b.s_param(), k)) < 1e-9);
        }
    }
}

TEST_CASE("inscribed ball mesh") {
    InscribedBall b;
    b.center = {1, 0, 0, 0};
    b.radius = 0.7;
    const Mesh m = mesh_ball(b, 24);
    for (const auto& v : m.vertices)
        CHECK(norm(v) == Approx(std::tanh(0.7)).epsilon(1e-12));

    const InscribedBall ib = optimal_inball(build_cell({3, 3}));
    const Mesh off = mesh_ball(ib, 24);
    double lo = 1e9, hi = 0;
    const Point3 c = klein_coords(ib.center);
    for (const auto& v : off.vertices) {
        CHECK(distance(lift(v), ib.center) == Approx(ib.radius).epsilon(1e-9));
        const double e = std::hypot(v[0] - c[0], v[1] - c[1], v[2] - c[2]);
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    CHECK(hi > lo * 1.01);

    InscribedBall dot = ib;
    dot.radius = 0.0;
    for (const auto& v : mesh_ball(dot, 8).vertices)
        CHECK(std::hypot(v[0] - c[0], v[1] - c[1], v[2] - c[2]) < 1e-12);
}

TEST_CASE("tangent horoball meshes touch without overlapping") {
    const CoxeterCell cell = build_cell({4, 4});
    const TwoHoroballConfig cfg = two_horoball_config(cell, 0.5);
    const Mesh m0 = mesh_horoball(cfg.ball0, 64);
    const Mesh m2 = mesh_horoball(cfg.ball2, 64);
    // No vertex of one lies inside the other beyond tolerance.
    for (const auto& v : m0.vertices) {
        if (norm(v) > 1 - 1e-9)
            continue;
        CHECK(bilinear(lift(v), cfg.ball2.b) <= -1.0 + 1e-6);
    }
    double gap = 1e9;
    const Point3 p = klein_coords(cfg.touch_point);
    for (const auto& v : m2.vertices)
        gap = std::min(gap, std::hypot(v[0] - p[0], v[1] - p[1], v[2] - p[2]));
    for (const auto& v : m0.vertices)
        gap = std::min(gap, std::hypot(v[0] - p[0], v[1] - p[1], v[2] - p[2]));
    CHECK(gap < 0.05);
}

TEST_CASE("export formats") {
    Scene empty;
    const std::string obj = export_obj(empty);
    CHECK(count_lines(obj, "v ") == 0);
    CHECK(count_lines(obj, "f ") == 0);
    CHECK(count_lines(obj, "#") == 1);

    Scene tri;
    tri.meshes.push_back({{{0, 0, 0}, {0.5, 0, 0}, {0, 0.5, 0}}, {{0, 1, 2}}, "cell face"});
    const std::string o = export_obj(tri);
    CHECK(count_lines(o, "v ") == 3);
    CHECK(count_lines(o, "f ") == 1);
    CHECK(o.find("o cell_face\n") != std::string::npos);
    CHECK(o.find("f 1 2 3\n") != std::string::npos);

    const std::string ply = export_ply(tri);
    const std::string header_end = "end_header\n";
    const auto pos = ply.find(header_end);
    REQUIRE(pos != std::string::npos);
    CHECK(ply.find("format binary_little_endian 1.0") != std::string::npos);
    CHECK(ply.size() - pos - header_end.size() == 3 * 3 * sizeof(double) + 1 + 3 * 4);
    double x1 = 0;
    std::memcpy(&x1, ply.data() + pos + header_end.size() + 3 * sizeof(double), sizeof(double));
    CHECK(x1 == 0.5);

    CHECK(parse_export_format("ply") == ExportFormat::Ply);
    CHECK_THROWS_AS(parse_export_format("stl"), InvalidInput);
}

TEST_CASE("json round trip") {
    Scene s;
    s.meshes.push_back(mesh_horoball(max_one_horoball(build_cell({3, 3}), 2).ball, 12));
    s.meshes.push_back(mesh_cell(build_cell({3, 3})));
    s.metadata = {{"symbol", "{inf,3,3,inf}"}, {"density", 0.818808}};
    const std::string text = export_json(s);
    const Scene back = import_json(text);
    REQUIRE(back.meshes.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(back.meshes[i].part_label == s.meshes[i].part_label);
        CHECK(back.meshes[i].triangles == s.meshes[i].triangles);
        REQUIRE(back.meshes[i].vertices.size() == s.meshes[i].vertices.size());
        CHECK(std::memcmp(back.meshes[i].vertices.data(), s.meshes[i].vertices.data(),
                          s.meshes[i].vertices.size() * sizeof(Point3)) == 0);
    }
    CHECK(back.metadata == s.metadata);
    CHECK(export_json(back) == text);
    CHECK_THROWS_AS(import_json("{\"schema\": \"other\"}"), InvalidInput);
    CHECK_THROWS_AS(import_json("not json"), InvalidInput);
}

TEST_CASE("density csv") {
    DensityCurve c;
    c.samples = {{0.25, 0.5}, {0.5, 0.8188080123}};
    CHECK(density_csv(c) == "t,density\n0.250000,0.500000\n0.500000,0.818808\n");
}

TEST_CASE("write errors") {
    CHECK_THROWS_AS(write_file("/nonexistent-dir/x.obj", "x"), IoError);
}
