#include "orthopack/volume.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "orthopack/error.hpp"
#include "orthopack/horoball.hpp"
#include "orthopack/quadrature.hpp"

namespace orthopack {

namespace {

struct Point2 {
    double x, y;
};

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    if (pts.size() < 3)
        return pts;
    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0)
            --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0)
            --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

double polygon_area(const std::vector<Point2>& poly) {
    double a = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % poly.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * std::abs(a);
}

// Hemisphere of a plane not through the point at infinity, in half-space
// coordinates of the frame `t`.
struct Hemisphere {
    Point2 center;
    double radius;
};

Hemisphere hemisphere(const Transform& t, const LorentzVector& normal) {
    const LorentzVector u = t(normal);
    const double d = u[0] - u[3];
    if (std::abs(d) < 1e-14)
        throw NumericalFailure("face is vertical in the half-space frame");
    return {{u[1] / d, u[2] / d}, 1.0 / std::abs(d)};
}

bool same_point(const LorentzVector& a, const LorentzVector& b) {
    const Point3 ka = klein_coords(orient_future(a));
    const Point3 kb = klein_coords(orient_future(b));
    return std::abs(ka[0] - kb[0]) + std::abs(ka[1] - kb[1]) + std::abs(ka[2] - kb[2]) < 1e-9;
}

} // namespace

std::string_view to_string(VolumeMethod m) {
    return m == VolumeMethod::ClosedForm ? "closed-form" : "cusp-decomposed-quadrature";
}

double ball_volume(double radius) {
    if (radius < 0.0)
        throw InvalidInput("ball radius must be non-negative");
    const double x = 2.0 * radius;
    if (x < 1e-2) {
        // sinh x - x = x^3/6 + x^5/120 + x^7/5040 + ...
        const double x2 = x * x;
        return std::numbers::pi * x * x2 * (1.0 / 6.0 + x2 * (1.0 / 120.0 + x2 / 5040.0));
    }
    return std::numbers::pi * (std::sinh(x) - x);
}

VolumeResult cell_volume(const CoxeterCell& cell, double tol, double chop_shrink) {
    if (!(tol > 0.0))
        throw InvalidInput("volume tolerance must be positive");
    if (cell.vertex_classes[2] != PointClass::Ideal)
        throw InvalidInput("cell volume expects a2 to be ideal");

    const LorentzVector apex = orient_future(cell.vertices[2]);
    const Transform frame = rotation_to_pole(apex);
    const auto verts = cell.polyhedron_vertices();

    struct FacePatch {
        Hemisphere dome;
        std::vector<Point2> polygon; // counter-clockwise, singular corner first
        bool singular_corner = false;
    };
    std::vector<FacePatch> patches;
    double max_radius = 0.0;

    for (int f = 0; f < 5; ++f) {
        if (std::abs(bilinear(apex, cell.normal(f))) < 1e-9 * apex.euclidean_norm())
            continue;
        FacePatch patch{hemisphere(frame, cell.normal(f)), {}, false};
        max_radius = std::max(max_radius, patch.dome.radius);

        std::vector<std::pair<Point2, bool>> pts;
        for (const auto& v : verts) {
            if (same_point(v.point, apex))
                continue;
            const auto faces = cell.incident_faces(v.point);
            if (std::find(faces.begin(), faces.end(), f) == faces.end())
                continue;
            const Point3 h = to_half_space(v.point, apex);
            pts.push_back({{h[0], h[1]}, v.cls == PointClass::Ideal});
        }
        if (pts.size() < 3)
            throw NumericalFailure(fmt::format("face h{} has fewer than three vertices", f));
        Point2 c{0.0, 0.0};
        for (const auto& [p, ideal] : pts) {
            c.x += p.x / pts.size();
            c.y += p.y / pts.size();
        }
        std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
            return std::atan2(a.first.y - c.y, a.first.x - c.x) < std::atan2(b.first.y - c.y, b.first.x - c.x);
        });
        const auto ideal_it = std::find_if(pts.begin(), pts.end(), [](const auto& p) { return p.second; });
        if (std::count_if(pts.begin(), pts.end(), [](const auto& p) { return p.second; }) > 1)
            throw NumericalFailure(fmt::format("face h{} has more than one ideal vertex besides a2", f));
        if (ideal_it != pts.end()) {
            std::rotate(pts.begin(), ideal_it, pts.end());
            patch.singular_corner = true;
        }
        for (const auto& [p, ideal] : pts)
            patch.polygon.push_back(p);
        patches.push_back(std::move(patch));
    }

    const double chop_height = max_radius * std::exp(chop_shrink);
    const double inv_h2 = 1.0 / (2.0 * chop_height * chop_height);

    double base_area = 0.0;
    double remainder = 0.0;
    double error = 0.0;
    QuadratureOptions opts;
    opts.rel_tol = 0.25 * tol;
    for (const auto& patch : patches) {
        base_area += polygon_area(patch.polygon);
        const Point2 apex2 = patch.polygon.front();
        for (std::size_t k = 1; k + 1 < patch.polygon.size(); ++k) {
            const Point2 b = patch.polygon[k];
            const Point2 c = patch.polygon[k + 1];
            const double jac = std::abs(cross(apex2, b, c));
            const auto& dome = patch.dome;
            // Duffy map: (u,v) -> apex + u ((1-v) b + v c - apex); Jacobian u * jac.
            auto integrand = [&](double u, double v) {
                const double ex = (1.0 - v) * b.x + v * c.x - apex2.x;
                const double ey = (1.0 - v) * b.y + v * c.y - apex2.y;
                const double px = apex2.x + u * ex - dome.center.x;
                const double py = apex2.y + u * ey - dome.center.y;
                double z2;
                if (patch.singular_corner) {
                    // apex lies on the boundary circle: rho^2 - |apex - c + u e|^2 = -u (2<apex-c,e> + u|e|^2)
                    const double ax = apex2.x - dome.center.x;
                    const double ay = apex2.y - dome.center.y;
                    const double factor = -(2.0 * (ax * ex + ay * ey) + u * (ex * ex + ey * ey));
                    return jac * (0.5 / factor - u * inv_h2);
                }
                z2 = dome.radius * dome.radius - px * px - py * py;
                return u * jac * (0.5 / z2 - inv_h2);
            };
            const QuadratureResult q = integrate_unit_square(integrand, opts);
            remainder += q.value;
            error += q.est_error;
        }
    }
    const double sector = base_area * inv_h2;
    const double value = sector + remainder;
    if (!(value > 0.0) || error > tol * value)
        throw NumericalFailure(fmt::format("cell volume did not reach tolerance {}: {} +- {}", tol, value, error));
    return {value, error, VolumeMethod::CuspDecomposedQuadrature};
}

double horoball_sector_volume(const Horoball& ball, const CoxeterCell& cell) {
    const auto verts = cell.polyhedron_vertices();
    const auto it = std::find_if(verts.begin(), verts.end(), [&](const CellVertex& v) {
        return v.cls == PointClass::Ideal && same_point(v.point, ball.center);
    });
    if (it == verts.end())
        throw InvalidInput("horoball center is not an ideal vertex of the cell");

    for (int f = 0; f < 5; ++f) {
        if (std::abs(bilinear(ball.center, cell.normal(f))) < 1e-9)
            continue;
        if (clearance(ball, cell.normals[f]) < -1e-9)
            throw InvalidInput(fmt::format("horoball crosses face h{}; it is not a sector of the cell", f));
    }

    std::vector<Point2> base;
    for (const auto& v : verts) {
        if (&v == &*it)
            continue;
        const Point3 h = to_half_space(v.point, ball.center);
        base.push_back({h[0], h[1]});
    }
    const double area = polygon_area(convex_hull(base));
    const double height = ball.b[0]; // the frame rotation fixes x0
    return area / (2.0 * height * height);
}

} // namespace orthopack
