#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "orthopack/coxeter.hpp"
#include "orthopack/horoball.hpp"
#include "orthopack/inball.hpp"
#include "orthopack/volume.hpp"

using namespace orthopack;
using doctest::Approx;

namespace {

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

    Eigen::Vector3d direction() {
        std::normal_distribution<double> g;
        Eigen::Vector3d d(g(rng), g(rng), g(rng));
        return d.normalized();
    }
    LorentzVector vector() { return {uniform(-3, 3), uniform(-3, 3), uniform(-3, 3), uniform(-3, 3)}; }
    LorentzVector ideal() {
        const Eigen::Vector3d d = direction();
        return LorentzVector(1, d[0], d[1], d[2]) * uniform(0.3, 3.0);
    }
    LorentzVector proper(double max_radius = 0.95) {
        const Eigen::Vector3d d = direction() * uniform(0.0, max_radius);
        return LorentzVector(1, d[0], d[1], d[2]) * uniform(0.3, 3.0);
    }
    Horoball horoball() {
        const LorentzVector c = ideal();
        return Horoball::from_null_vector(c * (uniform(0.3, 4.0) / c[0]));
    }
    SchlafliSymbol symbol() {
        const auto& all = admissible_symbols();
        return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
    }
};

} // namespace

TEST_CASE("form is bilinear and symmetric") {
    Gen g(101);
    for (int i = 0; i < 200; ++i) {
        const LorentzVector x = g.vector(), y = g.vector(), z = g.vector();
        const double a = g.uniform(-2, 2), b = g.uniform(-2, 2);
        const double lhs = bilinear(x * a + y * b, z);
        const double rhs = a * bilinear(x, z) + b * bilinear(y, z);
        const double scale = std::max(1.0, x.euclidean_norm() * z.euclidean_norm() + y.euclidean_norm() * z.euclidean_norm());
        CHECK(std::abs(lhs - rhs) <= 1e-12 * scale * 4);
        CHECK(bilinear(x, y) == bilinear(y, x));
    }
}

TEST_CASE("ideal points land on the sphere, proper ones inside") {
    Gen g(102);
    for (int i = 0; i < 200; ++i) {
        const Point3 k = klein_coords(g.ideal());
        CHECK(std::hypot(k[0], k[1], k[2]) == Approx(1.0).epsilon(1e-9));
        const Point3 p = klein_coords(g.proper());
        CHECK(std::hypot(p[0], p[1], p[2]) < 1.0);
    }
}

TEST_CASE("tangency criterion agrees with the geodesic gap") {
    Gen g(103);
    int disjoint = 0, overlapping = 0;
    for (int i = 0; i < 100; ++i) {
        const Horoball a = g.horoball(), b = g.horoball();
        const double c = contact(a, b);
        const double gap = oracle::geodesic_gap(a.b, b.b);
        CAPTURE(c);
        CAPTURE(gap);
        CHECK((c <= -2.0) == (gap >= 0.0));
        CHECK(gap == Approx(std::log(-c / 2.0)).epsilon(1e-6).scale(1.0));
        (c <= -2.0 ? disjoint : overlapping)++;
    }
    CHECK(disjoint > 10);
    CHECK(overlapping > 10);
}

TEST_CASE("Canonical horosphere equation holds on every parametrised horosphere point") {
    Gen g(104);
    for (int i = 0; i < 50; ++i) {
        const Horoball b = g.horoball();
        const double s = b.s_param();
        CHECK(s > -1.0);
        CHECK(s < 1.0);
        for (int k = 0; k < 10; ++k) {
            const Point3 p = canonical_horosphere_point(s, g.uniform(0, 2 * std::numbers::pi), g.uniform(0, std::numbers::pi));
            CHECK(std::abs(horosphere_equation_residual(s, p)) < 1e-12);
        }
    }
}

TEST_CASE("horosphere through a point contains it") {
    Gen g(105);
    for (int i = 0; i < 100; ++i) {
        const LorentzVector c = g.ideal();
        const LorentzVector p = g.proper(0.9);
        const Horoball b = horosphere_through_point(c, p);
        CHECK(bilinear(normalize_proper(p), b.b) == Approx(-1.0).epsilon(1e-9));
        CHECK(std::abs(quadratic(b.b)) <= 1e-9 * b.b.euclidean_norm() * b.b.euclidean_norm());
    }
}

TEST_CASE("clearance closed form matches sampling") {
    Gen g(106);
    for (int i = 0; i < 15; ++i) {
        const Horoball b = g.horoball();
        const Eigen::Vector3d n = g.direction();
        const Hyperplane u = Hyperplane::from_normal({g.uniform(-0.5, 0.5), n[0], n[1], n[2]});
        if (bilinear(b.b, u.normal()) <= 0.0)
            continue;
        const double closed = clearance(b, u);
        const double sampled = oracle::sampled_clearance(b, u.normal(), 200);
        CHECK(sampled >= closed - 1e-9);
        CHECK(sampled <= closed + 0.05 * (1 + std::abs(closed)));
    }
}

TEST_CASE("full Gram reproduction for random placements") {
    Gen g(107);
    for (int i = 0; i < 40; ++i) {
        const SchlafliSymbol s = g.symbol();
        const CoxeterCell cell = build_cell(s, g.uniform(-1, 1));
        CHECK(cell.gram_residual() <= 1e-12);
        CHECK(cell.duality_residual() <= 1e-9);
        CHECK(std::abs(quadratic(cell.normal(4)) - 1) <= 1e-9);
    }
}

TEST_CASE("monotone sizes") {
    Gen g(108);
    for (int i = 0; i < 50; ++i) {
        const double r = g.uniform(0, 2);
        CHECK(ball_volume(r + 1e-3) > ball_volume(r));
    }
    const CoxeterCell cell = build_cell({3, 5});
    const Horoball top = max_one_horoball(cell, 2).ball;
    double prev = 1e9;
    for (int k = 0; k < 20; ++k) {
        const Horoball b = Horoball::from_null_vector(top.b * (1.0 + 0.1 * k));
        const double v = horoball_sector_volume(b, cell);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("densities do not depend on placement") {
    Gen g(109);
    for (int i = 0; i < 8; ++i) {
        const SchlafliSymbol s = g.symbol();
        const double t = g.uniform(-1, 1);
        const CoxeterCell a = build_cell(s), b = build_cell(s, t);
        CHECK(density(b, max_one_horoball(b, 2), cell_volume(b)).value ==
              Approx(density(a, max_one_horoball(a, 2), cell_volume(a)).value).epsilon(1e-6));
        CHECK(optimal_inball(b).radius == Approx(optimal_inball(a).radius).epsilon(1e-9));
    }
}
