#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "orthopack/coxeter.hpp"
#include "orthopack/error.hpp"
#include "orthopack/horoball.hpp"
#include "orthopack/inball.hpp"
#include "orthopack/volume.hpp"

using namespace orthopack;
using doctest::Approx;

namespace {

std::vector<Eigen::Vector3d> klein_points(const std::vector<LorentzVector>& xs) {
    std::vector<Eigen::Vector3d> out;
    for (const auto& x : xs)
        out.push_back(oracle::klein(x));
    return out;
}

} // namespace

TEST_CASE("ball volume") {
    CHECK(ball_volume(0.0) == 0.0);
    const double shells = oracle::integrate(
        [](double rho) { return 4 * std::numbers::pi * std::sinh(rho) * std::sinh(rho); }, 0.0, 1.0, 1e-12);
    CHECK(ball_volume(1.0) == Approx(shells).epsilon(1e-10));
    const double r = 1e-3;
    CHECK(ball_volume(r) == Approx(4.0 / 3 * std::numbers::pi * r * r * r).epsilon(1e-3));
    CHECK_THROWS_AS(ball_volume(-0.1), InvalidInput);
    double prev = 0;
    for (int i = 1; i < 50; ++i) {
        CHECK(ball_volume(0.05 * i) > prev);
        prev = ball_volume(0.05 * i);
    }
}

TEST_CASE("cell volume against the Klein cone quadrature") {
    // The truncated cell is the cone from a2 over the face h2.
    for (const auto& s : admissible_symbols()) {
        const CoxeterCell cell = build_cell(s);
        CAPTURE(s.to_string());
        const VolumeResult v = cell_volume(cell);
        CHECK(v.method == VolumeMethod::CuspDecomposedQuadrature);
        CHECK(v.est_error <= kDefaultVolumeTol * v.value);
        const double ref = oracle::klein_cone_volume(oracle::klein(cell.vertices[2]),
                                                     klein_points(oracle::outline_from(cell, 2)), nullptr, 1e-7);
        CHECK(v.value == Approx(ref).epsilon(1e-6));
    }
}

TEST_CASE("known volumes") {
    CHECK(cell_volume(build_cell({3, 3})).value == Approx(0.152661).epsilon(1e-5));
    // {3,3,6} orthoscheme volume times ten.
    CHECK(cell_volume(build_cell({3, 6})).value == Approx(0.4228923).epsilon(1e-6));
}

TEST_CASE("cusp chop level does not matter") {
    const CoxeterCell cell = build_cell({3, 3});
    const double a = cell_volume(cell, kDefaultVolumeTol, 0.5).value;
    const double b = cell_volume(cell, kDefaultVolumeTol, 2.0).value;
    CHECK(std::abs(a - b) <= 2 * kDefaultVolumeTol * a);
    const double c = cell_volume(build_cell({6, 3}), kDefaultVolumeTol, 0.3).value;
    const double d = cell_volume(build_cell({6, 3}), kDefaultVolumeTol, 3.0).value;
    CHECK(std::abs(c - d) <= 2 * kDefaultVolumeTol * c);
}

TEST_CASE("placement does not matter") {
    for (const auto& s : admissible_symbols()) {
        const double a = cell_volume(build_cell(s, 0.0)).value;
        const double b = cell_volume(build_cell(s, 0.4)).value;
        CHECK(std::abs(a - b) <= 2 * kDefaultVolumeTol * a);
    }
}

TEST_CASE("volume consistent with the inball density") {
    const CoxeterCell cell = build_cell({3, 3});
    const double r = optimal_inball(cell).radius;
    CHECK(ball_volume(r) / cell_volume(cell).value == Approx(0.2623649).epsilon(5e-4 / 0.2623649));
}

TEST_CASE("sector volume: closed form against both oracles") {
    const CoxeterCell cell = build_cell({3, 3});
    const Horoball ball = max_one_horoball(cell, 2).ball;
    const double closed = horoball_sector_volume(ball, cell);
    const double quad = oracle::klein_cone_volume(oracle::klein(cell.vertices[2]),
                                                  klein_points(oracle::outline_from(cell, 2)), &ball.b, 1e-9);
    CHECK(closed == Approx(quad).epsilon(1e-3));
    const double flat = oracle::intrinsic_sector_volume(cell.vertices[2], oracle::outline_from(cell, 2), ball.b);
    CHECK(closed == Approx(flat).epsilon(1e-10));
}

TEST_CASE("sector at a0 of (3,6)") {
    const CoxeterCell cell = build_cell({3, 6});
    const TwoHoroballConfig cfg = two_horoball_config(cell, 0.5);
    const double closed = horoball_sector_volume(cfg.ball0, cell);
    const double flat = oracle::intrinsic_sector_volume(cell.vertices[0], oracle::outline_from(cell, 0), cfg.ball0.b);
    CHECK(closed == Approx(flat).epsilon(1e-10));
}

TEST_CASE("sector shrink law") {
    const CoxeterCell cell = build_cell({4, 4});
    const Horoball ball = max_one_horoball(cell, 2).ball;
    const double v = horoball_sector_volume(ball, cell);
    // Moving the horosphere inward by ln 2 doubles b.
    const Horoball smaller = Horoball::from_null_vector(ball.b * 2.0);
    CHECK(horoball_sector_volume(smaller, cell) == Approx(v / 4).epsilon(1e-12));
    const Horoball tiny = Horoball::from_null_vector(ball.b * std::exp(0.7));
    CHECK(horoball_sector_volume(tiny, cell) == Approx(v * std::exp(-1.4)).epsilon(1e-12));
}

TEST_CASE("sector errors") {
    const CoxeterCell cell = build_cell({3, 3});
    // Centered at an ideal point that is not a vertex.
    const Horoball stray = Horoball::from_null_vector({1, 0, 0, 1});
    CHECK_THROWS_AS(horoball_sector_volume(stray, cell), InvalidInput);
    // Too large: crosses h2.
    const Horoball big = Horoball::from_null_vector(max_one_horoball(cell, 2).ball.b * 0.5);
    CHECK_THROWS_AS(horoball_sector_volume(big, cell), InvalidInput);
}
