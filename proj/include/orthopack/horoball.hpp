#pragma once

#include <utility>
#include <vector>

#include "orthopack/coxeter.hpp"
#include "orthopack/lorentz.hpp"
#include "orthopack/volume.hpp"

namespace orthopack {

/// A horoball stored as a null vector b: the boundary horosphere is
/// {x : <x,x> = -1, <x,b> = -1} and the interior is <x,b> > -1. The scale of
/// b encodes the size (larger b, smaller ball).
struct Horoball {
    LorentzVector center; // null, x0 = 1
    LorentzVector b;      // null, future pointing

    static Horoball from_null_vector(const LorentzVector& b);

    /// Parameter s of the horosphere (1,0,0,s)-form after moving the center to (1,0,0,1).
    double s_param() const;
};

/// Two rotations carrying the ideal point `a` to (1,0,0,1); fixes (1,0,0,0).
Transform canonical_transform(const LorentzVector& a, const Tolerance& tol = {});

Horoball horosphere_through_point(const LorentzVector& center, const LorentzVector& p, const Tolerance& tol = {});

/// Polar parametrisation of the canonical horosphere (center (0,0,1) in the
/// Klein ball, through (0,0,s)).
Point3 canonical_horosphere_point(double s, double theta, double phi);
/// Same point mapped back to the frame of `ball`.
Point3 horosphere_point(const Horoball& ball, double theta, double phi);

/// Left side of 2(x^2+y^2)/(1-s) + 4(z-(1+s)/2)^2/(1-s)^2 = 1, minus one.
double horosphere_equation_residual(double s, const Point3& p);

/// min over the horosphere of <x,u>; it equals sinh of the signed distance
/// from the plane, so the horoball stays on the positive side iff >= 0.
/// Closed form (beta^2 - 1) / (2 beta), beta = <b,u>.
double clearance(const Horoball& ball, const Hyperplane& u);

/// <b1,b2>: -2 at tangency, <= -2 iff the interiors are disjoint.
double contact(const Horoball& a, const Horoball& b);

struct OneHoroballConfig {
    int vertex_index = 2;
    int touching_face = 2;
    Horoball ball;
    LorentzVector touch_point;
};

struct TwoHoroballConfig {
    double touch_t = 0.0;
    Horoball ball0; // at a0
    Horoball ball2; // at a2
    LorentzVector touch_point;
};

struct FeasibleRange {
    double lo = 0.0;
    double hi = 0.0;
    bool degenerate() const { return hi - lo < 1e-9; }
};

struct DensityCurve {
    std::vector<std::pair<double, double>> samples; // (touch_t, density)
    FeasibleRange feasible;
};

struct OptimizationResult {
    double touch_t = 0.0;
    DensityEstimate density;
    TwoHoroballConfig config;
    DensityCurve curve;
};

/// Largest horoball at vertex a_{vertex_index} that does not cross any face
/// missing that vertex; it touches the nearest such face at the orthogonal
/// projection of the vertex.
OneHoroballConfig max_one_horoball(const CoxeterCell& cell, int vertex_index);

/// Horoballs at a0 and a2 tangent at (1-t) a2 + t a0 (raw vertex representatives).
TwoHoroballConfig two_horoball_config(const CoxeterCell& cell, double touch_t);

/// Closed interval of touch_t for which neither ball crosses a face missing its center.
FeasibleRange feasible_range(const CoxeterCell& cell);

/// True when every horoball of the configuration clears all non-incident faces.
bool is_valid(const CoxeterCell& cell, const TwoHoroballConfig& config, double slack = 1e-9);

DensityEstimate density(const CoxeterCell& cell, const OneHoroballConfig& config, const VolumeResult& volume);
DensityEstimate density(const CoxeterCell& cell, const TwoHoroballConfig& config, const VolumeResult& volume);

/// 256-point scan of the feasible interval plus golden-section refinement
/// around the best sample. Exact ties (relative 1e-12) go to the larger t.
OptimizationResult optimize_density(const CoxeterCell& cell, const VolumeResult& volume, int grid = 256);

} // namespace orthopack
