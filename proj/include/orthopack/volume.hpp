#pragma once

#include <string_view>

#include "orthopack/coxeter.hpp"

namespace orthopack {

struct Horoball;

inline constexpr double kDefaultVolumeTol = 5e-4;

enum class VolumeMethod { ClosedForm, CuspDecomposedQuadrature };

std::string_view to_string(VolumeMethod m);

struct VolumeResult {
    double value = 0.0;
    double est_error = 0.0;
    VolumeMethod method = VolumeMethod::ClosedForm;
};

struct DensityEstimate {
    double value = 0.0;
    double est_error = 0.0;
};

/// pi (sinh 2r - 2r); series form for small r.
double ball_volume(double radius);

/// Volume of the truncated orthoscheme. The ideal vertex a2 is sent to
/// vertical infinity of the upper half-space, where the cell is the region
/// above the hemispheres of the faces missing a2. A horoball at a2 (the
/// largest one clear of those faces, shrunk by hyperbolic distance
/// `chop_shrink`) is removed and its sector added in closed form; the rest is
/// a 2-D integral over the projected faces. Relative error target `tol`.
VolumeResult cell_volume(const CoxeterCell& cell, double tol = kDefaultVolumeTol, double chop_shrink = 1.0);

/// Volume of the part of `ball` inside the cell: (base area) / (2 h^2) with
/// the center at vertical infinity, i.e. half the horospherical cross-section
/// area. Throws InvalidInput if the center is not an ideal vertex of the cell
/// or the ball crosses a face missing its center.
double horoball_sector_volume(const Horoball& ball, const CoxeterCell& cell);

} // namespace orthopack
