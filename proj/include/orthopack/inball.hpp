#pragma once

#include <array>
#include <utility>
#include <vector>

#include "orthopack/coxeter.hpp"
#include "orthopack/lorentz.hpp"
#include "orthopack/volume.hpp"

namespace orthopack {

using FacePair = std::pair<int, int>;

struct InscribedBall {
    LorentzVector center; // <x,x> = -1, x0 > 0
    double radius = 0.0;
    std::vector<int> tangent_faces;
    std::vector<FacePair> bisector_choice;
};

/// u_i - u_j. Points x with <x,s> = 0 are equidistant from both planes on the
/// side where <x,u_i> and <x,u_j> share a sign.
LorentzVector bisector(const Hyperplane& ui, const Hyperplane& uj);

/// Common point of three bisector planes, normalised to a proper point with
/// x0 > 0. With `cell` given, the point must also be strictly interior.
/// Throws InvalidInput for dependent forms or a non-proper / exterior solution.
LorentzVector center_from_bisectors(const std::array<LorentzVector, 3>& s, const CoxeterCell* cell = nullptr);

/// Best ball over all triples of face-pair bisectors whose pairs connect four
/// faces. Ties keep the lexicographically first triple.
InscribedBall optimal_inball(const CoxeterCell& cell);

DensityEstimate inball_density(const InscribedBall& ball, const VolumeResult& volume);
DensityEstimate inball_density(const CoxeterCell& cell, double tol = kDefaultVolumeTol);

} // namespace orthopack
