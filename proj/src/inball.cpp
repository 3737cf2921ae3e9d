#include "orthopack/inball.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/LU>

#include <fmt/format.h>

#include "orthopack/error.hpp"

namespace orthopack {

namespace {

constexpr double kTangency = 1e-8;

// Euclidean vector orthogonal to the three rows (cofactor expansion).
Eigen::Vector4d cross4(const Eigen::Vector4d& a, const Eigen::Vector4d& b, const Eigen::Vector4d& c) {
    Eigen::Vector4d out;
    for (int k = 0; k < 4; ++k) {
        Eigen::Matrix3d m;
        int col = 0;
        for (int j = 0; j < 4; ++j) {
            if (j == k)
                continue;
            m(0, col) = a[j];
            m(1, col) = b[j];
            m(2, col) = c[j];
            ++col;
        }
        out[k] = ((k % 2) ? -1.0 : 1.0) * m.determinant();
    }
    return out;
}

bool connected_over_four(const std::array<FacePair, 3>& pairs) {
    std::array<int, 5> parent;
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x];
        return x;
    };
    std::array<bool, 5> used{};
    for (auto [i, j] : pairs) {
        used[i] = used[j] = true;
        const int ri = find(i), rj = find(j);
        if (ri == rj)
            return false;
        parent[ri] = rj;
    }
    return std::count(used.begin(), used.end(), true) == 4;
}

} // namespace

LorentzVector bisector(const Hyperplane& ui, const Hyperplane& uj) {
    const LorentzVector s = ui.normal() - uj.normal();
    if (s.euclidean_norm() < 1e-14)
        throw InvalidInput("bisector of a plane with itself");
    return s;
}

LorentzVector center_from_bisectors(const std::array<LorentzVector, 3>& s, const CoxeterCell* cell) {
    // <x,s> = x^T J s, so x is Euclidean-orthogonal to J s.
    auto flip = [](const LorentzVector& v) {
        Eigen::Vector4d w = v.coeffs();
        w[0] = -w[0];
        return w;
    };
    const Eigen::Vector4d a = flip(s[0]), b = flip(s[1]), c = flip(s[2]);
    const Eigen::Vector4d x = cross4(a, b, c);
    if (x.norm() < 1e-12 * a.norm() * b.norm() * c.norm())
        throw InvalidInput("bisector forms are linearly dependent");
    const LorentzVector p(x);
    if (!(quadratic(p) < 0.0))
        throw InvalidInput("bisector planes meet outside the hyperbolic space");
    const LorentzVector center = normalize_proper(p);
    if (cell) {
        for (int i = 0; i < 5; ++i)
            if (!(bilinear(center, cell->normal(i)) > 0.0))
                throw InvalidInput(fmt::format("bisector center lies outside face h{}", i));
    }
    return center;
}

InscribedBall optimal_inball(const CoxeterCell& cell) {
    std::vector<FacePair> pairs;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            pairs.emplace_back(i, j);

    InscribedBall best;
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a + 1; b < pairs.size(); ++b)
            for (std::size_t c = b + 1; c < pairs.size(); ++c) {
                const std::array<FacePair, 3> choice{pairs[a], pairs[b], pairs[c]};
                if (!connected_over_four(choice))
                    continue;
                std::array<LorentzVector, 3> s;
                for (int k = 0; k < 3; ++k)
                    s[k] = bisector(cell.normals[choice[k].first], cell.normals[choice[k].second]);
                LorentzVector x;
                try {
                    x = center_from_bisectors(s, &cell);
                } catch (const InvalidInput&) {
                    continue;
                }
                const double r = plane_distance(x, cell.normals[choice[0].first]);
                bool ok = true;
                for (int i = 0; i < 5 && ok; ++i)
                    ok = plane_distance(x, cell.normals[i]) >= r - kTangency;
                if (!ok || r <= best.radius * (1.0 + 1e-12))
                    continue;
                best.center = x;
                best.radius = r;
                best.bisector_choice.assign(choice.begin(), choice.end());
            }

    if (best.radius <= 0.0)
        throw NumericalFailure(fmt::format("no valid inscribed ball for {}", cell.symbol.to_string()));
    for (int i = 0; i < 5; ++i)
        if (std::abs(plane_distance(best.center, cell.normals[i]) - best.radius) <= kTangency)
            best.tangent_faces.push_back(i);
    return best;
}

DensityEstimate inball_density(const InscribedBall& ball, const VolumeResult& volume) {
    const double v = ball_volume(ball.radius) / volume.value;
    if (!(v > 0.0 && v < 1.0))
        throw NumericalFailure(fmt::format("inball density {} outside (0,1)", v));
    return {v, v * volume.est_error / volume.value};
}

DensityEstimate inball_density(const CoxeterCell& cell, double tol) {
    return inball_density(optimal_inball(cell), cell_volume(cell, tol));
}

} // namespace orthopack
