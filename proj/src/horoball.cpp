#include "orthopack/horoball.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <fmt/format.h>

#include "orthopack/error.hpp"

namespace orthopack {

namespace {

bool on_plane(const LorentzVector& x, const LorentzVector& u) {
    return std::abs(bilinear(x, u)) <= 1e-9 * std::max(1.0, x.euclidean_norm());
}

// Root of a monotone function on [a, b] with f(a), f(b) of opposite signs.
double bisect(const std::function<double(double)>& f, double a, double b) {
    double fa = f(a);
    for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

double min_clearance(const CoxeterCell& cell, const Horoball& ball) {
    double worst = std::numeric_limits<double>::infinity();
    for (int f = 0; f < 5; ++f)
        if (!on_plane(ball.center, cell.normal(f)))
            worst = std::min(worst, clearance(ball, cell.normals[f]));
    return worst;
}

void require_two_ideal(const CoxeterCell& cell) {
    if (cell.vertex_classes[0] != PointClass::Ideal || cell.vertex_classes[2] != PointClass::Ideal)
        throw InvalidInput(fmt::format("{} does not have both a0 and a2 ideal; two-horoball packings need "
                                       "{{inf,3,6,inf}}, {{inf,4,4,inf}} or {{inf,6,3,inf}}",
                                       cell.symbol.to_string()));
}

} // namespace

Horoball Horoball::from_null_vector(const LorentzVector& b) {
    const LorentzVector fb = orient_future(b);
    if (!(fb[0] > 0.0))
        throw InvalidInput("horoball vector must have x0 != 0");
    return {fb * (1.0 / fb[0]), fb};
}

double Horoball::s_param() const {
    const double k2 = b[0] * b[0];
    return (k2 - 1.0) / (k2 + 1.0);
}

Transform canonical_transform(const LorentzVector& a, const Tolerance& tol) {
    if (classify(a, tol) != PointClass::Ideal)
        throw InvalidInput("canonical transform needs an ideal point");
    return rotation_to_pole(a);
}

Horoball horosphere_through_point(const LorentzVector& center, const LorentzVector& p, const Tolerance& tol) {
    if (classify(center, tol) != PointClass::Ideal)
        throw InvalidInput("horoball center must be ideal");
    const LorentzVector c = orient_future(center);
    const LorentzVector x = normalize_proper(p);
    const double cp = bilinear(x, c);
    if (!(cp < 0.0) || std::abs(cp) < 1e-14 * c.euclidean_norm())
        throw InvalidInput("point coincides with the horoball center");
    return Horoball::from_null_vector(c * (-1.0 / cp));
}

Point3 canonical_horosphere_point(double s, double theta, double phi) {
    const double rad = std::sqrt((1.0 - s) / 2.0);
    return {rad * std::cos(theta) * std::sin(phi), rad * std::sin(theta) * std::sin(phi),
            (1.0 + s) / 2.0 + (1.0 - s) / 2.0 * std::cos(phi)};
}

Point3 horosphere_point(const Horoball& ball, double theta, double phi) {
    const Point3 p = canonical_horosphere_point(ball.s_param(), theta, phi);
    const Transform back = canonical_transform(ball.center).inverse();
    return klein_coords(back(from_klein(p)));
}

double horosphere_equation_residual(double s, const Point3& p) {
    const double zc = p[2] - (1.0 + s) / 2.0;
    return 2.0 * (p[0] * p[0] + p[1] * p[1]) / (1.0 - s) + 4.0 * zc * zc / ((1.0 - s) * (1.0 - s)) - 1.0;
}

double clearance(const Horoball& ball, const Hyperplane& u) {
    const double beta = bilinear(ball.b, u.normal());
    if (!(beta > 0.0))
        return -std::numeric_limits<double>::infinity();
    return (beta * beta - 1.0) / (2.0 * beta);
}

double contact(const Horoball& a, const Horoball& b) {
    return bilinear(a.b, b.b);
}

OneHoroballConfig max_one_horoball(const CoxeterCell& cell, int vertex_index) {
    if (vertex_index < 0 || vertex_index > 2)
        throw InvalidInput("vertex index must be 0, 1 or 2");
    if (cell.vertex_classes[vertex_index] != PointClass::Ideal)
        throw InvalidInput(fmt::format("vertex a{} of {} is not ideal", vertex_index, cell.symbol.to_string()));
    const LorentzVector v = orient_future(cell.vertices[vertex_index]);

    int face = -1;
    double tightest = std::numeric_limits<double>::infinity();
    for (int f = 0; f < 5; ++f) {
        if (on_plane(v, cell.normal(f)))
            continue;
        const double d = bilinear(v, cell.normal(f));
        if (d < tightest) {
            tightest = d;
            face = f;
        }
    }
    if (face < 0)
        throw NumericalFailure("vertex lies on every face");

    const LorentzVector foot = project_to_plane(v, cell.normals[face]);
    OneHoroballConfig cfg{vertex_index, face, horosphere_through_point(v, foot), foot};
    if (min_clearance(cell, cfg.ball) < -1e-12)
        throw NumericalFailure("maximal horoball crosses a face of the cell");
    return cfg;
}

TwoHoroballConfig two_horoball_config(const CoxeterCell& cell, double touch_t) {
    require_two_ideal(cell);
    if (!(touch_t > 0.0 && touch_t < 1.0))
        throw InvalidInput(fmt::format("touch_t must lie in (0,1), got {}", touch_t));
    const LorentzVector& a0 = cell.vertices[0];
    const LorentzVector& a2 = cell.vertices[2];
    const LorentzVector p = a2 * (1.0 - touch_t) + a0 * touch_t;
    if (!(quadratic(p) < 0.0))
        throw NumericalFailure("touching point is not a proper point");
    return {touch_t, horosphere_through_point(a0, p), horosphere_through_point(a2, p), p};
}

bool is_valid(const CoxeterCell& cell, const TwoHoroballConfig& config, double slack) {
    return min_clearance(cell, config.ball0) >= -slack && min_clearance(cell, config.ball2) >= -slack &&
           contact(config.ball0, config.ball2) <= -2.0 + slack;
}

FeasibleRange feasible_range(const CoxeterCell& cell) {
    require_two_ideal(cell);
    // Ball at a2 grows with t, ball at a0 shrinks.
    auto g2 = [&](double t) { return min_clearance(cell, two_horoball_config(cell, t).ball2); };
    auto g0 = [&](double t) { return min_clearance(cell, two_horoball_config(cell, t).ball0); };
    constexpr double eps = 1e-12;
    if (!(g2(eps) > 0.0 && g2(1.0 - eps) < 0.0 && g0(eps) < 0.0 && g0(1.0 - eps) > 0.0))
        throw NumericalFailure("clearance functions do not bracket a feasible interval");
    const double hi = bisect(g2, eps, 1.0 - eps);
    const double lo = bisect(g0, eps, 1.0 - eps);
    if (lo > hi + 1e-9)
        throw NumericalFailure(fmt::format("empty feasible interval: [{}, {}]", lo, hi));
    if (lo > hi) {
        const double mid = 0.5 * (lo + hi);
        return {mid, mid};
    }
    return {lo, hi};
}

DensityEstimate density(const CoxeterCell& cell, const OneHoroballConfig& config, const VolumeResult& volume) {
    const double v = horoball_sector_volume(config.ball, cell) / volume.value;
    return {v, v * volume.est_error / volume.value};
}

DensityEstimate density(const CoxeterCell& cell, const TwoHoroballConfig& config, const VolumeResult& volume) {
    const double sectors = horoball_sector_volume(config.ball0, cell) + horoball_sector_volume(config.ball2, cell);
    const double v = sectors / volume.value;
    if (!(v > 0.0 && v < 1.0))
        throw NumericalFailure(fmt::format("density {} outside (0,1)", v));
    return {v, v * volume.est_error / volume.value};
}

OptimizationResult optimize_density(const CoxeterCell& cell, const VolumeResult& volume, int grid) {
    if (grid < 2)
        throw InvalidInput("density scan needs at least two samples");
    const FeasibleRange range = feasible_range(cell);
    auto eval = [&](double t) { return density(cell, two_horoball_config(cell, t), volume); };

    OptimizationResult out;
    out.curve.feasible = range;
    if (range.degenerate()) {
        const double t = 0.5 * (range.lo + range.hi);
        out.touch_t = t;
        out.density = eval(t);
        out.config = two_horoball_config(cell, t);
        out.curve.samples.emplace_back(t, out.density.value);
        return out;
    }

    constexpr double tie = 1e-12;
    double best_t = range.lo;
    double best = -1.0;
    std::size_t best_i = 0;
    for (int i = 0; i < grid; ++i) {
        const double t = i == grid - 1 ? range.hi : range.lo + (range.hi - range.lo) * i / (grid - 1);
        const double d = eval(t).value;
        out.curve.samples.emplace_back(t, d);
        if (d >= best * (1.0 - tie)) {
            best = std::max(best, d);
            best_t = t;
            best_i = static_cast<std::size_t>(i);
        }
    }

    // Golden-section refinement between the neighbours of the best sample.
    const auto& s = out.curve.samples;
    double a = s[best_i == 0 ? 0 : best_i - 1].first;
    double b = s[std::min(best_i + 1, s.size() - 1)].first;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = eval(c).value;
    double fd = eval(d).value;
    for (int it = 0; it < 80 && b - a > 1e-13; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = eval(c).value;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = eval(d).value;
        }
    }
    const double t_ref = 0.5 * (a + b);
    const double f_ref = eval(t_ref).value;
    if (f_ref > best * (1.0 + tie)) {
        best = f_ref;
        best_t = t_ref;
    }

    out.touch_t = best_t;
    out.density = eval(best_t);
    out.config = two_horoball_config(cell, best_t);
    return out;
}

} // namespace orthopack
