#pragma once

#include <cstddef>
#include <functional>

namespace orthopack {

struct QuadratureResult {
    double value = 0.0;
    double est_error = 0.0;
    std::size_t evaluations = 0;
};

struct QuadratureOptions {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;
    std::size_t max_evaluations = 20'000'000;
};

/// Globally adaptive cubature over [0,1]^2. Each cell is evaluated with a
/// tensor 8-point Gauss-Legendre rule and with the same rule on its four
/// quadrants; the difference is the error estimate. The cell with the largest
/// estimate is split until the total estimate meets the tolerance. Summation
/// order is fixed, so results are reproducible bit for bit.
QuadratureResult integrate_unit_square(const std::function<double(double, double)>& f,
                                       const QuadratureOptions& opts = {});

/// Same scheme on [a,b] in one dimension.
QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& opts = {});

} // namespace orthopack
