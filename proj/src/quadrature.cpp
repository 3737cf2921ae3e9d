#include "orthopack/quadrature.hpp"

#include <array>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "orthopack/error.hpp"

namespace orthopack {

namespace {

// Gauss-Legendre, 8 points on [-1, 1].
constexpr std::array<double, 8> kNodes{-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                       -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                       0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kWeights{0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                         0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                         0.2223810344533745, 0.1012285362903763};

struct Box {
    double x0, x1, y0, y1;
    double value;
    double error;
};

double rule2d(const std::function<double(double, double)>& f, double x0, double x1, double y0, double y1) {
    const double hx = 0.5 * (x1 - x0);
    const double hy = 0.5 * (y1 - y0);
    const double cx = 0.5 * (x1 + x0);
    const double cy = 0.5 * (y1 + y0);
    double sum = 0.0;
    for (std::size_t i = 0; i < kNodes.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < kNodes.size(); ++j)
            row += kWeights[j] * f(cx + hx * kNodes[i], cy + hy * kNodes[j]);
        sum += kWeights[i] * row;
    }
    return sum * hx * hy;
}

Box evaluate(const std::function<double(double, double)>& f, double x0, double x1, double y0, double y1,
             std::size_t& evals) {
    const double xm = 0.5 * (x0 + x1);
    const double ym = 0.5 * (y0 + y1);
    const double coarse = rule2d(f, x0, x1, y0, y1);
    const double fine = rule2d(f, x0, xm, y0, ym) + rule2d(f, xm, x1, y0, ym) + rule2d(f, x0, xm, ym, y1) +
                        rule2d(f, xm, x1, ym, y1);
    evals += 5 * kNodes.size() * kNodes.size();
    if (!std::isfinite(fine))
        throw NumericalFailure("non-finite integrand value in cubature");
    return {x0, x1, y0, y1, fine, std::abs(fine - coarse)};
}

double rule1d(const std::function<double(double)>& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (b + a);
    double sum = 0.0;
    for (std::size_t i = 0; i < kNodes.size(); ++i)
        sum += kWeights[i] * f(c + h * kNodes[i]);
    return sum * h;
}

} // namespace

QuadratureResult integrate_unit_square(const std::function<double(double, double)>& f, const QuadratureOptions& opts) {
    std::size_t evals = 0;
    std::vector<Box> boxes;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            boxes.push_back(evaluate(f, 0.5 * i, 0.5 * (i + 1), 0.5 * j, 0.5 * (j + 1), evals));

    while (true) {
        double value = 0.0;
        double error = 0.0;
        std::size_t worst = 0;
        for (std::size_t k = 0; k < boxes.size(); ++k) {
            value += boxes[k].value;
            error += boxes[k].error;
            if (boxes[k].error > boxes[worst].error)
                worst = k;
        }
        if (error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(value)))
            return {value, error, evals};
        if (evals > opts.max_evaluations)
            throw NumericalFailure(fmt::format("cubature did not converge: estimate {} +- {} after {} evaluations",
                                               value, error, evals));
        const Box b = boxes[worst];
        const double xm = 0.5 * (b.x0 + b.x1);
        const double ym = 0.5 * (b.y0 + b.y1);
        boxes[worst] = evaluate(f, b.x0, xm, b.y0, ym, evals);
        boxes.push_back(evaluate(f, xm, b.x1, b.y0, ym, evals));
        boxes.push_back(evaluate(f, b.x0, xm, ym, b.y1, evals));
        boxes.push_back(evaluate(f, xm, b.x1, ym, b.y1, evals));
    }
}

QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& opts) {
    struct Piece {
        double a, b, value, error;
    };
    std::size_t evals = 0;
    auto eval = [&](double lo, double hi) {
        const double mid = 0.5 * (lo + hi);
        const double coarse = rule1d(f, lo, hi);
        const double fine = rule1d(f, lo, mid) + rule1d(f, mid, hi);
        evals += 3 * kNodes.size();
        if (!std::isfinite(fine))
            throw NumericalFailure("non-finite integrand value in quadrature");
        return Piece{lo, hi, fine, std::abs(fine - coarse)};
    };
    std::vector<Piece> pieces{eval(a, b)};
    while (true) {
        double value = 0.0;
        double error = 0.0;
        std::size_t worst = 0;
        for (std::size_t k = 0; k < pieces.size(); ++k) {
            value += pieces[k].value;
            error += pieces[k].error;
            if (pieces[k].error > pieces[worst].error)
                worst = k;
        }
        if (error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(value)))
            return {value, error, evals};
        if (evals > opts.max_evaluations)
            throw NumericalFailure(fmt::format("quadrature did not converge: estimate {} +- {}", value, error));
        const Piece p = pieces[worst];
        const double mid = 0.5 * (p.a + p.b);
        pieces[worst] = eval(p.a, mid);
        pieces.push_back(eval(mid, p.b));
    }
}

} // namespace orthopack
