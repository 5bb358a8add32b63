#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace tubenergy {

// Gauss-Legendre nodes/weights on [-1,1].
struct GaussRule {
    std::vector<double> x, w;
};

const GaussRule& gauss8();
const GaussRule& gauss16();

// integral of f over [a,b] with a single n-point rule
template <typename F>
double gauss_panel(F&& f, double a, double b, const GaussRule& rule) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i)
        s += rule.w[i] * f(mid + half * rule.x[i]);
    return half * s;
}

// Adaptive composite Gauss: bisect until the 8- vs 16-point estimates agree.
// tol is absolute per call; integrands with isolated kinks converge fine.
double adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-10, int max_depth = 32);

// Periodic midpoint nodes: (i + 1/2) * 2pi/n.
std::vector<double> midpoint_grid(int n);
// Uniform nodes offset by half a cell relative to midpoint_grid: i * 2pi/n.
std::vector<double> offset_grid(int n);

// Geometric panel breakpoints from a toward b; first panel ~ first_width.
std::vector<double> graded_panels(double a, double b, double first_width, double ratio = 1.5);

} // namespace tubenergy
