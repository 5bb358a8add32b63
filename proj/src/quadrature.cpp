#include "tubenergy/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace tubenergy {

namespace {

GaussRule make_gauss(int n) {
    // Newton on Legendre P_n with the usual cosine initial guess.
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.x[n - 1 - i] = x;
        r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

} // namespace

const GaussRule& gauss8() {
    static const GaussRule r = make_gauss(8);
    return r;
}

const GaussRule& gauss16() {
    static const GaussRule r = make_gauss(16);
    return r;
}

namespace {

double adaptive_rec(const std::function<double(double)>& f, double a, double b, double tol,
                    int depth, int max_depth) {
    const double coarse = gauss_panel(f, a, b, gauss8());
    const double fine = gauss_panel(f, a, b, gauss16());
    if (std::abs(fine - coarse) <= tol || depth >= max_depth) return fine;
    const double mid = 0.5 * (a + b);
    return adaptive_rec(f, a, mid, 0.5 * tol, depth + 1, max_depth) +
           adaptive_rec(f, mid, b, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

double adaptive_gauss(const std::function<double(double)>& f, double a, double b, double tol,
                      int max_depth) {
    if (a == b) return 0.0;
    return adaptive_rec(f, a, b, tol, 0, max_depth);
}

std::vector<double> midpoint_grid(int n) {
    std::vector<double> g(n);
    const double h = 2.0 * std::numbers::pi / n;
    for (int i = 0; i < n; ++i) g[i] = (i + 0.5) * h;
    return g;
}

std::vector<double> offset_grid(int n) {
    std::vector<double> g(n);
    const double h = 2.0 * std::numbers::pi / n;
    for (int i = 0; i < n; ++i) g[i] = i * h;
    return g;
}

std::vector<double> graded_panels(double a, double b, double first_width, double ratio) {
    std::vector<double> pts{a};
    double w = std::max(first_width, (b - a) * 1e-14);
    double x = a + w;
    while (x < b) {
        pts.push_back(x);
        w *= ratio;
        x += w;
    }
    pts.push_back(b);
    return pts;
}

} // namespace tubenergy
