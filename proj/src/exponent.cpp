#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "tubenergy/energy.hpp"
#include "tubenergy/quadrature.hpp"

namespace tubenergy {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Disjoint angular intervals on [0, 2pi), supporting intersection with an arc
// {psi : |psi - center| <= halfw} and total measure.
class ArcSet {
  public:
    static ArcSet full() {
        ArcSet s;
        s.iv_.push_back({0.0, kTwoPi});
        return s;
    }

    void intersect_arc(double center, double halfw) {
        if (halfw >= std::numbers::pi) return; // whole circle
        if (halfw <= 0.0) {
            iv_.clear();
            return;
        }
        double lo = std::fmod(center - halfw, kTwoPi);
        if (lo < 0) lo += kTwoPi;
        const double len = 2.0 * halfw;
        std::vector<std::pair<double, double>> arcs;
        if (lo + len <= kTwoPi) {
            arcs.push_back({lo, lo + len});
        } else {
            arcs.push_back({lo, kTwoPi});
            arcs.push_back({0.0, lo + len - kTwoPi});
        }
        std::vector<std::pair<double, double>> out;
        for (const auto& seg : iv_)
            for (const auto& a : arcs) {
                const double s = std::max(seg.first, a.first);
                const double e = std::min(seg.second, a.second);
                if (e > s) out.push_back({s, e});
            }
        iv_ = std::move(out);
    }

    double measure() const {
        double m = 0.0;
        for (const auto& seg : iv_) m += seg.second - seg.first;
        return m;
    }

  private:
    std::vector<std::pair<double, double>> iv_;
};

double clamp1(double x) { return std::max(-1.0, std::min(1.0, x)); }

// Angular measure of the circle of radius sigma about the origin clipped to
// the axis-aligned square with the given center and half-width.
double square_arc_measure(double sigma, double cx, double cy, double half) {
    ArcSet s = ArcSet::full();
    // x <= cx + half ; x >= cx - half ; y <= cy + half ; y >= cy - half
    s.intersect_arc(std::numbers::pi, std::numbers::pi - std::acos(clamp1((cx + half) / sigma)));
    s.intersect_arc(0.0, std::acos(clamp1((cx - half) / sigma)));
    s.intersect_arc(1.5 * std::numbers::pi,
                    std::numbers::pi - std::acos(clamp1((cy + half) / sigma)));
    s.intersect_arc(0.5 * std::numbers::pi, std::acos(clamp1((cy - half) / sigma)));
    return s.measure();
}

// Angular width of the circle of radius sigma about the origin inside the
// disc of radius rd centered at distance cn from the origin.
double disc_arc_width(double sigma, double cn, double rd) {
    if (rd <= 0.0) return 0.0;
    if (cn * sigma < 1e-300) return sigma < rd ? kTwoPi : 0.0;
    const double qd = (sigma * sigma + cn * cn - rd * rd) / (2.0 * sigma * cn);
    if (qd >= 1.0) return 0.0;
    if (qd <= -1.0) return kTwoPi;
    return 2.0 * std::acos(qd);
}

struct Cell {
    double cx, cy, half;
};

std::vector<std::vector<double>> point_model(const std::vector<double>& alphas,
                                             const std::vector<double>& deltas, double eps) {
    const std::size_t nA = alphas.size(), nD = deltas.size();
    std::vector<std::vector<double>> J(nA, std::vector<double>(nD, 0.0));
    const double dmin = *std::min_element(deltas.begin(), deltas.end());
    const double smin = dmin / 64.0;
    const double K = 10.0;

    std::vector<double> rd(nD), mdisc(nD);
    std::vector<Cell> stack{{0.0, 0.0, eps}};
    while (!stack.empty()) {
        const Cell c = stack.back();
        stack.pop_back();
        const double dist = std::hypot(c.cx, c.cy);
        bool split = c.half > std::max(smin, dist / K);
        for (double dl : deltas)
            split = split ||
                    (std::abs(dist - dl) < std::numbers::sqrt2 * c.half && c.half > dl / 32.0);
        if (split) {
            const double h = 0.5 * c.half;
            // fixed push order keeps traversal deterministic
            stack.push_back({c.cx - h, c.cy - h, h});
            stack.push_back({c.cx - h, c.cy + h, h});
            stack.push_back({c.cx + h, c.cy - h, h});
            stack.push_back({c.cx + h, c.cy + h, h});
            continue;
        }
        const double vol = 4.0 * c.half * c.half;
        // leaf: (z, t) = (cx, cy); transverse plane integrated radially
        const double G = (1.0 - std::cos(c.cy)) + (1.0 - std::cos(c.cx));
        const double G2 = G * G;
        const double c0x = std::sin(c.cx), c0y = -std::sin(c.cy);
        const double cn = std::hypot(c0x, c0y);
        const double sig_max = std::hypot(std::abs(c0x) + eps, std::abs(c0y) + eps);
        for (std::size_t k = 0; k < nD; ++k) {
            const double r2 = deltas[k] * deltas[k] - c.cx * c.cx - c.cy * c.cy;
            rd[k] = r2 > 0.0 ? std::sqrt(r2) : 0.0;
        }
        std::vector<double> brk = graded_panels(0.0, sig_max, std::max(G, smin) / 8.0, 1.5);
        for (std::size_t k = 0; k < nD; ++k) {
            if (rd[k] <= 0.0) continue;
            const double b1 = std::abs(cn - rd[k]);
            const double b2 = cn + rd[k];
            if (b1 > 0.0 && b1 < sig_max) brk.push_back(b1);
            if (b2 > 0.0 && b2 < sig_max) brk.push_back(b2);
        }
        // square clipping starts at these radii
        for (double e : {std::abs(c0x + eps), std::abs(c0x - eps), std::abs(c0y + eps),
                         std::abs(c0y - eps)})
            if (e > 0.0 && e < sig_max) brk.push_back(e);
        std::sort(brk.begin(), brk.end());
        brk.erase(std::unique(brk.begin(), brk.end(),
                              [](double a, double b) { return b - a < 1e-14; }),
                  brk.end());

        const GaussRule& gr = gauss8();
        for (std::size_t p = 0; p + 1 < brk.size(); ++p) {
            const double a0 = brk[p], b0 = brk[p + 1];
            if (b0 - a0 < 1e-15) continue;
            const double mid = 0.5 * (a0 + b0), hw = 0.5 * (b0 - a0);
            for (std::size_t g = 0; g < gr.x.size(); ++g) {
                const double sig = mid + hw * gr.x[g];
                const double wq = hw * gr.w[g];
                const double msq = square_arc_measure(sig, c0x, c0y, eps);
                if (msq <= 0.0) continue;
                for (std::size_t k = 0; k < nD; ++k)
                    mdisc[k] = rd[k] > 0.0 ? disc_arc_width(sig, cn, rd[k]) : 0.0;
                const double base = sig * sig + G2;
                for (std::size_t a = 0; a < nA; ++a) {
                    const double f = std::pow(base, -0.5 * alphas[a]) * sig * wq * vol;
                    for (std::size_t k = 0; k < nD; ++k) {
                        const double ang = std::max(0.0, msq - mdisc[k]);
                        if (ang > 0.0) J[a][k] += f * ang;
                    }
                }
            }
        }
    }
    return J;
}

std::vector<std::vector<double>> line_model(const std::vector<double>& alphas,
                                            const std::vector<double>& deltas, double eps) {
    const std::size_t nA = alphas.size(), nD = deltas.size();
    std::vector<std::vector<double>> J(nA, std::vector<double>(nD, 0.0));
    const double L = eps;
    const double dmin = *std::min_element(deltas.begin(), deltas.end());
    const GaussRule& gr = gauss8();

    std::vector<double> wdel(nD), seg(nA);
    const auto mp = graded_panels(0.0, eps, dmin / 16.0, 1.45);
    for (std::size_t pm = 0; pm + 1 < mp.size(); ++pm) {
        const double mmid = 0.5 * (mp[pm] + mp[pm + 1]), mhw = 0.5 * (mp[pm + 1] - mp[pm]);
        for (std::size_t gm = 0; gm < gr.x.size(); ++gm) {
            const double m = mmid + mhw * gr.x[gm];
            const double wm = mhw * gr.w[gm];
            const double cm = std::cos(m);
            const double q = 2.0 * (1.0 - cm);
            const double dmax = 2.0 * (eps - m);
            if (dmax <= 0.0) continue;
            auto dp = graded_panels(0.0, dmax,
                                    std::max(q / std::max(cm, 1e-9), dmin / 16.0) / 8.0, 1.45);
            for (std::size_t k = 0; k < nD; ++k) {
                const double r2 = 2.0 * (deltas[k] * deltas[k] - 2.0 * m * m);
                const double b = r2 > 0.0 ? std::sqrt(r2) : 0.0;
                if (b > 0.0 && b < dmax) dp.push_back(b);
            }
            std::sort(dp.begin(), dp.end());
            dp.erase(std::unique(dp.begin(), dp.end(),
                                 [](double a, double b) { return b - a < 1e-15; }),
                     dp.end());
            for (std::size_t pd = 0; pd + 1 < dp.size(); ++pd) {
                const double dmid = 0.5 * (dp[pd] + dp[pd + 1]),
                             dhw = 0.5 * (dp[pd + 1] - dp[pd]);
                for (std::size_t gd = 0; gd < gr.x.size(); ++gd) {
                    const double d = dmid + dhw * gr.x[gd];
                    const double wd = dhw * gr.w[gd];
                    const double sh = 2.0 * cm * std::sin(0.5 * d);
                    const double ch = 2.0 - 2.0 * cm * std::cos(0.5 * d);
                    const double G2 = sh * sh + ch * ch;
                    for (std::size_t k = 0; k < nD; ++k) {
                        const double r2 = 2.0 * (deltas[k] * deltas[k] - 2.0 * m * m) - d * d;
                        wdel[k] = r2 > 0.0 ? std::sqrt(r2) : 0.0;
                    }
                    std::vector<double> wp =
                        graded_panels(0.0, 2.0 * L, std::max(std::sqrt(G2), 1e-12) / 4.0, 1.5);
                    for (std::size_t k = 0; k < nD; ++k)
                        if (wdel[k] > 0.0 && wdel[k] < 2.0 * L) wp.push_back(wdel[k]);
                    std::sort(wp.begin(), wp.end());
                    wp.erase(std::unique(wp.begin(), wp.end(),
                                         [](double a, double b) { return b - a < 1e-15; }),
                             wp.end());
                    for (std::size_t pw = 0; pw + 1 < wp.size(); ++pw) {
                        const double wmid = 0.5 * (wp[pw] + wp[pw + 1]),
                                     whw = 0.5 * (wp[pw + 1] - wp[pw]);
                        std::fill(seg.begin(), seg.end(), 0.0);
                        for (std::size_t gw = 0; gw < gr.x.size(); ++gw) {
                            const double x = wmid + whw * gr.x[gw];
                            const double ww = whw * gr.w[gw];
                            const double base = x * x + G2;
                            const double fac = ww * (2.0 * L - x);
                            for (std::size_t a = 0; a < nA; ++a)
                                seg[a] += fac * std::pow(base, -0.5 * alphas[a]);
                        }
                        // symmetry factor: even in m, d and w
                        const double wcell = 8.0 * wm * wd;
                        for (std::size_t k = 0; k < nD; ++k) {
                            if (wmid >= wdel[k]) {
                                for (std::size_t a = 0; a < nA; ++a)
                                    J[a][k] += wcell * seg[a];
                            }
                        }
                    }
                }
            }
        }
    }
    return J;
}

} // namespace

std::vector<std::vector<double>> exponent_model_integral(ContactModel geometry,
                                                         const std::vector<double>& alphas,
                                                         const std::vector<double>& deltas,
                                                         double extent) {
    for (double a : alphas)
        if (!(a > 0.0 && a < 3.0))
            throw std::invalid_argument("exponent model: alpha must lie in (0, 3)");
    for (double d : deltas)
        if (!(d > 0.0 && d < extent))
            throw std::invalid_argument("exponent model: cutoffs must lie in (0, extent)");
    if (!(extent > 0.0)) throw std::invalid_argument("exponent model: extent must be positive");
    return geometry == ContactModel::Point ? point_model(alphas, deltas, extent)
                                           : line_model(alphas, deltas, extent);
}

double exponent_model_integral(ContactModel geometry, double alpha, double extent, double delta) {
    return exponent_model_integral(geometry, std::vector<double>{alpha},
                                   std::vector<double>{delta}, extent)[0][0];
}

} // namespace tubenergy
