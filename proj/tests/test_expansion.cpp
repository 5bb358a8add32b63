#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tubenergy/energy.hpp"

using namespace tubenergy;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

// chord^2 between (u0, th) and the point eta1 along the arc, eta2 around
double chord_sq_at_offsets(const Tube& tube, const ArclengthMap& arcs, double u0, double th,
                           double eta1, double eta2) {
    const double u1 = arcs.param_at(arcs.arc_at(u0) + eta1);
    return chord_sq(tube, SurfaceCoord(u0, th), SurfaceCoord(u1, th + eta2));
}

double pseudo_sq_at_offsets(const Tube& tube, const ArclengthMap& arcs, double u0, double th,
                            double eta1, double eta2) {
    const double u1 = arcs.param_at(arcs.arc_at(u0) + eta1);
    return pseudo_distance_sq(tube, SurfaceCoord(u0, th), SurfaceCoord(u1, th + eta2), 1e-13);
}

} // namespace

TEST_CASE("degree-2 term: constant-curvature specializations") {
    // circle: tau = 0, all derivatives vanish
    const Tube tube(ClosedCurve::circle(2.0), 0.5);
    const double th = kPi / 3, e1 = 1e-2, e2 = 2e-2;
    const ExpansionTerms t = expansion_terms(tube, 0.9, th, e1, e2);
    const double expect = e1 * e1 * std::pow(1.0 - 0.25 * std::cos(th), 2) + 0.25 * e2 * e2;
    CHECK(t.deg2 == doctest::Approx(expect).epsilon(1e-10));

    // helix constants, straight from the local data
    LocalGeometry g;
    g.kappa = 0.4706;
    g.tau = 0.1176;
    const ExpansionTerms h = expansion_terms(g, 0.5, kPi / 3, 1e-2, 2e-2);
    CHECK(h.deg2 == doctest::Approx(1.8996e-4).epsilon(1e-4));
}

TEST_CASE("local geometry derivatives agree with dense differentiation") {
    const ClosedCurve tr = ClosedCurve::trefoil();
    const ArclengthMap arcs(tr, 1024);
    const double u = 1.234;
    const LocalGeometry g = local_geometry(tr, u);
    // independent check: derivative along arclength via parameter offsets
    const double ds = 1e-4;
    auto kappa_at_arc = [&](double offset) {
        return frenet(tr.jet(arcs.param_at(arcs.arc_at(u) + offset))).curvature;
    };
    const double kp_fd =
        (kappa_at_arc(-2 * ds) - 8 * kappa_at_arc(-ds) + 8 * kappa_at_arc(ds) - kappa_at_arc(2 * ds)) /
        (12 * ds);
    CHECK(g.kappa_s == doctest::Approx(kp_fd).epsilon(1e-6));
}

TEST_CASE("quartic coefficients match a shrinking-stencil fit of the true functions") {
    const Tube tube(ClosedCurve::trefoil(), 0.3);
    const ArclengthMap arcs(tube.curve(), 1024);
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    int checked_pseudo = 0;
    for (int trial = 0; trial < 6; ++trial) {
        const double u0 = ang(rng), th = ang(rng);
        const ExpansionTerms base = expansion_terms(tube, u0, th, 1.0, 1.0); // unused scale
        (void)base;
        for (double dir = 0.35; dir < kTwoPi; dir += kTwoPi / 5.0) {
            const double d1 = std::cos(dir), d2 = std::sin(dir);
            const double h = 0.012;
            // quartic along the ray: (32 P(h/2) - P(h)) / h^4 kills the quintic
            auto P_chord = [&](double s) {
                const ExpansionTerms t = expansion_terms(tube, u0, th, s * d1, s * d2);
                return chord_sq_at_offsets(tube, arcs, u0, th, s * d1, s * d2) -
                       (t.deg2 + t.deg3);
            };
            const double c4 = (32.0 * P_chord(h / 2) - P_chord(h)) / (h * h * h * h);
            const ExpansionTerms tdir = expansion_terms(tube, u0, th, d1, d2);
            if (std::abs(tdir.deg4_chord) > 1e-3)
                CHECK(c4 == doctest::Approx(tdir.deg4_chord).epsilon(1e-4));

            // pseudo-distance variant in the torsion-positive quadrant
            const double a1 = std::abs(d1), a2 = std::abs(d2);
            const double u1 = arcs.param_at(arcs.arc_at(u0) + h * a1);
            if (frenet(tube.curve().jet(u0)).torsion > 0.05 &&
                frenet(tube.curve().jet(u1)).torsion > 0.05 && a1 > 0.15 && a2 > 0.15) {
                auto P_pseudo = [&](double s) {
                    const ExpansionTerms t = expansion_terms(tube, u0, th, s * a1, s * a2);
                    return pseudo_sq_at_offsets(tube, arcs, u0, th, s * a1, s * a2) -
                           (t.deg2 + t.deg3);
                };
                const double b4 = (32.0 * P_pseudo(h / 2) - P_pseudo(h)) / (h * h * h * h);
                const ExpansionTerms tq = expansion_terms(tube, u0, th, a1, a2);
                if (std::abs(tq.deg4_pseudo) > 1e-3) {
                    CHECK(b4 == doctest::Approx(tq.deg4_pseudo).epsilon(1e-4));
                    ++checked_pseudo;
                }
            }
        }
    }
    CHECK(checked_pseudo >= 3);
}

TEST_CASE("order-5 remainders: halving the offset divides the remainder by ~32") {
    const Tube tube(ClosedCurve::trefoil(), 0.3);
    const ArclengthMap arcs(tube.curve(), 1024);
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    int done_chord = 0, done_pseudo = 0;
    while (done_chord < 20 || done_pseudo < 20) {
        const double u0 = ang(rng), th = ang(rng), dir = ang(rng);
        const double d1 = std::cos(dir), d2 = std::sin(dir);
        const double h = 0.02;
        if (done_chord < 20) {
            auto rem = [&](double s) {
                const ExpansionTerms t = expansion_terms(tube, u0, th, s * d1, s * d2);
                return std::abs(chord_sq_at_offsets(tube, arcs, u0, th, s * d1, s * d2) -
                                (t.deg2 + t.deg3 + t.deg4_chord));
            };
            const double r1 = rem(h), r2 = rem(h / 2);
            if (r2 > 1e-13) {
                const double ratio = r1 / r2;
                CHECK(ratio >= 16.0);
                CHECK(ratio <= 64.0);
                ++done_chord;
            }
        }
        if (done_pseudo < 20) {
            const double a1 = std::abs(d1), a2 = std::abs(d2);
            const double u1 = arcs.param_at(arcs.arc_at(u0) + h * a1);
            if (frenet(tube.curve().jet(u0)).torsion > 0.05 &&
                frenet(tube.curve().jet(u1)).torsion > 0.05) {
                auto rem = [&](double s) {
                    const ExpansionTerms t = expansion_terms(tube, u0, th, s * a1, s * a2);
                    return std::abs(pseudo_sq_at_offsets(tube, arcs, u0, th, s * a1, s * a2) -
                                    (t.deg2 + t.deg3 + t.deg4_pseudo));
                };
                const double r1 = rem(h), r2 = rem(h / 2);
                if (r2 > 1e-13) {
                    const double ratio = r1 / r2;
                    CHECK(ratio >= 16.0);
                    CHECK(ratio <= 64.0);
                    ++done_pseudo;
                }
            }
        }
    }
}

TEST_CASE("integrand: hand value on the torus and finite diagonal") {
    const Tube tube(ClosedCurve::circle(2.0), 1.0);
    const double val =
        integrand(tube, SurfaceCoord(0.0, 0.0), SurfaceCoord(kPi / 4, kPi / 2), 2.0);
    const double expect = 1.0 / (6.0 - 2.0 * std::sqrt(2.0)) - 1.0 / (3.0 * kPi * kPi / 8.0);
    CHECK(val == doctest::Approx(expect).epsilon(1e-8));
    CHECK(expect == doctest::Approx(0.0451).epsilon(2e-3));

    // exact coincidence goes through the regularized branch and stays finite
    const double diag = integrand(tube, SurfaceCoord(1.0, 2.0), SurfaceCoord(1.0, 2.0), 2.0, 1e-8);
    CHECK(diag == doctest::Approx(1.0 / 12.0).epsilon(1e-12)); // 1/(12 r^2), r = 1
}

TEST_CASE("integrand is continuous across the regularization switch") {
    const Tube tube(ClosedCurve::trefoil(), 0.3);
    const ArclengthMap arcs(tube.curve(), 1024);
    const double u0 = 0.8, th = 1.3;
    const double e1 = 2.2e-4, e2 = -1.4e-4;
    const double u1 = arcs.param_at(arcs.arc_at(u0) + e1);
    const SurfaceCoord X(u0, th), Y(u1, th + e2);
    const ExpansionTerms t = expansion_terms(tube, u0, th, e1, e2);
    // same pair, once through each branch
    const double exact = integrand(tube, X, Y, 2.0, t.deg2 * 0.5);
    const double regularized = integrand(tube, X, Y, 2.0, t.deg2 * 2.0);
    CHECK(regularized == doctest::Approx(exact).epsilon(5e-2));
}

TEST_CASE("chord squared basics") {
    const Tube tube(ClosedCurve::circle(2.0), 1.0);
    const double ch = chord_sq(tube, SurfaceCoord(0.0, 0.0), SurfaceCoord(kPi / 4, kPi / 2));
    CHECK(ch == doctest::Approx(6.0 - 2.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(chord_sq(tube, SurfaceCoord(0.4, 1.0), SurfaceCoord(0.4, 1.0)) == 0.0);

    const Tube tr(ClosedCurve::trefoil(), 0.25);
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    for (int i = 0; i < 100; ++i) {
        const SurfaceCoord X(ang(rng), ang(rng)), Y(ang(rng), ang(rng));
        const double direct = norm_sq(boundary_point(tr, X) - boundary_point(tr, Y));
        CHECK(chord_sq(tr, X, Y) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("self-contact pair raises the singular error") {
    // a doubly-traversed circle: (u, th) and (u + pi, th) land on the same
    // spatial point while staying far apart on the surface
    ClosedCurve::Coeffs a{}, b{};
    for (int c = 0; c < 3; ++c) {
        a[c].assign(3, 0.0);
        b[c].assign(3, 0.0);
    }
    a[0][2] = 1.0;
    b[1][2] = 1.0;
    const Tube tube(ClosedCurve(a, b), 0.2);
    CHECK_THROWS_AS(integrand(tube, SurfaceCoord(0.3, 1.1), SurfaceCoord(0.3 + kPi, 1.1), 2.0),
                    SelfContactSingular);
}
