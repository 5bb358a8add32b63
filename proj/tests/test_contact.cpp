#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tubenergy/contact.hpp"
#include "tubenergy/energy.hpp"

using namespace tubenergy;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

// dense random-pair oracle with the same far filter as min_separation
double dense_scan_oracle(const Tube& tube, int n_pairs, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    const double tol_far = 0.01 * tube.radius() * tube.radius();
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_pairs; ++i) {
        const SurfaceCoord X(ang(rng), ang(rng)), Y(ang(rng), ang(rng));
        const double c2 = chord_sq(tube, X, Y);
        if (c2 >= best) continue;
        if (pseudo_distance_sq(tube, X, Y, 1e-8) < tol_far) continue;
        best = c2;
    }
    return std::sqrt(best);
}

ClosedCurve doubled_circle() {
    ClosedCurve::Coeffs a{}, b{};
    for (int c = 0; c < 3; ++c) {
        a[c].assign(3, 0.0);
        b[c].assign(3, 0.0);
    }
    a[0][2] = 1.0;
    b[1][2] = 1.0;
    return ClosedCurve(a, b);
}

} // namespace

// the constrained minimum hugs the far-filter boundary along the inner
// equator, where the surface metric is most squeezed: chord = 2 a sin(q/2)
// with a = R - r and the filter budget q = 0.1 r / a spent along the parallel
double torus_floor(double R, double r) {
    const double a = R - r;
    return 2.0 * a * std::sin(0.05 * r / a);
}

TEST_CASE("min separation on a fat ring torus: descent, scan and closed form agree") {
    const Tube tube(ClosedCurve::circle(3.0), 1.0);
    const SeparationResult sep = min_separation(tube, 40);
    const double scan = dense_scan_oracle(tube, 200000, 17);
    CHECK(sep.min_chord <= scan + 1e-6); // the random scan can only overshoot
    CHECK(scan - sep.min_chord < 5e-3);
    CHECK(sep.min_chord == doctest::Approx(torus_floor(3.0, 1.0)).epsilon(2e-2));
    CHECK(sep.pseudo_sq >= 0.01 * 1.0 - 1e-9);
}

TEST_CASE("near-pinch torus: the squeezed boundary layer wins") {
    const Tube tube(ClosedCurve::circle(1.04), 1.0);
    const SeparationResult sep = min_separation(tube, 48);
    // tighter than the naive hole gap 2 (R - r) = 0.08
    CHECK(sep.min_chord == doctest::Approx(torus_floor(1.04, 1.0)).epsilon(2e-2));
    const double scan = dense_scan_oracle(tube, 200000, 19);
    CHECK(sep.min_chord <= scan + 1e-9);
}

TEST_CASE("witness pairs always satisfy the far filter") {
    for (double R : {3.0, 1.5, 1.04}) {
        const Tube tube(ClosedCurve::circle(R), 1.0);
        const SeparationResult sep = min_separation(tube, 32);
        CHECK(sep.pseudo_sq >= 0.01 - 1e-9);
    }
}

TEST_CASE("classification: clear ring torus") {
    const Tube tube(ClosedCurve::circle(10.0), 1.0);
    const ContactReport rep = admissibility_report(tube, 32);
    CHECK(rep.classification == ContactClass::Clear);
    CHECK(rep.locally_admissible);
    CHECK(rep.r_kappa_max == doctest::Approx(0.1).epsilon(1e-6));
    CHECK(rep.min_jacobian > 0.0);
    CHECK(rep.separation.min_chord > 0.0);
}

TEST_CASE("classification: local interpenetration when r kappa > 1") {
    const Tube tube(ClosedCurve::circle(0.8), 1.0);
    const ContactReport rep = admissibility_report(tube, 24);
    CHECK(rep.classification == ContactClass::LocallyInadmissible);
    CHECK_FALSE(rep.locally_admissible);
    CHECK(rep.r_kappa_max > 1.0);
}

TEST_CASE("classification: overlapping covers are interpenetration") {
    const Tube tube(doubled_circle(), 0.3);
    const ContactReport rep = admissibility_report(tube, 32);
    CHECK(rep.classification == ContactClass::InterpenetrationSuspected);
    CHECK(rep.min_centerline_dist < 1e-6);
    // the boundary witness shows the contact too
    CHECK(rep.separation.min_chord < 1e-5);
    CHECK(rep.separation.pseudo_sq >= rep.tol_far);
}

TEST_CASE("unit-aspect-2 torus is clear and locally admissible") {
    const Tube tube(ClosedCurve::circle(2.0), 1.0);
    const ContactReport rep = admissibility_report(tube, 24);
    CHECK(rep.classification == ContactClass::Clear);
    CHECK(rep.r_kappa_max == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("no false positives across clear presets") {
    for (double r : {0.3, 0.8}) {
        const Tube tube(ClosedCurve::circle(2.0 + 2.0 * r), r);
        const ContactReport rep = admissibility_report(tube, 24);
        CHECK(rep.classification == ContactClass::Clear);
    }
    const Tube tr(ClosedCurve::trefoil(), 0.2);
    CHECK(admissibility_report(tr, 24).classification == ContactClass::Clear);
}

TEST_CASE("approach to contact: separation shrinks while energy grows") {
    double prev_chord = std::numeric_limits<double>::infinity();
    double prev_energy = 0.0;
    EnergyParams p;
    p.grid_s = 32;
    p.grid_theta = 32;
    for (double R : {1.5, 1.2, 1.1, 1.05, 1.04}) {
        const Tube tube(ClosedCurve::circle(R), 1.0);
        const SeparationResult sep = min_separation(tube, 32);
        CHECK(sep.min_chord <= prev_chord + 1e-3);
        CHECK(sep.min_chord == doctest::Approx(torus_floor(R, 1.0)).epsilon(3e-2));
        prev_chord = sep.min_chord;
        const double f = energy(tube, p).value;
        CHECK(f > prev_energy);
        prev_energy = f;
    }
    CHECK(prev_chord < 0.08); // the squeezed layer is resolved at the end
}
