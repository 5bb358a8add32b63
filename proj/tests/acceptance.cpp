// Acceptance suite: runs every quantitative gate at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero if any gate fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "tubenergy/contact.hpp"
#include "tubenergy/energy.hpp"

using namespace tubenergy;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kFourPiSq = 4.0 * kPi * kPi;

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("ACCEPTANCE %02d %-28s %s  (%s)\n", id, name.c_str(), pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

Vec3 torus_chart(double R, double r, double u, double th) {
    return {(R - r * std::cos(th)) * std::cos(u), (R - r * std::cos(th)) * std::sin(u),
            r * std::sin(th)};
}

double torus_pseudo_sq(double R, double r, double u, double th, double v, double ph) {
    double m = std::abs(th - ph);
    m = std::min(m, kTwoPi - m);
    double x = std::abs(u - v);
    x = std::min(x, kTwoPi - x);
    const double a = R - r * std::cos(th), b = R - r * std::cos(ph);
    return r * r * m * m + a * b * x * x;
}

// 1. energy vs the reduced oracle on the (R, r) = (2, 0.5) torus
void criterion_1() {
    const Tube tube(ClosedCurve::circle(2.0), 0.5);
    EnergyParams p;
    p.grid_s = 48;
    p.grid_theta = 48;
    const auto t0 = std::chrono::steady_clock::now();
    const EnergyResult res = energy(tube, p);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double oracle = torus_energy_reduced(2.0, 0.5, 2.0, 256);
    const double rel = std::abs(res.value - oracle) / oracle;
    char buf[160];
    std::snprintf(buf, sizeof buf, "rel=%.2e tol=1e-2, F=%.4f oracle=%.4f, %.1fs", rel, res.value,
                  oracle, secs);
    report(1, "torus-oracle-equivalence", rel < 1e-2 && secs < 60.0, buf);
}

// 2. pseudo-distance dominates the chord; the integrand is nonnegative
void criterion_2() {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    long violations = 0;
    for (const auto& [R, r] : std::vector<std::pair<double, double>>{{2.0, 0.5}, {1.5, 1.0}}) {
        const Tube tube(ClosedCurve::circle(R), r);
        for (int i = 0; i < 100000; ++i) {
            const double u = ang(rng), th = ang(rng), v = ang(rng), ph = ang(rng);
            const double ds = pseudo_distance_sq(tube, SurfaceCoord(u, th), SurfaceCoord(v, ph));
            const double ch = norm_sq(torus_chart(R, r, u, th) - torus_chart(R, r, v, ph));
            if (!(ds >= ch - 1e-9 * (1.0 + ch))) ++violations;
            if (i % 10 == 0) {
                const double integ = 1.0 / ch - 1.0 / ds;
                if (!(integ >= -1e-12)) ++violations;
            }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "violations=%ld over 2x1e5 pairs", violations);
    report(2, "torus-domination", violations == 0, buf);
}

// 3. trapezoid identity and coplanarity of the two-parallel construction
void criterion_3() {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    const double R = 2.0, r = 0.5;
    double worst_rel = 0.0, worst_det = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double u = ang(rng), th = ang(rng), v = ang(rng), ph = ang(rng);
        const Vec3 X = torus_chart(R, r, u, th), Y = torus_chart(R, r, v, ph);
        const Vec3 Z1 = torus_chart(R, r, v, th), Z2 = torus_chart(R, r, u, ph);
        const double d2 = norm_sq(X - Y);
        const double rhs = norm_sq(X - Z2) + norm(X - Z1) * norm(Y - Z2);
        worst_rel = std::max(worst_rel, std::abs(d2 - rhs) / std::max(d2, 1e-30));
        worst_det = std::max(worst_det, std::abs(triple(X - Z2, X - Z1, X - Y)));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max rel=%.2e (tol 1e-10), max det=%.2e (tol 1e-12)", worst_rel,
                  worst_det);
    report(3, "trapezoid-identity", worst_rel < 1e-10 && worst_det < 1e-12, buf);
}

// 4. diagonal limit of the reduced integrand
void criterion_4() {
    double worst = 0.0;
    for (double th : {0.0, kPi / 3, kPi / 2, kPi}) {
        const double g = torus_reduced_integrand(2.0, 0.5, th, th + 1e-3);
        const double lim = torus_diagonal_limit(2.0, 0.5, th);
        worst = std::max(worst, std::abs(g - lim) / lim);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max rel=%.2e (tol 1e-2)", worst);
    report(4, "diagonal-limit", worst < 1e-2, buf);
}

// random band-limited curve with everywhere-positive curvature
ClosedCurve random_smooth_curve(unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int attempt = 0; attempt < 100; ++attempt) {
        ClosedCurve::Coeffs a{}, b{};
        for (int c = 0; c < 3; ++c) {
            a[c].assign(5, 0.0);
            b[c].assign(5, 0.0);
        }
        a[0][1] = 2.0;
        b[1][1] = 2.0; // base circle radius 2
        for (int c = 0; c < 3; ++c)
            for (int k = 2; k <= 4; ++k) {
                a[c][k] = 0.12 * uni(rng) / k;
                b[c][k] = 0.12 * uni(rng) / k;
            }
        const ClosedCurve cand(a, b);
        try {
            cand.validate();
            if (min_curvature(cand, 1024) > 0.05) return cand;
        } catch (...) {
        }
    }
    return ClosedCurve::trefoil();
}

// 5. order-5 remainder scaling of the fourth-order expansions
void criterion_5() {
    const ClosedCurve curves[2] = {ClosedCurve::trefoil(), random_smooth_curve(7)};
    const double radii[2] = {0.3, 0.2};
    int chord_done = 0, pseudo_done = 0, bad = 0;
    double lo_c = 1e300, hi_c = 0.0, lo_p = 1e300, hi_p = 0.0;
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    for (int which = 0; which < 2; ++which) {
        const Tube tube(curves[which], radii[which]);
        const ArclengthMap arcs(tube.curve(), 1024);
        auto offset_pair = [&](double u0, double th, double e1, double e2) {
            const double u1 = arcs.param_at(arcs.arc_at(u0) + e1);
            return std::pair<SurfaceCoord, SurfaceCoord>{SurfaceCoord(u0, th),
                                                         SurfaceCoord(u1, th + e2)};
        };
        while (chord_done < 50 * (which + 1) || pseudo_done < 50 * (which + 1)) {
            const double u0 = ang(rng), th = ang(rng), dir = ang(rng);
            const double d1 = std::cos(dir), d2 = std::sin(dir);
            const double h = 0.02;
            if (chord_done < 50 * (which + 1)) {
                auto rem = [&](double s) {
                    const auto [X, Y] = offset_pair(u0, th, s * d1, s * d2);
                    const ExpansionTerms t = expansion_terms(tube, u0, th, s * d1, s * d2);
                    return std::abs(chord_sq(tube, X, Y) - (t.deg2 + t.deg3 + t.deg4_chord));
                };
                const double r1 = rem(h), r2 = rem(h / 2);
                if (r2 > 1e-13) {
                    const double ratio = r1 / r2;
                    lo_c = std::min(lo_c, ratio);
                    hi_c = std::max(hi_c, ratio);
                    if (ratio < 16.0 || ratio > 64.0) ++bad;
                    ++chord_done;
                }
            }
            if (pseudo_done < 50 * (which + 1)) {
                const double a1 = std::abs(d1), a2 = std::abs(d2);
                const double u1 = arcs.param_at(arcs.arc_at(u0) + h * a1);
                if (frenet(tube.curve().jet(u0)).torsion > 0.05 &&
                    frenet(tube.curve().jet(u1)).torsion > 0.05) {
                    auto rem = [&](double s) {
                        const auto [X, Y] = offset_pair(u0, th, s * a1, s * a2);
                        const ExpansionTerms t = expansion_terms(tube, u0, th, s * a1, s * a2);
                        return std::abs(pseudo_distance_sq(tube, X, Y, 1e-13) -
                                        (t.deg2 + t.deg3 + t.deg4_pseudo));
                    };
                    const double r1 = rem(h), r2 = rem(h / 2);
                    if (r2 > 1e-13) {
                        const double ratio = r1 / r2;
                        lo_p = std::min(lo_p, ratio);
                        hi_p = std::max(hi_p, ratio);
                        if (ratio < 16.0 || ratio > 64.0) ++bad;
                        ++pseudo_done;
                    }
                }
            }
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "chord ratios [%.1f, %.1f], pseudo [%.1f, %.1f], out=%d/200",
                  lo_c, hi_c, lo_p, hi_p, bad);
    report(5, "taylor-order-5", bad == 0, buf);
}

// 6. small-radius limit against the knot energy
void criterion_6() {
    const double knot = ohara_energy(ClosedCurve::circle(1.0), 2.0, 2048);
    EnergyParams p;
    p.grid_s = 8;
    p.grid_theta = 16;
    std::vector<double> diffs;
    for (double r : {0.2, 0.1, 0.05, 0.02}) {
        const Tube tube(ClosedCurve::circle(1.0), r);
        diffs.push_back(std::abs(energy(tube, p).value / kFourPiSq - knot));
    }
    const bool mono = diffs[0] > diffs[1] && diffs[1] > diffs[2] && diffs[2] > diffs[3];
    char buf[160];
    std::snprintf(buf, sizeof buf, "E=%.6f, |F/4pi^2-E| = %.3f > %.3f > %.3f > %.3f", knot,
                  diffs[0], diffs[1], diffs[2], diffs[3]);
    report(6, "knot-energy-limit", mono, buf);
}

// 7. blow-up toward self-contact at a fixed grid
void criterion_7() {
    EnergyParams p;
    p.grid_s = 32;
    p.grid_theta = 32;
    std::vector<double> F;
    for (double R : {1.5, 1.2, 1.1, 1.05})
        F.push_back(energy(Tube(ClosedCurve::circle(R), 1.0), p).value);
    const bool increasing = F[0] < F[1] && F[1] < F[2] && F[2] < F[3];
    const bool tenfold = F[3] > 10.0 * F[0];
    char buf[160];
    std::snprintf(buf, sizeof buf, "F = %.1f < %.1f < %.1f < %.1f; F(1.05)/F(1.5) = %.2f (need 10)",
                  F[0], F[1], F[2], F[3], F[3] / F[0]);
    report(7, "divergence-at-contact", increasing && tenfold, buf);
}

// 8. exponent-model verdicts (factor-2 Cauchy rule, 3 cutoff levels)
void criterion_8() {
    const std::vector<double> deltas{1e-2, 5e-3, 2.5e-3};
    const std::vector<double> point_alphas{1.0, 1.5, 1.9, 2.0, 2.5};
    const std::vector<bool> point_expect{true, true, true, false, false}; // converges?
    const std::vector<double> line_alphas{1.0, 1.5};
    const std::vector<bool> line_expect{false, false};

    const auto Jp = exponent_model_integral(ContactModel::Point, point_alphas, deltas);
    const auto Jl = exponent_model_integral(ContactModel::Line, line_alphas, deltas);
    int bad = 0;
    std::string detail;
    for (std::size_t i = 0; i < point_alphas.size(); ++i) {
        const bool conv = cauchy_converges(Jp[i]);
        if (conv != point_expect[i]) ++bad;
        detail += "p" + std::to_string(point_alphas[i]).substr(0, 3) +
                  (conv ? ":conv" : ":div") + (conv == point_expect[i] ? " " : "! ");
    }
    for (std::size_t i = 0; i < line_alphas.size(); ++i) {
        const bool conv = cauchy_converges(Jl[i]);
        if (conv != line_expect[i]) ++bad;
        detail += "l" + std::to_string(line_alphas[i]).substr(0, 3) + (conv ? ":conv" : ":div") +
                  (conv == line_expect[i] ? " " : "! ");
    }
    report(8, "exponent-verdicts", bad == 0, detail + "mismatches=" + std::to_string(bad));
}

// 9. continuity under coefficient noise
void criterion_9() {
    const ClosedCurve tr = ClosedCurve::trefoil();
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    ClosedCurve::Coeffs na{}, nb{};
    for (int c = 0; c < 3; ++c) {
        na[c].assign(4, 0.0);
        nb[c].assign(4, 0.0);
        for (int k = 0; k < 4; ++k) {
            na[c][k] = uni(rng);
            nb[c][k] = uni(rng);
        }
    }
    EnergyParams p;
    p.grid_s = 16;
    p.grid_theta = 16;
    const double f0 = energy(Tube(tr, 0.3), p).value;
    std::vector<double> change;
    for (double d : {1e-2, 1e-3, 1e-4})
        change.push_back(std::abs(energy(Tube(tr.perturbed(na, nb, d), 0.3), p).value - f0));
    const bool mono = change[0] > change[1] && change[1] > change[2];
    char buf[128];
    std::snprintf(buf, sizeof buf, "|dF| = %.4f > %.4f > %.4f", change[0], change[1], change[2]);
    report(9, "c3-continuity", mono, buf);
}

// 10. rigid-motion and reparametrization invariance
void criterion_10() {
    const ClosedCurve tr = ClosedCurve::trefoil();
    EnergyParams p;
    p.grid_s = 16;
    p.grid_theta = 16;
    const EnergyResult base = energy(Tube(tr, 0.3), p);

    const double c = std::cos(0.9), s = std::sin(0.9);
    const std::array<Vec3, 3> rot{Vec3{c, -s, 0}, Vec3{s, c, 0}, Vec3{0, 0, 1}};
    const ClosedCurve moved = tr.transformed(rot, Vec3{1.0, 2.0, -0.7});
    const double f_rigid = energy(Tube(moved, 0.3), p).value;
    const double rel_rigid = std::abs(f_rigid - base.value) / std::abs(base.value);

    std::vector<Vec3> samples(512);
    for (int i = 0; i < 512; ++i) {
        const double u = kTwoPi * i / 512.0;
        samples[i] = tr.position(u + 0.2 * std::sin(u));
    }
    const ClosedCurve rep = ClosedCurve::from_samples(samples, 24);
    const EnergyResult r2 = energy(Tube(rep, 0.3), p);
    const double quad_tol = base.error_estimate + r2.error_estimate;
    const double dr = std::abs(r2.value - base.value);

    char buf[128];
    std::snprintf(buf, sizeof buf, "rigid rel=%.2e (tol 1e-10); reparam |dF|=%.3f <= %.3f",
                  rel_rigid, dr, quad_tol);
    report(10, "invariance", rel_rigid < 1e-10 && dr <= quad_tol, buf);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("ACCEPTANCE SUMMARY: %d of 10 criteria failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
