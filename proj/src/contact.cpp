#include "tubenergy/contact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "tubenergy/energy.hpp"
#include "tubenergy/quadrature.hpp"

namespace tubenergy {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::string to_string(ContactClass c) {
    switch (c) {
        case ContactClass::Clear: return "clear";
        case ContactClass::SelfContact: return "self_contact";
        case ContactClass::InterpenetrationSuspected: return "interpenetration_suspected";
        case ContactClass::LocallyInadmissible: return "locally_inadmissible";
    }
    return "unknown";
}

namespace {

// Fast chord and pseudo-distance over one shared surface grid: the seeding
// scan for the descent. Prefix tables as in the energy quadrature.
struct ScanTables {
    std::vector<double> nodes, theta;
    std::vector<Vec3> P;           // [i * nt + k]
    std::vector<double> S, K, C;   // prefixes at nodes
    double S_tot = 0, K_tot = 0, C_tot = 0;
    std::vector<double> cth;
    int n = 0, nt = 0;
};

ScanTables build_scan(const Tube& tube, int n, int nt) {
    ScanTables t;
    t.n = n;
    t.nt = nt;
    t.nodes = midpoint_grid(n);
    t.theta = midpoint_grid(nt);
    const ClosedCurve& c = tube.curve();
    const double r = tube.radius();
    const int m = 8;
    const int nf = m * n;
    const double hf = kTwoPi / nf;
    std::vector<double> eS(nf + 1, 0.0), eK(nf + 1, 0.0), eC(nf + 1, 0.0);
    for (int q = 0; q < nf; ++q) {
        const FrenetData f = frenet(c.jet((q + 0.5) * hf));
        eS[q + 1] = eS[q] + f.speed * hf;
        eK[q + 1] = eK[q] + f.curvature * f.speed * hf;
        eC[q + 1] = eC[q] + r * std::abs(f.torsion) * f.speed * hf;
    }
    t.S_tot = eS[nf];
    t.K_tot = eK[nf];
    t.C_tot = eC[nf];
    t.S.resize(n);
    t.K.resize(n);
    t.C.resize(n);
    for (int i = 0; i < n; ++i) {
        t.S[i] = eS[m * i + m / 2];
        t.K[i] = eK[m * i + m / 2];
        t.C[i] = eC[m * i + m / 2];
    }
    t.cth.resize(nt);
    t.P.resize(std::size_t(n) * nt);
    for (int i = 0; i < n; ++i) {
        const CurveJet j = c.jet(t.nodes[i]);
        const FrenetData f = frenet(j);
        for (int k = 0; k < nt; ++k) {
            t.cth[k] = std::cos(t.theta[k]);
            t.P[std::size_t(i) * nt + k] = j.p + r * std::cos(t.theta[k]) * f.normal +
                                           r * std::sin(t.theta[k]) * f.binormal;
        }
    }
    return t;
}

// pseudo-distance^2 from the scan tables (admissible-tube shortcut with the
// sign-safe |.| falling back to the adaptive path in the descent stage)
double scan_pseudo_sq(const ScanTables& t, const Tube& tube, int i, int k, int j, int l) {
    const double r = tube.radius();
    const bool fwd = j > i;
    const double dS = fwd ? t.S[j] - t.S[i] : t.S_tot - (t.S[i] - t.S[j]);
    const double dK = fwd ? t.K[j] - t.K[i] : t.K_tot - (t.K[i] - t.K[j]);
    const double dC = fwd ? t.C[j] - t.C[i] : t.C_tot - (t.C[i] - t.C[j]);
    double dth = std::abs(t.theta[k] - t.theta[l]);
    dth = std::min(dth, kTwoPi - dth);
    const double lm = r * dth;
    const double ltf_th = std::abs(dS - r * t.cth[k] * dK);
    const double ltf_ph = std::abs(dS - r * t.cth[l] * dK);
    const double ltb_th = std::abs((t.S_tot - dS) - r * t.cth[k] * (t.K_tot - dK));
    const double ltb_ph = std::abs((t.S_tot - dS) - r * t.cth[l] * (t.K_tot - dK));
    const double mf = lm + dC, mb = lm + (t.C_tot - dC);
    return std::min(mf * mf + ltf_th * ltf_ph, mb * mb + ltb_th * ltb_ph);
}

struct Candidate {
    double chord_sq_val = std::numeric_limits<double>::infinity();
    double u = 0, th = 0, v = 0, ph = 0;
};

// off-grid chord and pseudo-distance, accurate and cheap: positions from the
// exact jets, pseudo-distance from Gauss prefix integrals (the sign-safe
// shortcut requires local admissibility; the adaptive path covers the rest)
struct PairEvaluator {
    const Tube& tube;
    PrefixIntegral arc, curv, tors;
    bool shortcut;

    explicit PairEvaluator(const Tube& t)
        : tube(t), arc(t.curve(), [](const FrenetData& f) { return f.speed; }),
          curv(t.curve(), [](const FrenetData& f) { return f.curvature * f.speed; }),
          tors(t.curve(), [](const FrenetData& f) { return std::abs(f.torsion) * f.speed; }),
          shortcut(t.locally_admissible()) {}

    double pseudo_sq(double u, double th, double v, double ph) const {
        if (!shortcut)
            return pseudo_distance_sq(tube, SurfaceCoord(u, th), SurfaceCoord(v, ph), 1e-9);
        const double r = tube.radius();
        u = wrap_angle(u);
        v = wrap_angle(v);
        const bool fwd = v > u;
        const double dS = fwd ? arc.value_at(v) - arc.value_at(u)
                              : arc.total() - (arc.value_at(u) - arc.value_at(v));
        const double dK = fwd ? curv.value_at(v) - curv.value_at(u)
                              : curv.total() - (curv.value_at(u) - curv.value_at(v));
        const double dC = r * (fwd ? tors.value_at(v) - tors.value_at(u)
                                   : tors.total() - (tors.value_at(u) - tors.value_at(v)));
        const double lm = meridian_distance(th, ph, r);
        const double ltf_th = dS - r * std::cos(th) * dK;
        const double ltf_ph = dS - r * std::cos(ph) * dK;
        const double ltb_th = (arc.total() - dS) - r * std::cos(th) * (curv.total() - dK);
        const double ltb_ph = (arc.total() - dS) - r * std::cos(ph) * (curv.total() - dK);
        const double mf = lm + dC, mb = lm + (r * tors.total() - dC);
        return std::min(mf * mf + ltf_th * ltf_ph, mb * mb + ltb_th * ltb_ph);
    }

    double chord_sq_at(double u, double th, double v, double ph) const {
        return chord_sq(tube, SurfaceCoord(u, th), SurfaceCoord(v, ph));
    }
};

} // namespace

SeparationResult min_separation(const Tube& tube, int n_seed) {
    if (n_seed < 10) throw std::invalid_argument("min_separation: n_seed must be >= 10");
    const double r = tube.radius();
    const double tol_far = 0.01 * r * r;

    const int n = n_seed, nt = std::max(12, n_seed / 2);
    const ScanTables t = build_scan(tube, n, nt);

    // coarse scan, keep the best few basins
    std::vector<Candidate> best(6);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < nt; ++k) {
            const Vec3 Pi = t.P[std::size_t(i) * nt + k];
            for (int j = i; j < n; ++j)
                for (int l = 0; l < nt; ++l) {
                    if (j == i && l <= k) continue;
                    const double c2 = norm_sq(Pi - t.P[std::size_t(j) * nt + l]);
                    if (c2 >= best.back().chord_sq_val) continue;
                    if (scan_pseudo_sq(t, tube, i, k, j, l) < tol_far) continue;
                    Candidate cand{c2, t.nodes[i], t.theta[k], t.nodes[j], t.theta[l]};
                    best.back() = cand;
                    std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) {
                        return a.chord_sq_val < b.chord_sq_val;
                    });
                }
        }

    // local refinement: the minimum typically sits on the far-filter boundary
    // in a curved valley, which single-coordinate searches cannot follow. A
    // downhill simplex on a quadratically penalized objective tracks it; only
    // feasible evaluations are recorded as results.
    const PairEvaluator ev(tube);
    double best_val = std::numeric_limits<double>::infinity();
    double best_x[4] = {0, 0, 0, 0};
    auto penalized = [&](const double* x) {
        const double c2 = ev.chord_sq_at(x[0], x[1], x[2], x[3]);
        const double ds2 = ev.pseudo_sq(x[0], x[1], x[2], x[3]);
        if (ds2 < tol_far) {
            const double gap = (tol_far - ds2) / tol_far;
            return c2 + 50.0 * tol_far * gap * gap + c2 * gap;
        }
        if (c2 < best_val) {
            best_val = c2;
            for (int c = 0; c < 4; ++c) best_x[c] = x[c];
        }
        return c2;
    };

    const double hu = kTwoPi / n, hth = kTwoPi / nt;
    for (const Candidate& seed : best) {
        if (!std::isfinite(seed.chord_sq_val)) continue;
        // standard Nelder-Mead in the four surface coordinates
        std::array<std::array<double, 4>, 5> smp;
        std::array<double, 5> val;
        smp[0] = {seed.u, seed.th, seed.v, seed.ph};
        for (int i = 1; i < 5; ++i) {
            smp[i] = smp[0];
            smp[i][i - 1] += (i % 2 ? 0.6 : -0.6) * (i - 1 == 0 || i - 1 == 2 ? hu : hth);
        }
        for (int i = 0; i < 5; ++i) val[i] = penalized(smp[i].data());
        for (int it = 0; it < 400; ++it) {
            std::array<int, 5> ord{0, 1, 2, 3, 4};
            std::sort(ord.begin(), ord.end(), [&](int a, int b) { return val[a] < val[b]; });
            if (val[ord[4]] - val[ord[0]] < 1e-15) break;
            std::array<double, 4> centroid{};
            for (int i = 0; i < 4; ++i)
                for (int c = 0; c < 4; ++c) centroid[c] += smp[ord[i]][c] / 4.0;
            auto blend = [&](double t) {
                std::array<double, 4> p;
                for (int c = 0; c < 4; ++c)
                    p[c] = centroid[c] + t * (centroid[c] - smp[ord[4]][c]);
                return p;
            };
            auto refl = blend(1.0);
            const double fr = penalized(refl.data());
            if (fr < val[ord[0]]) {
                auto exp2 = blend(2.0);
                const double fe = penalized(exp2.data());
                smp[ord[4]] = fe < fr ? exp2 : refl;
                val[ord[4]] = std::min(fe, fr);
            } else if (fr < val[ord[3]]) {
                smp[ord[4]] = refl;
                val[ord[4]] = fr;
            } else {
                auto con = blend(-0.5);
                const double fc = penalized(con.data());
                if (fc < val[ord[4]]) {
                    smp[ord[4]] = con;
                    val[ord[4]] = fc;
                } else {
                    for (int i = 1; i < 5; ++i) {
                        for (int c = 0; c < 4; ++c)
                            smp[ord[i]][c] = 0.5 * (smp[ord[i]][c] + smp[ord[0]][c]);
                        val[ord[i]] = penalized(smp[ord[i]].data());
                    }
                }
            }
        }
    }
    SeparationResult out;
    out.min_chord = std::sqrt(best_val);
    out.witness_x = SurfaceCoord(best_x[0], best_x[1]);
    out.witness_y = SurfaceCoord(best_x[2], best_x[3]);
    out.pseudo_sq = pseudo_distance_sq(tube, out.witness_x, out.witness_y, 1e-9);
    return out;
}

ContactReport admissibility_report(const Tube& tube, int n_seed) {
    ContactReport rep;
    const double r = tube.radius();
    rep.tol_contact = 1e-3 * r;
    rep.tol_far = 0.01 * r * r;
    rep.r_kappa_max = r * tube.max_curvature();
    rep.locally_admissible = rep.r_kappa_max < 1.0;

    // interior chart sample: the sign can only flip where rho kappa cos > 1
    rep.min_jacobian = std::numeric_limits<double>::infinity();
    for (int iu = 0; iu < 64; ++iu)
        for (int it = 0; it < 32; ++it)
            for (int ir = 1; ir <= 4; ++ir) {
                const double rho = r * ir / 4.0;
                const double j = jacobian_det(tube, rho, kTwoPi * iu / 64.0, kTwoPi * it / 32.0);
                rep.min_jacobian = std::min(rep.min_jacobian, j / rho);
            }

    rep.separation = min_separation(tube, n_seed);

    // centerline clearance between arc-separated pairs: below the tube
    // diameter it means overlapping cross-section discs
    const ClosedCurve& curve = tube.curve();
    ArclengthMap arcs(curve, 512);
    const double L = arcs.total();
    const double arc_floor = std::min(0.25 * L, std::numbers::pi / tube.max_curvature());
    rep.min_centerline_dist = std::numeric_limits<double>::infinity();
    const int m = 512;
    std::vector<Vec3> pos(m);
    std::vector<double> arc(m);
    for (int i = 0; i < m; ++i) {
        const double u = kTwoPi * i / m;
        pos[i] = curve.position(u);
        arc[i] = arcs.arc_at(u);
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            double da = std::abs(arc[i] - arc[j]);
            da = std::min(da, L - da);
            if (da < arc_floor) continue;
            rep.min_centerline_dist = std::min(rep.min_centerline_dist, norm(pos[i] - pos[j]));
        }

    const bool contact = rep.separation.min_chord <= rep.tol_contact &&
                         rep.separation.pseudo_sq >= rep.tol_far;
    bool contact_persists = false;
    if (contact) {
        const SeparationResult refined = min_separation(tube, 2 * n_seed);
        contact_persists = refined.min_chord <= 2.0 * rep.tol_contact;
    }
    const bool overlap = std::isfinite(rep.min_centerline_dist) &&
                         rep.min_centerline_dist < 2.0 * r * (1.0 - 1e-6);

    if (!rep.locally_admissible || rep.min_jacobian <= 0.0)
        rep.classification = ContactClass::LocallyInadmissible;
    else if (overlap)
        rep.classification = ContactClass::InterpenetrationSuspected;
    else if (contact && contact_persists)
        rep.classification = ContactClass::SelfContact;
    else
        rep.classification = ContactClass::Clear;
    return rep;
}

} // namespace tubenergy
