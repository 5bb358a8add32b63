#include "tubenergy/energy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "tubenergy/quadrature.hpp"

namespace tubenergy {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kChordSingularSq = 1e-14;
constexpr double kPseudoFarSq = 1e-6;

double wrap_signed(double a) {
    // wrap to (-pi, pi]
    double w = std::fmod(a, kTwoPi);
    if (w > std::numbers::pi) w -= kTwoPi;
    if (w <= -std::numbers::pi) w += kTwoPi;
    return w;
}
} // namespace

void EnergyParams::validate() const {
    if (!(alpha > 0.0 && alpha < 3.0))
        throw std::invalid_argument("EnergyParams: alpha must lie in (0, 3)");
    const int coarse = 1 << (refinement_levels - 1);
    if (refinement_levels < 2) throw std::invalid_argument("EnergyParams: refinement_levels >= 2");
    if (grid_s % 2 || grid_theta % 2)
        throw std::invalid_argument("EnergyParams: grids must be even");
    if (grid_s / coarse < 4 || grid_theta / coarse < 4)
        throw std::invalid_argument("EnergyParams: grid too small for the refinement levels");
    if (!(eps_d_rel > 0.0)) throw std::invalid_argument("EnergyParams: eps_d_rel must be positive");
}

double chord_sq(const Tube& tube, const SurfaceCoord& X, const SurfaceCoord& Y) {
    return norm_sq(boundary_point(tube, X) - boundary_point(tube, Y));
}

LocalGeometry local_geometry(const ClosedCurve& curve, double u, double step) {
    auto kap = [&](double x) { return frenet(curve.jet(x)).curvature; };
    auto tor = [&](double x) { return frenet(curve.jet(x)).torsion; };
    auto speed = [&](double x) { return norm(curve.jet(x).d1); };
    auto d_arc = [&](auto&& f, double x) {
        const double h = step;
        return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h) /
               speed(x);
    };
    LocalGeometry g;
    g.kappa = kap(u);
    g.tau = tor(u);
    g.kappa_s = d_arc(kap, u);
    g.tau_s = d_arc(tor, u);
    g.kappa_ss = d_arc([&](double x) { return d_arc(kap, x); }, u);
    g.tau_ss = d_arc([&](double x) { return d_arc(tor, x); }, u);
    return g;
}

ExpansionTerms expansion_terms(const LocalGeometry& g, double r, double theta, double eta1,
                               double eta2) {
    const double c = std::cos(theta), s = std::sin(theta);
    const double k = g.kappa, kp = g.kappa_s, kpp = g.kappa_ss;
    const double t = g.tau, tp = g.tau_s, tpp = g.tau_ss;
    const double r2 = r * r;
    const double one = 1.0 - r * k * c;

    ExpansionTerms out;
    {
        const double m = r * (eta2 + eta1 * t);
        out.deg2 = eta1 * eta1 * one * one + m * m;
    }
    out.deg3 = eta1 * eta1 * eta2 * (r2 * tp + k * r * s - k * k * r2 * c * s) +
               eta1 * eta1 * eta1 * (-kp * r * c + k * kp * r2 * c * c + r2 * tp * t);

    const double p40 = r2 * c * c * (kpp * k / 3.0 - k * k * k * k / 12.0 - k * k * t * t / 12.0 +
                                     kp * kp / 4.0) -
                       r2 * k * k * t * t / 12.0 - r2 * k * k * tp * s * c / 6.0 +
                       r2 * k * kp * t * s * c / 6.0 - r2 * t * t * t * t / 12.0 +
                       r2 * t * tpp / 3.0 + r2 * tp * tp / 4.0 +
                       r * c * (k * k * k / 6.0 + k * t * t / 6.0 - kpp / 3.0) +
                       r * k * tp * s / 6.0 - k * k / 12.0;
    const double p31 = -r2 * k * k * t / 3.0 - r2 * k * kp * s * c + r2 * tpp / 3.0 -
                       r2 * t * t * t / 3.0 + r * k * t * c / 3.0 + 2.0 * r * kp * s / 3.0;
    const double p22 = r * k * c / 2.0 - r2 * k * k * c * c / 2.0 - r2 * t * t / 2.0;

    const double e1 = eta1, e2 = eta2;
    out.deg4_chord = e1 * e1 * e1 * e1 * p40 + e1 * e1 * e1 * e2 * p31 +
                     e1 * e1 * e2 * e2 * p22 - e1 * e2 * e2 * e2 * r2 * t / 3.0 -
                     e2 * e2 * e2 * e2 * r2 / 12.0;

    const double q40 = kpp * k * r2 * c * c / 3.0 - kpp * r * c / 3.0 + kp * kp * r2 * c * c / 4.0 +
                       r2 * tpp * t / 3.0 + r2 * tp * tp / 4.0;
    const double q31 = -k * kp * r2 * s * c + kp * r * s / 2.0 + r2 * tpp / 3.0;
    const double q22 = k * r * c / 2.0 - k * k * r2 * c * c / 2.0;
    out.deg4_pseudo = e1 * e1 * e1 * e1 * q40 + e1 * e1 * e1 * e2 * q31 + e1 * e1 * e2 * e2 * q22;
    return out;
}

ExpansionTerms expansion_terms(const Tube& tube, double u, double theta, double eta1, double eta2) {
    return expansion_terms(local_geometry(tube.curve(), u), tube.radius(), theta, eta1, eta2);
}

namespace {

double regularized_value(const ExpansionTerms& t, double alpha, double r) {
    if (t.deg2 <= 0.0) {
        // exact coincidence: meridian-direction limit
        if (alpha == 2.0) return 1.0 / (12.0 * r * r);
        return alpha < 2.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    const double diff = t.deg4_pseudo - t.deg4_chord;
    if (alpha == 2.0) return diff / (t.deg2 * t.deg2);
    return 0.5 * alpha * diff / std::pow(t.deg2, 0.5 * alpha + 1.0);
}

} // namespace

double integrand(const Tube& tube, const SurfaceCoord& X, const SurfaceCoord& Y, double alpha,
                 double eps_d_abs) {
    const SurfaceCoord* A = &X;
    const SurfaceCoord* B = &Y;
    if (B->u < A->u || (B->u == A->u && B->theta < A->theta)) std::swap(A, B);

    const double ch2 = chord_sq(tube, *A, *B);
    const double ds2 = pseudo_distance_sq(tube, *A, *B);
    if (ch2 < kChordSingularSq && ds2 > kPseudoFarSq) {
        std::ostringstream os;
        os << "coincident boundary points far apart on the surface: (" << A->u << ", " << A->theta
           << ") vs (" << B->u << ", " << B->theta << ")";
        throw SelfContactSingular(A->u, A->theta, B->u, B->theta, os.str());
    }
    if (eps_d_abs > 0.0) {
        ArclengthMap arcs(tube.curve(), 512);
        double ds_arc = arcs.arc_at(B->u) - arcs.arc_at(A->u);
        const double L = arcs.total();
        double eta1 = ds_arc <= L - ds_arc ? ds_arc : -(L - ds_arc);
        const double eta2 = wrap_signed(B->theta - A->theta);
        const ExpansionTerms t = expansion_terms(tube, A->u, A->theta, eta1, eta2);
        if (t.deg2 < eps_d_abs) return regularized_value(t, alpha, tube.radius());
    }
    if (alpha == 2.0) return 1.0 / ch2 - 1.0 / ds2;
    return std::pow(ch2, -0.5 * alpha) - std::pow(ds2, -0.5 * alpha);
}

// ---------------------------------------------------------------------------
// 4D tensor-product quadrature
// ---------------------------------------------------------------------------

namespace {

struct AxisTables {
    std::vector<double> nodes;
    std::vector<Vec3> pos, nrm, bin;
    std::vector<double> speed, kappa, tau;
    std::vector<double> S, K, C; // arclength, curvature and |torsion| prefixes
};

struct LevelTables {
    int ns = 0, nt = 0;
    double hs = 0.0, ht = 0.0;
    AxisTables a, b; // midpoint and offset parameter grids
    double S_tot = 0.0, K_tot = 0.0, C_tot = 0.0;
    std::vector<double> theta, phi, cth, cph;
    std::vector<Vec3> P, Q;          // boundary points [i * nt + k]
    std::vector<double> lm;          // meridian arcs [k * nt + l]
    std::vector<double> w_th, w_ph;  // per-angle measure factors (physical) or 1
    bool abs_tables = false;         // inadmissible: per-angle |.| prefixes
    std::vector<double> A_th_a, A_th_b, A_th_tot; // [k * ns + i] / per-theta totals
    std::vector<double> A_ph_a, A_ph_b, A_ph_tot;
    std::vector<LocalGeometry> geo_a; // for the regularized branch
};

void fill_axis(const Tube& tube, const std::vector<double>& nodes, AxisTables& ax) {
    const ClosedCurve& c = tube.curve();
    const std::size_t n = nodes.size();
    ax.nodes = nodes;
    ax.pos.resize(n);
    ax.nrm.resize(n);
    ax.bin.resize(n);
    ax.speed.resize(n);
    ax.kappa.resize(n);
    ax.tau.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const CurveJet j = c.jet(nodes[i]);
        const FrenetData f = frenet(j);
        ax.pos[i] = j.p;
        ax.nrm[i] = f.normal;
        ax.bin[i] = f.binormal;
        ax.speed[i] = f.speed;
        ax.kappa[i] = f.curvature;
        ax.tau[i] = f.torsion;
    }
}

LevelTables build_tables(const Tube& tube, int ns, int nt, SurfaceMeasure measure) {
    LevelTables t;
    t.ns = ns;
    t.nt = nt;
    t.hs = kTwoPi / ns;
    t.ht = kTwoPi / nt;
    const double r = tube.radius();
    const ClosedCurve& curve = tube.curve();

    fill_axis(tube, midpoint_grid(ns), t.a);
    fill_axis(tube, offset_grid(ns), t.b);
    t.theta = midpoint_grid(nt);
    t.phi = offset_grid(nt);
    t.cth.resize(nt);
    t.cph.resize(nt);
    for (int k = 0; k < nt; ++k) t.cth[k] = std::cos(t.theta[k]);
    for (int l = 0; l < nt; ++l) t.cph[l] = std::cos(t.phi[l]);

    // prefix integrals on a fine midpoint grid; 8x keeps grid nodes on edges
    const int m = 8;
    const int nf = m * ns;
    const double hf = kTwoPi / nf;
    std::vector<double> edgeS(nf + 1, 0.0), edgeK(nf + 1, 0.0), edgeC(nf + 1, 0.0);
    t.abs_tables = !tube.locally_admissible();
    std::vector<std::vector<double>> edgeA_th, edgeA_ph;
    if (t.abs_tables) {
        edgeA_th.assign(nt, std::vector<double>(nf + 1, 0.0));
        edgeA_ph.assign(nt, std::vector<double>(nf + 1, 0.0));
    }
    for (int q = 0; q < nf; ++q) {
        const double u = (q + 0.5) * hf;
        const FrenetData f = frenet(curve.jet(u));
        edgeS[q + 1] = edgeS[q] + f.speed * hf;
        edgeK[q + 1] = edgeK[q] + f.curvature * f.speed * hf;
        edgeC[q + 1] = edgeC[q] + r * std::abs(f.torsion) * f.speed * hf;
        if (t.abs_tables) {
            for (int k = 0; k < nt; ++k)
                edgeA_th[k][q + 1] =
                    edgeA_th[k][q] + std::abs(1.0 - r * t.cth[k] * f.curvature) * f.speed * hf;
            for (int l = 0; l < nt; ++l)
                edgeA_ph[l][q + 1] =
                    edgeA_ph[l][q] + std::abs(1.0 - r * t.cph[l] * f.curvature) * f.speed * hf;
        }
    }
    t.S_tot = edgeS[nf];
    t.K_tot = edgeK[nf];
    t.C_tot = edgeC[nf];
    t.a.S.resize(ns);
    t.a.K.resize(ns);
    t.a.C.resize(ns);
    t.b.S.resize(ns);
    t.b.K.resize(ns);
    t.b.C.resize(ns);
    for (int i = 0; i < ns; ++i) {
        const int ea = m * i + m / 2; // edge index of (i + 1/2) h
        const int eb = m * i;         // edge index of i h
        t.a.S[i] = edgeS[ea];
        t.a.K[i] = edgeK[ea];
        t.a.C[i] = edgeC[ea];
        t.b.S[i] = edgeS[eb];
        t.b.K[i] = edgeK[eb];
        t.b.C[i] = edgeC[eb];
    }
    if (t.abs_tables) {
        t.A_th_a.resize(std::size_t(nt) * ns);
        t.A_th_b.resize(std::size_t(nt) * ns);
        t.A_ph_a.resize(std::size_t(nt) * ns);
        t.A_ph_b.resize(std::size_t(nt) * ns);
        t.A_th_tot.resize(nt);
        t.A_ph_tot.resize(nt);
        for (int k = 0; k < nt; ++k) {
            t.A_th_tot[k] = edgeA_th[k][nf];
            for (int i = 0; i < ns; ++i) {
                t.A_th_a[std::size_t(k) * ns + i] = edgeA_th[k][m * i + m / 2];
                t.A_th_b[std::size_t(k) * ns + i] = edgeA_th[k][m * i];
            }
        }
        for (int l = 0; l < nt; ++l) {
            t.A_ph_tot[l] = edgeA_ph[l][nf];
            for (int i = 0; i < ns; ++i) {
                t.A_ph_a[std::size_t(l) * ns + i] = edgeA_ph[l][m * i + m / 2];
                t.A_ph_b[std::size_t(l) * ns + i] = edgeA_ph[l][m * i];
            }
        }
    }

    t.P.resize(std::size_t(ns) * nt);
    t.Q.resize(std::size_t(ns) * nt);
    for (int i = 0; i < ns; ++i)
        for (int k = 0; k < nt; ++k) {
            t.P[std::size_t(i) * nt + k] = t.a.pos[i] + r * t.cth[k] * t.a.nrm[i] +
                                           r * std::sin(t.theta[k]) * t.a.bin[i];
            t.Q[std::size_t(i) * nt + k] = t.b.pos[i] + r * t.cph[k] * t.b.nrm[i] +
                                           r * std::sin(t.phi[k]) * t.b.bin[i];
        }

    t.lm.resize(std::size_t(nt) * nt);
    for (int k = 0; k < nt; ++k)
        for (int l = 0; l < nt; ++l)
            t.lm[std::size_t(k) * nt + l] = meridian_distance(t.theta[k], t.phi[l], r);

    t.w_th.assign(std::size_t(ns) * nt, 1.0);
    t.w_ph.assign(std::size_t(ns) * nt, 1.0);
    if (measure == SurfaceMeasure::Physical) {
        for (int i = 0; i < ns; ++i)
            for (int k = 0; k < nt; ++k) {
                t.w_th[std::size_t(i) * nt + k] = r * (1.0 - r * t.a.kappa[i] * t.cth[k]);
                t.w_ph[std::size_t(i) * nt + k] = r * (1.0 - r * t.b.kappa[i] * t.cph[k]);
            }
    }

    t.geo_a.resize(ns);
    for (int i = 0; i < ns; ++i) t.geo_a[i] = local_geometry(curve, t.a.nodes[i]);
    return t;
}

struct RowStats {
    double sum = 0.0;
    double min_chord_sq = std::numeric_limits<double>::infinity();
    int min_j = -1, min_k = -1, min_l = -1;
    double pseudo_at_min = 0.0;
    bool singular = false;
    double sing_v = 0.0, sing_phi = 0.0, sing_theta = 0.0;
};

struct LevelResult {
    double value = 0.0;
    double min_chord_sq = std::numeric_limits<double>::infinity();
    SurfaceCoord min_x, min_y;
    double pseudo_sq_at_min = 0.0;
};

LevelResult run_level(const Tube& tube, const EnergyParams& params, int ns, int nt) {
    const LevelTables t = build_tables(tube, ns, nt, params.measure);
    const double r = tube.radius();
    const double eps_d = params.eps_d_rel * r * r;
    const double tol_far = 0.01 * r * r; // (0.1 r)^2
    const bool fast2 = (params.alpha == 2.0);
    const double mhalf = -0.5 * params.alpha;
    // gate can only trigger when the arclength offset alone keeps deg2 small
    const double cmin = std::max(0.0, 1.0 - r * tube.max_curvature());
    const double cmin2 = cmin * cmin;

    std::vector<RowStats> rows(ns);
    std::atomic<int> next{0};
    auto worker = [&]() {
        std::vector<double> lt_ph_f(nt), lt_ph_b(nt), w_ph_row(nt);
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= ns) break;
            RowStats rs;
            const double wu = t.a.speed[i] * t.hs * t.ht;
            for (int j = 0; j < ns; ++j) {
                const bool fwd = (j > i); // v_j > u_i  <=>  j >= i+1
                const double dS = fwd ? t.b.S[j] - t.a.S[i] : t.S_tot - (t.a.S[i] - t.b.S[j]);
                const double dK = fwd ? t.b.K[j] - t.a.K[i] : t.K_tot - (t.a.K[i] - t.b.K[j]);
                const double dC = fwd ? t.b.C[j] - t.a.C[i] : t.C_tot - (t.a.C[i] - t.b.C[j]);
                const double dSb = t.S_tot - dS, dKb = t.K_tot - dK, dCb = t.C_tot - dC;
                const double eta1 = dS <= dSb ? dS : -dSb;
                const bool gate_possible = eta1 * eta1 * cmin2 < eps_d;
                const double wij = wu * t.b.speed[j] * t.hs * t.ht;
                for (int l = 0; l < nt; ++l) {
                    if (t.abs_tables) {
                        const std::size_t o = std::size_t(l) * ns;
                        const double f = fwd ? t.A_ph_b[o + j] - t.A_ph_a[o + i]
                                             : t.A_ph_tot[l] - (t.A_ph_a[o + i] - t.A_ph_b[o + j]);
                        lt_ph_f[l] = f;
                        lt_ph_b[l] = t.A_ph_tot[l] - f;
                    } else {
                        lt_ph_f[l] = dS - r * t.cph[l] * dK;
                        lt_ph_b[l] = dSb - r * t.cph[l] * dKb;
                    }
                    w_ph_row[l] = t.w_ph[std::size_t(j) * nt + l];
                }
                const Vec3* Prow = &t.P[std::size_t(i) * nt];
                const Vec3* Qrow = &t.Q[std::size_t(j) * nt];
                for (int k = 0; k < nt; ++k) {
                    double lt_th_f, lt_th_b;
                    if (t.abs_tables) {
                        const std::size_t o = std::size_t(k) * ns;
                        lt_th_f = fwd ? t.A_th_b[o + j] - t.A_th_a[o + i]
                                      : t.A_th_tot[k] - (t.A_th_a[o + i] - t.A_th_b[o + j]);
                        lt_th_b = t.A_th_tot[k] - lt_th_f;
                    } else {
                        lt_th_f = dS - r * t.cth[k] * dK;
                        lt_th_b = dSb - r * t.cth[k] * dKb;
                    }
                    const Vec3 Pi = Prow[k];
                    const double wk = wij * t.w_th[std::size_t(i) * nt + k];
                    const double* lmrow = &t.lm[std::size_t(k) * nt];
                    for (int l = 0; l < nt; ++l) {
                        const Vec3 d = Pi - Qrow[l];
                        const double ch2 = dot(d, d);
                        const double mf = lmrow[l] + dC;
                        const double mb = lmrow[l] + dCb;
                        const double dsf = mf * mf + lt_th_f * lt_ph_f[l];
                        const double dsb = mb * mb + lt_th_b * lt_ph_b[l];
                        const double ds2 = dsf < dsb ? dsf : dsb;
                        if (ch2 < kChordSingularSq && ds2 > kPseudoFarSq) {
                            rs.singular = true;
                            rs.sing_v = t.b.nodes[j];
                            rs.sing_theta = t.theta[k];
                            rs.sing_phi = t.phi[l];
                            goto row_done;
                        }
                        double val;
                        if (gate_possible) {
                            const double eta2 = wrap_signed(t.phi[l] - t.theta[k]);
                            const ExpansionTerms ex =
                                expansion_terms(t.geo_a[i], r, t.theta[k], eta1, eta2);
                            if (ex.deg2 < eps_d) {
                                val = regularized_value(ex, params.alpha, r);
                            } else if (fast2) {
                                val = 1.0 / ch2 - 1.0 / ds2;
                            } else {
                                val = std::pow(ch2, mhalf) - std::pow(ds2, mhalf);
                            }
                        } else if (fast2) {
                            val = 1.0 / ch2 - 1.0 / ds2;
                        } else {
                            val = std::pow(ch2, mhalf) - std::pow(ds2, mhalf);
                        }
                        rs.sum += val * wk * w_ph_row[l];
                        if (ds2 >= tol_far && ch2 < rs.min_chord_sq) {
                            rs.min_chord_sq = ch2;
                            rs.min_j = j;
                            rs.min_k = k;
                            rs.min_l = l;
                            rs.pseudo_at_min = ds2;
                        }
                    }
                }
            }
        row_done:
            rows[i] = rs;
        }
    };

    int nthreads = params.threads > 0 ? params.threads
                                      : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::max(1, std::min(nthreads, ns));
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int w = 0; w < nthreads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    // fixed-order reduction: bit-identical for a fixed grid, any thread count
    LevelResult res;
    for (int i = 0; i < ns; ++i) {
        if (rows[i].singular) {
            std::ostringstream os;
            os << "energy quadrature hit a self-contact pair at (u=" << t.a.nodes[i]
               << ", theta=" << rows[i].sing_theta << ") / (v=" << rows[i].sing_v
               << ", phi=" << rows[i].sing_phi << ")";
            throw SelfContactSingular(t.a.nodes[i], rows[i].sing_theta, rows[i].sing_v,
                                      rows[i].sing_phi, os.str());
        }
        res.value += rows[i].sum;
        if (rows[i].min_j >= 0 && rows[i].min_chord_sq < res.min_chord_sq) {
            res.min_chord_sq = rows[i].min_chord_sq;
            res.min_x = SurfaceCoord(t.a.nodes[i], t.theta[rows[i].min_k]);
            res.min_y = SurfaceCoord(t.b.nodes[rows[i].min_j], t.phi[rows[i].min_l]);
            res.pseudo_sq_at_min = rows[i].pseudo_at_min;
        }
    }
    return res;
}

} // namespace

EnergyResult energy(const Tube& tube, const EnergyParams& params) {
    params.validate();
    EnergyResult out;
    out.locally_inadmissible = !tube.locally_admissible();

    double prev = 0.0;
    bool have_prev = false;
    LevelResult fin;
    for (int lvl = params.refinement_levels - 1; lvl >= 0; --lvl) {
        const int ns = params.grid_s >> lvl;
        const int nt = params.grid_theta >> lvl;
        const LevelResult rl = run_level(tube, params, ns, nt);
        if (lvl == 0) {
            fin = rl;
            out.error_estimate = have_prev ? std::abs(rl.value - prev) : 0.0;
        }
        prev = rl.value;
        have_prev = true;
    }
    out.value = fin.value;
    out.min_chord = std::isfinite(fin.min_chord_sq) ? std::sqrt(fin.min_chord_sq)
                                                    : std::numeric_limits<double>::infinity();
    out.min_pair_x = fin.min_x;
    out.min_pair_y = fin.min_y;
    out.pseudo_sq_at_min = fin.pseudo_sq_at_min;
    out.near_contact = std::isfinite(out.min_chord) && out.min_chord < 1e-3 * tube.radius();
    return out;
}

// ---------------------------------------------------------------------------
// reduced torus oracle
// ---------------------------------------------------------------------------

double torus_reduced_integrand(double R, double r, double theta, double phi) {
    const double a = R - r * std::cos(theta);
    const double b = R - r * std::cos(phi);
    const double c = r * (std::sin(theta) - std::sin(phi));
    double m = std::abs(wrap_angle(theta) - wrap_angle(phi));
    m = std::min(m, kTwoPi - m);
    const double amb = a - b;
    const double apb = a + b;
    const double chord_part =
        std::numbers::pi / std::sqrt((amb * amb + c * c) * (apb * apb + c * c));
    const double rm = r * m;
    const double sab = std::sqrt(a * b);
    const double pseudo_part = std::atan(sab * std::numbers::pi / rm) / (rm * sab);
    return chord_part - pseudo_part;
}

double torus_diagonal_limit(double R, double r, double theta) {
    const double a = R - r * std::cos(theta);
    return 1.0 / (std::numbers::pi * a * a);
}

double torus_energy_reduced(double R, double r, double alpha, int grid) {
    if (!(R > r && r > 0.0)) throw std::invalid_argument("torus_energy_reduced: need R > r > 0");
    if (grid < 8) throw std::invalid_argument("torus_energy_reduced: grid too small");
    const double h = kTwoPi / grid;
    double sum = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double theta = (i + 0.5) * h;
        for (int j = 0; j < grid; ++j) {
            const double phi = j * h;
            if (alpha == 2.0) {
                sum += torus_reduced_integrand(R, r, theta, phi);
            } else {
                const double a = R - r * std::cos(theta);
                const double b = R - r * std::cos(phi);
                const double c = r * (std::sin(theta) - std::sin(phi));
                double m = std::abs(theta - phi);
                m = std::min(m, kTwoPi - m);
                const double A = a * a + b * b + c * c;
                const double B = 2.0 * a * b;
                const double p2 = r * r * m * m;
                const double ab = a * b;
                auto f = [&](double x) {
                    return std::pow(A - B * std::cos(x), -0.5 * alpha) -
                           std::pow(p2 + ab * x * x, -0.5 * alpha);
                };
                const auto panels = graded_panels(0.0, std::numbers::pi, std::min(m, 0.1) / 4.0);
                double xi = 0.0;
                for (std::size_t q = 0; q + 1 < panels.size(); ++q)
                    xi += gauss_panel(f, panels[q], panels[q + 1], gauss16());
                sum += xi;
            }
        }
    }
    // F = 4 pi R^2 * Int dtheta dphi [Int_0^pi dx ...]
    return 4.0 * std::numbers::pi * R * R * sum * h * h;
}

// ---------------------------------------------------------------------------
// knot energy of the centerline
// ---------------------------------------------------------------------------

double ohara_energy(const ClosedCurve& curve, double alpha, int grid) {
    if (grid < 8) throw std::invalid_argument("ohara_energy: grid too small");
    const double h = kTwoPi / grid;
    ArclengthMap arcs(curve, std::max(512, std::min(grid, 4096)));
    const double L = arcs.total();

    std::vector<Vec3> Pu(grid), Pv(grid);
    std::vector<double> Su(grid), Sv(grid), gu(grid), gv(grid);
    for (int i = 0; i < grid; ++i) {
        const double u = (i + 0.5) * h, v = i * h;
        Pu[i] = curve.position(u);
        Pv[i] = curve.position(v);
        Su[i] = arcs.arc_at(u);
        Sv[i] = arcs.arc_at(v);
        gu[i] = norm(curve.jet(u).d1);
        gv[i] = norm(curve.jet(v).d1);
    }
    const bool fast2 = (alpha == 2.0);
    double total = 0.0;
    for (int i = 0; i < grid; ++i) {
        double row = 0.0;
        for (int j = 0; j < grid; ++j) {
            const double ch2 = norm_sq(Pu[i] - Pv[j]);
            double d = std::abs(Su[i] - Sv[j]);
            d = std::min(d, L - d);
            if (ch2 < kChordSingularSq && d * d > kPseudoFarSq)
                throw SelfContactSingular((i + 0.5) * h, 0.0, j * h, 0.0,
                                          "knot energy: coincident points at distinct arcs");
            if (fast2)
                row += (1.0 / ch2 - 1.0 / (d * d)) * gv[j];
            else
                row += (std::pow(ch2, -0.5 * alpha) - std::pow(d, -alpha)) * gv[j];
        }
        total += row * gu[i];
    }
    return total * h * h;
}

bool cauchy_converges(const std::vector<double>& values) {
    if (values.size() < 3) throw std::invalid_argument("cauchy_converges: need >= 3 levels");
    std::vector<double> diffs;
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        diffs.push_back(values[i + 1] - values[i]);
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
        if (!(diffs[i] >= 2.0 * diffs[i + 1])) return false;
    }
    return true;
}

} // namespace tubenergy
