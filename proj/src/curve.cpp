#include "tubenergy/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tubenergy/quadrature.hpp"

namespace tubenergy {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int coeff_degree(const ClosedCurve::Coeffs& a, const ClosedCurve::Coeffs& b) {
    std::size_t n = 0;
    for (int c = 0; c < 3; ++c) n = std::max({n, a[c].size(), b[c].size()});
    return n == 0 ? 0 : static_cast<int>(n) - 1;
}

} // namespace

ClosedCurve::ClosedCurve(Coeffs cos_coeffs, Coeffs sin_coeffs)
    : degree_(coeff_degree(cos_coeffs, sin_coeffs)), cos_(std::move(cos_coeffs)),
      sin_(std::move(sin_coeffs)) {
    if (degree_ < 1 || degree_ > kMaxDegree)
        throw std::invalid_argument("ClosedCurve: degree must be in [1, 24], got " +
                                    std::to_string(degree_));
    for (int c = 0; c < 3; ++c) {
        cos_[c].resize(degree_ + 1, 0.0);
        sin_[c].resize(degree_ + 1, 0.0);
    }
}

ClosedCurve ClosedCurve::circle(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("circle: radius must be positive");
    Coeffs a{}, b{};
    for (int c = 0; c < 3; ++c) {
        a[c].assign(2, 0.0);
        b[c].assign(2, 0.0);
    }
    a[0][1] = radius;
    b[1][1] = radius;
    return ClosedCurve(std::move(a), std::move(b));
}

ClosedCurve ClosedCurve::trefoil() {
    // (sin u + 2 sin 2u, cos u - 2 cos 2u, -sin 3u); kappa stays in ~[0.21, 0.78].
    Coeffs a{}, b{};
    for (int c = 0; c < 3; ++c) {
        a[c].assign(4, 0.0);
        b[c].assign(4, 0.0);
    }
    b[0][1] = 1.0;
    b[0][2] = 2.0;
    a[1][1] = 1.0;
    a[1][2] = -2.0;
    b[2][3] = -1.0;
    ClosedCurve curve(std::move(a), std::move(b));
    curve.validate();
    return curve;
}

ClosedCurve ClosedCurve::from_samples(const std::vector<Vec3>& samples, int degree) {
    const int m = static_cast<int>(samples.size());
    if (degree < 1 || degree > kMaxDegree) throw std::invalid_argument("from_samples: bad degree");
    if (m < 2 * degree + 1) throw std::invalid_argument("from_samples: too few samples");
    Coeffs a{}, b{};
    for (int c = 0; c < 3; ++c) {
        a[c].assign(degree + 1, 0.0);
        b[c].assign(degree + 1, 0.0);
    }
    // Plain DFT projection; samples are assumed uniform on [0, 2pi).
    for (int k = 0; k <= degree; ++k) {
        double scale = (k == 0) ? 1.0 / m : 2.0 / m;
        for (int c = 0; c < 3; ++c) {
            double ca = 0.0, cb = 0.0;
            for (int j = 0; j < m; ++j) {
                const double ang = kTwoPi * k * j / m;
                const double s = (c == 0 ? samples[j].x : (c == 1 ? samples[j].y : samples[j].z));
                ca += s * std::cos(ang);
                cb += s * std::sin(ang);
            }
            a[c][k] = scale * ca;
            b[c][k] = scale * cb;
        }
    }
    return ClosedCurve(std::move(a), std::move(b));
}

CurveJet ClosedCurve::jet(double u) const {
    CurveJet out;
    double p[3] = {cos_[0][0], cos_[1][0], cos_[2][0]};
    double d1[3] = {0, 0, 0}, d2[3] = {0, 0, 0}, d3[3] = {0, 0, 0};
    for (int k = 1; k <= degree_; ++k) {
        const double ck = std::cos(k * u), sk = std::sin(k * u);
        const double k2 = double(k) * k, k3 = k2 * k;
        for (int c = 0; c < 3; ++c) {
            const double A = cos_[c][k], B = sin_[c][k];
            p[c] += A * ck + B * sk;
            d1[c] += k * (-A * sk + B * ck);
            d2[c] += k2 * (-A * ck - B * sk);
            d3[c] += k3 * (A * sk - B * ck);
        }
    }
    out.p = {p[0], p[1], p[2]};
    out.d1 = {d1[0], d1[1], d1[2]};
    out.d2 = {d2[0], d2[1], d2[2]};
    out.d3 = {d3[0], d3[1], d3[2]};
    return out;
}

Vec3 ClosedCurve::position(double u) const {
    double p[3] = {cos_[0][0], cos_[1][0], cos_[2][0]};
    for (int k = 1; k <= degree_; ++k) {
        const double ck = std::cos(k * u), sk = std::sin(k * u);
        for (int c = 0; c < 3; ++c) p[c] += cos_[c][k] * ck + sin_[c][k] * sk;
    }
    return {p[0], p[1], p[2]};
}

ClosedCurve ClosedCurve::phase_shifted(double delta) const {
    Coeffs a = cos_, b = sin_;
    for (int k = 1; k <= degree_; ++k) {
        const double ck = std::cos(k * delta), sk = std::sin(k * delta);
        for (int c = 0; c < 3; ++c) {
            // cos(k(u+delta)), sin(k(u+delta)) expanded back onto the basis
            a[c][k] = cos_[c][k] * ck + sin_[c][k] * sk;
            b[c][k] = -cos_[c][k] * sk + sin_[c][k] * ck;
        }
    }
    return ClosedCurve(std::move(a), std::move(b));
}

ClosedCurve ClosedCurve::transformed(const std::array<Vec3, 3>& rot, const Vec3& offset) const {
    Coeffs a{}, b{};
    for (int c = 0; c < 3; ++c) {
        a[c].assign(degree_ + 1, 0.0);
        b[c].assign(degree_ + 1, 0.0);
    }
    for (int k = 0; k <= degree_; ++k) {
        const Vec3 ak{cos_[0][k], cos_[1][k], cos_[2][k]};
        const Vec3 bk{sin_[0][k], sin_[1][k], sin_[2][k]};
        Vec3 ra{dot(rot[0], ak), dot(rot[1], ak), dot(rot[2], ak)};
        Vec3 rb{dot(rot[0], bk), dot(rot[1], bk), dot(rot[2], bk)};
        if (k == 0) ra += offset;
        a[0][k] = ra.x;
        a[1][k] = ra.y;
        a[2][k] = ra.z;
        b[0][k] = rb.x;
        b[1][k] = rb.y;
        b[2][k] = rb.z;
    }
    return ClosedCurve(std::move(a), std::move(b));
}

ClosedCurve ClosedCurve::perturbed(const Coeffs& cos_noise, const Coeffs& sin_noise,
                                   double scale) const {
    Coeffs a = cos_, b = sin_;
    for (int c = 0; c < 3; ++c) {
        for (std::size_t k = 0; k < a[c].size() && k < cos_noise[c].size(); ++k)
            a[c][k] += scale * cos_noise[c][k];
        for (std::size_t k = 1; k < b[c].size() && k < sin_noise[c].size(); ++k)
            b[c][k] += scale * sin_noise[c][k];
    }
    return ClosedCurve(std::move(a), std::move(b));
}

void ClosedCurve::validate(int n_samples, double eps_kappa) const {
    for (int i = 0; i < n_samples; ++i) {
        const double u = kTwoPi * i / n_samples;
        const CurveJet j = jet(u);
        const double sp = norm(j.d1);
        if (!(sp > 0.0)) throw std::invalid_argument("curve not regular at u=" + std::to_string(u));
        const double cr = norm(cross(j.d1, j.d2));
        if (cr <= eps_kappa * sp * sp * sp)
            throw DegenerateFrame("curvature below tolerance at u=" + std::to_string(u));
    }
}

FrenetData frenet(const CurveJet& jet, double eps_kappa) {
    FrenetData f;
    f.speed = norm(jet.d1);
    if (!(f.speed > 0.0)) throw DegenerateFrame("frenet: |gamma'| = 0");
    const Vec3 cr = cross(jet.d1, jet.d2);
    const double ncr = norm(cr);
    if (ncr <= eps_kappa * f.speed * f.speed * f.speed)
        throw DegenerateFrame("frenet: |gamma' x gamma''| vanishes (kappa ~ 0)");
    f.tangent = jet.d1 / f.speed;
    f.binormal = cr / ncr;
    f.normal = cross(f.binormal, f.tangent);
    f.curvature = ncr / (f.speed * f.speed * f.speed);
    f.torsion = dot(cr, jet.d3) / (ncr * ncr);
    return f;
}

double total_length(const ClosedCurve& curve, int n_quad) {
    if (n_quad < 16) throw std::invalid_argument("total_length: n_quad must be >= 16");
    double s = 0.0;
    for (int i = 0; i < n_quad; ++i) {
        const double u = kTwoPi * (i + 0.5) / n_quad;
        s += norm(curve.jet(u).d1);
    }
    return s * kTwoPi / n_quad;
}

namespace {

double golden_extremum(const std::function<double(double)>& f, double a, double b, bool maximize) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 90; ++it) {
        const bool pick_c = maximize ? (fc > fd) : (fc < fd);
        if (pick_c) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
        if (b - a < 1e-13) break;
    }
    return f(0.5 * (a + b));
}

double extremal_curvature(const ClosedCurve& curve, int n_samples, bool maximize) {
    if (n_samples < 16) throw std::invalid_argument("curvature scan: n_samples must be >= 16");
    auto kappa = [&](double u) { return frenet(curve.jet(u)).curvature; };
    double best_u = 0.0, best = maximize ? -1.0 : 1e300;
    for (int i = 0; i < n_samples; ++i) {
        const double u = kTwoPi * i / n_samples;
        const double k = kappa(u);
        if (maximize ? (k > best) : (k < best)) {
            best = k;
            best_u = u;
        }
    }
    const double h = kTwoPi / n_samples;
    return golden_extremum(kappa, best_u - h, best_u + h, maximize);
}

} // namespace

double max_curvature(const ClosedCurve& curve, int n_samples) {
    return extremal_curvature(curve, n_samples, true);
}

double min_curvature(const ClosedCurve& curve, int n_samples) {
    return extremal_curvature(curve, n_samples, false);
}

ClosureReport closure_check(const std::function<CurveJet(double)>& jet_at, double tol) {
    const CurveJet j0 = jet_at(0.0);
    const CurveJet j1 = jet_at(kTwoPi);
    ClosureReport rep;
    rep.residual_gamma = norm(j1.p - j0.p);
    if (rep.residual_gamma > tol) {
        std::ostringstream os;
        os << "closure violation on gamma: |gamma(2pi)-gamma(0)| = " << rep.residual_gamma;
        throw ClosureViolation("gamma", rep.residual_gamma, os.str());
    }
    const FrenetData f0 = frenet(j0), f1 = frenet(j1);
    rep.residual_tangent = norm(f1.tangent - f0.tangent);
    rep.residual_normal = norm(f1.normal - f0.normal);
    rep.residual_binormal = norm(f1.binormal - f0.binormal);
    if (rep.residual_tangent > tol)
        throw ClosureViolation("tangent", rep.residual_tangent, "closure violation on t");
    if (rep.residual_normal > tol)
        throw ClosureViolation("normal", rep.residual_normal, "closure violation on n");
    if (rep.residual_binormal > tol)
        throw ClosureViolation("binormal", rep.residual_binormal, "closure violation on b");
    return rep;
}

ClosureReport closure_check(const ClosedCurve& curve, double tol) {
    return closure_check([&](double u) { return curve.jet(u); }, tol);
}

PrefixIntegral::PrefixIntegral(const ClosedCurve& curve,
                               std::function<double(const FrenetData&)> density, int n_cells)
    : curve_(&curve), density_(std::move(density)), n_(n_cells), h_(kTwoPi / n_cells) {
    prefix_.assign(n_ + 1, 0.0);
    auto f = [&](double u) { return density_(frenet(curve_->jet(u))); };
    for (int i = 0; i < n_; ++i)
        prefix_[i + 1] = prefix_[i] + gauss_panel(f, i * h_, (i + 1) * h_, gauss16());
    total_ = prefix_[n_];
}

double PrefixIntegral::value_at(double u) const {
    const double wraps = std::floor(u / kTwoPi);
    const double u0 = u - wraps * kTwoPi;
    const int cell = std::min(static_cast<int>(u0 / h_), n_ - 1);
    auto f = [&](double x) { return density_(frenet(curve_->jet(x))); };
    return wraps * total_ + prefix_[cell] + gauss_panel(f, cell * h_, u0, gauss16());
}

ArclengthMap::ArclengthMap(const ClosedCurve& curve, int n_cells)
    : curve_(&curve), n_(n_cells), h_(kTwoPi / n_cells) {
    prefix_.assign(n_ + 1, 0.0);
    auto speed = [&](double u) { return norm(curve_->jet(u).d1); };
    for (int i = 0; i < n_; ++i)
        prefix_[i + 1] = prefix_[i] + gauss_panel(speed, i * h_, (i + 1) * h_, gauss16());
    total_ = prefix_[n_];
}

double ArclengthMap::arc_at(double u) const {
    const double wraps = std::floor(u / kTwoPi);
    const double u0 = u - wraps * kTwoPi;
    int cell = std::min(static_cast<int>(u0 / h_), n_ - 1);
    auto speed = [&](double x) { return norm(curve_->jet(x).d1); };
    const double tailpart = gauss_panel(speed, cell * h_, u0, gauss16());
    return wraps * total_ + prefix_[cell] + tailpart;
}

double ArclengthMap::param_at(double s) const {
    const double wraps = std::floor(s / total_);
    const double s0 = s - wraps * total_;
    // bracket from the table, then Newton
    int lo = 0, hi = n_;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        (prefix_[mid] <= s0 ? lo : hi) = mid;
    }
    double u = lo * h_ + (s0 - prefix_[lo]) / std::max(norm(curve_->jet(lo * h_).d1), 1e-300) ;
    for (int it = 0; it < 60; ++it) {
        const double f = arc_at(u) - s0;
        const double sp = norm(curve_->jet(u).d1);
        const double du = f / sp;
        u -= du;
        if (std::abs(f) < 1e-14 * std::max(1.0, total_)) break;
    }
    return u + wraps * kTwoPi;
}

} // namespace tubenergy
