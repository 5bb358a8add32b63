#include "tubenergy/tube.hpp"

#include <algorithm>

#include "tubenergy/quadrature.hpp"

namespace tubenergy {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double wrap_angle(double a) {
    double w = std::fmod(a, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

Tube::Tube(ClosedCurve curve, double radius, int curvature_samples)
    : curve_(std::move(curve)), radius_(radius),
      kappa_max_(tubenergy::max_curvature(curve_, curvature_samples)) {
    if (!(radius_ > 0.0)) throw std::invalid_argument("Tube: radius must be positive");
}

Vec3 boundary_point(const Tube& tube, const SurfaceCoord& c) {
    const FrenetData f = frenet(tube.curve().jet(c.u));
    const CurveJet j = tube.curve().jet(c.u);
    return j.p + tube.radius() * std::cos(c.theta) * f.normal +
           tube.radius() * std::sin(c.theta) * f.binormal;
}

double jacobian_det(const Tube& tube, double rho, double u, double theta) {
    const FrenetData f = frenet(tube.curve().jet(u));
    return rho * (1.0 - rho * f.curvature * std::cos(theta));
}

double meridian_distance(double theta, double phi, double r) {
    double d = std::abs(wrap_angle(theta) - wrap_angle(phi));
    d = std::min(d, kTwoPi - d);
    return r * d;
}

namespace {

struct SweepInterval {
    double a, b; // integrate u over [a, b], b >= a (parameter extended past 2pi)
};

SweepInterval sweep_interval(double u1, double u2, Sweep orientation) {
    u1 = wrap_angle(u1);
    u2 = wrap_angle(u2);
    if (orientation == Sweep::Forward) {
        return {u1, u2 >= u1 ? u2 : u2 + kTwoPi};
    }
    // backward: from u2 up to u1 (the complementary arc)
    return {u2, u1 >= u2 ? u1 : u1 + kTwoPi};
}

} // namespace

ProjectionLengths parallel_lengths(const Tube& tube, double theta, double u1, double u2,
                                   Sweep orientation, double tol) {
    const ClosedCurve& curve = tube.curve();
    const double r = tube.radius();
    const double ct = std::cos(theta);
    const SweepInterval iv = sweep_interval(u1, u2, orientation);

    auto frame = [&](double u) { return frenet(curve.jet(u)); };
    ProjectionLengths out;
    out.orientation = orientation;
    out.parallel_arc = adaptive_gauss(
        [&](double u) {
            const FrenetData f = frame(u);
            const double a = 1.0 - r * ct * f.curvature;
            const double b = r * f.torsion;
            return std::sqrt(a * a + b * b) * f.speed;
        },
        iv.a, iv.b, tol);
    out.tangential = adaptive_gauss(
        [&](double u) {
            const FrenetData f = frame(u);
            return std::abs(1.0 - r * ct * f.curvature) * f.speed;
        },
        iv.a, iv.b, tol);
    out.cross_section = r * adaptive_gauss(
                                [&](double u) {
                                    const FrenetData f = frame(u);
                                    return std::abs(f.torsion) * f.speed;
                                },
                                iv.a, iv.b, tol);
    if (std::isnan(out.parallel_arc) || std::isnan(out.tangential) || std::isnan(out.cross_section))
        throw std::runtime_error("parallel_lengths: NaN integrand");
    return out;
}

double minimal_parallel_distance(const Tube& tube, double theta, double u1, double u2, double tol) {
    const double fwd = parallel_lengths(tube, theta, u1, u2, Sweep::Forward, tol).parallel_arc;
    const double bwd = parallel_lengths(tube, theta, u1, u2, Sweep::Backward, tol).parallel_arc;
    return std::min(fwd, bwd);
}

double pseudo_distance_sq(const Tube& tube, const SurfaceCoord& X, const SurfaceCoord& Y,
                          double tol) {
    // Canonical order keeps the evaluation bitwise symmetric in (X, Y).
    const SurfaceCoord* A = &X;
    const SurfaceCoord* B = &Y;
    if (B->u < A->u || (B->u == A->u && B->theta < A->theta)) std::swap(A, B);

    const double lm = meridian_distance(A->theta, B->theta, tube.radius());
    const ProjectionLengths f =
        parallel_lengths(tube, A->theta, A->u, B->u, Sweep::Forward, tol);
    const ProjectionLengths fphi =
        parallel_lengths(tube, B->theta, A->u, B->u, Sweep::Forward, tol);
    const ProjectionLengths b =
        parallel_lengths(tube, A->theta, A->u, B->u, Sweep::Backward, tol);
    const ProjectionLengths bphi =
        parallel_lengths(tube, B->theta, A->u, B->u, Sweep::Backward, tol);

    const double df = (lm + f.cross_section) * (lm + f.cross_section) + f.tangential * fphi.tangential;
    const double db = (lm + b.cross_section) * (lm + b.cross_section) + b.tangential * bphi.tangential;
    return std::min(df, db);
}

} // namespace tubenergy
