#pragma once

#include <cmath>
#include <numbers>

#include "tubenergy/curve.hpp"

namespace tubenergy {

// Angle or parameter wrapped into [0, 2pi).
double wrap_angle(double a);

// A boundary point of the tube, identified by (curve parameter, meridian angle).
struct SurfaceCoord {
    double u = 0.0;     // parameter in [0, 2pi)
    double theta = 0.0; // meridian angle in [0, 2pi), measured from the normal

    SurfaceCoord() = default;
    SurfaceCoord(double u_, double theta_) : u(wrap_angle(u_)), theta(wrap_angle(theta_)) {}
};

enum class Sweep { Forward, Backward };

// Arc functionals of a parallel between two cross-sections, for one sweep.
struct ProjectionLengths {
    double parallel_arc = 0.0;     // full arclength of the parallel segment
    double tangential = 0.0;       // projection on the tangent direction
    double cross_section = 0.0;    // torsion part, swept inside the cross-sections
    Sweep orientation = Sweep::Forward;
};

// Tubular neighbourhood of radius r around a closed curve. Admissibility is a
// cached flag (r * kappa_max < 1), not a construction error: inadmissible
// tubes are still useful for divergence studies.
class Tube {
  public:
    Tube(ClosedCurve curve, double radius, int curvature_samples = 2048);

    const ClosedCurve& curve() const { return curve_; }
    double radius() const { return radius_; }
    double max_curvature() const { return kappa_max_; }
    bool locally_admissible() const { return radius_ * kappa_max_ < 1.0; }

  private:
    ClosedCurve curve_;
    double radius_;
    double kappa_max_;
};

// gamma(u) + r cos(theta) n(u) + r sin(theta) b(u).
Vec3 boundary_point(const Tube& tube, const SurfaceCoord& c);

// Volume element of the chart at radial distance rho, per unit speed:
// rho * (1 - rho * kappa(u) * cos(theta)). Negative where the chart folds.
double jacobian_det(const Tube& tube, double rho, double u, double theta);

// Minimal arc between angles theta and phi on a meridian circle of radius r.
double meridian_distance(double theta, double phi, double r);

// The three arc functionals along the chosen sweep from u1 to u2 (mod 2pi).
// Adaptive quadrature; integrands may have |.| kinks on inadmissible tubes.
ProjectionLengths parallel_lengths(const Tube& tube, double theta, double u1, double u2,
                                   Sweep orientation, double tol = 1e-10);

// min(forward, backward) full parallel arc between the two cross-sections.
double minimal_parallel_distance(const Tube& tube, double theta, double u1, double u2,
                                 double tol = 1e-10);

// Pseudo-distance squared on the tube surface:
//   (meridian arc + cross-section torsion arc)^2 + tangential(theta)*tangential(phi),
// evaluated for both sweeps, minimum taken. Symmetric; zero only at X == Y.
double pseudo_distance_sq(const Tube& tube, const SurfaceCoord& X, const SurfaceCoord& Y,
                          double tol = 1e-10);

} // namespace tubenergy
