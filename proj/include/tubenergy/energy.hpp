#pragma once

#include <optional>
#include <vector>

#include "tubenergy/tube.hpp"

namespace tubenergy {

enum class SurfaceMeasure {
    // d(theta) d(phi) ds dt with speed factors only: the functional's own
    // fourfold coordinate form.
    Coordinate,
    // physical boundary area: r (1 - r kappa cos(theta)) per factor.
    Physical,
};

struct EnergyParams {
    double alpha = 2.0;
    int grid_s = 48;       // points along the curve parameter (even)
    int grid_theta = 48;   // points along each meridian angle (even)
    double eps_d_rel = 1e-8; // near-diagonal switch on the quadratic term, x r^2
    int refinement_levels = 2;
    SurfaceMeasure measure = SurfaceMeasure::Coordinate;
    int threads = 0; // 0 = hardware concurrency

    void validate() const;
};

// Degree-2/3/4 terms of the squared chord and squared pseudo-distance in the
// offsets (eta1 = arclength, eta2 = meridian angle) at a base point.
struct ExpansionTerms {
    double deg2 = 0.0;        // shared by both expansions
    double deg3 = 0.0;        // shared by both expansions
    double deg4_chord = 0.0;  // completes chord^2 through fourth order
    double deg4_pseudo = 0.0; // completes pseudo-distance^2 through fourth order
};

// kappa, tau and their first two arclength derivatives at a point.
struct LocalGeometry {
    double kappa = 0.0, kappa_s = 0.0, kappa_ss = 0.0;
    double tau = 0.0, tau_s = 0.0, tau_ss = 0.0;
};

struct EnergyResult {
    double value = 0.0;
    double error_estimate = 0.0; // two-level refinement difference
    bool locally_inadmissible = false;
    bool near_contact = false;
    double min_chord = 0.0; // over sampled pairs past the diagonal exclusion
    SurfaceCoord min_pair_x, min_pair_y;
    double pseudo_sq_at_min = 0.0;
};

// Squared Euclidean distance of the two boundary points.
double chord_sq(const Tube& tube, const SurfaceCoord& X, const SurfaceCoord& Y);

// kappa', kappa'', tau', tau'' via 4th-order central differences of the exact
// kappa(u), tau(u), converted to arclength derivatives. step is in parameter.
LocalGeometry local_geometry(const ClosedCurve& curve, double u, double step = 1e-3);

ExpansionTerms expansion_terms(const LocalGeometry& g, double r, double theta, double eta1,
                               double eta2);
ExpansionTerms expansion_terms(const Tube& tube, double u, double theta, double eta1, double eta2);

// Pointwise energy integrand with the near-diagonal regularization: when the
// quadratic term falls below eps_d_abs the value switches to the finite
// fourth-order ratio. Throws SelfContactSingular at a true contact pair.
double integrand(const Tube& tube, const SurfaceCoord& X, const SurfaceCoord& Y, double alpha = 2.0,
                 double eps_d_abs = 0.0);

// Tensor-product periodic midpoint quadrature of the surface energy, with the
// second grid offset by half a cell so the exact diagonal is never sampled.
// Deterministic parallel reduction; bit-reproducible for a fixed grid.
EnergyResult energy(const Tube& tube, const EnergyParams& params);

// Semi-analytic oracle for a circular centerline: the longitudinal integral is
// done in closed form (alpha = 2) or by graded quadrature (other alpha), the
// remaining (theta, phi) integral by offset midpoint grids.
double torus_energy_reduced(double R, double r, double alpha = 2.0, int grid = 256);

// The (theta, phi) integrand of the reduced torus energy at alpha = 2.
double torus_reduced_integrand(double R, double r, double theta, double phi);

// Its diagonal limit 1/(pi a^2), a = R - r cos(theta).
double torus_diagonal_limit(double R, double r, double theta);

// Knot energy of the centerline: 1/|gamma(s)-gamma(t)|^alpha minus the same
// power of the shorter arclength distance, doubly integrated.
double ohara_energy(const ClosedCurve& curve, double alpha = 2.0, int grid = 2048);

// ---- local contact models for the exponent study ----

enum class ContactModel {
    Point, // two perpendicular tangent cylinders; 4D coordinate domain
    Line,  // two parallel tangent cylinders; singular set is a line
};

// J(alpha, delta): integral of ||X - Y||^-alpha over the model domain minus a
// ball of radius delta around the contact set (unit tube radius). `extent` is
// the half-width of every coordinate direction of the model domain.
// Returns values[i][j] for alphas[i] x deltas[j]; one shared quadrature per
// geometry so differences across deltas are consistent.
std::vector<std::vector<double>> exponent_model_integral(ContactModel geometry,
                                                         const std::vector<double>& alphas,
                                                         const std::vector<double>& deltas,
                                                         double extent = 0.5);

double exponent_model_integral(ContactModel geometry, double alpha, double extent, double delta);

// Factor-2 Cauchy rule on J values listed by decreasing delta: converges iff
// every successive difference shrinks by at least 2x.
bool cauchy_converges(const std::vector<double>& values_by_decreasing_delta);

} // namespace tubenergy
