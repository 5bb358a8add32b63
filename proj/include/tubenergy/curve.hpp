#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "tubenergy/errors.hpp"
#include "tubenergy/vec3.hpp"

namespace tubenergy {

// Position and first three derivatives with respect to the curve parameter.
struct CurveJet {
    Vec3 p, d1, d2, d3;
};

struct FrenetData {
    Vec3 tangent, normal, binormal;
    double curvature = 0.0; // 1/length
    double torsion = 0.0;   // 1/length, signed
    double speed = 0.0;     // |gamma'|, length per parameter
};

struct ClosureReport {
    double residual_gamma = 0.0;
    double residual_tangent = 0.0;
    double residual_normal = 0.0;
    double residual_binormal = 0.0;
};

inline constexpr double kEpsKappa = 1e-8;

// Closed space curve given by truncated Fourier series per coordinate:
//   x_c(u) = cos_c[c][0] + sum_k cos_c[c][k] cos(ku) + sin_c[c][k] sin(ku)
// Periodic and smooth by construction; derivatives are exact.
class ClosedCurve {
  public:
    static constexpr int kMaxDegree = 24;

    using Coeffs = std::array<std::vector<double>, 3>; // [coord][k], k = 0..degree

    ClosedCurve(Coeffs cos_coeffs, Coeffs sin_coeffs);

    static ClosedCurve circle(double radius);
    // Centerline of a torus of major radius R: same circle in the z=0 plane.
    static ClosedCurve torus_centerline(double radius) { return circle(radius); }
    // Trefoil with everywhere-positive curvature (scanned at construction).
    static ClosedCurve trefoil();

    // Trigonometric least-squares fit of uniformly spaced samples.
    static ClosedCurve from_samples(const std::vector<Vec3>& samples, int degree);

    int degree() const { return degree_; }
    const Coeffs& cos_coefficients() const { return cos_; }
    const Coeffs& sin_coefficients() const { return sin_; }

    CurveJet jet(double u) const;
    Vec3 position(double u) const;

    // Same geometric curve traversed from a shifted start point: u -> u + delta.
    ClosedCurve phase_shifted(double delta) const;
    // Rigid motion applied coefficient-wise (rotation matrix rows, then offset).
    ClosedCurve transformed(const std::array<Vec3, 3>& rotation_rows, const Vec3& offset) const;
    // Coefficient-wise additive perturbation (same shapes as the curve's own).
    ClosedCurve perturbed(const Coeffs& cos_noise, const Coeffs& sin_noise, double scale) const;

    // Checks regularity and kappa > eps_kappa over a dense sample; throws on failure.
    void validate(int n_samples = 2048, double eps_kappa = kEpsKappa) const;

  private:
    int degree_;
    Coeffs cos_, sin_;
};

// Serret-Frenet frame plus curvature/torsion from a third-order jet.
// Throws DegenerateFrame when |d1 x d2| <= eps_kappa * |d1|^3.
FrenetData frenet(const CurveJet& jet, double eps_kappa = kEpsKappa);

// Periodic-trapezoidal quadrature of |gamma'|; spectrally accurate here.
double total_length(const ClosedCurve& curve, int n_quad = 1024);

// Dense scan refined by golden-section search around the best sample.
double max_curvature(const ClosedCurve& curve, int n_samples = 2048);
double min_curvature(const ClosedCurve& curve, int n_samples = 2048);

// Seam agreement of gamma, t, n (and b) for a jet source treated as closed
// on [0, 2pi]. Throws ClosureViolation naming the first failing quantity.
ClosureReport closure_check(const std::function<CurveJet(double)>& jet_at, double tol = 1e-9);
ClosureReport closure_check(const ClosedCurve& curve, double tol = 1e-9);

// Prefix integral of a scalar density along the parameter, with per-cell
// Gauss integrals: value_at is accurate to near machine precision.
class PrefixIntegral {
  public:
    PrefixIntegral(const ClosedCurve& curve, std::function<double(const FrenetData&)> density,
                   int n_cells = 1024);

    double total() const { return total_; }
    // integral of the density from 0 to u, extended periodically.
    double value_at(double u) const;

  private:
    const ClosedCurve* curve_;
    std::function<double(const FrenetData&)> density_;
    int n_;
    double h_;
    std::vector<double> prefix_;
    double total_;
};

// Arclength prefix map with per-cell Gauss integrals: arc_at/param_at are
// accurate to near machine precision, which the local expansion tests need.
class ArclengthMap {
  public:
    explicit ArclengthMap(const ClosedCurve& curve, int n_cells = 2048);

    double total() const { return total_; }
    // S(u) for u in [0, 2pi] extended by S(u + 2pi k) = S(u) + k L.
    double arc_at(double u) const;
    // Inverse of arc_at (monotone); accepts any real s.
    double param_at(double s) const;

  private:
    const ClosedCurve* curve_;
    int n_;
    double h_;
    std::vector<double> prefix_; // n_+1 entries, prefix_[n_] = total_
    double total_;
};

} // namespace tubenergy
