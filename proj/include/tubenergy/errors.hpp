#pragma once

#include <stdexcept>
#include <string>

namespace tubenergy {

// Frenet frame undefined: |gamma' x gamma''| vanishes (curvature below tolerance).
class DegenerateFrame : public std::runtime_error {
  public:
    explicit DegenerateFrame(const std::string& what) : std::runtime_error(what) {}
};

// Seam mismatch of gamma, t or n for a curve submitted as closed.
class ClosureViolation : public std::runtime_error {
  public:
    ClosureViolation(std::string quantity_, double residual_, const std::string& what)
        : std::runtime_error(what), quantity(std::move(quantity_)), residual(residual_) {}
    std::string quantity;
    double residual;
};

// Two surface points coincide in space while staying far apart on the surface:
// the energy integral diverges at this pair.
class SelfContactSingular : public std::runtime_error {
  public:
    SelfContactSingular(double u_, double theta_, double v_, double phi_, const std::string& what)
        : std::runtime_error(what), u(u_), theta(theta_), v(v_), phi(phi_) {}
    double u, theta, v, phi;
};

// Malformed or out-of-contract input document.
class SpecParseError : public std::runtime_error {
  public:
    explicit SpecParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tubenergy
