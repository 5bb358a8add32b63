#pragma once

#include <string>

#include "tubenergy/tube.hpp"

namespace tubenergy {

enum class ContactClass {
    Clear,
    SelfContact,
    InterpenetrationSuspected,
    LocallyInadmissible,
};

std::string to_string(ContactClass c);

struct SeparationResult {
    double min_chord = 0.0;
    SurfaceCoord witness_x, witness_y;
    double pseudo_sq = 0.0; // at the witness pair; always >= tol_far
};

struct ContactReport {
    bool locally_admissible = true;
    double r_kappa_max = 0.0;
    double min_jacobian = 0.0; // over the sampled interior chart
    SeparationResult separation;
    double min_centerline_dist = 0.0; // over arc-separated parameter pairs
    ContactClass classification = ContactClass::Clear;
    double tol_contact = 0.0; // 1e-3 r
    double tol_far = 0.0;     // (0.1 r)^2
};

// Global minimum of the boundary chord over pairs with pseudo-distance^2 at
// least (0.1 r)^2, by a coarse grid scan plus coordinate-wise golden descent.
// n_seed is the number of grid points per axis of the scan (>= 10).
SeparationResult min_separation(const Tube& tube, int n_seed = 48);

ContactReport admissibility_report(const Tube& tube, int n_seed = 48);

} // namespace tubenergy
