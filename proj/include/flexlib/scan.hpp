#pragma once

#include <functional>
#include <span>
#include <vector>

#include "flexlib/arc.hpp"
#include "flexlib/periodic_function.hpp"

namespace flex {

// Grid and tolerance profile shared by all scanning operations.  Tolerances
// are relative to the scanned function's scale (max refined |g|); the layers
// are one decade apart so detection stages do not cascade into each other.
struct GridProfile {
    int base_samples = 4096;
    int refine_depth = 40;
    double zero_tol = 1e-9;     // eps_z: a point counts as a zero below this
    double contact_tol = 1e-7;  // eps_c: contact-arc extent
    double support_tol = 1e-8;  // eps_s: one-sidedness slack
    double gap_threshold = two_pi / 1024.0; // delta_g: arcs closer than this merge
};

using ScalarFn = std::function<double(double)>;

// Evaluate g at n equispaced points of [0, 2pi); OpenMP-capable map with a
// serial reference for testing.
std::vector<double> sample_circle(const ScalarFn& g, int n);
std::vector<double> sample_circle_serial(const ScalarFn& g, int n);

struct Extremum {
    double t = 0.0;
    double value = 0.0;
    bool is_minimum = false;
};

// All refined local extrema of g on the circle (ternary search within the
// bracketing grid cells).  `parity` controls the seam: antiperiodic g flips
// sign across 2pi.
std::vector<Extremum> refined_extrema(const ScalarFn& g, const GridProfile& grid,
                                      Parity parity = Parity::periodic);

// max |g| over the refined extrema and the grid.
double function_scale(const ScalarFn& g, const GridProfile& grid,
                      Parity parity = Parity::periodic);

struct RootLocation {
    double t = 0.0;
    bool tangential = false; // |g| dips below tolerance without a sign change
};

std::vector<RootLocation> find_zeros(const ScalarFn& g, const GridProfile& grid,
                                     Parity parity = Parity::periodic);

// Maximal arcs where |g| <= eps * scale, merged across gaps shorter than the
// profile's gap threshold.  Narrow dips between grid points are caught by
// extremum refinement.  Requires g to be one-sided at the same tolerance.
std::vector<Arc> near_zero_components(const ScalarFn& g, double eps, const GridProfile& grid);

struct ContactSpec {
    double location = 0.0;
    int vanish_order = 0; // both num and den vanish to at least this order
};

struct RatioSup {
    double value = 0.0;
    double argmax = 0.0;
};

// Supremum of num/den over the circle where den >= 0 vanishes only at the
// listed contact points; the removable singularities are replaced by the
// ratio of the leading derivatives.
RatioSup sup_of_ratio(const DerivFn& num, const DerivFn& den,
                      std::span<const ContactSpec> contacts, const GridProfile& grid);

} // namespace flex
