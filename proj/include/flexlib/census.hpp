#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flexlib/osculation.hpp"

namespace flex {

struct TheoremCheck {
    std::string name;
    double required = 0.0;
    double observed = 0.0;
    bool pass = false;
};

// Aggregated flex classification for one function, with the theorem-level
// pass/fail summary rows.
struct CensusReport {
    int n = 0;           // half-order for odd spaces; 0 for bare counts
    int space_order = 0;
    std::vector<FlexRecord> records;
    std::vector<Arc> clean_max;   // connected components of the clean-max set
    std::vector<Arc> clean_min;
    std::vector<Arc> global_only; // global but not clean
    std::vector<Arc> plain;
    int sign_changes = 0;
    std::vector<TheoremCheck> checks;

    bool all_pass() const;
};

// Full clean-flex census for the odd space A_{2n+1}: scan, classify,
// collapse into components, and evaluate the theorem checks
// (clean counts >= n+1 per side, sign changes >= 4, flexes >= 2n+2).
CensusReport clean_flex_census(const PeriodicFunction& u, int n, const GridProfile& grid = {});

// Count-only census for either parity (the even-order antiperiodic setting):
// flex count and operator sign changes against order+1.
CensusReport flex_count_census(const PeriodicFunction& u, const SpaceDescriptor& space,
                               const GridProfile& grid = {});

// Number of sign changes of the clean flexes around the circle: the length
// of the longest alternating cyclic sequence of clean-max / clean-min
// representatives (2m in the paper's m-changes notation).
int sign_change_count(const CensusReport& report);

struct BoseTally {
    int s_count = 0;    // supporting members with a single contact
    int t_count = 0;    // excess contacts of multi-contact members
    int difference = 0; // s_count - t_count
};

// Bose-type tally for n = 1: sweeps the anchor point of the largest
// below-supporting member of A_3 and counts single-contact members against
// excess multi-contact ones.  Throws InfiniteCount on contact arcs of
// positive length (u in A_3 or plateau-type contact).
BoseTally bose_tally(const PeriodicFunction& u, const GridProfile& grid = {});

struct SignChangeCheck {
    int count = 0;
    bool pass = false;
};

// Sign changes of L u over the circle; pass when count >= order + 1.
SignChangeCheck operator_sign_change_check(const PeriodicFunction& u,
                                           const SpaceDescriptor& space,
                                           const GridProfile& grid = {});

// Rejection-sampled random Fourier corpus for theorem property suites.
struct CorpusSpec {
    int count = 100;
    int n = 1;                  // half-order of the analyzed odd space
    std::uint64_t seed = 1;
    Parity parity = Parity::periodic;
    int min_degree_offset = 1;  // degree range n+min .. n+max
    int max_degree_offset = 3;
};

std::vector<PeriodicFunction> random_corpus(const CorpusSpec& spec);

} // namespace flex
