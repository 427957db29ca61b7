#pragma once

#include <span>
#include <string>
#include <vector>

#include "flexlib/arc.hpp"
#include "flexlib/periodic_function.hpp"
#include "flexlib/scan.hpp"

namespace flex {

inline constexpr int infinite_multiplicity = -1;

struct ContactEntry {
    Arc arc = Arc::point(0.0);   // extent of the contact component
    double representative = 0.0; // refined point of closest contact
    int multiplicity = 0;        // even, capped at 2n; infinite_multiplicity for order > 2n
    bool infinite() const { return multiplicity == infinite_multiplicity; }
};

// Finite map location -> even multiplicity or infinity: the value of the
// intrinsic system at a tuple, realized as the contact set of a supporting
// space member against u.
class ContactProfile {
public:
    ContactProfile() = default;
    explicit ContactProfile(std::vector<ContactEntry> entries)
        : entries_(std::move(entries)) {}

    const std::vector<ContactEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    // Number of connected components of the contact set (entries within one
    // merged near-zero arc share that arc).
    int component_count() const;

    bool total_infinite() const;
    int total_finite() const; // sum of finite multiplicities
    // Total multiplicity >= m, infinity counting as satisfying.
    bool total_at_least(int m) const;

    const ContactEntry* find(double t, double slack = 1e-6) const;

private:
    std::vector<ContactEntry> entries_;
};

enum class FlexKind { plain, global_max, global_min, clean_max, clean_min };

std::string to_string(FlexKind kind);
bool is_clean(FlexKind kind);
bool is_global(FlexKind kind); // clean counts as global

struct FlexRecord {
    Arc location = Arc::point(0.0);
    FlexKind kind = FlexKind::plain;
    TrigPoly osculating;
    ContactProfile contact;
};

struct MinimalFunctionResult {
    TrigPoly phi;
    double multiplier = 0.0;
    ContactProfile contact;
};

// Prescribed contact point (p_i, mu_i); the minimal function matches u to
// order 2*mu_i at each p_i.
struct PrescribedContact {
    double location = 0.0;
    int half_multiplicity = 1;
};

// Unique member of A_{2n+1} osculating u at s to order 2n (single confluent
// node of multiplicity 2n+1).
TrigPoly osculating_polynomial(const PeriodicFunction& u, double s, int n);

// All flexes of u with respect to the space: zeros of the disconjugate
// operator applied to u.  Flat runs of operator zeros are reported as arcs,
// isolated zeros as point arcs.  Throws FunctionInSpace when L u vanishes
// identically to tolerance.
std::vector<Arc> flex_scan(const PeriodicFunction& u, const SpaceDescriptor& space,
                           const GridProfile& grid = {});

FlexRecord classify_flex(const PeriodicFunction& u, const Arc& locus, int n,
                         const GridProfile& grid = {});
FlexRecord classify_flex(const PeriodicFunction& u, double s, int n,
                         const GridProfile& grid = {});

// Contact multiplicity profile of a one-sided supporting member phi against
// u.  Components of the near-zero set of phi-u that contain a genuine
// tangency are scored by the first non-vanishing derivative.
ContactProfile contact_profile(const PeriodicFunction& u, const TrigPoly& phi, int n,
                               const GridProfile& grid = {});

// The minimal supporting function of u with respect to the prescribed
// contact tuple: phi1 + m* phi2 with m* the extremal multiplier.
MinimalFunctionResult minimal_function(const PeriodicFunction& u,
                                       std::span<const PrescribedContact> points, int n,
                                       const GridProfile& grid = {});

struct AxiomCheck {
    bool checked = false;
    bool pass = true;
    std::string note;
};

struct AxiomCaseResult {
    std::vector<double> tuple;
    AxiomCheck symmetry;        // A2
    AxiomCheck supporting;      // A3
    AxiomCheck exchangeability; // A4
    AxiomCheck total_mult;      // A6
};

struct AxiomReport {
    std::vector<AxiomCaseResult> cases;
    // Axioms verified analytically, not by sampling.
    std::vector<std::string> assumed = {"A1 closedness", "A5 uniqueness",
                                        "A7 semicontinuity", "A8 boundary isolation"};
    bool all_pass() const;
    int failure_count() const;
};

// Samples the intrinsic-system axioms A2/A3/A4/A6 on the given tuples.
AxiomReport axiom_audit(const PeriodicFunction& u, int n,
                        std::span<const std::vector<double>> tuples,
                        const GridProfile& grid = {});

} // namespace flex
