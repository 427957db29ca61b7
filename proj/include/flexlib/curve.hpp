#pragma once

#include <vector>

#include "flexlib/conic.hpp"
#include "flexlib/jet.hpp"
#include "flexlib/osculation.hpp"
#include "flexlib/periodic_function.hpp"
#include "flexlib/scan.hpp"

namespace flex {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Strictly convex closed curve given by its support function h in the
// tangent-angle parametrization: the tangent line at parameter t has
// direction (cos t, sin t) and distance h(t) from the origin.  Strict
// convexity h + h'' > 0 is checked on construction.
class SupportCurve {
public:
    explicit SupportCurve(PeriodicFunction h, Point origin = {0.0, 0.0},
                          const GridProfile& grid = {});

    const PeriodicFunction& support() const { return h_; }
    Point origin() const { return origin_; }

    Point point(double t) const;
    // Jets of the coordinate functions at t, to the given order.
    std::pair<Jet, Jet> coordinate_jets(double t, int order) const;
    double tangent_angle(double t) const;

private:
    PeriodicFunction h_;
    Point origin_;
};

double curvature_radius(const SupportCurve& c, double t);

enum class VertexKind { clean_inscribed, clean_circumscribed, global, plain };

std::string to_string(VertexKind kind);

struct VertexRecord {
    Arc location = Arc::point(0.0);
    VertexKind kind = VertexKind::plain;
    double radius = 0.0;  // osculating circle radius h + h''
    Point center;         // osculating circle center
    FlexRecord flex;      // the underlying classification of h
};

// Vertices = zeros of h''' + h'; clean kinds via the flex classification of
// the support function (inscribed circle <-> osculating member below h).
std::vector<VertexRecord> vertex_scan(const SupportCurve& c, const GridProfile& grid = {});

// Unique conic with fifth-order contact at t (kernel of the 5x6 derivative
// system), oriented positive at the origin.
Conic osculating_conic(const SupportCurve& c, double t);

enum class SextacticKind { clean_max, clean_min, global, plain };

std::string to_string(SextacticKind kind);

struct SextacticRecord {
    double location = 0.0;
    SextacticKind kind = SextacticKind::plain;
    bool circumscribed = false; // curve inside the conic
    Conic conic;
    std::vector<Arc> contact_arcs;
};

// Sextactic points = zeros of the fifth derivative of the osculating-conic
// residual along the curve.  kind clean-max <-> conic one-sidedly outside
// the curve (Q(gamma) >= -tol) with connected contact; clean-min mirrored.
std::vector<SextacticRecord> sextactic_scan(const SupportCurve& c, const GridProfile& grid = {});

enum class ConicSide { inscribed, circumscribed };

// Extremal member of the pencil l_p l_q - mu m^2 that stays one-sided on
// the curve: the maximal inscribed (mu = sup) or minimal circumscribed
// (mu = inf) conic tangent at p and q.
Conic doubly_tangent_conic(const SupportCurve& c, double p, double q, ConicSide side,
                           const GridProfile& grid = {});

} // namespace flex
