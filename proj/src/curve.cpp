#include "flexlib/curve.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>

#include "flexlib/parallel.hpp"

namespace flex {

SupportCurve::SupportCurve(PeriodicFunction h, Point origin, const GridProfile& grid)
    : h_(std::move(h)), origin_(origin) {
    if (h_.parity() != Parity::periodic)
        throw NotConvex("SupportCurve: support function must be 2pi-periodic");
    const ScalarFn radius = [this](double t) {
        const std::vector<double> j = h_.jet(t, 2);
        return j[0] + j[2];
    };
    double min_radius = radius(0.0);
    for (double v : sample_circle(radius, grid.base_samples)) min_radius = std::min(min_radius, v);
    for (const Extremum& e : refined_extrema(radius, grid))
        min_radius = std::min(min_radius, e.value);
    if (min_radius <= 0.0)
        throw NotConvex("SupportCurve: h + h'' must be positive (strict convexity)");
}

std::pair<Jet, Jet> SupportCurve::coordinate_jets(double t, int order) const {
    const std::vector<double> hj = h_.jet(t, order + 1);
    Jet h(order), hp(order);
    double fact = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) fact *= k;
        h.coeff(k) = hj[static_cast<std::size_t>(k)] / fact;
        hp.coeff(k) = hj[static_cast<std::size_t>(k) + 1] / fact;
    }
    const Jet s = jet_sin(t, 1.0, order);
    const Jet c = jet_cos(t, 1.0, order);
    Jet x = h * s + hp * c + Jet::constant(origin_.x, order);
    Jet y = Jet::constant(origin_.y, order) - h * c + hp * s;
    return {x, y};
}

Point SupportCurve::point(double t) const {
    const std::vector<double> j = h_.jet(t, 1);
    return {origin_.x + j[0] * std::sin(t) + j[1] * std::cos(t),
            origin_.y - j[0] * std::cos(t) + j[1] * std::sin(t)};
}

double SupportCurve::tangent_angle(double t) const {
    const auto [x, y] = coordinate_jets(t, 1);
    return std::atan2(y.derivative(1), x.derivative(1));
}

double curvature_radius(const SupportCurve& c, double t) {
    const std::vector<double> j = c.support().jet(t, 2);
    return j[0] + j[2];
}

std::string to_string(VertexKind kind) {
    switch (kind) {
        case VertexKind::clean_inscribed: return "clean-inscribed";
        case VertexKind::clean_circumscribed: return "clean-circumscribed";
        case VertexKind::global: return "global";
        case VertexKind::plain: return "plain";
    }
    return "?";
}

std::vector<VertexRecord> vertex_scan(const SupportCurve& c, const GridProfile& grid) {
    const PeriodicFunction& h = c.support();
    const SpaceDescriptor space(3);

    std::vector<Arc> loci;
    try {
        loci = flex_scan(h, space, grid);
    } catch (const FunctionInSpace&) {
        throw CircleDegenerate("vertex_scan: the curve is a circle");
    }

    std::vector<std::optional<VertexRecord>> slots(loci.size());
    par::for_index(static_cast<std::ptrdiff_t>(loci.size()), [&](std::size_t i) {
        FlexRecord flex = classify_flex(h, loci[i], 1, grid);
        // Smaller support function means contained disk: the inscribed
        // osculating circle corresponds to the osculating member lying
        // below h.
        VertexKind kind = VertexKind::plain;
        switch (flex.kind) {
            case FlexKind::clean_min: kind = VertexKind::clean_inscribed; break;
            case FlexKind::clean_max: kind = VertexKind::clean_circumscribed; break;
            case FlexKind::global_max:
            case FlexKind::global_min: kind = VertexKind::global; break;
            case FlexKind::plain: kind = VertexKind::plain; break;
        }
        const double t = loci[i].midpoint();
        const double radius = curvature_radius(c, t);
        const Point p = c.point(t);
        const Point center{p.x - radius * std::sin(t), p.y + radius * std::cos(t)};
        slots[i] = VertexRecord{loci[i], kind, radius, center, std::move(flex)};
    });

    std::vector<VertexRecord> out;
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

namespace {

// Rows of the contact system: k-th derivatives of the conic monomials along
// the curve.  jets must have order >= rows-1.
Eigen::MatrixXd contact_rows(const Jet& x, const Jet& y, int rows) {
    const Jet xx = x * x, xy = x * y, yy = y * y;
    const int order = x.order();
    Jet one = Jet::constant(1.0, order);
    const Jet* monomials[6] = {&xx, &xy, &yy, &x, &y, &one};
    Eigen::MatrixXd m(rows, 6);
    for (int k = 0; k < rows; ++k)
        for (int col = 0; col < 6; ++col)
            m(k, col) = monomials[col]->derivative(k);
    // scale rows for conditioning
    for (int k = 0; k < rows; ++k) {
        const double norm = m.row(k).norm();
        if (norm > 0.0) m.row(k) /= norm;
    }
    return m;
}

Eigen::VectorXd osculating_kernel(const SupportCurve& c, double t) {
    const auto [x, y] = c.coordinate_jets(t, 4);
    const Eigen::MatrixXd m = contact_rows(x, y, 5);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(4) <= 1e-10 * sv(0))
        throw RankDeficient("osculating_conic: contact system kernel is not one-dimensional");
    return svd.matrixV().col(5);
}

// Fifth derivative of Q(gamma(s)) at s = t for the osculating conic with the
// given (sign-aligned) kernel vector.
double residual_fifth_derivative(const SupportCurve& c, double t, const Eigen::VectorXd& kernel) {
    const auto [x, y] = c.coordinate_jets(t, 5);
    const Jet xx = x * x, xy = x * y, yy = y * y;
    Jet r = kernel(0) * xx + kernel(1) * xy + kernel(2) * yy;
    r += kernel(3) * x;
    r += kernel(4) * y;
    r += Jet::constant(kernel(5), 5);
    return r.derivative(5);
}

// Connected contact components of a one-sided residual, filtered to genuine
// tangencies.
std::vector<Arc> tangent_components(const ScalarFn& g, double scale, const GridProfile& grid) {
    std::vector<Arc> components = near_zero_components(g, grid.contact_tol, grid);
    const double floor = std::max(grid.zero_tol * scale, 1e-300);
    std::vector<Arc> out;
    for (const Arc& a : components) {
        double lo = a.start(), hi = a.end();
        if (a.is_point(1e-12)) { lo -= 1e-9; hi += 1e-9; }
        double best = std::abs(g(wrap_angle(lo)));
        const int probes = 33;
        double best_t = lo;
        for (int i = 1; i <= probes; ++i) {
            const double t = lo + (hi - lo) * i / probes;
            const double v = std::abs(g(wrap_angle(t)));
            if (v < best) { best = v; best_t = t; }
        }
        double aa = std::max(lo, best_t - (hi - lo) / probes);
        double bb = std::min(hi, best_t + (hi - lo) / probes);
        for (int i = 0; i < 80; ++i) {
            const double m1 = aa + (bb - aa) / 3.0;
            const double m2 = bb - (bb - aa) / 3.0;
            if (std::abs(g(wrap_angle(m1))) <= std::abs(g(wrap_angle(m2)))) bb = m2; else aa = m1;
        }
        if (std::abs(g(wrap_angle(0.5 * (aa + bb)))) <= floor) out.push_back(a);
    }
    return out;
}

} // namespace

Conic osculating_conic(const SupportCurve& c, double t) {
    Eigen::VectorXd k = osculating_kernel(c, t);
    std::array<double, 6> coeffs;
    for (int i = 0; i < 6; ++i) coeffs[static_cast<std::size_t>(i)] = k(i);
    return Conic(coeffs).oriented_positive_at(c.origin().x, c.origin().y);
}

std::string to_string(SextacticKind kind) {
    switch (kind) {
        case SextacticKind::clean_max: return "clean-max";
        case SextacticKind::clean_min: return "clean-min";
        case SextacticKind::global: return "global";
        case SextacticKind::plain: return "plain";
    }
    return "?";
}

std::vector<SextacticRecord> sextactic_scan(const SupportCurve& c, const GridProfile& grid) {
    // Reject curves that are globally a conic: least-squares fit over the
    // curve must leave a residual.
    {
        const int probes = 256;
        Eigen::MatrixXd m(probes, 6);
        for (int i = 0; i < probes; ++i) {
            const Point p = c.point(two_pi * i / probes);
            m(i, 0) = p.x * p.x;
            m(i, 1) = p.x * p.y;
            m(i, 2) = p.y * p.y;
            m(i, 3) = p.x;
            m(i, 4) = p.y;
            m(i, 5) = 1.0;
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
        const auto& sv = svd.singularValues();
        if (sv(5) <= 1e-9 * sv(0))
            throw ConicDegenerate("sextactic_scan: the curve is a conic");
    }

    const int n = grid.base_samples;
    const double step = two_pi / n;

    // Kernel vectors at the anchors (parallel), then a sequential sign
    // alignment pass: kernel vectors are defined up to sign and unaligned
    // flips would fabricate indicator zeros.
    std::vector<Eigen::VectorXd> kernels(static_cast<std::size_t>(n));
    par::for_index(n, [&](std::size_t i) {
        kernels[i] = osculating_kernel(c, static_cast<double>(i) * step);
    });
    for (int i = 1; i < n; ++i)
        if (kernels[static_cast<std::size_t>(i)].dot(kernels[static_cast<std::size_t>(i - 1)]) < 0.0)
            kernels[static_cast<std::size_t>(i)] = -kernels[static_cast<std::size_t>(i)];

    std::vector<double> indicator(static_cast<std::size_t>(n));
    par::for_index(n, [&](std::size_t i) {
        indicator[i] =
            residual_fifth_derivative(c, static_cast<double>(i) * step, kernels[i]);
    });

    double iscale = 0.0;
    for (double v : indicator) iscale = std::max(iscale, std::abs(v));
    if (iscale == 0.0)
        throw ConicDegenerate("sextactic_scan: indicator vanishes identically");

    // Aligned indicator at arbitrary t, for bisection inside a cell.
    auto indicator_at = [&](double t, const Eigen::VectorXd& ref) {
        Eigen::VectorXd k = osculating_kernel(c, wrap_angle(t));
        if (k.dot(ref) < 0.0) k = -k;
        return residual_fifth_derivative(c, wrap_angle(t), k);
    };

    std::vector<double> roots;
    for (int i = 0; i < n; ++i) {
        const double a = indicator[static_cast<std::size_t>(i)];
        const double b = indicator[static_cast<std::size_t>((i + 1) % n)];
        if (a == 0.0) { roots.push_back(i * step); continue; }
        if (b == 0.0 || (a < 0.0) == (b < 0.0)) continue;
        const Eigen::VectorXd& ref = kernels[static_cast<std::size_t>(i)];
        double lo = i * step, hi = (i + 1) * step;
        double flo = a;
        for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = indicator_at(mid, ref);
            if (fm == 0.0) { lo = hi = mid; break; }
            if ((flo < 0.0) != (fm < 0.0)) hi = mid; else { lo = mid; flo = fm; }
        }
        roots.push_back(wrap_angle(0.5 * (lo + hi)));
    }

    std::vector<std::optional<SextacticRecord>> slots(roots.size());
    par::for_index(static_cast<std::ptrdiff_t>(roots.size()), [&](std::size_t i) {
        const double t0 = roots[i];
        const Conic conic = osculating_conic(c, t0);
        const ScalarFn g = [&](double t) {
            const Point p = c.point(t);
            return conic.evaluate(p.x, p.y);
        };
        double mn = g(0.0), mx = g(0.0);
        for (double v : sample_circle(g, grid.base_samples)) {
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        for (const Extremum& e : refined_extrema(g, grid)) {
            mn = std::min(mn, e.value);
            mx = std::max(mx, e.value);
        }
        const double scale = std::max(std::abs(mn), std::abs(mx));
        const double slack = grid.support_tol * scale;

        SextacticKind kind = SextacticKind::plain;
        bool circumscribed = false;
        std::vector<Arc> contacts;
        if (mn >= -slack) {
            circumscribed = true; // curve inside: Q(gamma) >= 0
            contacts = tangent_components(g, scale, grid);
            kind = contacts.size() <= 1 ? SextacticKind::clean_max : SextacticKind::global;
        } else if (mx <= slack) {
            circumscribed = false; // conic inside the curve
            contacts = tangent_components(g, scale, grid);
            kind = contacts.size() <= 1 ? SextacticKind::clean_min : SextacticKind::global;
        }
        slots[i] = SextacticRecord{t0, kind, circumscribed, conic, std::move(contacts)};
    });

    std::vector<SextacticRecord> out;
    for (auto& s : slots) out.push_back(std::move(*s));
    std::sort(out.begin(), out.end(),
              [](const SextacticRecord& a, const SextacticRecord& b) {
                  return a.location < b.location;
              });
    return out;
}

namespace {

struct Line {
    double a = 0.0, b = 0.0, c = 0.0; // a x + b y + c
    double at(const Point& p) const { return a * p.x + b * p.y + c; }
};

std::array<double, 6> line_product(const Line& l1, const Line& l2) {
    return {l1.a * l2.a,
            l1.a * l2.b + l2.a * l1.b,
            l1.b * l2.b,
            l1.a * l2.c + l2.a * l1.c,
            l1.b * l2.c + l2.b * l1.c,
            l1.c * l2.c};
}

} // namespace

Conic doubly_tangent_conic(const SupportCurve& c, double p, double q, ConicSide side,
                           const GridProfile& grid) {
    p = wrap_angle(p);
    q = wrap_angle(q);
    if (std::abs(signed_delta(p, q)) < 1e-9)
        throw DimensionMismatch("doubly_tangent_conic: tangency points must differ");
    if (std::abs(std::sin(p - q)) < 1e-9)
        throw TangentLinesParallel("doubly_tangent_conic: tangent lines at p and q are parallel");

    const PeriodicFunction& h = c.support();
    // Tangent line at t: <x, (sin t, -cos t)> = h(t), oriented positive on
    // the interior side.
    const Line lp{-std::sin(p), std::cos(p), h(p)};
    const Line lq{-std::sin(q), std::cos(q), h(q)};
    const Point gp = c.point(p);
    const Point gq = c.point(q);
    const double dx = gq.x - gp.x, dy = gq.y - gp.y;
    const double dn = std::hypot(dx, dy);
    const Line chord{-dy / dn, dx / dn, (dy * gp.x - dx * gp.y) / dn};

    // Pencil along the curve: P(t) = l_p l_q (double zeros at p, q),
    // M(t) = chord^2 (double zeros at p, q).
    const DerivFn num = [&, side](double t, int order) {
        const auto [x, y] = c.coordinate_jets(t, std::max(order, 1));
        const Jet vp = lp.a * x + lp.b * y + Jet::constant(lp.c, x.order());
        const Jet vq = lq.a * x + lq.b * y + Jet::constant(lq.c, x.order());
        const double v = (vp * vq).derivative(order);
        return side == ConicSide::inscribed ? v : -v;
    };
    const DerivFn den = [&](double t, int order) {
        const auto [x, y] = c.coordinate_jets(t, std::max(order, 1));
        const Jet vm = chord.a * x + chord.b * y + Jet::constant(chord.c, x.order());
        return (vm * vm).derivative(order);
    };

    const ContactSpec specs[2] = {{p, 2}, {q, 2}};
    const RatioSup sup = sup_of_ratio(num, den, specs, grid);
    const double mu = side == ConicSide::inscribed ? sup.value : -sup.value;

    const std::array<double, 6> cp = line_product(lp, lq);
    const std::array<double, 6> cm = line_product(chord, chord);
    std::array<double, 6> coeffs;
    for (std::size_t i = 0; i < 6; ++i) coeffs[i] = cp[i] - mu * cm[i];

    Conic conic = Conic(coeffs).oriented_positive_at(c.origin().x, c.origin().y);

    // One-sidedness along the curve after extremization.  When the curve
    // itself is the extremal member (a conic), the residual is pure noise;
    // compare against the conic's own magnitude scale before judging signs.
    const ScalarFn g = [&](double t) {
        const Point pt = c.point(t);
        return conic.evaluate(pt.x, pt.y);
    };
    double mn = g(0.0), mx = g(0.0), extent = 0.0;
    for (double v : sample_circle(g, grid.base_samples)) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    for (const Extremum& e : refined_extrema(g, grid)) {
        mn = std::min(mn, e.value);
        mx = std::max(mx, e.value);
    }
    for (int i = 0; i < 64; ++i) {
        const Point pt = c.point(two_pi * i / 64);
        extent = std::max({extent, std::abs(pt.x), std::abs(pt.y)});
    }
    const double ref = 1.0 + extent + extent * extent;
    const double scale = std::max(std::abs(mn), std::abs(mx));
    if (scale > 1e-8 * ref && mn < -grid.support_tol * scale && mx > grid.support_tol * scale)
        throw NotOneSided("doubly_tangent_conic: extremal member is not one-sided on the curve");

    return conic;
}

} // namespace flex
