#include "flexlib/report.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace flex {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string join_coeffs(std::span<const double> coeffs) {
    std::string out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (i) out += ';';
        out += fmt(coeffs[i]);
    }
    return out;
}

std::string multiplicity_field(const ContactProfile& profile) {
    if (profile.total_infinite()) return "inf";
    return std::to_string(profile.total_finite());
}

void append_flex_header(std::string& out) {
    out += "kind,location_start,location_end,multiplicity_total,osculating_coeffs\n";
}

void append_flex_rows(std::string& out, const CensusReport& report) {
    for (const FlexRecord& r : report.records) {
        out += to_string(r.kind);
        out += ',';
        out += fmt(r.location.start());
        out += ',';
        out += fmt(r.location.end());
        out += ',';
        out += multiplicity_field(r.contact);
        out += ',';
        out += join_coeffs(r.osculating.coeffs());
        out += '\n';
    }
}

void append_summary_header(std::string& out) { out += "check,required,observed,pass\n"; }

void append_summary_rows(std::string& out, const std::vector<TheoremCheck>& checks,
                         const std::string& prefix = "") {
    for (const TheoremCheck& c : checks) {
        out += prefix + c.name;
        out += ',';
        out += fmt(c.required);
        out += ',';
        out += fmt(c.observed);
        out += ',';
        out += c.pass ? "true" : "false";
        out += '\n';
    }
}

} // namespace

std::string csv_render_flexes(const CensusReport& report) {
    std::string out;
    append_flex_header(out);
    append_flex_rows(out, report);
    return out;
}

std::string csv_render_census(const CensusReport& report) {
    std::string out;
    append_flex_header(out);
    append_flex_rows(out, report);
    append_summary_header(out);
    append_summary_rows(out, report.checks);
    return out;
}

std::string csv_render_corpus(const std::vector<std::pair<int, CensusReport>>& reports) {
    std::string out;
    append_summary_header(out);
    for (const auto& [index, report] : reports)
        append_summary_rows(out, report.checks, std::to_string(index) + ":");
    return out;
}

std::string csv_render_bose(const BoseTally& tally) {
    std::string out;
    append_summary_header(out);
    out += "bose.s_count,0," + fmt(tally.s_count) + ",true\n";
    out += "bose.t_count,0," + fmt(tally.t_count) + ",true\n";
    out += "bose.difference,2," + fmt(tally.difference) + "," +
           (tally.difference == 2 ? "true" : "false") + "\n";
    return out;
}

std::string csv_render_vertices(const std::vector<VertexRecord>& records) {
    std::string out;
    append_flex_header(out);
    for (const VertexRecord& r : records) {
        out += "vertex-" + to_string(r.kind);
        out += ',';
        out += fmt(r.location.start());
        out += ',';
        out += fmt(r.location.start() + r.location.length());
        out += ',';
        out += multiplicity_field(r.flex.contact);
        out += ',';
        // osculating circle as center;radius
        out += fmt(r.center.x) + ";" + fmt(r.center.y) + ";" + fmt(r.radius);
        out += '\n';
    }
    return out;
}

std::string csv_render_sextactic(const std::vector<SextacticRecord>& records) {
    std::string out;
    append_flex_header(out);
    for (const SextacticRecord& r : records) {
        out += "sextactic-" + to_string(r.kind);
        out += ',';
        out += fmt(r.location);
        out += ',';
        out += fmt(r.location);
        out += ',';
        // lower bound: each contact component is at least a tangency
        out += std::to_string(2 * std::max<std::size_t>(r.contact_arcs.size(), 1));
        out += ',';
        out += join_coeffs(r.conic.coeffs());
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << content;
    if (!f) throw IoError("write failed: " + path);
}

namespace {

struct Box {
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    void include(double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
};

const char* kind_color(FlexKind k) {
    switch (k) {
        case FlexKind::clean_max: return "#d62728";
        case FlexKind::clean_min: return "#1f77b4";
        case FlexKind::global_max:
        case FlexKind::global_min: return "#ff7f0e";
        case FlexKind::plain: return "#7f7f7f";
    }
    return "#000000";
}

std::string polyline(const std::vector<std::pair<double, double>>& pts, const char* color,
                     double width, bool dashed = false) {
    std::string out = "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"" + fmt6(width) + "\"";
    if (dashed) out += " stroke-dasharray=\"6 4\"";
    out += " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ' ';
        out += fmt6(pts[i].first) + "," + fmt6(pts[i].second);
    }
    out += "\"/>\n";
    return out;
}

} // namespace

std::string svg_render_function(const PeriodicFunction& u,
                                const std::vector<FlexRecord>& records, int width, int height) {
    const int samples = 1024;
    const double margin = 40.0;

    double ymin = u(0.0), ymax = ymin;
    auto scan_range = [&](const std::function<double(double)>& f) {
        for (int i = 0; i <= samples; ++i) {
            const double v = f(two_pi * i / samples);
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    };
    scan_range([&](double t) { return u(t); });
    for (const FlexRecord& r : records)
        if (is_clean(r.kind)) scan_range([&](double t) { return r.osculating.eval(t); });
    if (ymax - ymin < 1e-12) { ymax += 1.0; ymin -= 1.0; }

    const double xs = (width - 2.0 * margin) / two_pi;
    const double ys = (height - 2.0 * margin) / (ymax - ymin);
    auto px = [&](double t) { return margin + t * xs; };
    auto py = [&](double v) { return height - margin - (v - ymin) * ys; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
           std::to_string(width) + " " + std::to_string(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axis
    if (ymin < 0.0 && ymax > 0.0) {
        out += "<line x1=\"" + fmt6(px(0.0)) + "\" y1=\"" + fmt6(py(0.0)) + "\" x2=\"" +
               fmt6(px(two_pi)) + "\" y2=\"" + fmt6(py(0.0)) +
               "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    }

    for (const FlexRecord& r : records) {
        if (!is_clean(r.kind)) continue;
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i <= samples; ++i) {
            const double t = two_pi * i / samples;
            pts.push_back({px(t), py(r.osculating.eval(t))});
        }
        out += polyline(pts, kind_color(r.kind), 1.0, true);
    }

    std::vector<std::pair<double, double>> upts;
    for (int i = 0; i <= samples; ++i) {
        const double t = two_pi * i / samples;
        upts.push_back({px(t), py(u(t))});
    }
    out += polyline(upts, "#000000", 2.0);

    for (const FlexRecord& r : records) {
        const double t = r.location.midpoint();
        const double x = px(t), y = py(u(t));
        const char* color = kind_color(r.kind);
        const bool maxk = r.kind == FlexKind::clean_max || r.kind == FlexKind::global_max;
        if (maxk) {
            out += "<circle cx=\"" + fmt6(x) + "\" cy=\"" + fmt6(y) +
                   "\" r=\"5\" fill=\"" + color + "\"/>\n";
        } else {
            out += "<rect x=\"" + fmt6(x - 4.0) + "\" y=\"" + fmt6(y - 4.0) +
                   "\" width=\"8\" height=\"8\" fill=\"" + std::string(color) + "\"/>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

namespace {

// Sampled outline of an ellipse-classified conic; empty for other classes.
std::vector<std::pair<double, double>> conic_outline(const Conic& conic) {
    if (conic.classify() != ConicClass::ellipse) return {};
    const auto& c = conic.coeffs();
    const double a = c[0], b = c[1], cc = c[2], d = c[3], e = c[4];
    Eigen::Matrix2d q;
    q << 2.0 * a, b, b, 2.0 * cc;
    Eigen::Vector2d rhs(-d, -e);
    const Eigen::Vector2d center = q.colPivHouseholderQr().solve(rhs);
    const double f0 = conic.evaluate(center(0), center(1));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig;
    Eigen::Matrix2d m;
    m << a, b / 2.0, b / 2.0, cc;
    eig.compute(m);
    const double l1 = eig.eigenvalues()(0), l2 = eig.eigenvalues()(1);
    if (l1 * f0 >= 0.0 || l2 * f0 >= 0.0) return {};
    const double r1 = std::sqrt(-f0 / l1), r2 = std::sqrt(-f0 / l2);
    const Eigen::Vector2d v1 = eig.eigenvectors().col(0), v2 = eig.eigenvectors().col(1);
    std::vector<std::pair<double, double>> pts;
    const int m_samples = 181;
    for (int i = 0; i < m_samples; ++i) {
        const double a0 = two_pi * i / (m_samples - 1);
        const Eigen::Vector2d p =
            center + r1 * std::cos(a0) * v1 + r2 * std::sin(a0) * v2;
        pts.push_back({p(0), p(1)});
    }
    return pts;
}

} // namespace

std::string svg_render_curve(const SupportCurve& curve,
                             const std::vector<VertexRecord>& vertices,
                             const std::vector<SextacticRecord>& sextactics,
                             const std::string& note, int width, int height) {
    const int samples = 720;
    Box box;
    box.xmin = box.ymin = 1e300;
    box.xmax = box.ymax = -1e300;
    std::vector<std::pair<double, double>> cpts;
    for (int i = 0; i <= samples; ++i) {
        const Point p = curve.point(two_pi * i / samples);
        box.include(p.x, p.y);
        cpts.push_back({p.x, p.y});
    }
    for (const VertexRecord& v : vertices) {
        box.include(v.center.x - v.radius, v.center.y - v.radius);
        box.include(v.center.x + v.radius, v.center.y + v.radius);
    }
    std::vector<std::vector<std::pair<double, double>>> outlines;
    for (const SextacticRecord& s : sextactics) {
        auto pts = conic_outline(s.conic);
        for (const auto& p : pts) box.include(p.first, p.second);
        outlines.push_back(std::move(pts));
    }

    const double margin = 30.0;
    const double sx = (width - 2.0 * margin) / std::max(box.xmax - box.xmin, 1e-9);
    const double sy = (height - 2.0 * margin) / std::max(box.ymax - box.ymin, 1e-9);
    const double s = std::min(sx, sy);
    auto px = [&](double x) { return margin + (x - box.xmin) * s; };
    auto py = [&](double y) { return height - margin - (y - box.ymin) * s; };
    auto map_pts = [&](const std::vector<std::pair<double, double>>& in) {
        std::vector<std::pair<double, double>> out;
        out.reserve(in.size());
        for (const auto& p : in) out.push_back({px(p.first), py(p.second)});
        return out;
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
           std::to_string(width) + " " + std::to_string(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (const VertexRecord& v : vertices) {
        if (v.kind != VertexKind::clean_inscribed && v.kind != VertexKind::clean_circumscribed)
            continue;
        const char* color = v.kind == VertexKind::clean_inscribed ? "#2ca02c" : "#ff7f0e";
        out += "<circle cx=\"" + fmt6(px(v.center.x)) + "\" cy=\"" + fmt6(py(v.center.y)) +
               "\" r=\"" + fmt6(v.radius * s) + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1\" stroke-dasharray=\"5 3\"/>\n";
    }
    for (std::size_t i = 0; i < outlines.size(); ++i) {
        if (outlines[i].empty()) continue;
        const char* color =
            sextactics[i].kind == SextacticKind::clean_max ? "#d62728" : "#1f77b4";
        out += polyline(map_pts(outlines[i]), color, 1.0, true);
    }

    out += polyline(map_pts(cpts), "#000000", 2.0);

    for (const VertexRecord& v : vertices) {
        const Point p = curve.point(v.location.midpoint());
        const char* color = v.kind == VertexKind::clean_inscribed ? "#2ca02c"
                            : v.kind == VertexKind::clean_circumscribed ? "#ff7f0e"
                                                                        : "#7f7f7f";
        out += "<circle cx=\"" + fmt6(px(p.x)) + "\" cy=\"" + fmt6(py(p.y)) +
               "\" r=\"4\" fill=\"" + std::string(color) + "\"/>\n";
    }
    for (const SextacticRecord& r : sextactics) {
        const Point p = curve.point(r.location);
        const char* color = r.kind == SextacticKind::clean_max ? "#d62728"
                            : r.kind == SextacticKind::clean_min ? "#1f77b4"
                                                                 : "#7f7f7f";
        out += "<rect x=\"" + fmt6(px(p.x) - 3.5) + "\" y=\"" + fmt6(py(p.y) - 3.5) +
               "\" width=\"7\" height=\"7\" fill=\"" + std::string(color) + "\"/>\n";
    }
    if (!note.empty()) {
        out += "<text x=\"" + fmt6(margin) + "\" y=\"" + fmt6(margin - 10.0) +
               "\" font-family=\"sans-serif\" font-size=\"14\">" + note + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace flex
