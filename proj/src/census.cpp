#include "flexlib/census.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "flexlib/parallel.hpp"
#include "flexlib/rng.hpp"

namespace flex {

bool CensusReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {

// Collapse a set of location arcs into connected components: arcs whose
// circular gap is below the resolution threshold belong to one component.
std::vector<Arc> collapse_components(std::vector<Arc> arcs, double merge_gap) {
    if (arcs.empty()) return arcs;
    std::sort(arcs.begin(), arcs.end(),
              [](const Arc& a, const Arc& b) { return a.start() < b.start(); });
    std::vector<Arc> merged;
    for (const Arc& a : arcs) {
        if (!merged.empty()) {
            Arc& last = merged.back();
            if (a.start() - last.end() < merge_gap) {
                const double new_end = std::max(last.end(), a.end());
                last = Arc(last.start(), std::min(new_end - last.start(), two_pi));
                continue;
            }
        }
        merged.push_back(a);
    }
    if (merged.size() > 1) {
        const Arc& last = merged.back();
        const Arc& first = merged.front();
        if (first.start() + two_pi - last.end() < merge_gap) {
            // wraps: the merged arc spans last.start .. first.end (+2pi)
            const double span = std::min(first.end() + two_pi - last.start(), two_pi);
            merged.front() = Arc(last.start(), span);
            merged.pop_back();
        }
    }
    return merged;
}

} // namespace

CensusReport clean_flex_census(const PeriodicFunction& u, int n, const GridProfile& grid) {
    if (n < 1) throw DimensionMismatch("clean_flex_census: n must be >= 1");
    const SpaceDescriptor space(2 * n + 1);
    const std::vector<Arc> loci = flex_scan(u, space, grid);

    std::vector<std::optional<FlexRecord>> slots(loci.size());
    par::for_index(static_cast<std::ptrdiff_t>(loci.size()), [&](std::size_t i) {
        slots[i] = classify_flex(u, loci[i], n, grid);
    });

    CensusReport report;
    report.n = n;
    report.space_order = space.order();
    std::vector<Arc> cmax, cmin, global_only, plain;
    for (auto& s : slots) {
        const FlexRecord& r = *s;
        switch (r.kind) {
            case FlexKind::clean_max: cmax.push_back(r.location); break;
            case FlexKind::clean_min: cmin.push_back(r.location); break;
            case FlexKind::global_max:
            case FlexKind::global_min: global_only.push_back(r.location); break;
            case FlexKind::plain: plain.push_back(r.location); break;
        }
        report.records.push_back(std::move(*s));
    }

    const double merge_gap = 2.0 * two_pi / grid.base_samples;
    report.clean_max = collapse_components(std::move(cmax), merge_gap);
    report.clean_min = collapse_components(std::move(cmin), merge_gap);
    report.global_only = collapse_components(std::move(global_only), merge_gap);
    report.plain = collapse_components(std::move(plain), merge_gap);

    report.sign_changes =
        (report.clean_max.empty() || report.clean_min.empty()) ? 0 : sign_change_count(report);

    const double thm11_observed =
        static_cast<double>(std::min(report.clean_max.size(), report.clean_min.size()));
    report.checks.push_back({"thm1.1", static_cast<double>(n + 1), thm11_observed,
                             thm11_observed >= n + 1});
    report.checks.push_back({"thm6.1", 4.0, static_cast<double>(report.sign_changes),
                             report.sign_changes >= 4});
    report.checks.push_back({"thmA.8", static_cast<double>(2 * n + 2),
                             static_cast<double>(loci.size()),
                             static_cast<int>(loci.size()) >= 2 * n + 2});
    return report;
}

CensusReport flex_count_census(const PeriodicFunction& u, const SpaceDescriptor& space,
                               const GridProfile& grid) {
    const std::vector<Arc> loci = flex_scan(u, space, grid);

    CensusReport report;
    report.n = space.parity() == Parity::periodic ? (space.order() - 1) / 2 : 0;
    report.space_order = space.order();
    for (const Arc& locus : loci) {
        const double s = locus.midpoint();
        std::vector<double> values = u.jet(s, space.order() - 1);
        TrigPoly osc =
            hermite_interpolate(space, HermiteData({{s, space.order()}}, std::move(values)));
        ContactEntry e;
        e.arc = locus;
        e.representative = s;
        e.multiplicity = infinite_multiplicity;
        report.records.push_back({locus, FlexKind::plain, std::move(osc), ContactProfile({e})});
        report.plain.push_back(locus);
    }

    const SignChangeCheck sc = operator_sign_change_check(u, space, grid);
    report.checks.push_back({"thmA.8", static_cast<double>(space.order() + 1),
                             static_cast<double>(loci.size()),
                             static_cast<int>(loci.size()) >= space.order() + 1});
    report.checks.push_back({"thmA.4", static_cast<double>(space.order() + 1),
                             static_cast<double>(sc.count), sc.pass});
    return report;
}

int sign_change_count(const CensusReport& report) {
    if (report.clean_max.empty() || report.clean_min.empty())
        throw EmptyCensus("sign_change_count: need at least one clean flex of each kind");
    struct Event {
        double t;
        bool is_max;
    };
    std::vector<Event> events;
    for (const Arc& a : report.clean_max) events.push_back({a.midpoint(), true});
    for (const Arc& a : report.clean_min) events.push_back({a.midpoint(), false});
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) { return a.t < b.t; });
    int changes = 0;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const Event& cur = events[i];
        const Event& next = events[(i + 1) % events.size()];
        if (cur.is_max != next.is_max) ++changes;
    }
    return changes;
}

SignChangeCheck operator_sign_change_check(const PeriodicFunction& u,
                                           const SpaceDescriptor& space,
                                           const GridProfile& grid) {
    if ((space.parity() == Parity::periodic) != (u.parity() == Parity::periodic))
        throw DimensionMismatch("operator_sign_change_check: parity mismatch");
    const DisconjugateOperator op(space);
    const ScalarFn lu = [&](double t) { return apply_disconjugate(op, u, t); };

    const double u_scale = function_scale([&u](double t) { return u(t); }, grid, u.parity());
    const double lu_scale = function_scale(lu, grid, u.parity());
    if (lu_scale <= 1e-6 * u_scale || lu_scale == 0.0)
        throw FunctionInSpace("operator_sign_change_check: L u vanishes to tolerance");

    const int n = grid.base_samples;
    const std::vector<double> v = sample_circle(lu, n);
    const double deadband = 1e-12 * lu_scale;

    int changes = 0;
    int last_sign = 0;
    int first_sign = 0;
    for (int i = 0; i < n; ++i) {
        const double x = v[static_cast<std::size_t>(i)];
        if (std::abs(x) <= deadband) continue;
        const int s = x > 0.0 ? 1 : -1;
        if (last_sign != 0 && s != last_sign) ++changes;
        if (first_sign == 0) first_sign = s;
        last_sign = s;
    }
    if (first_sign != 0) {
        const int wrap_sign = space.parity() == Parity::antiperiodic ? -first_sign : first_sign;
        if (wrap_sign != last_sign) ++changes;
    }
    return {changes, changes >= space.order() + 1};
}

namespace {

struct AnchorProbe {
    TrigPoly phi;                      // the below-supporting member anchored at s
    std::vector<double> contact_reps;  // refined contact representatives
    double partner = 0.0;              // contact other than the anchor's own
    int components = 0;
};

// phi_bullet at s: the largest A_3 member below u touching at s, realized as
// the negated minimal function of -u.
AnchorProbe probe_anchor(const PeriodicFunction& u, double s, const GridProfile& grid,
                         double arc_limit) {
    const PrescribedContact pc{wrap_angle(s), 1};
    MinimalFunctionResult mf = minimal_function(u.negated(), std::span(&pc, 1), 1, grid);
    AnchorProbe out{mf.phi.plus_scaled(mf.phi, -2.0), {}, 0.0, 0};

    for (const ContactEntry& e : mf.contact.entries()) {
        if (e.arc.is_full())
            throw InfiniteCount("bose_tally: function coincides with a space member");
        if (e.arc.length() > arc_limit)
            throw InfiniteCount("bose_tally: contact arc of positive length");
        out.contact_reps.push_back(e.representative);
    }
    out.components = mf.contact.component_count();

    // Partner = representative in the component not containing s; the anchor
    // itself when the contact set is a single component.
    const ContactEntry* own = mf.contact.find(wrap_angle(s), 1e-3);
    double partner = wrap_angle(s);
    double best = -1.0;
    for (const ContactEntry& e : mf.contact.entries()) {
        if (own != nullptr && e.arc.start() == own->arc.start() &&
            e.arc.length() == own->arc.length())
            continue;
        const double dist = std::abs(signed_delta(e.representative, s));
        if (dist > best) { best = dist; partner = e.representative; }
    }
    out.partner = partner;
    return out;
}

// Count the tangencies of u - phi with a relaxed floor; used at a refined
// multi-contact member where the emerging tangency sits well below any
// spurious local minimum.
int relaxed_contact_count(const PeriodicFunction& u, const TrigPoly& phi,
                          const GridProfile& grid) {
    const ScalarFn d = [&](double t) { return u(t) - phi.eval(t); };
    double scale = 0.0;
    for (double x : sample_circle(d, grid.base_samples)) scale = std::max(scale, std::abs(x));
    std::vector<double> mins;
    for (const Extremum& e : refined_extrema(d, grid)) {
        if (!e.is_minimum) continue;
        if (std::abs(e.value) > 1e-4 * scale) continue;
        bool dup = false;
        for (double m : mins)
            if (std::abs(signed_delta(e.t, m)) < 0.02) { dup = true; break; }
        if (!dup) mins.push_back(e.t);
    }
    return static_cast<int>(mins.size());
}

bool coeffs_close(const TrigPoly& a, const TrigPoly& b, double tol) {
    double diff = 0.0, norm = 1.0;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        diff = std::max(diff, std::abs(a.coeffs()[i] - b.coeffs()[i]));
        norm = std::max(norm, std::abs(a.coeffs()[i]));
    }
    return diff <= tol * norm;
}

} // namespace

BoseTally bose_tally(const PeriodicFunction& u, const GridProfile& grid) {
    const double arc_limit = 0.15;

    // s_count: members with a single contact.  Such a member osculates to
    // order >= 4 at its contact (total multiplicity axiom), so it is the
    // osculating member of a clean minimal flex; the census already finds
    // those as connected components.
    std::vector<TrigPoly> single_members;
    try {
        const CensusReport census = clean_flex_census(u, 1, grid);
        for (const FlexRecord& r : census.records) {
            if (r.kind != FlexKind::clean_min) continue;
            if (r.location.length() > arc_limit)
                throw InfiniteCount("bose_tally: clean flex interval of positive length");
            for (const ContactEntry& e : r.contact.entries())
                if (e.arc.length() > arc_limit || e.arc.is_full())
                    throw InfiniteCount("bose_tally: contact arc of positive length");
            bool dup = false;
            for (const TrigPoly& m : single_members)
                if (coeffs_close(m, r.osculating, 1e-6)) dup = true;
            if (!dup) single_members.push_back(r.osculating);
        }
    } catch (const FunctionInSpace&) {
        throw InfiniteCount("bose_tally: function lies in A_3");
    }

    // t_count: members with three or more contacts.  These are the
    // discontinuities of the partner map s -> (contact other than s), so
    // sweep anchors and bisect every persistent partner jump.  The sweep
    // only needs partner locations to the jump resolution; a quarter grid
    // keeps it cheap.
    const int anchors = 512;
    const double astep = two_pi / anchors;
    GridProfile probe_grid = grid;
    probe_grid.base_samples = std::max(1024, grid.base_samples / 4);

    std::vector<std::optional<AnchorProbe>> probes(anchors);
    par::for_index(anchors, [&](std::size_t i) {
        try {
            probes[i] = probe_anchor(u, static_cast<double>(i) * astep, probe_grid, arc_limit);
        } catch (const Error&) {
            // left empty; re-probed serially below to surface the error
        }
    });
    for (int i = 0; i < anchors; ++i) {
        if (!probes[static_cast<std::size_t>(i)])
            probes[static_cast<std::size_t>(i)] =
                probe_anchor(u, i * astep, probe_grid, arc_limit);
    }

    std::vector<TrigPoly> multi_members;
    std::vector<int> multi_excess;
    auto record_multi = [&](const TrigPoly& phi, int k) {
        for (const TrigPoly& m : multi_members)
            if (coeffs_close(m, phi, 1e-6)) return;
        multi_members.push_back(phi);
        multi_excess.push_back(k - 2);
    };

    const double jump_gap = std::max(4.0 * astep, 0.05);
    for (int i = 0; i < anchors; ++i) {
        const AnchorProbe& a = *probes[static_cast<std::size_t>(i)];
        const AnchorProbe& b = *probes[static_cast<std::size_t>((i + 1) % anchors)];

        if (a.components >= 3)
            record_multi(a.phi, std::max(relaxed_contact_count(u, a.phi, grid), a.components));
        if (a.components < 2 || b.components < 2) continue;
        if (std::abs(signed_delta(b.partner, a.partner)) <= jump_gap) continue;

        // Bisect the anchor until the two partner branches face each other
        // across a persistent gap; that certifies a discontinuity and hence
        // a multi-contact member at the split anchor.
        double lo = i * astep, hi = (i + 1) * astep;
        double partner_lo = a.partner, partner_hi = b.partner;
        std::optional<AnchorProbe> mid_probe;
        for (int it = 0; it < 34 && hi - lo > 1e-12; ++it) {
            const double mid = 0.5 * (lo + hi);
            mid_probe = probe_anchor(u, mid, probe_grid, arc_limit);
            const double dlo = std::abs(signed_delta(mid_probe->partner, partner_lo));
            const double dhi = std::abs(signed_delta(mid_probe->partner, partner_hi));
            if (dlo <= dhi) {
                lo = mid;
                partner_lo = mid_probe->partner;
            } else {
                hi = mid;
                partner_hi = mid_probe->partner;
            }
        }
        if (mid_probe && std::abs(signed_delta(partner_hi, partner_lo)) > 0.5 * jump_gap) {
            const int k = std::max(relaxed_contact_count(u, mid_probe->phi, grid),
                                   mid_probe->components);
            if (k >= 3) record_multi(mid_probe->phi, k);
        }
    }

    BoseTally tally;
    tally.s_count = static_cast<int>(single_members.size());
    tally.t_count = 0;
    for (int e : multi_excess) tally.t_count += e;
    tally.difference = tally.s_count - tally.t_count;
    return tally;
}

std::vector<PeriodicFunction> random_corpus(const CorpusSpec& spec) {
    std::vector<PeriodicFunction> corpus;
    SplitMix64 rng(spec.seed);
    const int order = spec.parity == Parity::periodic ? 2 * spec.n + 1 : 2 * spec.n;
    const SpaceDescriptor space(order);
    const DisconjugateOperator op(space);
    const GridProfile grid;

    while (static_cast<int>(corpus.size()) < spec.count) {
        const int degree =
            spec.n + spec.min_degree_offset +
            static_cast<int>(rng.below(
                static_cast<std::uint64_t>(spec.max_degree_offset - spec.min_degree_offset + 1)));
        PeriodicFunction u = [&] {
            if (spec.parity == Parity::periodic) {
                std::vector<double> c(static_cast<std::size_t>(2 * degree + 1));
                for (double& x : c) x = rng.uniform(-1.0, 1.0);
                return PeriodicFunction::fourier(std::move(c));
            }
            std::vector<double> c(static_cast<std::size_t>(2 * degree));
            for (double& x : c) x = rng.uniform(-1.0, 1.0);
            return PeriodicFunction::antiperiodic_fourier(std::move(c));
        }();

        // Rejection: the draw must not lie in the analyzed space.
        const ScalarFn lu = [&](double t) { return apply_disconjugate(op, u, t); };
        const double u_scale = function_scale([&u](double t) { return u(t); }, grid, u.parity());
        const double lu_scale = function_scale(lu, grid, u.parity());
        if (lu_scale <= 1e-6 * u_scale || lu_scale == 0.0) continue;
        corpus.push_back(std::move(u));
    }
    return corpus;
}

} // namespace flex
