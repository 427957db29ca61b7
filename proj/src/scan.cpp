#include "flexlib/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flexlib/errors.hpp"
#include "flexlib/parallel.hpp"

namespace flex {

std::vector<double> sample_circle(const ScalarFn& g, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    const double step = two_pi / n;
    par::for_index(n, [&](std::size_t i) { v[i] = g(static_cast<double>(i) * step); });
    return v;
}

std::vector<double> sample_circle_serial(const ScalarFn& g, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    const double step = two_pi / n;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = g(static_cast<double>(i) * step);
    return v;
}

namespace {

double bisect_sign_change(const ScalarFn& g, double lo, double hi, double flo, int steps) {
    for (int i = 0; i < steps && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = g(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) != (fm < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

// Ternary search; minimize = true searches for the minimum of f.
double refine_extremum(const ScalarFn& f, double lo, double hi, bool minimize, int steps) {
    for (int i = 0; i < steps; ++i) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        const bool keep_left = minimize ? f(m1) <= f(m2) : f(m1) >= f(m2);
        if (keep_left) hi = m2; else lo = m1;
    }
    return 0.5 * (lo + hi);
}

// g extended by parity beyond [0, 2pi).
ScalarFn extend(const ScalarFn& g, Parity parity) {
    if (parity == Parity::periodic)
        return [g](double t) { return g(wrap_angle(t)); };
    return [g](double t) {
        const double w = wrap_angle(t);
        const long long k = std::llround((t - w) / two_pi);
        return (k % 2 != 0) ? -g(w) : g(w);
    };
}

} // namespace

std::vector<Extremum> refined_extrema(const ScalarFn& g, const GridProfile& grid, Parity parity) {
    const int n = grid.base_samples;
    const double step = two_pi / n;
    const std::vector<double> v = sample_circle(g, n);
    const ScalarFn ge = extend(g, parity);
    const double seam = parity == Parity::antiperiodic ? -1.0 : 1.0;

    auto value_at = [&](int i) {
        if (i < 0) return seam * v[static_cast<std::size_t>(i + n)];
        if (i >= n) return seam * v[static_cast<std::size_t>(i - n)];
        return v[static_cast<std::size_t>(i)];
    };

    std::vector<Extremum> out;
    for (int i = 0; i < n; ++i) {
        const double prev = value_at(i - 1);
        const double cur = value_at(i);
        const double next = value_at(i + 1);
        const bool is_min = cur <= prev && cur <= next && (cur < prev || cur < next);
        const bool is_max = cur >= prev && cur >= next && (cur > prev || cur > next);
        if (!is_min && !is_max) continue;
        const double lo = (i - 1) * step;
        const double hi = (i + 1) * step;
        const double t = refine_extremum(ge, lo, hi, is_min, 80);
        out.push_back({wrap_angle(t), ge(t), is_min});
    }
    return out;
}

double function_scale(const ScalarFn& g, const GridProfile& grid, Parity parity) {
    double scale = 0.0;
    for (double v : sample_circle(g, grid.base_samples)) scale = std::max(scale, std::abs(v));
    for (const Extremum& e : refined_extrema(g, grid, parity))
        scale = std::max(scale, std::abs(e.value));
    return scale;
}

std::vector<RootLocation> find_zeros(const ScalarFn& g, const GridProfile& grid, Parity parity) {
    const int n = grid.base_samples;
    const double step = two_pi / n;
    const std::vector<double> v = sample_circle(g, n);
    const ScalarFn ge = extend(g, parity);
    const double seam = parity == Parity::antiperiodic ? -1.0 : 1.0;

    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return {};

    std::vector<RootLocation> roots;
    for (int i = 0; i < n; ++i) {
        const double a = v[static_cast<std::size_t>(i)];
        const double b = i + 1 < n ? v[static_cast<std::size_t>(i + 1)] : seam * v[0];
        if (a == 0.0) {
            roots.push_back({i * step, false});
        } else if (b != 0.0 && (a < 0.0) != (b < 0.0)) {
            const double t = bisect_sign_change(ge, i * step, (i + 1) * step, a,
                                                std::max(grid.refine_depth, 50));
            roots.push_back({wrap_angle(t), false});
        }
    }

    // Tangential zeros: refined |g| minima that reach the zero tolerance
    // without producing a sign change.
    for (const Extremum& e : refined_extrema(g, grid, parity)) {
        const bool toward_zero = (e.is_minimum && e.value >= 0.0) || (!e.is_minimum && e.value <= 0.0);
        if (!toward_zero) continue;
        if (std::abs(e.value) > grid.zero_tol * scale) continue;
        bool dup = false;
        for (const RootLocation& r : roots)
            if (std::abs(signed_delta(e.t, r.t)) < step) { dup = true; break; }
        if (!dup) roots.push_back({e.t, true});
    }

    std::sort(roots.begin(), roots.end(),
              [](const RootLocation& a, const RootLocation& b) { return a.t < b.t; });
    return roots;
}

std::vector<Arc> near_zero_components(const ScalarFn& g, double eps, const GridProfile& grid) {
    const int n = grid.base_samples;
    const double step = two_pi / n;
    const std::vector<double> v = sample_circle(g, n);
    const std::vector<Extremum> extrema = refined_extrema(g, grid);

    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    for (const Extremum& e : extrema) scale = std::max(scale, std::abs(e.value));
    // Numerically zero input: the whole circle is one component.
    if (scale <= 1e-300) return {Arc::full_circle()};

    double lo = 0.0, hi = 0.0;
    for (const Extremum& e : extrema) {
        lo = std::min(lo, e.value);
        hi = std::max(hi, e.value);
    }
    for (double x : v) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    const double tau = eps * scale;
    if (lo < -tau && hi > tau)
        throw NotOneSided("near_zero_components: function takes both signs beyond tolerance");

    const ScalarFn absg = [&g](double t) { return std::abs(g(wrap_angle(t))); };

    // Seeds: grid points below tau plus refined narrow dips.
    std::vector<bool> mark(static_cast<std::size_t>(n), false);
    bool any = false, all = true;
    for (int i = 0; i < n; ++i) {
        mark[static_cast<std::size_t>(i)] = std::abs(v[static_cast<std::size_t>(i)]) <= tau;
        any = any || mark[static_cast<std::size_t>(i)];
        all = all && mark[static_cast<std::size_t>(i)];
    }
    std::vector<double> dip_seeds;
    for (const Extremum& e : extrema) {
        if (std::abs(e.value) > tau) continue;
        const int cell = static_cast<int>(e.t / step) % n;
        if (!mark[static_cast<std::size_t>(cell)]) dip_seeds.push_back(e.t);
        any = true;
    }
    if (!any) return {};
    if (all) return {Arc::full_circle()};

    // Expand a seed to the maximal surrounding arc with |g| <= tau.  The
    // boundary in the first outside cell is located by bisection on |g|-tau.
    auto boundary = [&](double inside, double outside) {
        double a = inside, b = outside;
        for (int i = 0; i < 60 && std::abs(b - a) > 1e-14; ++i) {
            const double mid = 0.5 * (a + b);
            if (absg(mid) <= tau) a = mid; else b = mid;
        }
        return 0.5 * (a + b);
    };

    struct Interval { double lo, hi; };
    std::vector<Interval> intervals;

    // Runs of marked grid points, traversed circularly from an unmarked
    // anchor so no run straddles the seam.
    int anchor = 0;
    while (mark[static_cast<std::size_t>(anchor)]) ++anchor;
    int cnt = 0;
    while (cnt < n) {
        while (cnt < n && !mark[static_cast<std::size_t>((anchor + cnt) % n)]) ++cnt;
        if (cnt >= n) break;
        const int first = anchor + cnt;
        while (cnt < n && mark[static_cast<std::size_t>((anchor + cnt) % n)]) ++cnt;
        const int last = anchor + cnt - 1;
        const double tl = first * step;
        const double tr = last * step;
        intervals.push_back({boundary(tl, tl - step), boundary(tr, tr + step)});
    }
    for (double s : dip_seeds) {
        intervals.push_back({boundary(s, s - step), boundary(s, s + step)});
    }

    // Normalize to [0, 2pi) starts, sort, and merge across small gaps
    // (circularly).
    struct Piece { double start, length; };
    std::vector<Piece> pieces;
    for (const Interval& iv : intervals)
        pieces.push_back({wrap_angle(iv.lo), std::min(iv.hi - iv.lo, two_pi)});
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& a, const Piece& b) { return a.start < b.start; });

    std::vector<Piece> merged;
    for (const Piece& p : pieces) {
        if (!merged.empty()) {
            Piece& last = merged.back();
            const double gap = p.start - (last.start + last.length);
            if (gap < grid.gap_threshold) {
                const double new_end = std::max(last.start + last.length, p.start + p.length);
                last.length = new_end - last.start;
                continue;
            }
        }
        merged.push_back(p);
    }
    // circular merge of last into first
    if (merged.size() > 1) {
        const Piece& last = merged.back();
        Piece& first = merged.front();
        const double gap = first.start + two_pi - (last.start + last.length);
        if (gap < grid.gap_threshold) {
            const double new_end = std::max(first.start + first.length,
                                            last.start + last.length - two_pi);
            first.length = new_end - (last.start - two_pi);
            first.start = last.start;
            merged.pop_back();
        }
    }

    std::vector<Arc> arcs;
    for (const Piece& p : merged)
        arcs.push_back(Arc(p.start, std::clamp(p.length, 0.0, two_pi)));
    return arcs;
}

namespace {

// Golden-section maximization of f on [lo, hi].
double golden_max(const ScalarFn& f, double lo, double hi, int steps) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < steps; ++i) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + phi * (b - a); f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - phi * (b - a); f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

RatioSup sup_of_ratio(const DerivFn& num, const DerivFn& den,
                      std::span<const ContactSpec> contacts, const GridProfile& grid) {
    const int n = grid.base_samples;
    const double step = two_pi / n;
    // Exclusion radius around each removable singularity.  Cancellation
    // noise in the ratio at distance r grows like eps / r^order, so the
    // radius widens with the vanishing order; skipping the disk costs only
    // O(r^(order+2)) in the supremum, which the caller's support-restoring
    // pass absorbs.
    auto radius_of = [](const ContactSpec& c) {
        return std::max(1e-3, std::pow(1e-7, 1.0 / std::max(c.vanish_order, 1)));
    };

    const ScalarFn den0 = [&den](double t) { return den(wrap_angle(t), 0); };

    const std::vector<double> dv = sample_circle(den0, n);
    double den_scale = 0.0;
    for (double x : dv) den_scale = std::max(den_scale, std::abs(x));
    if (den_scale == 0.0)
        throw DenominatorVanishesElsewhere("sup_of_ratio: denominator vanishes identically");

    auto near_contact = [&](double t) {
        for (const ContactSpec& c : contacts)
            if (std::abs(signed_delta(t, c.location)) < radius_of(c)) return true;
        return false;
    };

    // Denominator must stay positive away from the listed contacts.
    for (int i = 0; i < n; ++i) {
        const double t = i * step;
        if (near_contact(t)) continue;
        if (dv[static_cast<std::size_t>(i)] < -1e-10 * den_scale)
            throw DenominatorVanishesElsewhere("sup_of_ratio: denominator negative away from contacts");
        if (dv[static_cast<std::size_t>(i)] <= 1e-10 * den_scale)
            throw DenominatorVanishesElsewhere("sup_of_ratio: denominator has an unlisted zero");
    }
    for (const Extremum& e : refined_extrema(den0, grid)) {
        if (!e.is_minimum || near_contact(e.t)) continue;
        if (e.value <= 1e-10 * den_scale)
            throw DenominatorVanishesElsewhere("sup_of_ratio: denominator has an unlisted zero");
    }

    const ScalarFn ratio = [&](double t) {
        const double w = wrap_angle(t);
        return num(w, 0) / den(w, 0);
    };

    double num_scale = 0.0;
    for (int i = 0; i < n; ++i)
        num_scale = std::max(num_scale, std::abs(num(i * step, 0)));
    // Cancellation bound on a computed ratio value; refined candidates are
    // docked by it so the supremum is never inflated by noise where the
    // denominator is small.
    auto noise_bound = [&](double t) {
        return 4e-16 * num_scale / std::max(std::abs(den(wrap_angle(t), 0)), 1e-300);
    };

    double best = -std::numeric_limits<double>::infinity();
    double best_t = 0.0;

    // Removable-singularity limits by the ratio of leading derivatives.
    for (const ContactSpec& c : contacts) {
        const double dl = den(c.location, c.vanish_order);
        const double nl = num(c.location, c.vanish_order);
        if (std::abs(dl) <= 1e-12 * std::max(1.0, den_scale))
            throw DenominatorVanishesElsewhere(
                "sup_of_ratio: denominator vanishes beyond the stated order at a contact point");
        const double lim = nl / dl;
        if (lim > best) { best = lim; best_t = wrap_angle(c.location); }
    }

    // Grid candidates away from the exclusion disks.
    int best_idx = -1;
    for (int i = 0; i < n; ++i) {
        const double t = i * step;
        if (near_contact(t)) continue;
        const double r = num(t, 0) / dv[static_cast<std::size_t>(i)];
        if (r > best) { best = r; best_t = t; best_idx = i; }
    }

    // Windows to refine: around the best grid point and at each exclusion
    // boundary.  Windows are clipped to keep the guard distance from the
    // contact points, where cancellation noise would dominate the ratio.
    std::vector<std::pair<double, double>> windows;
    if (best_idx >= 0)
        windows.push_back({best_idx * step - step, best_idx * step + step});
    for (const ContactSpec& c : contacts) {
        const double r = radius_of(c);
        windows.push_back({c.location + r, c.location + r + 2.0 * step});
        windows.push_back({c.location - r - 2.0 * step, c.location - r});
    }

    std::vector<std::pair<double, double>> segments;
    for (auto w : windows) {
        std::vector<std::pair<double, double>> segs = {w};
        for (const ContactSpec& c : contacts) {
            const double guard = radius_of(c);
            for (double lift : {c.location - two_pi, c.location, c.location + two_pi}) {
                std::vector<std::pair<double, double>> next;
                for (auto [lo, hi] : segs) {
                    if (hi <= lift - guard || lo >= lift + guard) {
                        next.push_back({lo, hi});
                        continue;
                    }
                    if (lo < lift - guard) next.push_back({lo, lift - guard});
                    if (hi > lift + guard) next.push_back({lift + guard, hi});
                }
                segs = std::move(next);
            }
        }
        for (auto s : segs)
            if (s.second - s.first > 1e-9) segments.push_back(s);
    }

    for (auto [lo, hi] : segments) {
        const double t = golden_max(ratio, lo, hi, 120);
        const double r = ratio(t) - noise_bound(t);
        if (r > best) { best = r; best_t = wrap_angle(t); }
    }

    return {best, best_t};
}

} // namespace flex
