#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "flexlib/arc.hpp"
#include "flexlib/rng.hpp"
#include "flexlib/trig_space.hpp"

namespace testutil {

// Central finite difference, O(h^2).
inline double central_diff(const std::function<double(double)>& f, double t, double h) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
}

// Least-squares slope of log(err) against log(h); the observed order of a
// convergence sweep.
inline double observed_order(const std::vector<double>& hs, const std::vector<double>& errs) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        if (errs[i] <= 0.0) continue;
        const double x = std::log(hs[i]);
        const double y = std::log(errs[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline flex::TrigPoly random_poly(flex::SpaceDescriptor space, flex::SplitMix64& rng,
                                  double lo = -1.0, double hi = 1.0) {
    std::vector<double> c(static_cast<std::size_t>(space.order()));
    for (double& x : c) x = rng.uniform(lo, hi);
    return flex::TrigPoly(space, std::move(c));
}

// Random confluent node pattern: multiplicities summing to the order,
// locations separated by at least min_sep.
inline std::vector<flex::HermiteNode> random_nodes(int order, flex::SplitMix64& rng,
                                                   double min_sep) {
    for (;;) {
        const int count = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(order)));
        std::vector<int> mult(static_cast<std::size_t>(count), 1);
        for (int extra = 0; extra < order - count; ++extra)
            ++mult[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(count)))];
        std::vector<double> locs;
        for (int i = 0; i < count; ++i) locs.push_back(rng.uniform(0.0, flex::two_pi));
        std::sort(locs.begin(), locs.end());
        bool ok = true;
        for (int i = 0; i < count; ++i) {
            const double gap = i + 1 < count ? locs[static_cast<std::size_t>(i + 1)] - locs[static_cast<std::size_t>(i)]
                                             : locs[0] + flex::two_pi - locs[static_cast<std::size_t>(i)];
            if (gap < min_sep) ok = false;
        }
        if (!ok) continue;
        std::vector<flex::HermiteNode> nodes;
        for (int i = 0; i < count; ++i)
            nodes.push_back({locs[static_cast<std::size_t>(i)], mult[static_cast<std::size_t>(i)]});
        return nodes;
    }
}

} // namespace testutil
