#include "flexlib/trig_space.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "flexlib/arc.hpp"

namespace flex {

namespace {
constexpr double half_pi = std::numbers::pi_v<double> / 2.0;
}

SpaceDescriptor::SpaceDescriptor(int order) : order_(order) {
    if (order < 1) throw DimensionMismatch("SpaceDescriptor: order must be >= 1");
}

double SpaceDescriptor::frequency(int pair) const {
    if (pair < 1 || pair > pair_count())
        throw DimensionMismatch("SpaceDescriptor: bad harmonic pair index");
    return has_constant() ? static_cast<double>(pair)
                          : (2.0 * pair - 1.0) / 2.0;
}

double SpaceDescriptor::max_frequency() const {
    return pair_count() == 0 ? 0.0 : frequency(pair_count());
}

double SpaceDescriptor::basis_eval(int index, double t, int deriv) const {
    if (index < 0 || index >= order_)
        throw DimensionMismatch("SpaceDescriptor: basis index out of range");
    if (has_constant()) {
        if (index == 0) return deriv == 0 ? 1.0 : 0.0;
        --index;
    }
    const int pair = index / 2 + 1;
    const double f = frequency(pair);
    const double fp = std::pow(f, deriv);
    const double phase = f * t + deriv * half_pi;
    return index % 2 == 0 ? fp * std::cos(phase) : fp * std::sin(phase);
}

TrigPoly::TrigPoly(SpaceDescriptor space, std::vector<double> coeffs)
    : space_(space), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != space_.order())
        throw DimensionMismatch("TrigPoly: coefficient count must equal space order");
}

double TrigPoly::eval(double t, int deriv) const {
    if (deriv < 0 || deriv > max_derivative_order())
        throw DerivativeUnavailable("TrigPoly: derivative order beyond configured maximum");
    double acc = 0.0;
    std::size_t idx = 0;
    if (space_.has_constant()) {
        if (deriv == 0) acc += coeffs_[0];
        idx = 1;
    }
    for (int pair = 1; pair <= space_.pair_count(); ++pair, idx += 2) {
        const double f = space_.frequency(pair);
        const double fp = std::pow(f, deriv);
        const double phase = f * t + deriv * half_pi;
        acc += fp * (coeffs_[idx] * std::cos(phase) + coeffs_[idx + 1] * std::sin(phase));
    }
    return acc;
}

double TrigPoly::coeff_norm() const {
    double s = 0.0;
    for (double c : coeffs_) s += c * c;
    return std::sqrt(s);
}

TrigPoly TrigPoly::plus_scaled(const TrigPoly& other, double factor) const {
    if (!(space_ == other.space_))
        throw DimensionMismatch("TrigPoly: mixed spaces in linear combination");
    std::vector<double> c(coeffs_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += factor * other.coeffs_[i];
    return TrigPoly(space_, std::move(c));
}

HermiteData::HermiteData(std::vector<HermiteNode> nodes, std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
    for (const auto& n : nodes_) {
        if (n.multiplicity < 1)
            throw DimensionMismatch("HermiteData: node multiplicity must be >= 1");
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        for (std::size_t j = i + 1; j < nodes_.size(); ++j)
            if (wrap_angle(nodes_[i].location) == wrap_angle(nodes_[j].location))
                throw DimensionMismatch("HermiteData: node locations must be pairwise distinct");
    if (static_cast<int>(values_.size()) != total_multiplicity())
        throw DimensionMismatch("HermiteData: value count must equal total multiplicity");
}

int HermiteData::total_multiplicity() const {
    int m = 0;
    for (const auto& n : nodes_) m += n.multiplicity;
    return m;
}

TrigPoly hermite_interpolate(const SpaceDescriptor& space, const HermiteData& data,
                             const HermiteOptions& opts) {
    const int n = space.order();
    if (data.total_multiplicity() != n)
        throw DimensionMismatch("hermite_interpolate: total multiplicity must equal space order");

    const double fmax = std::max(1.0, space.max_frequency());
    Eigen::MatrixXd m(n, n);
    Eigen::VectorXd rhs(n);
    int row = 0;
    for (const auto& node : data.nodes()) {
        for (int d = 0; d < node.multiplicity; ++d, ++row) {
            // Derivative rows grow like f^d; equilibrate before factoring.
            const double rs = 1.0 / std::pow(fmax, d);
            for (int c = 0; c < n; ++c)
                m(row, c) = rs * space.basis_eval(c, node.location, d);
            rhs(row) = rs * data.values()[static_cast<std::size_t>(row)];
        }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    const auto& r = qr.matrixR();
    const double r0 = std::abs(r(0, 0));
    const double rn = std::abs(r(n - 1, n - 1));
    if (rn == 0.0 || r0 / rn > opts.condition_threshold)
        throw IllConditioned("hermite_interpolate: confluent system condition estimate exceeds threshold");

    Eigen::VectorXd sol = qr.solve(rhs);
    return TrigPoly(space, std::vector<double>(sol.data(), sol.data() + n));
}

namespace {

// Bisect g to a sign-change root; g(lo) and g(hi) have opposite signs.
double bisect_root(const std::function<double(double)>& g, double lo, double hi, int steps) {
    double flo = g(lo);
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

// Ternary search for the minimum of |g| on [lo, hi].
double refine_abs_min(const std::function<double(double)>& g, double lo, double hi, int steps) {
    for (int i = 0; i < steps; ++i) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (std::abs(g(m1)) <= std::abs(g(m2))) hi = m2; else lo = m1;
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::vector<ZeroWithMultiplicity> count_zeros(const TrigPoly& p, double tol) {
    if (p.coeff_norm() <= tol)
        throw ZeroPolynomial("count_zeros: polynomial is zero to tolerance");

    const int n = 4096;
    const double step = two_pi / n;
    std::vector<double> v(static_cast<std::size_t>(n));
    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        v[static_cast<std::size_t>(i)] = p.eval(i * step);
        scale = std::max(scale, std::abs(v[static_cast<std::size_t>(i)]));
    }
    const auto f = [&p](double t) { return p.eval(t); };
    // Antiperiodic members flip sign across the period seam.
    const double seam = p.space().parity() == Parity::antiperiodic ? -1.0 : 1.0;

    std::vector<double> roots;
    for (int i = 0; i < n; ++i) {
        const double a = v[static_cast<std::size_t>(i)];
        const double b = i + 1 < n ? v[static_cast<std::size_t>(i + 1)] : seam * v[0];
        const double ta = i * step, tb = (i + 1) * step;
        if (a == 0.0) {
            roots.push_back(ta);
        } else if ((a < 0.0) != (b < 0.0) && b != 0.0) {
            roots.push_back(bisect_root(f, ta, tb, 64));
        }
    }
    // Tangential zeros: refined local minima of |p| below tolerance.
    for (int i = 0; i < n; ++i) {
        const double prev = std::abs(v[static_cast<std::size_t>((i + n - 1) % n)]);
        const double cur = std::abs(v[static_cast<std::size_t>(i)]);
        const double next = std::abs(v[static_cast<std::size_t>((i + 1) % n)]);
        if (cur <= prev && cur <= next && cur < std::sqrt(tol) * scale) {
            const double t = refine_abs_min(f, (i - 1) * step, (i + 1) * step, 90);
            if (std::abs(p.eval(t)) <= tol * scale) roots.push_back(wrap_angle(t));
        }
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> uniq;
    for (double t : roots) {
        bool dup = false;
        for (double s : uniq)
            if (std::abs(signed_delta(t, s)) < 0.5 * step) { dup = true; break; }
        if (!dup) uniq.push_back(wrap_angle(t));
    }

    std::vector<ZeroWithMultiplicity> out;
    for (double t : uniq) {
        // Multiplicity: first derivative order whose magnitude clears the
        // scale-free threshold.
        int mult = p.space().order() - 1;
        for (int d = 1; d < p.space().order(); ++d) {
            if (std::abs(p.eval(t, d)) > tol * scale) {
                mult = d;
                break;
            }
        }
        out.push_back({t, mult});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.location < b.location; });
    return out;
}

DisconjugateOperator::DisconjugateOperator(SpaceDescriptor space) : space_(space) {
    // Expand the factored form as a polynomial in D.
    std::vector<double> c;
    if (space_.has_constant()) {
        c = {0.0, 1.0}; // the factor D
    } else {
        c = {1.0};
    }
    for (int pair = 1; pair <= space_.pair_count(); ++pair) {
        const double f = space_.frequency(pair);
        // multiply by (D^2 + f^2)
        std::vector<double> next(c.size() + 2, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i] += f * f * c[i];
            next[i + 2] += c[i];
        }
        c = std::move(next);
    }
    coeffs_ = std::move(c);
}

double DisconjugateOperator::apply(std::span<const double> jet) const {
    if (jet.size() < coeffs_.size())
        throw DerivativeUnavailable("DisconjugateOperator: jet shorter than operator order + 1");
    double acc = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) acc += coeffs_[i] * jet[i];
    return acc;
}

} // namespace flex
