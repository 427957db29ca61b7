#include "flexlib/periodic_function.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "flexlib/arc.hpp"
#include "flexlib/jet.hpp"

namespace flex {

class PeriodicFunction::Impl {
public:
    virtual ~Impl() = default;
    // out[k] = u^(k)(t) for k = 0..out.size()-1.
    virtual void write_jet(double t, std::span<double> out) const = 0;
    virtual Parity parity() const = 0;
    virtual int max_order() const = 0;
};

namespace {

constexpr double half_pi = std::numbers::pi_v<double> / 2.0;

struct Mode {
    double freq;
    double a; // cos coefficient
    double b; // sin coefficient
};

class FourierImpl final : public PeriodicFunction::Impl {
public:
    FourierImpl(std::vector<Mode> modes, Parity parity)
        : modes_(std::move(modes)), parity_(parity) {}

    void write_jet(double t, std::span<double> out) const override {
        for (std::size_t k = 0; k < out.size(); ++k) {
            double acc = 0.0;
            for (const Mode& m : modes_) {
                if (m.freq == 0.0) {
                    if (k == 0) acc += m.a;
                    continue;
                }
                const double fp = std::pow(m.freq, static_cast<double>(k));
                const double phase = m.freq * t + static_cast<double>(k) * half_pi;
                acc += fp * (m.a * std::cos(phase) + m.b * std::sin(phase));
            }
            out[k] = acc;
        }
    }

    Parity parity() const override { return parity_; }
    int max_order() const override { return 128; }

private:
    std::vector<Mode> modes_;
    Parity parity_;
};

// C-infinity step: 0 for x <= 0, 1 for x >= 1, exp(-1/x) blend between.
// Near the junctions all derivatives are exponentially flat; clamping there
// avoids overflow in the 1/x jet without losing anything representable.
Jet smooth_step_jet(const Jet& x) {
    const int m = x.order();
    if (x.value() <= 1e-12) return Jet::constant(0.0, m);
    if (x.value() >= 1.0 - 1e-12) return Jet::constant(1.0, m);
    const Jet one = Jet::constant(1.0, m);
    const Jet s1 = exp(Jet::constant(0.0, m) - one / x);
    const Jet s2 = exp(Jet::constant(0.0, m) - one / (one - x));
    return s1 / (s1 + s2);
}

// The Figure-2 style plateau: identically 1 on [2pi/5, 3pi/5], identically 0
// on [0, pi/5] and [4pi/5, 2pi], mollifier transitions between.
class PlateauImpl final : public PeriodicFunction::Impl {
public:
    void write_jet(double t, std::span<double> out) const override {
        const int m = static_cast<int>(out.size()) - 1;
        const double pi = std::numbers::pi_v<double>;
        const double w = pi / 5.0; // transition width
        const double tt = wrap_angle(t);
        Jet x = Jet::constant(0.0, m);
        double slope = 0.0;
        if (tt < pi / 5.0) {
            // flat zero
        } else if (tt < 2.0 * pi / 5.0) {
            slope = 1.0 / w;
            x = Jet::variable((tt - pi / 5.0) / w, m);
        } else if (tt <= 3.0 * pi / 5.0) {
            x = Jet::constant(1.0, m);
        } else if (tt < 4.0 * pi / 5.0) {
            slope = -1.0 / w;
            x = Jet::variable((4.0 * pi / 5.0 - tt) / w, m);
        }
        Jet s = smooth_step_jet(x);
        // chain rule for the affine reparametrization: d/dt = slope * d/dx
        double sp = 1.0, fact = 1.0;
        for (int k = 0; k <= m; ++k) {
            if (k > 0) { sp *= slope; fact *= k; }
            out[static_cast<std::size_t>(k)] = s.coeff(k) * fact * sp;
        }
    }

    Parity parity() const override { return Parity::periodic; }
    int max_order() const override { return 12; }
};

// Support function of a centered axis-aligned ellipse with semi-axes a, b,
// in the tangent-angle parametrization: sqrt(a^2 sin^2 t + b^2 cos^2 t).
class EllipseSupportImpl final : public PeriodicFunction::Impl {
public:
    EllipseSupportImpl(double a, double b) : a_(a), b_(b) {
        if (a <= 0.0 || b <= 0.0)
            throw ParseError("ellipse support: semi-axes must be positive");
    }

    void write_jet(double t, std::span<double> out) const override {
        const int m = static_cast<int>(out.size()) - 1;
        const Jet s = jet_sin(t, 1.0, m);
        const Jet c = jet_cos(t, 1.0, m);
        const Jet w = (a_ * a_) * (s * s) + (b_ * b_) * (c * c);
        const Jet h = sqrt(w);
        for (int k = 0; k <= m; ++k)
            out[static_cast<std::size_t>(k)] = h.derivative(k);
    }

    Parity parity() const override { return Parity::periodic; }
    int max_order() const override { return 12; }

private:
    double a_, b_;
};

class ShiftScaleImpl final : public PeriodicFunction::Impl {
public:
    ShiftScaleImpl(std::shared_ptr<const PeriodicFunction::Impl> base, double shift, double factor)
        : base_(std::move(base)), shift_(shift), factor_(factor) {}

    void write_jet(double t, std::span<double> out) const override {
        base_->write_jet(t + shift_, out);
        for (double& v : out) v *= factor_;
    }

    Parity parity() const override { return base_->parity(); }
    int max_order() const override { return base_->max_order(); }

private:
    std::shared_ptr<const PeriodicFunction::Impl> base_;
    double shift_, factor_;
};

class SumImpl final : public PeriodicFunction::Impl {
public:
    SumImpl(std::shared_ptr<const PeriodicFunction::Impl> a,
            std::shared_ptr<const PeriodicFunction::Impl> b)
        : a_(std::move(a)), b_(std::move(b)) {
        if (a_->parity() != b_->parity())
            throw DimensionMismatch("PeriodicFunction: cannot add mixed parities");
    }

    void write_jet(double t, std::span<double> out) const override {
        a_->write_jet(t, out);
        std::vector<double> tmp(out.size());
        b_->write_jet(t, tmp);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += tmp[i];
    }

    Parity parity() const override { return a_->parity(); }
    int max_order() const override { return std::min(a_->max_order(), b_->max_order()); }

private:
    std::shared_ptr<const PeriodicFunction::Impl> a_, b_;
};

} // namespace

PeriodicFunction::PeriodicFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

double PeriodicFunction::derivative(double t, int order) const {
    if (order < 0 || order > impl_->max_order())
        throw DerivativeUnavailable("PeriodicFunction: derivative order not available");
    std::vector<double> buf(static_cast<std::size_t>(order) + 1);
    impl_->write_jet(t, buf);
    return buf.back();
}

std::vector<double> PeriodicFunction::jet(double t, int max_order) const {
    if (max_order < 0 || max_order > impl_->max_order())
        throw DerivativeUnavailable("PeriodicFunction: derivative order not available");
    std::vector<double> buf(static_cast<std::size_t>(max_order) + 1);
    impl_->write_jet(t, buf);
    return buf;
}

Parity PeriodicFunction::parity() const { return impl_->parity(); }
int PeriodicFunction::max_derivative_order() const { return impl_->max_order(); }

PeriodicFunction PeriodicFunction::fourier(std::vector<double> coeffs) {
    if (coeffs.empty()) throw DimensionMismatch("fourier: empty coefficient list");
    std::vector<Mode> modes;
    modes.push_back({0.0, coeffs[0], 0.0});
    for (std::size_t i = 1; i < coeffs.size(); i += 2) {
        const double f = static_cast<double>((i + 1) / 2);
        const double a = coeffs[i];
        const double b = i + 1 < coeffs.size() ? coeffs[i + 1] : 0.0;
        modes.push_back({f, a, b});
    }
    return PeriodicFunction(std::make_shared<FourierImpl>(std::move(modes), Parity::periodic));
}

PeriodicFunction PeriodicFunction::antiperiodic_fourier(std::vector<double> coeffs) {
    if (coeffs.empty()) throw DimensionMismatch("antiperiodic_fourier: empty coefficient list");
    std::vector<Mode> modes;
    for (std::size_t i = 0; i < coeffs.size(); i += 2) {
        const double f = (static_cast<double>(i) + 1.0) / 2.0; // 1/2, 3/2, ...
        const double a = coeffs[i];
        const double b = i + 1 < coeffs.size() ? coeffs[i + 1] : 0.0;
        modes.push_back({f, a, b});
    }
    return PeriodicFunction(std::make_shared<FourierImpl>(std::move(modes), Parity::antiperiodic));
}

PeriodicFunction PeriodicFunction::from_poly(const TrigPoly& p) {
    std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
    if (p.space().parity() == Parity::periodic) return fourier(std::move(c));
    return antiperiodic_fourier(std::move(c));
}

PeriodicFunction PeriodicFunction::constant(double c) { return fourier({c}); }

PeriodicFunction PeriodicFunction::catalog(const std::string& name,
                                           std::span<const double> params) {
    if (name == "sharp") {
        const int n = params.empty() ? 1 : static_cast<int>(params[0]);
        if (n < 1) throw ParseError("catalog sharp: requires n >= 1");
        std::vector<double> c(static_cast<std::size_t>(2 * (n + 1) + 1), 0.0);
        c.back() = 1.0; // sin((n+1) t)
        return fourier(std::move(c));
    }
    if (name == "plateau") {
        return PeriodicFunction(std::make_shared<PlateauImpl>());
    }
    if (name == "plateau-pair") {
        const double lambda = params.empty() ? 1.0 : params[0];
        PeriodicFunction u(std::make_shared<PlateauImpl>());
        return u + u.shifted(std::numbers::pi_v<double>).scaled(lambda);
    }
    if (name == "ellipse") {
        if (params.size() < 2) throw ParseError("catalog ellipse: requires semi-axes a, b");
        return PeriodicFunction(std::make_shared<EllipseSupportImpl>(params[0], params[1]));
    }
    if (name == "circle") {
        const double r = params.empty() ? 1.0 : params[0];
        return constant(r);
    }
    throw ParseError("unknown catalog function: " + name);
}

PeriodicFunction PeriodicFunction::shifted(double delta) const {
    return PeriodicFunction(std::make_shared<ShiftScaleImpl>(impl_, delta, 1.0));
}

PeriodicFunction PeriodicFunction::scaled(double factor) const {
    return PeriodicFunction(std::make_shared<ShiftScaleImpl>(impl_, 0.0, factor));
}

PeriodicFunction operator+(const PeriodicFunction& a, const PeriodicFunction& b) {
    return PeriodicFunction(std::make_shared<SumImpl>(a.impl_, b.impl_));
}

DerivFn as_deriv_fn(const PeriodicFunction& u) {
    return [u](double t, int order) { return u.derivative(t, order); };
}

DerivFn as_deriv_fn(const TrigPoly& p) {
    return [p](double t, int order) { return p.eval(t, order); };
}

double apply_disconjugate(const DisconjugateOperator& op, const PeriodicFunction& u, double t) {
    return op.apply(u.jet(t, op.space().order()));
}

} // namespace flex
