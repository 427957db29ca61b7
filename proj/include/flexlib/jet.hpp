#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace flex {

// Truncated Taylor series around a fixed expansion point.  Coefficient k is
// the k-th Taylor coefficient (derivative / k!).  Used wherever closed-form
// chain-rule derivatives of composite expressions are needed (mollifier
// plateaus, support-function curves, conic residuals).
class Jet {
public:
    explicit Jet(int order) : c_(static_cast<std::size_t>(order) + 1, 0.0) {
        if (order < 0) throw std::invalid_argument("Jet: negative order");
    }

    static Jet constant(double value, int order) {
        Jet j(order);
        j.c_[0] = value;
        return j;
    }

    // value + delta, i.e. the identity in the local offset variable.
    static Jet variable(double value, int order) {
        Jet j(order);
        j.c_[0] = value;
        if (order >= 1) j.c_[1] = 1.0;
        return j;
    }

    // Build from derivative values d[k] = f^(k).
    static Jet from_derivatives(std::span<const double> d) {
        Jet j(static_cast<int>(d.size()) - 1);
        double fact = 1.0;
        for (std::size_t k = 0; k < d.size(); ++k) {
            if (k > 0) fact *= static_cast<double>(k);
            j.c_[k] = d[k] / fact;
        }
        return j;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    double coeff(int k) const { return c_[static_cast<std::size_t>(k)]; }
    double& coeff(int k) { return c_[static_cast<std::size_t>(k)]; }
    double value() const { return c_[0]; }

    double derivative(int k) const {
        double fact = 1.0;
        for (int i = 2; i <= k; ++i) fact *= static_cast<double>(i);
        return c_[static_cast<std::size_t>(k)] * fact;
    }

    Jet& operator+=(const Jet& o) {
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
        return *this;
    }
    Jet& operator*=(double s) {
        for (double& c : c_) c *= s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
    friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
    friend Jet operator*(Jet a, double s) { a *= s; return a; }
    friend Jet operator*(double s, Jet a) { a *= s; return a; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(a.order());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0.0) continue;
            for (std::size_t j = 0; i + j < b.c_.size(); ++j)
                r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }

    // a / b, requires b(0) != 0.
    friend Jet operator/(const Jet& a, const Jet& b) {
        if (b.c_[0] == 0.0) throw std::domain_error("Jet: division by zero value");
        Jet q(a.order());
        for (std::size_t k = 0; k < a.c_.size(); ++k) {
            double acc = a.c_[k];
            for (std::size_t j = 1; j <= k; ++j) acc -= b.c_[j] * q.c_[k - j];
            q.c_[k] = acc / b.c_[0];
        }
        return q;
    }

private:
    std::vector<double> c_;
};

inline Jet exp(const Jet& w) {
    Jet e(w.order());
    e.coeff(0) = std::exp(w.value());
    for (int k = 1; k <= w.order(); ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += j * w.coeff(j) * e.coeff(k - j);
        e.coeff(k) = acc / k;
    }
    return e;
}

inline Jet sqrt(const Jet& w) {
    if (w.value() <= 0.0) throw std::domain_error("Jet: sqrt of nonpositive value");
    Jet s(w.order());
    s.coeff(0) = std::sqrt(w.value());
    for (int k = 1; k <= w.order(); ++k) {
        double acc = w.coeff(k);
        for (int j = 1; j < k; ++j) acc -= s.coeff(j) * s.coeff(k - j);
        s.coeff(k) = acc / (2.0 * s.coeff(0));
    }
    return s;
}

// Direct jets of sin/cos of (freq * t) expanded at t.
inline Jet jet_sin(double t, double freq, int order) {
    Jet j(order);
    double fp = 1.0, fact = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) { fp *= freq; fact *= k; }
        j.coeff(k) = fp * std::sin(freq * t + k * std::numbers::pi_v<double> / 2.0) / fact;
    }
    return j;
}

inline Jet jet_cos(double t, double freq, int order) {
    Jet j(order);
    double fp = 1.0, fact = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) { fp *= freq; fact *= k; }
        j.coeff(k) = fp * std::cos(freq * t + k * std::numbers::pi_v<double> / 2.0) / fact;
    }
    return j;
}

} // namespace flex
