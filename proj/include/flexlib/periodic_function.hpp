#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "flexlib/trig_space.hpp"

namespace flex {

// Value-and-derivative oracle for a 2pi-periodic or 2pi-antiperiodic
// function.  All kinds provide analytic derivatives: finite Fourier series
// by frequency rotation, catalog closed forms and mollifier plateaus by
// truncated Taylor arithmetic.
class PeriodicFunction {
public:
    class Impl;

    double operator()(double t) const { return derivative(t, 0); }
    double derivative(double t, int order) const;
    // Derivatives 0..max_order at t.
    std::vector<double> jet(double t, int max_order) const;

    Parity parity() const;
    int max_derivative_order() const;

    // coeffs = a0, a1, b1, a2, b2, ...  (integer frequencies, periodic)
    static PeriodicFunction fourier(std::vector<double> coeffs);
    // coeffs = a1, b1, a2, b2, ...  for frequencies 1/2, 3/2, ... (antiperiodic)
    static PeriodicFunction antiperiodic_fourier(std::vector<double> coeffs);
    static PeriodicFunction from_poly(const TrigPoly& p);
    static PeriodicFunction constant(double c);

    // Named closed forms:
    //   "sharp" {n}        sin((n+1) t), the extremal example
    //   "plateau" {}       smooth bump, 1 on [2pi/5, 3pi/5], 0 on [0,pi/5] u [4pi/5,2pi]
    //   "plateau-pair" {l} plateau(t) + l * plateau(t + pi)
    //   "ellipse" {a,b}    support function sqrt(a^2 sin^2 t + b^2 cos^2 t)
    //   "circle" {r}       constant r
    static PeriodicFunction catalog(const std::string& name,
                                    std::span<const double> params = {});

    PeriodicFunction shifted(double delta) const;
    PeriodicFunction scaled(double factor) const;
    PeriodicFunction negated() const { return scaled(-1.0); }
    friend PeriodicFunction operator+(const PeriodicFunction& a, const PeriodicFunction& b);

private:
    explicit PeriodicFunction(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

// (t, derivative order) -> value; the uniform oracle shape taken by the
// scanning primitives.
using DerivFn = std::function<double(double, int)>;

DerivFn as_deriv_fn(const PeriodicFunction& u);
DerivFn as_deriv_fn(const TrigPoly& p);

// L_A u at t via the expanded operator and the exact jet of u.
double apply_disconjugate(const DisconjugateOperator& op, const PeriodicFunction& u, double t);

} // namespace flex
