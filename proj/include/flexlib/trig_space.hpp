#pragma once

#include <span>
#include <vector>

#include "flexlib/errors.hpp"

namespace flex {

enum class Parity { periodic, antiperiodic };

// Trigonometric Chebyshev space of a given order n:
//   odd  n = 2k+1: span{1, cos t, sin t, ..., cos kt, sin kt}, 2pi-periodic;
//   even n = 2k:   span{cos(t/2), sin(t/2), ..., cos((2k-1)t/2), sin((2k-1)t/2)},
//                  2pi-antiperiodic.
// A nonzero member has at most n-1 zeros on [0, 2pi) counted with
// multiplicity; the dimension equals the order.
class SpaceDescriptor {
public:
    explicit SpaceDescriptor(int order);

    int order() const { return order_; }
    Parity parity() const {
        return order_ % 2 == 1 ? Parity::periodic : Parity::antiperiodic;
    }
    bool has_constant() const { return order_ % 2 == 1; }
    int pair_count() const { return order_ / 2; }

    // Frequency of harmonic pair p, 1-based: p for odd spaces, (2p-1)/2 for
    // even (antiperiodic) spaces.
    double frequency(int pair) const;
    double max_frequency() const;

    // Basis layout: [constant,] (cos f1, sin f1), (cos f2, sin f2), ...
    double basis_eval(int index, double t, int deriv = 0) const;

    bool operator==(const SpaceDescriptor&) const = default;

private:
    int order_;
};

// Element of a trigonometric Chebyshev space, stored by coefficients in the
// fixed basis order above.
class TrigPoly {
public:
    TrigPoly(SpaceDescriptor space, std::vector<double> coeffs);

    double eval(double t, int deriv = 0) const;
    double operator()(double t) const { return eval(t, 0); }

    const SpaceDescriptor& space() const { return space_; }
    std::span<const double> coeffs() const { return coeffs_; }
    double coeff_norm() const;

    // Exact derivatives are available to any order; calls beyond this cap
    // throw DerivativeUnavailable.
    int max_derivative_order() const { return 2 * space_.order(); }

    TrigPoly plus_scaled(const TrigPoly& other, double factor) const;

private:
    SpaceDescriptor space_;
    std::vector<double> coeffs_;
};

struct HermiteNode {
    double location = 0.0;
    int multiplicity = 1;
};

// Confluent interpolation data: for node j the prescribed derivatives of
// orders 0..multiplicity-1, concatenated in node order.
class HermiteData {
public:
    HermiteData(std::vector<HermiteNode> nodes, std::vector<double> values);

    const std::vector<HermiteNode>& nodes() const { return nodes_; }
    const std::vector<double>& values() const { return values_; }
    int total_multiplicity() const;

private:
    std::vector<HermiteNode> nodes_;
    std::vector<double> values_;
};

struct HermiteOptions {
    // Condition estimate above this throws IllConditioned.
    double condition_threshold = 1e12;
};

// Unique space member matching the prescribed derivatives (Hermite
// interpolation in the Chebyshev space).  Rows of the confluent system are
// scaled by 1/max(1, f_max^order) before the column-pivoted QR solve.
TrigPoly hermite_interpolate(const SpaceDescriptor& space, const HermiteData& data,
                             const HermiteOptions& opts = {});

struct ZeroWithMultiplicity {
    double location = 0.0;
    int multiplicity = 0;
};

// Zeros of p on [0, 2pi) with multiplicities estimated from the first
// derivative whose magnitude exceeds tol * max|p|.
std::vector<ZeroWithMultiplicity> count_zeros(const TrigPoly& p, double tol);

// The constant-coefficient disconjugate operator whose kernel is the given
// space: D(D^2+1)...(D^2+k^2) for odd order 2k+1 and
// (D^2+(1/2)^2)...(D^2+((2k-1)/2)^2) for even order 2k, expanded in powers
// of D with leading coefficient 1.
class DisconjugateOperator {
public:
    explicit DisconjugateOperator(SpaceDescriptor space);

    const SpaceDescriptor& space() const { return space_; }
    std::span<const double> coefficients() const { return coeffs_; }

    // Apply to a derivative jet: jet[k] = u^(k)(t), k = 0..order.
    double apply(std::span<const double> jet) const;

private:
    SpaceDescriptor space_;
    std::vector<double> coeffs_;
};

} // namespace flex
