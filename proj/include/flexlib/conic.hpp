#pragma once

#include <array>
#include <string>

namespace flex {

enum class ConicClass { ellipse, parabola, hyperbola, degenerate };

std::string to_string(ConicClass c);

// Plane conic A x^2 + B xy + C y^2 + D x + E y + F, coefficients kept at
// unit Euclidean norm.
class Conic {
public:
    explicit Conic(std::array<double, 6> coeffs);

    const std::array<double, 6>& coeffs() const { return c_; }
    double evaluate(double x, double y) const;
    ConicClass classify() const;

    // Flip so the conic is positive at the given point (no-op when the value
    // there is numerically zero).
    Conic oriented_positive_at(double x, double y) const;

private:
    std::array<double, 6> c_;
};

} // namespace flex
