#include "flexlib/conic.hpp"

#include <cmath>
#include <stdexcept>

namespace flex {

std::string to_string(ConicClass c) {
    switch (c) {
        case ConicClass::ellipse: return "ellipse";
        case ConicClass::parabola: return "parabola";
        case ConicClass::hyperbola: return "hyperbola";
        case ConicClass::degenerate: return "degenerate";
    }
    return "?";
}

Conic::Conic(std::array<double, 6> coeffs) : c_(coeffs) {
    double norm = 0.0;
    for (double v : c_) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) throw std::invalid_argument("Conic: zero coefficient vector");
    for (double& v : c_) v /= norm;
}

double Conic::evaluate(double x, double y) const {
    return c_[0] * x * x + c_[1] * x * y + c_[2] * y * y + c_[3] * x + c_[4] * y + c_[5];
}

ConicClass Conic::classify() const {
    const double a = c_[0], b = c_[1], c = c_[2], d = c_[3], e = c_[4], f = c_[5];
    // determinant of the full 3x3 symmetric matrix
    const double det = a * (c * f - e * e / 4.0) - (b / 2.0) * (b / 2.0 * f - e / 2.0 * d / 2.0) +
                       (d / 2.0) * (b / 2.0 * e / 2.0 - c * d / 2.0);
    if (std::abs(det) < 1e-12) return ConicClass::degenerate;
    const double disc = b * b - 4.0 * a * c;
    if (disc < -1e-12) return ConicClass::ellipse;
    if (disc > 1e-12) return ConicClass::hyperbola;
    return ConicClass::parabola;
}

Conic Conic::oriented_positive_at(double x, double y) const {
    const double v = evaluate(x, y);
    if (v >= -1e-14) return *this;
    std::array<double, 6> flipped = c_;
    for (double& c : flipped) c = -c;
    return Conic(flipped);
}

} // namespace flex
