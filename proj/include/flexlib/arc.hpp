#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace flex {

inline constexpr double two_pi = 2.0 * std::numbers::pi_v<double>;

// Wrap an angle into [0, 2*pi).
inline double wrap_angle(double t) {
    double w = std::fmod(t, two_pi);
    if (w < 0.0) w += two_pi;
    if (w >= two_pi) w = 0.0;
    return w;
}

// Counterclockwise arc length from `from` to `to`, in [0, 2*pi).
inline double circular_gap(double from, double to) {
    return wrap_angle(to - from);
}

// Shortest signed difference a - b on the circle, in (-pi, pi].
inline double signed_delta(double a, double b) {
    double d = wrap_angle(a - b);
    if (d > std::numbers::pi_v<double>) d -= two_pi;
    return d;
}

// Closed arc on S^1, stored as a start angle in [0, 2*pi) and a length.
// A zero-length arc is a point; length two_pi marks a full cover
// (the degenerate phi == u case).
class Arc {
public:
    Arc(double start, double length)
        : start_(wrap_angle(start)), length_(length) {
        if (length < 0.0 || length > two_pi)
            throw std::invalid_argument("Arc: length outside [0, 2*pi]");
    }

    static Arc point(double t) { return Arc(t, 0.0); }
    static Arc full_circle() { return Arc(0.0, two_pi); }

    double start() const { return start_; }
    double length() const { return length_; }
    // End angle lifted so that start() <= end().
    double end() const { return start_ + length_; }
    double midpoint() const { return wrap_angle(start_ + 0.5 * length_); }

    bool is_point(double tol = 0.0) const { return length_ <= tol; }
    bool is_full() const { return length_ >= two_pi; }

    bool contains(double t, double slack = 0.0) const {
        if (is_full()) return true;
        double g = circular_gap(start_, t);
        return g <= length_ + slack || g >= two_pi - slack;
    }

private:
    double start_;
    double length_;
};

} // namespace flex
