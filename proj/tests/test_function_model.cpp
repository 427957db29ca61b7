#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "flexlib/periodic_function.hpp"
#include "test_utils.hpp"

using namespace flex;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi_v<double>;
}

TEST_CASE("fourier jets are exact") {
    // u = sin 2t at 0: (0, 2, 0, -8)
    PeriodicFunction u = PeriodicFunction::fourier({0, 0, 0, 0, 1});
    const auto j = u.jet(0.0, 3);
    CHECK(j[0] == Approx(0.0));
    CHECK(j[1] == Approx(2.0));
    CHECK(j[2] == Approx(0.0));
    CHECK(j[3] == Approx(-8.0));

    PeriodicFunction c = PeriodicFunction::constant(5.0);
    const auto jc = c.jet(1.3, 4);
    CHECK(jc[0] == Approx(5.0));
    for (int k = 1; k <= 4; ++k) CHECK(jc[static_cast<std::size_t>(k)] == Approx(0.0));
}

TEST_CASE("catalog derivatives agree with finite differences at order two") {
    for (const char* name : {"plateau", "ellipse"}) {
        std::vector<double> params;
        if (std::string(name) == "ellipse") params = {2.0, 1.0};
        PeriodicFunction u = PeriodicFunction::catalog(name, params);
        std::vector<double> hs, errs;
        const double t = 1.0; // inside the rising plateau edge
        for (double h = 1e-2; h > 1e-4; h /= 2.0) {
            const double fd = testutil::central_diff([&](double x) { return u(x); }, t, h);
            hs.push_back(h);
            errs.push_back(std::abs(fd - u.derivative(t, 1)));
        }
        CHECK(testutil::observed_order(hs, errs) >= 1.9);
    }
}

TEST_CASE("parity holds at 32 probe points") {
    PeriodicFunction p = PeriodicFunction::fourier({0.3, 0.5, -0.2, 0.0, 0.7});
    PeriodicFunction a = PeriodicFunction::antiperiodic_fourier({0.4, -0.1, 0.2, 0.6});
    CHECK(p.parity() == Parity::periodic);
    CHECK(a.parity() == Parity::antiperiodic);
    for (int i = 0; i < 32; ++i) {
        const double t = two_pi * i / 32;
        CHECK(std::abs(p(t + two_pi) - p(t)) < 1e-10);
        CHECK(std::abs(a(t + two_pi) + a(t)) < 1e-10);
    }
}

TEST_CASE("plateau: exact flats and smooth transitions") {
    PeriodicFunction u = PeriodicFunction::catalog("plateau");
    // flat regions
    CHECK(u(0.1) == Approx(0.0));
    CHECK(u(pi / 5.0 * 0.9) == Approx(0.0));
    CHECK(u(pi / 2.0) == Approx(1.0));
    CHECK(u(2.0 * pi / 5.0 + 0.01) == Approx(1.0));
    CHECK(u(5.0) == Approx(0.0));
    // derivatives vanish on the flats
    for (int k = 0; k <= 5; ++k) {
        CHECK(std::abs(u.derivative(0.1, k) - (k == 0 ? 0.0 : 0.0)) < 1e-14);
        CHECK(std::abs(u.derivative(pi / 2.0, k) - (k == 0 ? 1.0 : 0.0)) < 1e-14);
    }
    // transition is monotone between 0 and 1
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double t = pi / 5.0 + (pi / 5.0) * i / 100.0;
        const double v = u(t);
        CHECK(v >= prev - 1e-12);
        CHECK(v <= 1.0 + 1e-12);
        prev = v;
    }
}

TEST_CASE("plateau pair realizes u(t) + lambda u(t+pi)") {
    const double lambda = 0.6;
    PeriodicFunction base = PeriodicFunction::catalog("plateau");
    PeriodicFunction v = PeriodicFunction::catalog("plateau-pair", std::vector<double>{lambda});
    for (int i = 0; i < 64; ++i) {
        const double t = two_pi * i / 64;
        CHECK(v(t) == Approx(base(t) + lambda * base(t + pi)).epsilon(1e-12));
    }
}

TEST_CASE("ellipse support function values") {
    PeriodicFunction h = PeriodicFunction::catalog("ellipse", std::vector<double>{2.0, 1.0});
    CHECK(h(0.0) == Approx(1.0));      // sqrt(b^2) at t = 0
    CHECK(h(pi / 2.0) == Approx(2.0)); // sqrt(a^2)
    CHECK(h(1.0) == Approx(std::sqrt(4.0 * std::sin(1.0) * std::sin(1.0) +
                                     std::cos(1.0) * std::cos(1.0))));
}

TEST_CASE("combinators and error paths") {
    PeriodicFunction u = PeriodicFunction::fourier({0, 1, 0});
    PeriodicFunction shifted = u.shifted(pi / 2.0); // cos(t + pi/2) = -sin t
    CHECK(shifted(0.3) == Approx(-std::sin(0.3)));
    CHECK(u.scaled(-2.0)(0.3) == Approx(-2.0 * std::cos(0.3)));

    PeriodicFunction a = PeriodicFunction::antiperiodic_fourier({1.0, 0.0});
    CHECK_THROWS_AS(u + a, DimensionMismatch);
    CHECK_THROWS_AS(u.derivative(0.0, 1000), DerivativeUnavailable);
    CHECK_THROWS_AS(PeriodicFunction::catalog("nope"), ParseError);
    CHECK_THROWS_AS(PeriodicFunction::fourier({}), DimensionMismatch);
}

TEST_CASE("from_poly matches the polynomial for both parities") {
    SplitMix64 rng(7);
    for (int order : {3, 4}) {
        const TrigPoly p = testutil::random_poly(SpaceDescriptor(order), rng);
        const PeriodicFunction u = PeriodicFunction::from_poly(p);
        for (int i = 0; i < 32; ++i) {
            const double t = two_pi * i / 32;
            CHECK(u(t) == Approx(p.eval(t)).epsilon(1e-12));
            CHECK(u.derivative(t, 2) == Approx(p.eval(t, 2)).epsilon(1e-12));
        }
    }
}

TEST_CASE("apply_disconjugate worked example") {
    // L3 = D^3 + D on sin 2t at 0 gives -6
    PeriodicFunction u = PeriodicFunction::fourier({0, 0, 0, 0, 1});
    DisconjugateOperator l3{SpaceDescriptor(3)};
    CHECK(apply_disconjugate(l3, u, 0.0) == Approx(-6.0));
    // kernel member annihilated everywhere
    PeriodicFunction v = PeriodicFunction::fourier({1.0, 0.5, -0.3});
    for (int i = 0; i < 16; ++i)
        CHECK(std::abs(apply_disconjugate(l3, v, two_pi * i / 16)) < 1e-12);
}
