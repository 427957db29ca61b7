#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "flexlib/scan.hpp"
#include "test_utils.hpp"

using namespace flex;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi_v<double>;
const GridProfile grid;
}

TEST_CASE("find_zeros: worked examples") {
    auto roots = find_zeros([](double t) { return std::cos(t); }, grid);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].t == Approx(pi / 2));
    CHECK(roots[1].t == Approx(3 * pi / 2));
    CHECK(!roots[0].tangential);

    CHECK(find_zeros([](double) { return 1.0; }, grid).empty());

    roots = find_zeros([](double t) { return -10.0 * std::cos(2.0 * t); }, grid);
    REQUIRE(roots.size() == 4);
    CHECK(roots[0].t == Approx(pi / 4));
    CHECK(roots[1].t == Approx(3 * pi / 4));
    CHECK(roots[2].t == Approx(5 * pi / 4));
    CHECK(roots[3].t == Approx(7 * pi / 4));
}

TEST_CASE("find_zeros: tangential zeros are found and flagged") {
    auto roots = find_zeros([](double t) { return std::sin(t) * std::sin(t); }, grid);
    REQUIRE(roots.size() == 2);
    CHECK(std::abs(signed_delta(roots[0].t, 0.0)) < 1e-5);
    CHECK(roots[0].tangential);
    CHECK(std::abs(signed_delta(roots[1].t, pi)) < 1e-5);
    CHECK(roots[1].tangential);
}

TEST_CASE("find_zeros: residual below 1e-10 of scale at the roots") {
    const ScalarFn g = [](double t) { return std::sin(3.0 * t) + 0.3 * std::cos(t); };
    double scale = 0.0;
    for (int i = 0; i < 512; ++i) scale = std::max(scale, std::abs(g(two_pi * i / 512)));
    for (const auto& r : find_zeros(g, grid)) CHECK(std::abs(g(r.t)) < 1e-10 * scale);
}

TEST_CASE("find_zeros honors the antiperiodic seam") {
    // sin(3t/2): zeros at 0, 2pi/3, 4pi/3; the seam between 2pi and 0 flips sign
    auto roots = find_zeros([](double t) { return std::sin(1.5 * t); }, grid,
                            Parity::antiperiodic);
    REQUIRE(roots.size() == 3);
    CHECK(std::abs(signed_delta(roots[0].t, 0.0)) < 1e-9);
    CHECK(roots[1].t == Approx(2 * pi / 3));
    CHECK(roots[2].t == Approx(4 * pi / 3));
}

TEST_CASE("near_zero_components: worked examples") {
    // single point-like contact at pi/4
    auto arcs = near_zero_components(
        [](double t) {
            const double s = std::sin(t + pi / 4) - 1.0;
            return -2.0 * s * s;
        },
        grid.contact_tol, grid);
    REQUIRE(arcs.size() == 1);
    CHECK(arcs[0].contains(pi / 4, 1e-9));
    CHECK(arcs[0].length() < 0.1);

    CHECK(near_zero_components([](double) { return 1.0; }, grid.contact_tol, grid).empty());

    // sin^2: two components at 0 and pi
    arcs = near_zero_components([](double t) { return std::sin(t) * std::sin(t); },
                                grid.contact_tol, grid);
    REQUIRE(arcs.size() == 2);
    CHECK((arcs[0].contains(0.0, 1e-9) || arcs[1].contains(0.0, 1e-9)));
    CHECK((arcs[0].contains(pi, 1e-9) || arcs[1].contains(pi, 1e-9)));

    CHECK_THROWS_AS(near_zero_components([](double t) { return std::sin(t); }, 1e-7, grid),
                    NotOneSided);
}

TEST_CASE("near_zero_components: arcs are disjoint and cover marked grid points") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const TrigPoly p = testutil::random_poly(SpaceDescriptor(5), rng);
        const ScalarFn g = [&](double t) {
            const double v = p.eval(t);
            return v * v;
        };
        const auto arcs = near_zero_components(g, grid.contact_tol, grid);
        for (std::size_t i = 0; i < arcs.size(); ++i)
            for (std::size_t j = i + 1; j < arcs.size(); ++j) {
                CHECK(!arcs[i].contains(arcs[j].start(), 0.0));
                CHECK(!arcs[j].contains(arcs[i].start(), 0.0));
            }
        double scale = 0.0;
        for (int i = 0; i < grid.base_samples; ++i)
            scale = std::max(scale, std::abs(g(two_pi * i / grid.base_samples)));
        for (int i = 0; i < grid.base_samples; ++i) {
            const double t = two_pi * i / grid.base_samples;
            if (std::abs(g(t)) > grid.contact_tol * scale) continue;
            bool covered = false;
            for (const auto& a : arcs) covered = covered || a.contains(t, 1e-9);
            CHECK(covered);
        }
    }
}

TEST_CASE("sup_of_ratio: worked examples") {
    // num = sin 2t - 2 sin t, den = 1 - cos t; ratio simplifies to -2 sin t
    const DerivFn num = [](double t, int k) {
        return std::pow(2.0, k) * std::sin(2.0 * t + k * pi / 2.0) -
               2.0 * std::sin(t + k * pi / 2.0);
    };
    const DerivFn den = [](double t, int k) {
        if (k == 0) return 1.0 - std::cos(t);
        return -std::cos(t + k * pi / 2.0);
    };
    const ContactSpec contact{0.0, 2};
    const auto sup = sup_of_ratio(num, den, std::span(&contact, 1), grid);
    CHECK(sup.value == Approx(2.0).epsilon(1e-9));
    CHECK(sup.argmax == Approx(3 * pi / 2).epsilon(1e-6));

    // num identically zero
    const DerivFn zero = [](double, int) { return 0.0; };
    CHECK(sup_of_ratio(zero, den, std::span(&contact, 1), grid).value == Approx(0.0));

    // num == den: constant ratio 1
    const auto one = sup_of_ratio(den, den, std::span(&contact, 1), grid);
    CHECK(one.value == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sup_of_ratio: unlisted denominator zero is an error") {
    const DerivFn num = [](double t, int k) { return k == 0 ? std::sin(t) : std::cos(t); };
    // den vanishes at 0 (listed) and pi (unlisted)
    const DerivFn den = [](double t, int k) {
        const double s = std::sin(t);
        if (k == 0) return s * s;
        if (k == 1) return 2.0 * s * std::cos(t);
        return 2.0 * std::cos(2.0 * t + (k - 2) * pi / 2.0);
    };
    const ContactSpec contact{0.0, 2};
    CHECK_THROWS_AS(sup_of_ratio(num, den, std::span(&contact, 1), grid),
                    DenominatorVanishesElsewhere);
}

TEST_CASE("sup_of_ratio dominates the ratio at random points") {
    const DerivFn num = [](double t, int k) {
        return std::pow(2.0, k) * std::sin(2.0 * t + k * pi / 2.0) -
               2.0 * std::sin(t + k * pi / 2.0);
    };
    const DerivFn den = [](double t, int k) {
        if (k == 0) return 1.0 - std::cos(t);
        return -std::cos(t + k * pi / 2.0);
    };
    const ContactSpec contact{0.0, 2};
    const auto sup = sup_of_ratio(num, den, std::span(&contact, 1), grid);
    SplitMix64 rng(17);
    for (int i = 0; i < 10000; ++i) {
        const double t = rng.uniform(0.05, two_pi - 0.05);
        CHECK(sup.value >= num(t, 0) / den(t, 0) - 1e-8);
    }
}

TEST_CASE("refined extrema pin interior optima") {
    const ScalarFn g = [](double t) { return std::sin(t) + 0.4 * std::sin(3.0 * t); };
    bool found_max = false;
    for (const auto& e : refined_extrema(g, grid)) {
        if (e.is_minimum) continue;
        // derivative vanishes at a refined maximum
        const double d = testutil::central_diff(g, e.t, 1e-6);
        CHECK(std::abs(d) < 1e-4);
        found_max = true;
    }
    CHECK(found_max);
}

TEST_CASE("sample_circle parallel map equals serial reference") {
    const ScalarFn g = [](double t) { return std::sin(5.0 * t) * std::exp(std::cos(t)); };
    const auto a = sample_circle(g, 2048);
    const auto b = sample_circle_serial(g, 2048);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}
