#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "flexlib/trig_space.hpp"
#include "test_utils.hpp"

using namespace flex;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi_v<double>;
}

TEST_CASE("space descriptor layout") {
    SpaceDescriptor odd(5);
    CHECK(odd.parity() == Parity::periodic);
    CHECK(odd.pair_count() == 2);
    CHECK(odd.frequency(2) == 2.0);

    SpaceDescriptor even(4);
    CHECK(even.parity() == Parity::antiperiodic);
    CHECK(even.frequency(1) == 0.5);
    CHECK(even.frequency(2) == 1.5);

    CHECK_THROWS_AS(SpaceDescriptor(0), DimensionMismatch);
}

TEST_CASE("eval: exact values and derivatives") {
    // constant
    TrigPoly c(SpaceDescriptor(1), {4.5});
    CHECK(c.eval(1.234) == Approx(4.5));
    CHECK(c.eval(1.234, 1) == Approx(0.0));

    // 2 sin t
    TrigPoly s(SpaceDescriptor(3), {0.0, 0.0, 2.0});
    CHECK(s.eval(pi / 2) == Approx(2.0));

    // D^2 cos 2t = -4 cos 2t
    TrigPoly c2(SpaceDescriptor(5), {0.0, 0.0, 0.0, 1.0, 0.0});
    CHECK(c2.eval(0.0, 2) == Approx(-4.0));

    CHECK_THROWS_AS(s.eval(0.0, 7), DerivativeUnavailable); // cap 2*order = 6
}

TEST_CASE("eval derivative matches finite differences at order >= 1.9") {
    SplitMix64 rng(11);
    TrigPoly p = testutil::random_poly(SpaceDescriptor(7), rng);
    std::vector<double> hs, errs;
    const double t = 1.1;
    for (double h = 1e-2; h > 1e-4; h /= 2.0) {
        const double fd = testutil::central_diff([&](double x) { return p.eval(x); }, t, h);
        hs.push_back(h);
        errs.push_back(std::abs(fd - p.eval(t, 1)));
    }
    CHECK(testutil::observed_order(hs, errs) >= 1.9);
}

TEST_CASE("hermite: constant data gives the constant polynomial") {
    const double c = -2.75;
    TrigPoly p = hermite_interpolate(SpaceDescriptor(3), HermiteData({{0.0, 3}}, {c, 0.0, 0.0}));
    CHECK(p.coeffs()[0] == Approx(c));
    CHECK(std::abs(p.coeffs()[1]) < 1e-12);
    CHECK(std::abs(p.coeffs()[2]) < 1e-12);
}

TEST_CASE("hermite: derivative data (0,2,0) solves to 2 sin t") {
    // a0 + a1 = 0, b1 = 2, -a1 = 0
    TrigPoly p = hermite_interpolate(SpaceDescriptor(3), HermiteData({{0.0, 3}}, {0.0, 2.0, 0.0}));
    CHECK(std::abs(p.coeffs()[0]) < 1e-12);
    CHECK(std::abs(p.coeffs()[1]) < 1e-12);
    CHECK(p.coeffs()[2] == Approx(2.0));
}

TEST_CASE("hermite round-trip recovers coefficients to 1e-9 relative") {
    SplitMix64 rng(21);
    const double min_sep = two_pi / 100.0;
    for (int order : {2, 3, 4, 5, 7, 9}) {
        const SpaceDescriptor space(order);
        for (int trial = 0; trial < 40; ++trial) {
            const TrigPoly p = testutil::random_poly(space, rng);
            const auto nodes = testutil::random_nodes(order, rng, min_sep);
            std::vector<double> values;
            for (const auto& node : nodes)
                for (int d = 0; d < node.multiplicity; ++d)
                    values.push_back(p.eval(node.location, d));
            const TrigPoly q = hermite_interpolate(space, HermiteData(nodes, values));
            const double scale = std::max(p.coeff_norm(), 1e-30);
            for (int i = 0; i < order; ++i)
                CHECK(std::abs(q.coeffs()[static_cast<std::size_t>(i)] -
                               p.coeffs()[static_cast<std::size_t>(i)]) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("hermite error paths") {
    CHECK_THROWS_AS(hermite_interpolate(SpaceDescriptor(3), HermiteData({{0.0, 2}}, {1.0, 0.0})),
                    DimensionMismatch);
    CHECK_THROWS_AS(HermiteData({{0.0, 1}, {0.0, 2}}, {1.0, 0.0, 0.0}), DimensionMismatch);
    CHECK_THROWS_AS(HermiteData({{0.0, 1}}, {1.0, 2.0}), DimensionMismatch);
    // clustered nodes blow the condition estimate
    CHECK_THROWS_AS(hermite_interpolate(
                        SpaceDescriptor(7),
                        HermiteData({{0.0, 3}, {1e-9, 2}, {2e-9, 2}},
                                    {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0})),
                    IllConditioned);
}

TEST_CASE("count_zeros: worked examples") {
    // sin t
    auto zs = count_zeros(TrigPoly(SpaceDescriptor(3), {0.0, 0.0, 1.0}), 1e-9);
    REQUIRE(zs.size() == 2);
    CHECK(std::abs(signed_delta(zs[0].location, 0.0)) < 1e-9);
    CHECK(zs[0].multiplicity == 1);
    CHECK(zs[1].location == Approx(pi));
    CHECK(zs[1].multiplicity == 1);

    // 1 - cos t: double zero at 0
    zs = count_zeros(TrigPoly(SpaceDescriptor(3), {1.0, -1.0, 0.0}), 1e-9);
    REQUIRE(zs.size() == 1);
    CHECK(std::abs(signed_delta(zs[0].location, 0.0)) < 1e-6);
    CHECK(zs[0].multiplicity == 2);

    // cos 2t inside order-5 space: four simple zeros
    zs = count_zeros(TrigPoly(SpaceDescriptor(5), {0.0, 0.0, 0.0, 1.0, 0.0}), 1e-9);
    REQUIRE(zs.size() == 4);
    int total = 0;
    for (const auto& z : zs) total += z.multiplicity;
    CHECK(total == 4);
    CHECK(zs[0].location == Approx(pi / 4));

    CHECK_THROWS_AS(count_zeros(TrigPoly(SpaceDescriptor(3), {0.0, 0.0, 0.0}), 1e-9),
                    ZeroPolynomial);
}

TEST_CASE("count_zeros agrees with a brute-force sign scan") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const SpaceDescriptor space(5);
        const TrigPoly p = testutil::random_poly(space, rng);
        if (p.coeff_norm() < 1e-3) continue;
        // oracle: dense sign changes
        const int n = 20000;
        int oracle = 0;
        double prev = p.eval(0.0);
        for (int i = 1; i <= n; ++i) {
            const double v = p.eval(two_pi * i / n);
            if ((prev < 0.0) != (v < 0.0) && prev != 0.0) ++oracle;
            prev = v;
        }
        const auto zs = count_zeros(p, 1e-9);
        int simple = 0, total = 0;
        for (const auto& z : zs) {
            if (z.multiplicity % 2 == 1) ++simple;
            total += z.multiplicity;
        }
        CHECK(simple == oracle);
        CHECK(total <= space.order() - 1);
    }
}

TEST_CASE("zero bound holds on 1000 random polynomials") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 1000; ++trial) {
        const int order = 2 + static_cast<int>(rng.below(6)); // 2..7
        const SpaceDescriptor space(order);
        const TrigPoly p = testutil::random_poly(space, rng);
        if (p.coeff_norm() < 1e-3) continue;
        int total = 0;
        for (const auto& z : count_zeros(p, 1e-9)) total += z.multiplicity;
        CHECK(total <= order - 1);
    }
}

TEST_CASE("disconjugate operator: expanded coefficients") {
    // D(D^2+1) = D^3 + D
    DisconjugateOperator l3{SpaceDescriptor(3)};
    REQUIRE(l3.coefficients().size() == 4);
    CHECK(l3.coefficients()[0] == Approx(0.0));
    CHECK(l3.coefficients()[1] == Approx(1.0));
    CHECK(l3.coefficients()[2] == Approx(0.0));
    CHECK(l3.coefficients()[3] == Approx(1.0));

    // (D^2 + 1/4)
    DisconjugateOperator l2{SpaceDescriptor(2)};
    REQUIRE(l2.coefficients().size() == 3);
    CHECK(l2.coefficients()[0] == Approx(0.25));
    CHECK(l2.coefficients()[2] == Approx(1.0));

    // leading coefficient is always 1
    for (int order : {2, 3, 4, 5, 6, 7, 9}) {
        DisconjugateOperator l{SpaceDescriptor(order)};
        CHECK(l.coefficients().back() == Approx(1.0));
    }
}

TEST_CASE("disconjugate operator annihilates its space") {
    for (int order : {2, 3, 4, 5, 7}) {
        const SpaceDescriptor space(order);
        const DisconjugateOperator op{space};
        double scale = 1.0;
        for (int k = 0; k <= order; ++k)
            scale = std::max(scale, std::pow(space.max_frequency(), k));
        for (int b = 0; b < order; ++b) {
            for (int i = 0; i < 64; ++i) {
                const double t = two_pi * i / 64;
                std::vector<double> jet(static_cast<std::size_t>(order) + 1);
                for (int k = 0; k <= order; ++k)
                    jet[static_cast<std::size_t>(k)] = space.basis_eval(b, t, k);
                CHECK(std::abs(op.apply(jet)) <= 1e-8 * scale);
            }
        }
    }
}

TEST_CASE("disconjugate operator on single modes") {
    // L3 sin 2t = D(D^2+1) sin 2t = D(-3 sin 2t) = -6 cos 2t
    const DisconjugateOperator l3{SpaceDescriptor(3)};
    std::vector<double> jet = {std::sin(0.0), 2.0 * std::cos(0.0), -4.0 * std::sin(0.0),
                               -8.0 * std::cos(0.0)};
    CHECK(l3.apply(jet) == Approx(-6.0));

    // L_{2n+1} sin((n+1)t): applying the factored form mode by mode gives
    // (n+1) prod_k (k^2 - (n+1)^2) cos((n+1)t).
    for (int n = 1; n <= 4; ++n) {
        const DisconjugateOperator l{SpaceDescriptor(2 * n + 1)};
        const double m = n + 1.0;
        double expected = m;
        for (int k = 1; k <= n; ++k) expected *= (k * k - m * m);
        const double t = 0.37;
        std::vector<double> uj(static_cast<std::size_t>(2 * n + 2));
        for (int k = 0; k <= 2 * n + 1; ++k)
            uj[static_cast<std::size_t>(k)] = std::pow(m, k) * std::sin(m * t + k * pi / 2.0);
        CHECK(l.apply(uj) == Approx(expected * std::cos(m * t)).epsilon(1e-10));
    }
}
