// Benchmark comparing the OpenMP kernels against the serial reference on the
// representative workloads: grid sampling, a clean-flex census over a corpus,
// and a sextactic scan.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "flexlib/census.hpp"
#include "flexlib/curve.hpp"
#include "flexlib/parallel.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn) {
    const auto t0 = clock_type::now();
    fn();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, const std::function<void()>& fn) {
    flex::par::mode() = flex::par::Mode::serial;
    const double serial = time_ms(fn);
    flex::par::mode() = flex::par::Mode::openmp;
    const double parallel = time_ms(fn);
    std::printf("%-28s %10.1f ms %10.1f ms %8.2fx\n", name, serial, parallel,
                serial / parallel);
}

} // namespace

int main() {
    std::printf("threads: %d\n", flex::par::max_threads());
    std::printf("%-28s %13s %13s %9s\n", "workload", "serial", "openmp", "speedup");

    const flex::GridProfile grid;

    row("sample_circle 1M", [&] {
        const flex::ScalarFn g = [](double t) { return std::sin(3.0 * t) + std::cos(7.0 * t); };
        for (int i = 0; i < 64; ++i) flex::sample_circle(g, 1 << 14);
    });

    row("census corpus (n=2, 24 fns)", [&] {
        flex::CorpusSpec spec;
        spec.count = 24;
        spec.n = 2;
        spec.seed = 7;
        const auto corpus = flex::random_corpus(spec);
        for (const auto& u : corpus) (void)flex::clean_flex_census(u, spec.n, grid);
    });

    row("sextactic scan", [&] {
        const flex::SupportCurve curve(
            flex::PeriodicFunction::fourier({1.0, 0.0, 0.0, 0.0, 0.0, 0.05, 0.0}));
        (void)flex::sextactic_scan(curve, grid);
    });

    row("bose tally (sin 2t + .1 sin 3t)", [&] {
        (void)flex::bose_tally(flex::PeriodicFunction::fourier({0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.1}),
                               grid);
    });

    return 0;
}
