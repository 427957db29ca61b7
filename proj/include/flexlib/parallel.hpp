#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace flex::par {

enum class Mode { serial, openmp };

// Process-wide execution mode.  The OpenMP path and the serial reference
// compute identical per-slot results; tests compare them and the benchmark
// flips this switch.
inline Mode& mode() {
    static Mode m = Mode::openmp;
    return m;
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Data-parallel index map: f(i) for i in [0, n).  Each slot must be
// independent; no reduction reordering happens here, so results do not
// depend on the schedule.
template <class F>
inline void for_index(std::ptrdiff_t n, F&& f) {
#ifdef _OPENMP
    if (mode() == Mode::openmp) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) f(static_cast<std::size_t>(i));
        return;
    }
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) f(static_cast<std::size_t>(i));
}

} // namespace flex::par
