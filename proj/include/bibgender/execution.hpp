#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bibgender {

// Batch kernels (corpus parsing, calibration grids, cohort observation)
// come in two flavors: a serial reference path and an OpenMP path. Both
// must produce identical results; the serial path is the oracle the
// parallel one is tested against.
enum class Execution { Serial, Parallel };

bool openmp_enabled();
int worker_threads();

template <typename Fn>
void for_each_index(std::size_t n, Execution exec, Fn&& fn) {
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
            fn(static_cast<std::size_t>(i));
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
    }
}

}  // namespace bibgender
