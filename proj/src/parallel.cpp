// SPDX-License-Identifier: MIT
#include "capbound/parallel.hpp"

#include <cstdlib>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace capbound {

int max_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("CAPBOUND_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0 && cap < n) n = cap;
    }
    return n;
}

void parallel_for(int n, const std::function<void(int)>& fn, bool parallel) {
#ifdef _OPENMP
    if (parallel && n > 1 && max_threads() > 1) {
        std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
        for (int i = 0; i < n; ++i) {
            try {
                fn(i);
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        return;
    }
#endif
    (void)parallel;
    for (int i = 0; i < n; ++i) fn(i);
}

}  // namespace capbound
