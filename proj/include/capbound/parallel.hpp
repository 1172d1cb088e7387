// SPDX-License-Identifier: MIT
//
// Thin OpenMP wrapper for the data-parallel sweeps. Every kernel can also run
// on the serial path, which the tests use as the reference implementation.
#pragma once

#include <functional>

namespace capbound {

// Maximum worker count; honors the CAPBOUND_THREADS environment variable.
int max_threads();

// Runs fn(i) for i in [0, n). Iterations must be independent; results must be
// written to per-index slots so serial and parallel runs agree exactly.
void parallel_for(int n, const std::function<void(int)>& fn, bool parallel = true);

}  // namespace capbound
