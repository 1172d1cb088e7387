// SPDX-License-Identifier: MIT
//
// Compares the serial reference path against the OpenMP path for the two
// data-parallel workloads: the Monte-Carlo dominance sweep and the
// depolarizing bound sweep.
#include <chrono>
#include <cstdio>
#include <vector>

#include "capbound/capacity.hpp"
#include "capbound/entropy.hpp"
#include "capbound/parallel.hpp"
#include "capbound/rng.hpp"

using namespace capbound;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double run_dominance(int perDim, bool parallel) {
    const auto t0 = Clock::now();
    std::vector<double> worst(perDim, 0.0);
    parallel_for(
        perDim,
        [&](int t) {
            double w = 0.0;
            for (int d = 3; d <= 8; ++d) {
                const auto p = random_distribution(d, derive_seed(11, d * 1000003 + t));
                const auto q = random_distribution(d, derive_seed(12, d * 1000003 + t));
                const double tv = tv_distance(p, q), lo = local_distance(p, q);
                if (tv <= 0.0 || lo <= 0.0) continue;
                const double slack = bound_fd(d, DistancePair(tv, lo)) -
                                     std::abs(shannon_entropy(p) - shannon_entropy(q));
                w = std::min(w, slack);
            }
            worst[t] = w;
        },
        parallel);
    for (double w : worst)
        if (w < -1e-10) std::printf("dominance violated: %g\n", w);
    return seconds_since(t0);
}

double run_sweep(int points, bool parallel) {
    SweepConfig cfg;
    cfg.pMax = 0.02;
    cfg.nPoints = points;
    cfg.computeSPhiLambda = false;
    cfg.parallel = parallel;
    const auto t0 = Clock::now();
    const auto rows = depolarizing_sweep(cfg);
    (void)rows;
    return seconds_since(t0);
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
    const int mcIters = quick ? 2000 : 20000;
    const int sweepPoints = quick ? 8 : 31;

    std::printf("threads available: %d\n\n", max_threads());
    std::printf("%-34s %10s %10s %8s\n", "workload", "serial[s]", "openmp[s]", "speedup");

    const double ds = run_dominance(mcIters, false);
    const double dp = run_dominance(mcIters, true);
    std::printf("%-34s %10.3f %10.3f %7.2fx\n", "entropy dominance Monte-Carlo", ds, dp, ds / dp);

    const double ss = run_sweep(sweepPoints, false);
    const double sp = run_sweep(sweepPoints, true);
    std::printf("%-34s %10.3f %10.3f %7.2fx\n", "depolarizing bound sweep", ss, sp, ss / sp);
    return 0;
}
