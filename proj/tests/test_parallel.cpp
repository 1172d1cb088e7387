// SPDX-License-Identifier: MIT
//
// The OpenMP kernels must agree exactly with the serial reference path.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "capbound/capacity.hpp"
#include "capbound/parallel.hpp"
#include "capbound/rng.hpp"

using namespace capbound;

TEST_CASE("parallel_for covers every index exactly once") {
    const int n = 1000;
    std::vector<int> hits(n, 0);
    parallel_for(n, [&](int i) { hits[i] += 1; }, true);
    for (int h : hits) CHECK(h == 1);
}

TEST_CASE("parallel_for propagates exceptions") {
    CHECK_THROWS_AS(
        parallel_for(64, [&](int i) { if (i == 17) throw validation_error("boom"); }, true),
        validation_error);
}

TEST_CASE("per-index seeding gives identical results on both paths") {
    const int n = 200;
    std::vector<double> serial(n), parallel(n);
    const auto kernel = [](int i) {
        Rng rng(derive_seed(777, i));
        double acc = 0.0;
        for (int k = 0; k < 50; ++k) acc += rng.normal();
        return acc;
    };
    parallel_for(n, [&](int i) { serial[i] = kernel(i); }, false);
    parallel_for(n, [&](int i) { parallel[i] = kernel(i); }, true);
    for (int i = 0; i < n; ++i) CHECK(serial[i] == parallel[i]);
}

TEST_CASE("depolarizing sweep is bitwise identical serial vs parallel") {
    SweepConfig serialCfg;
    serialCfg.pMin = 0.002;
    serialCfg.pMax = 0.012;
    serialCfg.nPoints = 6;
    serialCfg.computeSPhiLambda = false;
    serialCfg.parallel = false;
    SweepConfig parallelCfg = serialCfg;
    parallelCfg.parallel = true;

    const auto a = depolarizing_sweep(serialCfg);
    const auto b = depolarizing_sweep(parallelCfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].p == b[i].p);
        CHECK(a[i].q1 == b[i].q1);
        CHECK(a[i].boundSutter == b[i].boundSutter);
        CHECK(a[i].boundNew == b[i].boundNew);
        CHECK(a[i].certificate.epsDiamond == b[i].certificate.epsDiamond);
        CHECK(a[i].certificate.eps1 == b[i].certificate.eps1);
        CHECK(a[i].certificate.nu == b[i].certificate.nu);
        CHECK(a[i].certificate.beta == b[i].certificate.beta);
    }
}
