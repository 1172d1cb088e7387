// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "capbound/entropy.hpp"
#include "capbound/rng.hpp"
#include "test_support.hpp"

using namespace capbound;

namespace {

// Draws a (p, q) pair with the requested dimension; returns tv/lo as computed.
struct SampledPair {
    ProbabilityVector p;
    ProbabilityVector q;
    double tv;
    double lo;
};

SampledPair sample_pair(int d, std::uint64_t seed) {
    auto p = random_distribution(d, seed);
    auto q = random_distribution(d, seed ^ 0x5bf0a8b1ULL);
    return {p, q, tv_distance(p, q), local_distance(p, q)};
}

}  // namespace

TEST_CASE("shannon entropy examples") {
    CHECK(shannon_entropy(ProbabilityVector({1.0, 0.0, 0.0})) == doctest::Approx(0.0));
    CHECK(shannon_entropy(ProbabilityVector({0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-13));
    // direct summation: -(0.5 log 0.5 + 0.3 log 0.3 + 0.2 log 0.2)
    CHECK(shannon_entropy(ProbabilityVector({0.5, 0.3, 0.2})) ==
          doctest::Approx(1.4854752972273344).epsilon(1e-12));
}

TEST_CASE("tv and local distances") {
    const ProbabilityVector p({0.6, 0.4, 0.0});
    CHECK(tv_distance(p, p) == doctest::Approx(0.0));
    CHECK(local_distance(p, p) == doctest::Approx(0.0));
    const ProbabilityVector a({1.0, 0.0}), b({0.0, 1.0});
    CHECK(tv_distance(a, b) == doctest::Approx(1.0));
    CHECK(local_distance(a, b) == doctest::Approx(1.0));
    const ProbabilityVector q({0.3, 0.4, 0.3});
    CHECK(tv_distance(p, q) == doctest::Approx(0.3).epsilon(1e-13));
    CHECK(local_distance(p, q) == doctest::Approx(0.3).epsilon(1e-13));
    CHECK_THROWS_AS(tv_distance(a, p), validation_error);
}

TEST_CASE("LO <= TV on random pairs") {
    for (int t = 0; t < 200; ++t) {
        const auto s = sample_pair(2 + t % 8, 100 + t);
        CHECK(s.lo <= s.tv + 1e-14);
        CHECK(s.tv <= 1.0);
    }
}

TEST_CASE("binary entropy and bosonic g") {
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
    CHECK(binary_entropy(0.0) == doctest::Approx(0.0));
    CHECK(binary_entropy(1.0) == doctest::Approx(0.0));
    CHECK(bosonic_g(0.0) == doctest::Approx(0.0));
    CHECK(bosonic_g(1.0) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK_THROWS_AS(binary_entropy(-0.1), domain_error);
    CHECK_THROWS_AS(binary_entropy(1.1), domain_error);
    CHECK_THROWS_AS(bosonic_g(-0.5), domain_error);
}

TEST_CASE("remainder decomposition with integer snapping") {
    const auto r = RemainderDecomposition::make(10, 0.5, 0.3);
    CHECK(r.dPlus == 1);
    CHECK(r.mu == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(r.dMinus == 8);
    // ratio within 1e-12 of integer snaps to the integral branch
    const auto s = RemainderDecomposition::make(10, 0.5 + 0.25e-13, 0.25);
    CHECK(s.dPlus == 2);
    CHECK(s.mu == 0.0);
    CHECK(s.dMinus == 8);
    CHECK(r.eps == doctest::Approx(r.dPlus * r.nu + r.mu).epsilon(1e-14));
}

TEST_CASE("bound_fd values and edge cases") {
    CHECK(bound_fd(4, DistancePair(0.5, 0.25)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bound_fd(10, DistancePair(0.5, 0.3)) ==
          doctest::Approx(2.0145247027726656).epsilon(1e-12));
    CHECK(bound_fd(7, DistancePair(0.0, 0.0)) == doctest::Approx(0.0));
    // for d = 3 any nu < eps is infeasible
    CHECK_THROWS_AS(bound_fd(3, DistancePair(0.5, 0.2)), domain_error);
    CHECK_NOTHROW(bound_fd(3, DistancePair(0.5, 0.5)));
}

TEST_CASE("integer-ratio snap stabilizes the branch of bound_fd") {
    const long long d = 12;
    const double nu = 0.2;
    // continuous from below; ratios inside the snap window give the integral
    // branch; just outside it the ceiling steps and the bound drops.
    const double at = bound_fd(d, DistancePair(2.0 * nu, nu));
    const double lo = bound_fd(d, DistancePair(2.0 * nu - 1e-11, nu));
    const double snapped = bound_fd(d, DistancePair(2.0 * nu * (1.0 + 2e-13), nu));
    const double above = bound_fd(d, DistancePair(2.0 * nu + 1e-9, nu));
    CHECK(std::abs(lo - at) < 1e-8);
    CHECK(std::abs(snapped - at) < 1e-10);
    CHECK(above < at);  // right-discontinuity of the ceiling in d_-
}

TEST_CASE("bound_sason values and Csiszar reduction") {
    CHECK(bound_sason(10, DistancePair(0.5, 0.3)) ==
          doctest::Approx(2.160964047443681).epsilon(1e-12));
    CHECK(bound_sason(4, DistancePair(0.5, 0.25)) == doctest::Approx(1.0).epsilon(1e-12));
    // nu = eps reduces to the Csiszar bound
    for (long long d : {2, 5, 9}) {
        const double eps = 0.37;
        CHECK(bound_sason(d, DistancePair(eps, eps)) ==
              doctest::Approx(bound_csiszar(d, eps)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(bound_sason(2, DistancePair(0.8, 0.3)), domain_error);  // beta*d <= 1
}

TEST_CASE("bound_csiszar / bound_afp") {
    CHECK(bound_csiszar(5, 0.0) == doctest::Approx(0.0));
    CHECK(bound_csiszar(2, 0.5) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(bound_csiszar(10, 0.5) == doctest::Approx(2.584962500721156).epsilon(1e-12));
    CHECK(bound_afp(10, 0.5) == doctest::Approx(bound_csiszar(10, 0.5)));
}

TEST_CASE("bound_vn_two_distance hypothesis and values") {
    // threshold nu*d/(nu*d+3) = 0.5 exactly at (d=10, nu=0.3)
    CHECK(bound_vn_two_distance(10, DistancePair(0.5, 0.3)) ==
          doctest::Approx(2.160964047443681).epsilon(1e-12));
    CHECK(bound_vn_two_distance(20, DistancePair(0.5, 0.25)) ==
          doctest::Approx(2.584962500721156).epsilon(1e-12));
    try {
        bound_vn_two_distance(4, DistancePair(0.5, 0.25));
        FAIL("expected hypothesis_error");
    } catch (const hypothesis_error& e) {
        CHECK(e.threshold() == doctest::Approx(0.25).epsilon(1e-12));
    }
}

TEST_CASE("saturating pair reproduces the stated distributions") {
    {
        const auto [qt, pt] = saturating_pair(4, DistancePair(0.5, 0.25));
        CHECK(qt[0] == doctest::Approx(0.5));
        CHECK(qt[1] == doctest::Approx(0.5));
        CHECK(qt[2] == doctest::Approx(0.0));
        CHECK(pt[0] == doctest::Approx(0.25));
        CHECK(pt[3] == doctest::Approx(0.25));
    }
    {
        const auto [qt, pt] = saturating_pair(10, DistancePair(0.5, 0.3));
        CHECK(qt[0] == doctest::Approx(0.6));
        CHECK(qt[1] == doctest::Approx(0.4));
        CHECK(qt[2] == doctest::Approx(0.0));
        CHECK(pt[0] == doctest::Approx(0.3));
        CHECK(pt[1] == doctest::Approx(0.2));
        for (int i = 2; i < 10; ++i) CHECK(pt[i] == doctest::Approx(0.0625));
    }
    {
        // eps = nu: single off-support mass element (Csiszar saturator shape)
        const auto [qt, pt] = saturating_pair(6, DistancePair(0.4, 0.4));
        CHECK(qt[0] == doctest::Approx(1.0));
        for (int i = 1; i < 6; ++i) CHECK(qt[i] == doctest::Approx(0.0));
        CHECK(pt[0] == doctest::Approx(0.6));
        CHECK(pt[1] == doctest::Approx(0.4 / 5.0));
    }
}

TEST_CASE("saturating pair achieves bound_fd with the stated distances") {
    for (long long d : {4, 5, 7, 10, 12}) {
        for (double eps : {0.15, 0.4, 0.62, 0.9}) {
            for (double frac : {1.0, 0.71, 0.5, 0.33}) {
                const double nu = eps * frac;
                const auto dec_ceil = static_cast<long long>(std::ceil(eps / nu - 1e-12));
                if (d < 2 * dec_ceil) continue;
                const DistancePair pair(eps, nu);
                const auto [qt, pt] = saturating_pair(d, pair);
                CHECK(tv_distance(pt, qt) == doctest::Approx(eps).epsilon(1e-12));
                CHECK(local_distance(pt, qt) == doctest::Approx(nu).epsilon(1e-12));
                const double gap =
                    shannon_entropy(pt) - shannon_entropy(qt) - bound_fd(d, pair);
                CHECK(std::abs(gap) <= 1e-10);
            }
        }
    }
}

TEST_CASE("saturating pair at eps = 1 moves all mass") {
    // disjoint supports: TV = 1, LO = nu, and the entropy gap equals f_d
    const auto [qt, pt] = saturating_pair(8, DistancePair(1.0, 0.25));
    for (int i = 0; i < 4; ++i) {
        CHECK(qt[i] == doctest::Approx(0.25));
        CHECK(pt[i] == doctest::Approx(0.0));
        CHECK(qt[4 + i] == doctest::Approx(0.0));
        CHECK(pt[4 + i] == doctest::Approx(0.25));
    }
    CHECK(tv_distance(pt, qt) == doctest::Approx(1.0));
    CHECK(local_distance(pt, qt) == doctest::Approx(0.25));
    CHECK(shannon_entropy(pt) - shannon_entropy(qt) ==
          doctest::Approx(bound_fd(8, DistancePair(1.0, 0.25))).epsilon(1e-12));
}

TEST_CASE("dominance: random pairs never exceed bound_fd (reduced sweep)") {
    for (int d = 3; d <= 8; ++d) {
        for (int t = 0; t < 2000; ++t) {
            const auto s = sample_pair(d, derive_seed(4242, d * 100000 + t));
            if (s.tv <= 0.0 || s.lo <= 0.0) continue;
            const double lhs =
                std::abs(shannon_entropy(s.p) - shannon_entropy(s.q));
            CHECK(lhs <= bound_fd(d, DistancePair(s.tv, s.lo)) + 1e-10);
        }
    }
}

TEST_CASE("sharpening vs Sason: strict when ratio non-integer, equal when integer") {
    for (long long d : {4, 6, 10}) {
        for (double eps : {0.2, 0.45, 0.7}) {
            for (double nu : {0.04, 0.011, 0.1, 0.17}) {
                if (nu > eps) continue;
                if (nu * static_cast<double>(d) < 2.0 * eps) continue;
                const double ratio = eps / nu;
                const bool integral = std::abs(ratio - std::round(ratio)) <= 1e-12;
                const double fd = bound_fd(d, DistancePair(eps, nu));
                const double sa = bound_sason(d, DistancePair(eps, nu));
                if (integral)
                    CHECK(std::abs(fd - sa) <= 1e-12);
                else
                    CHECK(fd < sa);
            }
        }
    }
}

TEST_CASE("monotonicity of eps*log((nu/eps)d - 1) + h(eps) (dense differences)") {
    // in eps on [0, nu*d/(nu*d+3)]
    for (long long d : {5, 10}) {
        const double nu = 0.21;
        const double thr = nu * d / (nu * d + 3.0);
        double prev = 0.0;
        const int n = 400;
        for (int i = 1; i <= n; ++i) {
            const double eps = thr * i / n;
            if (eps < nu) continue;  // stay in the valid pair region
            const double cur = bound_vn_two_distance(d, DistancePair(eps, nu));
            CHECK(cur >= prev - 1e-12);
            prev = cur;
        }
    }
    // in nu on [eps/d, 1]
    for (long long d : {5, 10}) {
        const double eps = 0.3;
        double prev = -std::numeric_limits<double>::infinity();
        const int n = 400;
        for (int i = 0; i <= n; ++i) {
            const double nu = eps / d + (eps - eps / d) * i / n;
            if (nu <= eps / d) continue;
            const double cur =
                eps * std::log2((nu / eps) * d - 1.0) + binary_entropy(eps);
            CHECK(cur >= prev - 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("quantum dominance on random state pairs (reduced sweep)") {
    int accepted = 0;
    for (int t = 0; t < 4000 && accepted < 600; ++t) {
        const int d = 4 + 2 * (t % 3);
        const auto s = testsupport::random_pair_with_hypothesis(d, derive_seed(99, t));
        if (!s) continue;
        ++accepted;
        const double lhs = std::abs(vn_entropy(s->rho) - vn_entropy(s->sigma));
        CHECK(lhs <= bound_vn_two_distance(d, DistancePair(s->eps, s->nu)) + 1e-10);
    }
    CHECK(accepted > 100);
}

TEST_CASE("commuting saturators achieve the vn bound at integral ratio") {
    for (long long d : {4, 6, 8}) {
        for (long long m : {2LL, 3LL}) {
            if (d < 2 * m) continue;
            const double nu = 0.08;
            const double eps = nu * static_cast<double>(m);
            if (eps > nu * d / (nu * d + 3.0)) continue;
            const auto [qt, pt] = saturating_pair(d, DistancePair(eps, nu));
            const DensityMatrix rho(HermitianMatrix::diag(pt.weights()));
            const DensityMatrix sig(HermitianMatrix::diag(qt.weights()));
            const double lhs = std::abs(vn_entropy(rho) - vn_entropy(sig));
            CHECK(lhs == doctest::Approx(bound_vn_two_distance(d, DistancePair(eps, nu)))
                             .epsilon(1e-10));
        }
    }
}

TEST_CASE("majorization basics and entropy Schur concavity") {
    CHECK(majorizes({0.5, 0.5}, {1.0, 0.0}));
    CHECK(majorizes({0.3, 0.3, 0.4}, {0.3, 0.4, 0.3}));
    CHECK_FALSE(majorizes({1.0, 0.0}, {0.5, 0.5}));
    CHECK(majorizes({0.25, 0.25, 0.25, 0.25}, {0.5, 0.5}));  // zero padding
    CHECK_THROWS_AS(majorizes({0.5, 0.5}, {0.5, 0.4}), validation_error);

    // transfer: moving weight from a smaller to a larger entry
    // produces a vector that majorizes the original; entropy decreases.
    Rng rng(314);
    for (int t = 0; t < 200; ++t) {
        const int d = 3 + t % 5;
        auto v = random_distribution(d, derive_seed(271, t)).weights();
        std::sort(v.begin(), v.end(), std::greater<double>());
        auto u = v;
        const int i = static_cast<int>(rng.uniform() * (d - 1));
        const int j = i + 1 + static_cast<int>(rng.uniform() * (d - i - 1));
        const double s = u[j] * rng.uniform();
        u[i] += s;
        u[j] -= s;
        CHECK(majorizes(v, u));
        CHECK(shannon_entropy(ProbabilityVector(v)) >=
              shannon_entropy(ProbabilityVector(u)) - 1e-12);
    }
}
