// SPDX-License-Identifier: MIT
//
// Shared generators for property tests and the acceptance suite.
#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "capbound/channel.hpp"
#include "capbound/entropy.hpp"
#include "capbound/hermitian.hpp"
#include "capbound/rng.hpp"

namespace capbound::testsupport {

struct StatePair {
    DensityMatrix rho;
    DensityMatrix sigma;
    double eps;  // trace distance
    double nu;   // operator norm distance
};

// Draws a pair of d-dimensional states. Most draws perturb rho along a
// low-rank direction in its own eigenbasis, which keeps the trace distance
// close to the operator-norm distance; that is the regime where the
// two-distance hypothesis eps <= nu*d/(nu*d + 3) is satisfiable at all.
inline StatePair random_state_pair(int d, std::uint64_t seed) {
    Rng rng(seed);
    const auto rho = random_density(d, rng.next_u64());
    if (rng.uniform() < 0.25) {
        const auto sigma = random_density(d, rng.next_u64());
        return {rho, sigma, trace_distance(rho, sigma), operator_norm_distance(rho, sigma)};
    }
    const auto eig = eig_hermitian(rho.herm());
    // balanced coefficients on k of the eigdirections
    const int k = 2 + static_cast<int>(rng.uniform() * (d - 1));
    std::vector<double> c(d, 0.0);
    double mean = 0.0;
    for (int i = 0; i < k; ++i) {
        c[i] = (rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.5 + 0.5 * rng.uniform());
        mean += c[i];
    }
    mean /= k;
    for (int i = 0; i < k; ++i) c[i] -= mean;
    // largest step that keeps sigma PSD
    double tmax = 1.0;
    for (int i = 0; i < d; ++i)
        if (c[i] < 0.0) tmax = std::min(tmax, eig.eigenvalues[i] / (-c[i]));
    const double t = 0.9 * tmax * (0.2 + 0.8 * rng.uniform());
    CMat delta(d, d);
    for (int i = 0; i < d; ++i) {
        if (c[i] == 0.0) continue;
        for (int r = 0; r < d; ++r)
            for (int s = 0; s < d; ++s)
                delta(r, s) += t * c[i] * eig.eigenvectors(r, i) *
                               std::conj(eig.eigenvectors(s, i));
    }
    const DensityMatrix sigma{HermitianMatrix(rho.mat() + delta, 1e-10)};
    return {rho, sigma, trace_distance(rho, sigma), operator_norm_distance(rho, sigma)};
}

// Rejection wrapper: pair satisfying the two-distance hypothesis.
inline std::optional<StatePair> random_pair_with_hypothesis(int d, std::uint64_t seed) {
    const auto s = random_state_pair(d, seed);
    if (s.eps <= 1e-9 || s.nu <= 1e-12) return std::nullopt;
    if (s.eps > s.nu * d / (s.nu * d + 3.0)) return std::nullopt;
    return s;
}

// Random isometry dRows x dCols (dRows >= dCols) by Gram-Schmidt on Gaussian
// columns.
inline CMat random_isometry(int dRows, int dCols, std::uint64_t seed) {
    Rng rng(seed);
    CMat v(dRows, dCols);
    for (int c = 0; c < dCols; ++c) {
        std::vector<cxd> col(dRows);
        for (int r = 0; r < dRows; ++r) col[r] = rng.cnormal();
        for (int prev = 0; prev < c; ++prev) {
            cxd ip = 0.0;
            for (int r = 0; r < dRows; ++r) ip += std::conj(v(r, prev)) * col[r];
            for (int r = 0; r < dRows; ++r) col[r] -= ip * v(r, prev);
        }
        double nrm = 0.0;
        for (const auto& x : col) nrm += std::norm(x);
        nrm = std::sqrt(nrm);
        for (int r = 0; r < dRows; ++r) v(r, c) = col[r] / nrm;
    }
    return v;
}

// Random CPTP map via a Gaussian Stinespring isometry.
inline ChoiChannel random_cptp(int dIn, int dOut, int dEnv, std::uint64_t seed) {
    const CMat v = random_isometry(dOut * dEnv, dIn, seed);
    std::vector<CMat> kraus;
    for (int e = 0; e < dEnv; ++e) {
        CMat k(dOut, dIn);
        for (int b = 0; b < dOut; ++b)
            for (int a = 0; a < dIn; ++a) k(b, a) = v(b * dEnv + e, a);
        kraus.push_back(k);
    }
    return ChoiChannel::from_kraus(dIn, dOut, kraus);
}

}  // namespace capbound::testsupport
