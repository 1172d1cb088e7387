// SPDX-License-Identifier: MIT
//
// Capacity upper bounds for approximately degradable channels: the
// (eps, nu)-degradability corrections, quantum and private bounds, the lower
// convex envelope combination with the classical comparison curves, and the
// depolarizing sweep.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "capbound/entropy.hpp"
#include "capbound/norms.hpp"

namespace capbound {

struct DegradabilityCertificate {
    double epsDiamond;
    double eps1;
    double nu;
    double beta;  // 2*nu/eps1, 0 when eps1 == 0
    int dE;
    ChoiChannel lambdaChoi;
    bool hypothesisOk;  // eps1 <= 2*nu*dE/(nu*dE + 3)

    static DegradabilityCertificate make(double epsDiamond, double eps1, double nu, int dE,
                                         ChoiChannel lambda);
};

// (eps1/2) log(beta dE - 1) + h(eps1/2) + epsDiamond log dE + g(epsDiamond/2);
// the log term is 0 when eps1 = 0. Throws hypothesis_error outside the
// eps1 <= 2 nu dE/(nu dE + 3) region.
double corr_quantum(double epsDiamond, double eps1, double nu, int dE);
double corr_quantum(const DegradabilityCertificate& cert);

// Stabilized (diamond, cb) variant with beta = 2*nu/eps.
double corr_quantum_cbnorm(double eps, double nu, int dE);

// corr_quantum + 2*(epsDiamond log dE + g(epsDiamond/2)).
double corr_private(double epsDiamond, double eps1, double nu, int dE);
double corr_private(const DegradabilityCertificate& cert);

// Depolarizing comparison curve ingredients: gamma(p) = 4(sqrt(1-p) - 1 + p),
// theta(p) = h((1+gamma)/2) - h(gamma/2); p in [0, 1/4].
std::pair<double, double> theta_gamma(double p);  // (theta, gamma)

// Lower convex envelope of the pointwise minimum of sampled curves on a
// common strictly increasing grid (monotone-chain lower hull + linear
// interpolation). Entries may be +infinity to exclude a point of one curve.
std::vector<double> convex_envelope(const std::vector<double>& grid,
                                    const std::vector<std::vector<double>>& curves);

struct BoundReport {
    double p;
    double q1;
    double sPhiLambda;  // NaN when not computed
    double boundSutter;
    double boundNew;
    DegradabilityCertificate certificate;
    std::string note;  // nonempty on per-point failures
};

struct SweepConfig {
    double pMin = 0.0;
    double pMax = 0.025;
    int nPoints = 251;
    std::uint64_t seed = 20240;
    bool parallel = true;
    bool computeSPhiLambda = true;
};

// Full pipeline per grid point: E_p, minimal complement, eps_phi, the four
// M programs on Phi_p = E_p^c - Lambda_p o E_p, corrections, and the two
// envelope curves.
std::vector<BoundReport> depolarizing_sweep(const SweepConfig& config);

}  // namespace capbound
