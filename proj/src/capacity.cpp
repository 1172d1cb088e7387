// SPDX-License-Identifier: MIT
#include "capbound/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "capbound/parallel.hpp"

namespace capbound {

DegradabilityCertificate DegradabilityCertificate::make(double epsDiamond, double eps1, double nu,
                                                        int dE, ChoiChannel lambda) {
    // values below 1e-9 are treated as exact zeros before forming beta
    if (std::abs(epsDiamond) < 1e-9) epsDiamond = 0.0;
    if (std::abs(eps1) < 1e-9) eps1 = 0.0;
    if (std::abs(nu) < 1e-9) nu = 0.0;
    // restore the orderings that hold in exact arithmetic but can be lost to
    // solver tolerances across independent programs: max M_1 <= diamond and
    // ||.||_inf^D <= eps1/2, so the minima remain certified upper bounds
    eps1 = std::min(eps1, epsDiamond);
    nu = std::min(nu, eps1 / 2.0);
    DegradabilityCertificate c{epsDiamond, eps1, nu, 0.0, dE, std::move(lambda), false};
    if (c.eps1 > 0.0) c.beta = 2.0 * c.nu / c.eps1;
    const double thr = 2.0 * nu * dE / (nu * dE + 3.0);
    c.hypothesisOk = eps1 <= thr + 1e-9;
    return c;
}

namespace {

void check_hypothesis(double eps1, double nu, int dE, const char* what) {
    const double thr = 2.0 * nu * dE / (nu * dE + 3.0);
    if (eps1 > thr + 1e-9)
        throw hypothesis_error(std::string(what) + ": requires eps1 <= 2 nu dE/(nu dE + 3) = " +
                                   std::to_string(thr),
                               thr);
}

double alicki_fannes_term(double epsDiamond, int dE) {
    if (epsDiamond <= 0.0) return 0.0;
    return epsDiamond * std::log2(static_cast<double>(dE)) + bosonic_g(epsDiamond / 2.0);
}

double two_distance_term(double eps1, double nu, int dE) {
    if (eps1 <= 0.0) return 0.0;
    const double beta = 2.0 * nu / eps1;
    const double arg = beta * dE - 1.0;
    if (arg <= 0.0)
        throw domain_error("correction term: requires beta*dE > 1 when eps1 > 0");
    return (eps1 / 2.0) * std::log2(arg) + binary_entropy(eps1 / 2.0);
}

}  // namespace

double corr_quantum(double epsDiamond, double eps1, double nu, int dE) {
    if (eps1 == 0.0 && epsDiamond == 0.0) return 0.0;
    check_hypothesis(eps1, nu, dE, "corr_quantum");
    return two_distance_term(eps1, nu, dE) + alicki_fannes_term(epsDiamond, dE);
}

double corr_quantum(const DegradabilityCertificate& cert) {
    return corr_quantum(cert.epsDiamond, cert.eps1, cert.nu, cert.dE);
}

double corr_quantum_cbnorm(double eps, double nu, int dE) {
    if (eps == 0.0) return 0.0;
    check_hypothesis(eps, nu, dE, "corr_quantum_cbnorm");
    return two_distance_term(eps, nu, dE) + alicki_fannes_term(eps, dE);
}

double corr_private(double epsDiamond, double eps1, double nu, int dE) {
    if (eps1 == 0.0 && epsDiamond == 0.0) return 0.0;
    check_hypothesis(eps1, nu, dE, "corr_private");
    return two_distance_term(eps1, nu, dE) + 3.0 * alicki_fannes_term(epsDiamond, dE);
}

double corr_private(const DegradabilityCertificate& cert) {
    return corr_private(cert.epsDiamond, cert.eps1, cert.nu, cert.dE);
}

std::pair<double, double> theta_gamma(double p) {
    if (p < 0.0 || p > 0.25) throw domain_error("theta_gamma: p outside [0, 1/4]");
    const double gamma = 4.0 * (std::sqrt(1.0 - p) - 1.0 + p);
    const double theta = binary_entropy((1.0 + gamma) / 2.0) - binary_entropy(gamma / 2.0);
    return {theta, gamma};
}

std::vector<double> convex_envelope(const std::vector<double>& grid,
                                    const std::vector<std::vector<double>>& curves) {
    const int n = static_cast<int>(grid.size());
    if (n < 2) throw validation_error("convex_envelope: need at least two grid points");
    for (int i = 1; i < n; ++i)
        if (!(grid[i] > grid[i - 1]))
            throw validation_error("convex_envelope: grid must be strictly increasing");
    if (curves.empty()) throw validation_error("convex_envelope: no curves");
    std::vector<double> low(n, std::numeric_limits<double>::infinity());
    for (const auto& c : curves) {
        if (static_cast<int>(c.size()) != n)
            throw validation_error("convex_envelope: curve/grid length mismatch");
        for (int i = 0; i < n; ++i) {
            if (std::isnan(c[i])) throw validation_error("convex_envelope: NaN curve value");
            low[i] = std::min(low[i], c[i]);
        }
    }
    for (double v : low)
        if (!std::isfinite(v))
            throw validation_error("convex_envelope: a grid point is excluded by every curve");

    // monotone-chain lower hull over (grid, pointwise min)
    std::vector<int> hull;
    for (int i = 0; i < n; ++i) {
        while (hull.size() >= 2) {
            const int a = hull[hull.size() - 2], b = hull[hull.size() - 1];
            const double cross = (grid[b] - grid[a]) * (low[i] - low[a]) -
                                 (low[b] - low[a]) * (grid[i] - grid[a]);
            if (cross <= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }

    std::vector<double> env(n);
    std::size_t seg = 0;
    for (int i = 0; i < n; ++i) {
        while (seg + 1 < hull.size() && grid[hull[seg + 1]] < grid[i]) ++seg;
        const int a = hull[seg];
        const int b = hull[std::min(seg + 1, hull.size() - 1)];
        if (a == b || grid[i] <= grid[a]) {
            env[i] = low[a];
        } else {
            const double t = (grid[i] - grid[a]) / (grid[b] - grid[a]);
            env[i] = (1.0 - t) * low[a] + t * low[b];
        }
    }
    return env;
}

namespace {

// correction of the eps-only degradable comparison curve
double sutter_correction(double epsDiamond, int dE) {
    if (epsDiamond <= 0.0) return 0.0;
    double v = binary_entropy(epsDiamond / 2.0) + alicki_fannes_term(epsDiamond, dE);
    if (dE > 1) v += (epsDiamond / 2.0) * std::log2(static_cast<double>(dE) - 1.0);
    return v;
}

}  // namespace

std::vector<BoundReport> depolarizing_sweep(const SweepConfig& config) {
    if (config.nPoints < 2) throw validation_error("depolarizing_sweep: nPoints must be >= 2");
    if (config.pMin < 0.0 || config.pMax > 0.25 || config.pMin >= config.pMax)
        throw validation_error("depolarizing_sweep: require 0 <= pMin < pMax <= 0.25");

    const int n = config.nPoints;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i)
        grid[i] = config.pMin + (config.pMax - config.pMin) * i / (n - 1);

    std::vector<std::optional<BoundReport>> rows(n);
    parallel_for(
        n,
        [&](int i) {
            const double p = grid[i];
            const auto phi = depolarizing(p);
            const auto [triple, comp] = kraus_and_complementary(phi);
            const int dE = triple.dimEnv;
            // the capacity lower bound is reported floored at 0; the bound
            // curves themselves are not floored
            BoundReport row{p,
                            std::max(coherent_info_depolarizing(p), 0.0),
                            std::numeric_limits<double>::quiet_NaN(),
                            0.0,
                            0.0,
                            DegradabilityCertificate::make(0.0, 0.0, 0.0, dE,
                                                           ChoiChannel::trace_map(2)),
                            ""};
            try {
                const auto eps = eps_phi(phi);
                const auto lamPhi = channel_compose(eps.map, phi);
                const auto diff = HermitianMapDiff::between(comp, lamPhi);
                const double eps1 =
                    std::max(m_one(diff, Sign::Minus), m_one(diff, Sign::Plus));
                const double nu =
                    std::max(m_infinity(diff, Sign::Minus), m_infinity(diff, Sign::Plus));
                row.certificate =
                    DegradabilityCertificate::make(eps.value, eps1, nu, dE, eps.map);
                if (config.computeSPhiLambda) row.sPhiLambda = s_phi_lambda(phi, eps.map);
            } catch (const std::exception& e) {
                row.note = e.what();
            }
            rows[i] = std::move(row);
        },
        config.parallel);

    // comparison curves on the common grid
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> cNew(n), cSutter(n), cHash(n), cTheta(n), cLinear(n);
    for (int i = 0; i < n; ++i) {
        const auto& row = *rows[i];
        const auto& cert = row.certificate;
        cHash[i] = 1.0 - binary_entropy(grid[i]);
        cTheta[i] = theta_gamma(grid[i]).first;
        cLinear[i] = 1.0 - 4.0 * grid[i];
        cSutter[i] = row.note.empty()
                         ? row.q1 + sutter_correction(cert.epsDiamond, cert.dE)
                         : inf;
        // hypothesis failures drop the point from the new-bound curve
        cNew[i] = (row.note.empty() && cert.hypothesisOk)
                      ? row.q1 + corr_quantum(cert)
                      : inf;
    }
    const auto envNew = convex_envelope(grid, {cNew, cHash, cTheta, cLinear});
    const auto envSutter = convex_envelope(grid, {cSutter, cHash, cTheta, cLinear});

    std::vector<BoundReport> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        rows[i]->boundNew = envNew[i];
        rows[i]->boundSutter = envSutter[i];
        out.push_back(std::move(*rows[i]));
    }
    return out;
}

}  // namespace capbound
